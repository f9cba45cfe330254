#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "symtwo/error.hpp"

namespace symtwo::cli {

enum class Format { json, text };

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;   // a valid negative answer (NotSplit, not closed, ...)
inline constexpr int kInputError = 2;
inline constexpr int kPrecision = 3;

int exit_code_for(ErrorKind kind);

struct Outcome {
  int exit_code;
  nlohmann::json report;
};

/// Run one analysis on a job document. Never throws on library errors;
/// they become entries of report["errors"].
Outcome run_job(std::string_view command, std::string_view job_text);

std::string print_report(const nlohmann::json& report, Format format);

/// Full command line: symtwo <command> [--input PATH|-] [--format json|text].
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out);

}  // namespace symtwo::cli
