#include "symtwo_cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI/CLI.hpp>

#include "symtwo/closedness.hpp"
#include "symtwo/local_forms.hpp"
#include "symtwo/symdiff.hpp"

namespace symtwo::cli {

using nlohmann::json;

namespace {

constexpr std::size_t kLeadingTerms = 8;
constexpr int kMinTruncation = 4;
constexpr int kMaxTruncation = 64;

const std::vector<std::string> kCommands{"analyze",     "split",     "closedness", "decompose",
                                         "normal-form", "theorem26", "classify",   "monodromy"};
const std::vector<std::string> kJobKeys{"truncation", "backend", "w",     "components",
                                        "base_shift", "m",       "alpha", "pullback"};

[[noreturn]] void invalid(const std::string& message) { throw Error(ErrorKind::invalid_input, message); }

std::string_view status_name(int code) {
  switch (code) {
    case kOk: return "ok";
    case kNegative: return "negative";
    case kInputError: return "input_error";
    default: return "precision";
  }
}

// --- serialization ------------------------------------------------------

json series_json(const Series2& s) {
  json terms = json::array();
  for (const Term& t : leading_terms(s, kLeadingTerms)) {
    terms.push_back({{"i", t.i}, {"j", t.j}, {"c", t.c.to_string()}});
  }
  return {{"precision", s.precision()}, {"zero", s.is_zero()}, {"leading_terms", std::move(terms)}};
}

json series1_json(const Series1& s) {
  json table = json::object();
  for (int e = s.low(); e <= s.precision(); ++e) {
    Scalar c = s.coeff(e);
    if (!c.is_zero()) table[std::to_string(e)] = c.to_string();
  }
  return {{"precision", s.precision()}, {"coefficients", std::move(table)}};
}

json complex_json(std::complex<double> z) { return Scalar::approx(z).to_string(); }

json one_form_json(const OneForm& mu) {
  return {{"A", series_json(mu.A)}, {"B", series_json(mu.B)}, {"closed", mu.is_closed()}};
}

json split_json(const SymTwoDiff& w, const SplitResult& r) {
  if (const auto* ns = std::get_if<NotSplit>(&r)) {
    return {{"verdict", "not_split"},
            {"witness", ns->component},
            {"multiplicity", ns->multiplicity},
            {"suggested_cover_degree", ns->suggested_cover_degree}};
  }
  const auto& s = std::get<Splitting>(r);
  return {{"verdict", "split"},
          {"factors", json::array({one_form_json(s.first), one_form_json(s.second)})},
          {"product_matches", product(s.first, s.second).equals(w)}};
}

json closedness_json(const ClosednessReport& r) {
  return {{"verdict", to_string(r.verdict)}, {"numerator", series_json(r.numerator)}, {"rank_note", r.rank_note}};
}

json component_json(const std::string& label, const ComponentClass& c) {
  json out{{"component", label},
           {"parity", to_string(c.parity)},
           {"geometry", to_string(c.geometry)},
           {"disc_multiplicity", c.disc_multiplicity},
           {"core_multiplicity", c.core_multiplicity}};
  if (!c.note.empty()) out["note"] = c.note;
  return out;
}

json normal_form_json(const NormalFormData& nf) {
  return {{"m", nf.m},
          {"s", series1_json(nf.s)},
          {"t", series1_json(nf.t)},
          {"gcorr", series_json(nf.gcorr)},
          {"chart", {{"z1", series_json(nf.chart.first())}, {"z2", series_json(nf.chart.second())}}},
          {"chart_verified", nf.chart_verified},
          {"fout", series_json(nf.fout)},
          {"fout_z", series_json(nf.fout_z)}};
}

json theorem26_json(const Theorem26Data& d) {
  return {{"m", d.m},
          {"k", d.k},
          {"alpha", d.alpha.to_string()},
          {"constant", d.constant.to_string()},
          {"f", series1_json(d.f)},
          {"g", series1_json(d.g)},
          {"gauge", "g_0 = 0"},
          {"residual", series_json(d.residual)},
          {"residual_zero", d.residual_zero}};
}

json monodromy_json(const MonodromyIndex& mi) {
  json out{{"alpha", mi.alpha.to_string()},
           {"c", mi.exact_c ? json(mi.exact_c->to_string()) : complex_json(mi.c)},
           {"c_inverse", mi.exact_c ? json(mi.exact_c->inverse().to_string()) : complex_json(mi.c_inv)},
           {"order", to_string(mi.order)},
           {"heuristic", mi.heuristic}};
  if (mi.order != MonodromyOrder::infinite) out["n"] = mi.n;
  if (mi.order == MonodromyOrder::infinite && mi.heuristic) out["order_label"] = "infinite (no small rational found)";
  return out;
}

json leaf_json(const LeafClass& lc) {
  return {{"first_kind", lc.first_kind},
          {"singularity", to_string(lc.singularity)},
          {"monodromy", monodromy_json(lc.monodromy)},
          {"in_breakdown", lc.in_breakdown}};
}

json error_json(const Error& e) {
  json out{{"kind", to_string(e.kind())}, {"message", e.what()}};
  if (const auto* se = dynamic_cast<const SyntaxError*>(&e)) out["offset"] = se->offset();
  return out;
}

// --- job document -------------------------------------------------------

struct Job {
  int truncation = kDefaultTruncation;
  Backend backend = Backend::exact;
  std::optional<DifferentialInput> w;
  json components = json::array();
  std::optional<expr::Expr> base_shift;
  std::optional<int> m;
  std::optional<expr::Expr> alpha;
  std::optional<std::pair<expr::Expr, expr::Expr>> pullback;  // z = (first, second)(y)
};

std::string expression_text(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  invalid("\"" + key + "\" must be an expression string");
}

expr::Expr expression(const json& obj, const std::string& key) {
  if (!obj.contains(key)) invalid("missing \"" + key + "\"");
  return expr::parse(expression_text(obj.at(key), key));
}

Job parse_job(const json& doc) {
  if (!doc.is_object()) invalid("job must be a single JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (std::find(kJobKeys.begin(), kJobKeys.end(), key) == kJobKeys.end()) invalid("unknown key \"" + key + "\"");
  }
  Job job;
  if (doc.contains("truncation")) {
    const json& n = doc.at("truncation");
    if (!n.is_number_integer()) invalid("\"truncation\" must be an integer");
    job.truncation = n.get<int>();
    if (job.truncation < kMinTruncation || job.truncation > kMaxTruncation) {
      invalid("\"truncation\" must lie in [" + std::to_string(kMinTruncation) + ", " + std::to_string(kMaxTruncation) +
              "]");
    }
  }
  if (doc.contains("backend")) {
    if (!doc.at("backend").is_string()) invalid("\"backend\" must be \"exact\" or \"approx\"");
    job.backend = parse_backend(doc.at("backend").get<std::string>());
  }
  if (doc.contains("w")) {
    const json& w = doc.at("w");
    if (!w.is_object()) invalid("\"w\" must be an object");
    bool coeff = w.contains("a") || w.contains("b") || w.contains("c");
    bool prod = w.contains("u") || w.contains("r") || w.contains("scale");
    if (coeff == prod) invalid("\"w\" needs either {a, b, c} or {scale, u, r}");
    for (const auto& [key, _] : w.items()) {
      const std::vector<std::string> allowed = coeff ? std::vector<std::string>{"a", "b", "c"}
                                                     : std::vector<std::string>{"scale", "u", "r"};
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) invalid("unknown key \"w." + key + "\"");
    }
    if (coeff) {
      job.w = CoefficientForm{expression(w, "a"), expression(w, "b"), expression(w, "c")};
    } else {
      expr::Expr scale = w.contains("scale") ? expression(w, "scale") : expr::parse("1");
      job.w = ProductForm{scale, expression(w, "u"), expression(w, "r")};
    }
  }
  if (doc.contains("components")) {
    if (!doc.at("components").is_array()) invalid("\"components\" must be a list");
    job.components = doc.at("components");
  }
  if (doc.contains("base_shift")) job.base_shift = expression(doc, "base_shift");
  if (doc.contains("m")) {
    if (!doc.at("m").is_number_integer() || doc.at("m").get<int>() < 0) invalid("\"m\" must be a nonnegative integer");
    job.m = doc.at("m").get<int>();
  }
  if (doc.contains("alpha")) job.alpha = expression(doc, "alpha");
  if (doc.contains("pullback")) {
    const json& map = doc.at("pullback");
    if (!map.is_object() || map.size() != 2) invalid("\"pullback\" must be {\"z1\": ..., \"z2\": ...}");
    job.pullback = std::pair{expression(map, "z1"), expression(map, "z2")};
  }
  return job;
}

std::vector<Component> build_components(const Job& job) {
  std::vector<Component> out;
  for (const json& entry : job.components) {
    std::optional<int> expect;
    std::string text;
    if (entry.is_object()) {
      if (!entry.contains("h")) invalid("component objects need \"h\"");
      text = expression_text(entry.at("h"), "h");
      if (entry.contains("expect")) {
        if (!entry.at("expect").is_number_integer()) invalid("\"expect\" must be an integer");
        expect = entry.at("expect").get<int>();
      }
    } else {
      text = expression_text(entry, "components");
    }
    expr::Expr e = expr::parse(text);
    std::string label = expr::print(e);
    Component c = label == "z1"   ? Component::axis(Var::z1, job.backend, job.truncation)
                  : label == "z2" ? Component::axis(Var::z2, job.backend, job.truncation)
                                  : Component::curve(label, expr::eval(e, job.truncation, job.backend));
    c.expected_multiplicity = expect;
    out.push_back(std::move(c));
  }
  return out;
}

const DifferentialInput& require_w(const Job& job) {
  if (!job.w) invalid("missing \"w\"");
  return *job.w;
}

// w in coefficient form, pulled back along the job's map when one is given.
SymTwoDiff differential(const Job& job) {
  SymTwoDiff w = expand(require_w(job), job.truncation, job.backend);
  if (!job.pullback) return w;
  CoordMap phi(expr::eval(job.pullback->first, job.truncation, job.backend),
               expr::eval(job.pullback->second, job.truncation, job.backend));
  return pullback(w, phi);
}

const ProductForm& require_product(const Job& job, std::string_view command) {
  const auto* pf = std::get_if<ProductForm>(&require_w(job));
  if (!pf) invalid(std::string(command) + " needs w in product form {scale, u, r}");
  if (job.pullback) invalid(std::string(command) + " does not accept \"pullback\"");
  return *pf;
}

// --- commands -------------------------------------------------------------

struct Sink {
  json& results;
  json& warnings;
};

struct Decomposition {
  std::optional<NormalFormData> normal_form;
  Theorem26Data data;
};

Decomposition decompose_leaf(const Job& job, std::string_view command) {
  const ProductForm& pf = require_product(job, command);
  if (job.m) {
    // Already in normal form: scale is v, and u, r must be z1, z1 (1 + z1^m z2).
    int n = job.truncation;
    Series2 model = Series2::variable(Var::z1, job.backend, n + 1) *
                    Series2::monomial(Scalar::one(job.backend), *job.m, 1, n + 1).plus_constant(Scalar::one(job.backend));
    if (!expr::eval(pf.u, n + 1, job.backend).equals(Series2::variable(Var::z1, job.backend, n + 1)) ||
        !expr::eval(pf.r, n + 1, job.backend).equals(model)) {
      invalid("with \"m\" given, w must read v dz1 d[z1 (1 + z1^m z2)]: u = z1 and r = z1*(1+z1^m*z2)");
    }
    return {std::nullopt, theorem26_solve(expr::eval(pf.scale, n, job.backend), *job.m)};
  }
  NormalFormData nf = lemma25_chart(pf, job.truncation, job.backend, job.base_shift.value_or(expr::parse("0")));
  Theorem26Data d = theorem26_solve(nf.fout_z, nf.m);
  return {std::move(nf), std::move(d)};
}

int cmd_analyze(const Job& job, Sink sink) {
  SymTwoDiff w = differential(job);
  json& res = sink.results;
  auto section = [&](const std::string& name, auto&& fn) {
    try {
      res[name] = fn();
    } catch (const Error& e) {
      res[name] = {{"error", error_json(e)}};
      sink.warnings.push_back(name + ": " + e.what());
    }
  };
  res["coefficients"] = {{"a", series_json(w.a)}, {"b", series_json(w.b)}, {"c", series_json(w.c)}};
  res["discriminant"] = series_json(discriminant(w));
  std::optional<int> rk;
  section("rank", [&] {
    rk = rank(w);
    return json(*rk);
  });
  section("closedness", [&] { return closedness_json(is_closed(w)); });
  std::vector<Component> comps = build_components(job);
  if (rk == 2) {
    section("split", [&] {
      std::vector<Component> curves;
      for (const Component& c : comps) {
        if (!c.axis_var()) curves.push_back(c);
      }
      return split_json(w, split(w, curves));
    });
  }
  if (!comps.empty()) {
    section("core_discriminant", [&] {
      json table = json::array();
      for (const MultiplicityRow& row : core_discriminant(w, comps).table) {
        table.push_back({{"component", row.component},
                         {"disc_multiplicity", row.in_discriminant},
                         {"content_multiplicity", row.in_divisorial_zero},
                         {"core_multiplicity", row.in_core}});
      }
      return table;
    });
  }
  return kOk;
}

int cmd_split(const Job& job, Sink sink) {
  SymTwoDiff w = differential(job);
  std::vector<Component> curves;
  for (const Component& c : build_components(job)) {
    if (!c.axis_var()) curves.push_back(c);
  }
  SplitResult r = split(w, curves);
  sink.results["split"] = split_json(w, r);
  if (const auto* ns = std::get_if<NotSplit>(&r)) {
    sink.warnings.push_back("w does not split along " + ns->component + "; pull back by z1 = s^" +
                            std::to_string(ns->suggested_cover_degree) + " after moving the component to an axis");
    return kNegative;
  }
  return kOk;
}

int cmd_closedness(const Job& job, Sink sink) {
  SymTwoDiff w = differential(job);
  ClosednessReport r = is_closed(w);
  sink.results["closedness"] = closedness_json(r);
  return r.verdict == Verdict::yes ? kOk : kNegative;
}

int cmd_decompose(const Job& job, Sink sink) {
  const auto* cf = std::get_if<CoefficientForm>(&require_w(job));
  if (!cf) invalid("decompose needs w = g dz1 dz2 in coefficient form {a: 0, b: g, c: 0}");
  SymTwoDiff w = differential(job);
  if (!w.a.is_zero() || !w.c.is_zero()) invalid("decompose needs a = c = 0 (w = g dz1 dz2)");
  DecomposeResult r = first_kind_decompose(w.b);
  json out{{"brioschi_zero", brioschi_numerator(w).is_zero()}};
  int code = kOk;
  if (const auto* sep = std::get_if<Separation>(&r)) {
    out["verdict"] = "separable";
    out["f"] = series1_json(sep->f);
    out["h"] = series1_json(sep->h);
  } else {
    out["verdict"] = "not_separable";
    out["residual"] = series_json(std::get<NotSeparable>(r).residual);
    code = kNegative;
  }
  sink.results["decompose"] = std::move(out);
  return code;
}

int cmd_normal_form(const Job& job, Sink sink) {
  const ProductForm& pf = require_product(job, "normal-form");
  NormalFormData nf = lemma25_chart(pf, job.truncation, job.backend, job.base_shift.value_or(expr::parse("0")));
  sink.results["normal_form"] = normal_form_json(nf);
  if (!nf.chart_verified) {
    sink.warnings.push_back("chart identity r = z1 (1 + z1^m z2) not confirmed at this truncation");
    return kPrecision;
  }
  return kOk;
}

int cmd_theorem26(const Job& job, Sink sink) {
  Decomposition dec = decompose_leaf(job, "theorem26");
  if (dec.normal_form) sink.results["normal_form"] = normal_form_json(*dec.normal_form);
  sink.results["theorem26"] = theorem26_json(dec.data);
  if (!dec.data.residual_zero) {
    sink.warnings.push_back("nonzero residual: the differential is not closed");
    return kNegative;
  }
  return kOk;
}

int cmd_classify(const Job& job, Sink sink) {
  const DifferentialInput& input = require_w(job);
  std::vector<Component> comps = build_components(job);
  bool product_form = std::holds_alternative<ProductForm>(input);
  if (comps.empty() && !product_form) invalid("classify needs \"components\" or w in product form");
  int code = kOk;
  if (!comps.empty()) {
    SymTwoDiff w = differential(job);
    json list = json::array();
    for (const Component& c : comps) {
      ComponentClass cls = classify_component(w, c);
      if (cls.geometry == Geometry::undecided) {
        sink.warnings.push_back(c.label() + ": " + cls.note);
        code = kNegative;
      }
      list.push_back(component_json(c.label(), cls));
    }
    sink.results["components"] = std::move(list);
  }
  if (product_form) {
    Decomposition dec = decompose_leaf(job, "classify");
    sink.results["theorem26"] = theorem26_json(dec.data);
    LeafClass lc = classify_leaf(dec.data);
    sink.results["leaf"] = leaf_json(lc);
    if (lc.monodromy.heuristic) sink.warnings.push_back("monodromy order decided from floating point data");
  }
  return code;
}

int cmd_monodromy(const Job& job, Sink sink) {
  Scalar alpha;
  if (job.alpha) {
    alpha = expr::eval_constant(*job.alpha, job.backend);
  } else {
    Decomposition dec = decompose_leaf(job, "monodromy");
    if (!dec.data.residual_zero) {
      throw Error(ErrorKind::nonzero_residual, "the normal form does not decompose; alpha is undefined");
    }
    alpha = dec.data.alpha;
  }
  MonodromyIndex mi = monodromy_index(alpha);
  sink.results["monodromy"] = monodromy_json(mi);
  if (mi.heuristic) {
    sink.warnings.push_back("rationality of alpha reconstructed from floating point with denominators <= " +
                            std::to_string(rational_denominator_bound()));
  }
  return kOk;
}

int dispatch(std::string_view command, const Job& job, Sink sink) {
  if (command == "analyze") return cmd_analyze(job, sink);
  if (command == "split") return cmd_split(job, sink);
  if (command == "closedness") return cmd_closedness(job, sink);
  if (command == "decompose") return cmd_decompose(job, sink);
  if (command == "normal-form") return cmd_normal_form(job, sink);
  if (command == "theorem26") return cmd_theorem26(job, sink);
  if (command == "classify") return cmd_classify(job, sink);
  if (command == "monodromy") return cmd_monodromy(job, sink);
  invalid("unknown command \"" + std::string(command) + "\"");
}

void flatten(const json& node, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows) {
  if (node.is_object() && !node.empty()) {
    for (const auto& [key, value] : node.items()) flatten(value, path.empty() ? key : path + "." + key, rows);
  } else if (node.is_array() && !node.empty()) {
    for (std::size_t i = 0; i < node.size(); ++i) flatten(node[i], path + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(path, node.is_string() ? node.get<std::string>() : node.dump());
  }
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::nonzero_residual:
      return kNegative;
    case ErrorKind::precision:
    case ErrorKind::zero_series:
    case ErrorKind::precision_exhausted:
    case ErrorKind::inconclusive:
      return kPrecision;
    default:
      return kInputError;
  }
}

Outcome run_job(std::string_view command, std::string_view job_text) {
  json report{{"command", std::string(command)},
              {"results", json::object()},
              {"warnings", json::array()},
              {"errors", json::array()}};
  int code = kOk;
  try {
    json doc = json::parse(job_text, nullptr, false);
    if (doc.is_discarded()) invalid("input is not a JSON document");
    report["input"] = doc;
    Job job = parse_job(doc);
    code = dispatch(command, job, Sink{report["results"], report["warnings"]});
  } catch (const Error& e) {
    report["errors"].push_back(error_json(e));
    code = exit_code_for(e.kind());
  } catch (const std::exception& e) {
    report["errors"].push_back({{"kind", "InternalError"}, {"message", e.what()}});
    code = kInputError;
  }
  report["exit_code"] = code;
  report["status"] = status_name(code);
  return {code, std::move(report)};
}

std::string print_report(const json& report, Format format) {
  if (format == Format::json) return report.dump(2);
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.first.size());
  std::ostringstream out;
  for (const auto& [key, value] : rows) out << key << std::string(width - key.size() + 2, ' ') << value << '\n';
  std::string text = out.str();
  if (!text.empty()) text.pop_back();
  return text;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out) {
  CLI::App app{"Local analysis of symmetric 2-differentials on complex surfaces", "symtwo"};
  std::string command;
  std::string input = "-";
  std::string format = "json";
  app.add_option("command", command, "Analysis to run")->required()->check(CLI::IsMember(kCommands));
  app.add_option("-i,--input", input, "Job document path, or - for standard input");
  app.add_option("-f,--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    json report{{"command", command},
                {"results", json::object()},
                {"warnings", json::array()},
                {"errors", json::array({{{"kind", "InvalidInput"}, {"message", e.what()}}})},
                {"exit_code", kInputError},
                {"status", status_name(kInputError)}};
    out << print_report(report, Format::json) << '\n';
    return kInputError;
  }
  Format fmt = format == "text" ? Format::text : Format::json;

  std::string text;
  if (input == "-") {
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  } else {
    std::ifstream file(input);
    if (!file) {
      Outcome o{kInputError, {{"command", command},
                              {"results", json::object()},
                              {"warnings", json::array()},
                              {"errors", json::array({{{"kind", "InvalidInput"}, {"message", "cannot read " + input}}})},
                              {"exit_code", kInputError},
                              {"status", status_name(kInputError)}}};
      out << print_report(o.report, fmt) << '\n';
      return o.exit_code;
    }
    std::ostringstream buf;
    buf << file.rdbuf();
    text = buf.str();
  }
  Outcome o = run_job(command, text);
  out << print_report(o.report, fmt) << '\n';
  return o.exit_code;
}

}  // namespace symtwo::cli
