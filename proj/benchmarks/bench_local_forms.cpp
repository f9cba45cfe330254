#include <benchmark/benchmark.h>

#include "symtwo/closedness.hpp"
#include "symtwo/expr.hpp"
#include "symtwo/local_forms.hpp"

using namespace symtwo;

namespace {

void BM_Theorem26Essential(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Series2 v = expr::eval(expr::parse("exp(z2/(1+z1*z2))"), n, Backend::exact);
  for (auto _ : state) benchmark::DoNotOptimize(theorem26_solve(v, 1));
}

void BM_Lemma25Chart(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  ProductForm pf{expr::parse("exp(z1 + z2)"), expr::parse("z1"), expr::parse("z1*(1 + z1*z2 + z1*z2^2)")};
  for (auto _ : state) {
    benchmark::DoNotOptimize(lemma25_chart(pf, n, Backend::exact, expr::parse("0")));
  }
}

void BM_BrioschiNumerator(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto at = [n](const char* text) { return expr::eval(expr::parse(text), n, Backend::exact); };
  SymTwoDiff w{at("1 + z1 + z2^2"), at("z1*z2 + exp(z1)"), at("1/(1 - z2) + z1*z2"), std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(brioschi_numerator(w));
}

void BM_Split(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto at = [n](const char* text) { return expr::eval(expr::parse(text), n, Backend::exact); };
  SymTwoDiff w{at("1"), at("z1*z2"), Series2::zero(Backend::exact, n), std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(split(w));
}

}  // namespace

BENCHMARK(BM_Theorem26Essential)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Lemma25Chart)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BrioschiNumerator)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Split)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMicrosecond);
