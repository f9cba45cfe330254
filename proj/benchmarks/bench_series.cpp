#include <benchmark/benchmark.h>

#include "symtwo/coord_map.hpp"
#include "symtwo/expr.hpp"
#include "symtwo/series2.hpp"

using namespace symtwo;

namespace {

Backend backend_of(const benchmark::State& state) { return state.range(1) ? Backend::approx : Backend::exact; }

Series2 dense_unit(int n, Backend be) { return expr::eval(expr::parse("1/(1 - z1/2 - z2/3) + z1*z2"), n, be); }

void BM_Multiply(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Backend be = backend_of(state);
  Series2 a = dense_unit(n, be), b = expr::eval(expr::parse("exp(z1 - z2)"), n, be);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}

void BM_ExpLog(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Backend be = backend_of(state);
  Series2 u = dense_unit(n, be);
  for (auto _ : state) benchmark::DoNotOptimize(exp(log(u)));
}

void BM_ReverseMap(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Backend be = backend_of(state);
  CoordMap phi(expr::eval(expr::parse("z1 + z2^2 + z1*z2"), n, be), expr::eval(expr::parse("z2 + z1^2"), n, be));
  for (auto _ : state) benchmark::DoNotOptimize(reverse_map(phi));
}

void Sizes(benchmark::internal::Benchmark* b) {
  for (int n : {8, 12, 16}) {
    for (int approx : {0, 1}) b->Args({n, approx});
  }
  b->ArgNames({"N", "approx"})->Unit(benchmark::kMicrosecond);
}

}  // namespace

BENCHMARK(BM_Multiply)->Apply(Sizes);
BENCHMARK(BM_ExpLog)->Apply(Sizes);
BENCHMARK(BM_ReverseMap)->Apply(Sizes);
