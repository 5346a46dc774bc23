// Benchmark of the OpenMP kernels against their serial reference
// implementations: Monte Carlo endpoint sampling and dimension-table fills.

#include <omp.h>

#include <chrono>
#include <cstdio>

#include "wpg/dims.hpp"
#include "wpg/simulate.hpp"

using namespace wpg;

namespace {

template <class Fn>
double time_ms(Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-44s %10.1f %10.1f %8.2fx\n", name, serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-44s %10s %10s %9s\n", "kernel", "serial/ms", "openmp/ms", "speedup");

  {
    ProcessSpec polya;
    polya.kind = ProcessSpec::Kind::Polya;
    polya.a = 2;
    polya.b = 3;
    auto kernel = process_kernel(polya);
    EndpointHistogram hs, hp;
    double s = time_ms([&] { hs = sample_paths(kernel, 2000, 20000, 42, false); });
    double p = time_ms([&] { hp = sample_paths(kernel, 2000, 20000, 42, true); });
    row("sample_paths polya n=2000 R=2e4", s, p);
    if (hs.counts != hp.counts) std::printf("  MISMATCH: parallel histogram differs!\n");
  }
  {
    ProcessSpec friedman;
    friedman.kind = ProcessSpec::Kind::Friedman;
    friedman.a = 1;
    friedman.b = 1;
    LlnReport rs, rp;
    double s = time_ms([&] { rs = lln_diagnostic(friedman, Scaler::N, 0, 10000, 1000, 7, false); });
    double p = time_ms([&] { rp = lln_diagnostic(friedman, Scaler::N, 0, 10000, 1000, 7, true); });
    row("lln_diagnostic friedman n=1e4 R=1e3", s, p);
    if (rs.values != rp.values) std::printf("  MISMATCH: parallel values differ!\n");
  }
  {
    auto g = make_graph<double>(FamilySpec::eulerian(ScalarSpec(1L), ScalarSpec(1L)));
    double s = time_ms([&] { DimensionTable<double> d(g, 3000, FillMode::Serial); });
    double p = time_ms([&] { DimensionTable<double> d(g, 3000, FillMode::Parallel); });
    row("dimension fill (float) eulerian N=3000", s, p);
  }
  {
    auto g = make_graph<Rational>(FamilySpec::stirling1());
    double s = time_ms([&] { DimensionTable<Rational> d(g, 400, FillMode::Serial); });
    double p = time_ms([&] { DimensionTable<Rational> d(g, 400, FillMode::Parallel); });
    row("dimension fill (exact) stirling-1 N=400", s, p);
  }
  {
    auto g = make_graph<Rational>(FamilySpec::q_pascal(ScalarSpec::parse("1/2")));
    double s = time_ms([&] { DimensionTable<Rational> d(g, 200, FillMode::Serial); });
    double p = time_ms([&] { DimensionTable<Rational> d(g, 200, FillMode::Parallel); });
    row("dimension fill (exact) q-pascal N=200", s, p);
  }
  return 0;
}
