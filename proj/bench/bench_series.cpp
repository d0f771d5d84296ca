// Serial vs OpenMP tensor construction. Roots are independent, so the
// parallel path distributes them over threads; results must match bit for bit.

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>

#include "sigmapi/series.hpp"

using namespace sigmapi;

namespace {

QuadraticFrame make_frame(std::size_t m, bool jets, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  QuadraticFrame f(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) f(i, j) = jets ? TimeJet({u(rng), u(rng)}) : TimeJet::constant(u(rng));
  return f;
}

template <class F>
double best_of(int reps, F f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"series engine benchmark"};
  int reps = 3;
  app.add_option("--reps", reps, "repetitions, best time is reported")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  struct Case {
    const char* name;
    std::size_t m;
    int order;
    bool jets;
  };
  const Case cases[] = {
      {"stationary", 8, 10, false},
      {"stationary", 12, 8, false},
      {"general", 6, 7, true},
      {"general", 8, 6, true},
  };

  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-11s %3s %3s %12s %12s %8s %s\n", "kind", "m", "K", "serial [s]", "parallel [s]", "speedup", "match");
  std::mt19937_64 rng(42);
  bool all_match = true;
  for (const auto& c : cases) {
    const auto f = make_frame(c.m, c.jets, rng);
    std::vector<double> x0(c.m, 0.5);
    auto run = [&](Execution e) {
      return c.jets ? taylor_general(f, x0, 0.1, c.order, {}, e) : taylor_stationary(f, x0, c.order, {}, e);
    };
    SeriesSolution s, p;
    const double ts = best_of(reps, [&] { s = run(Execution::Serial); });
    const double tp = best_of(reps, [&] { p = run(Execution::Parallel); });
    const bool match = s.coeffs == p.coeffs;
    all_match = all_match && match;
    std::printf("%-11s %3zu %3d %12.4f %12.4f %8.2f %s\n", c.name, c.m, c.order, ts, tp, ts / tp,
                match ? "yes" : "NO");
  }
  return all_match ? 0 : 1;
}
