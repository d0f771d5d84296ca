#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "sigmapi/frame.hpp"
#include "sigmapi/time_jet.hpp"

namespace sigmapi {

/// Unordered tail i_1..i_{s-1} of an index string, as sorted
/// (index, multiplicity) pairs.
class IndexMultiset {
 public:
  using Entry = std::pair<std::size_t, std::size_t>;

  IndexMultiset() = default;

  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return total_; }
  std::size_t count(std::size_t index) const;
  IndexMultiset with(std::size_t index) const;

  friend auto operator<=>(const IndexMultiset&, const IndexMultiset&) = default;

 private:
  std::vector<Entry> entries_;
  std::size_t total_ = 0;
};

struct Support {
  std::vector<std::size_t> columns;          // S
  std::vector<std::vector<std::size_t>> rho;  // rho[j] for every column j (empty off S)

  bool contains(std::size_t j) const;
};

Support support(const QuadraticFrame& frame);

using Layer = std::map<IndexMultiset, TimeJet>;

/// Aggregated recursion coefficients for one root index: layers[{k, s}].
/// Jets are polynomials in time, so one tensor serves every expansion point.
struct CoefficientTensor {
  std::size_t root = 0;
  int order = 0;  // K: holds layers k = 1..K+1
  std::map<std::pair<int, int>, Layer> layers;

  const Layer* layer(int k, int s) const;
};

enum class Execution { Serial, Parallel };

/// Recursion tensors for the requested roots, built once and reusable for any
/// (t0, x0). Stationary frames use the single-layer recursion.
struct SeriesPlan {
  QuadraticFrame frame;
  Support supp;
  int order = 0;
  bool stationary = false;
  std::vector<std::size_t> components;
  std::vector<CoefficientTensor> tensors;  // parallel to components
};

/// Largest supported order; k! overflows a double past it.
inline constexpr int kMaxOrder = 170;

/// Throws InvalidArgument for K outside [0, kMaxOrder]. An empty `components`
/// selects every index.
SeriesPlan plan_general(const QuadraticFrame& frame, int order,
                        std::span<const std::size_t> components = {},
                        Execution exec = Execution::Parallel);
/// Throws NotStationary when some entry depends on time.
SeriesPlan plan_stationary(const QuadraticFrame& frame, int order,
                           std::span<const std::size_t> components = {},
                           Execution exec = Execution::Parallel);

struct SeriesSolution {
  double t0 = 0.0;
  std::vector<double> x0;
  int order = 0;
  std::vector<std::size_t> components;
  /// coeffs[k][r] = c_k of components[r], the k-th derivative at t0.
  std::vector<std::vector<double>> coeffs;
  double radius_bound = std::numeric_limits<double>::infinity();
  std::uint64_t frame_ref = 0;

  /// c_k / k!
  double normalized(int k, std::size_t r) const;
};

/// Throws ZeroComponent for a vanishing x0 entry.
SeriesSolution assemble(const SeriesPlan& plan, std::span<const double> x0, double t0);

SeriesSolution taylor_general(const QuadraticFrame& frame, std::span<const double> x0, double t0,
                              int order, std::span<const std::size_t> components = {},
                              Execution exec = Execution::Parallel);
SeriesSolution taylor_stationary(const QuadraticFrame& frame, std::span<const double> x0, int order,
                                 std::span<const std::size_t> components = {},
                                 Execution exec = Execution::Parallel);

/// r = 1 / (sigma v_M x_M), +inf when sigma v_M = 0.
double convergence_bound(const QuadraticFrame& frame, std::span<const double> x0, double t0);

/// x_M / (1 - sigma v_M x_M |t - t0|). Throws OutOfRadius when |t - t0| >= r.
double bound_envelope(const QuadraticFrame& frame, std::span<const double> x0, double t0, double t);

struct Evaluation {
  std::vector<double> values;
  std::vector<double> error_estimate;  // |last kept term|
  bool outside_radius = false;
};

Evaluation evaluate(const SeriesSolution& series, double t);

struct ContinuationPolicy {
  double step_fraction = 0.5;
  int max_steps = 1000;
  /// Relative size of the last kept term above which a step is halved.
  double truncation_tolerance = 1e-13;
  int max_halvings = 40;
};

struct Continuation {
  std::vector<double> values;
  std::vector<double> path;  // centers reached, ending at the target
};

/// Analytic prolongation by repeated re-expansion. Throws DomainExit,
/// StepLimit or Divergence instead of returning a doubtful value.
Continuation continue_to(const QuadraticFrame& frame, std::span<const double> x0, double t0,
                         double target, int order, const ContinuationPolicy& policy = {});

/// Truncated power series sum a_k (t - t0)^k.
struct ScalarSeries {
  double t0 = 0.0;
  std::vector<double> normalized;

  double operator()(double t) const;
};

ScalarSeries component_series(const SeriesSolution& series, std::size_t r);

/// prod_r series[r]^q[r] (integer q, negative powers through the reciprocal
/// series). Throws MixedCenters when the centers differ.
ScalarSeries observable_series(std::span<const ScalarSeries> series, std::span<const int> q);
/// Same over the components of one solution.
ScalarSeries observable_series(const SeriesSolution& series, std::span<const int> q);

}  // namespace sigmapi
