#pragma once

// Generators and independent reference computations shared by the unit
// tests and the acceptance binary. Nothing here calls into the series engine.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sigmapi/frame.hpp"
#include "sigmapi/ode.hpp"

namespace sigmapi::testing {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);

/// m x m constant frame with entries uniform in [lo, hi].
QuadraticFrame random_stationary_frame(Rng& rng, std::size_t m, double lo = -1.0, double hi = 1.0);

/// Same shape with some entries replaced by exact linear/quadratic jets.
QuadraticFrame random_jet_frame(Rng& rng, std::size_t m);

std::vector<double> random_point(Rng& rng, std::size_t m, double lo, double hi);

/// Exponent pool {-3..3} u {+-1/2, +-1/3}; n <= n_max, 1 <= nu_i <= nu_max.
SigmaPiOde random_sigma_pi_ode(Rng& rng, std::size_t n_max, std::size_t nu_max, bool jet_coeffs);

/// x_i' = sum_l v_{i,l} x_i x_l with every l written out in order.
SigmaPiOde random_driver_type_ode(Rng& rng, std::size_t n);

/// Wide generator for the text round trip: integer, rational and decimal
/// exponents, exact and truncated jets, zero equations and zero terms.
SigmaPiOde random_text_ode(Rng& rng);

/// c_k(root) by summing over every ordered index string i_1..i_k in
/// {0..m-1}^k (no support restriction, no aggregation).
std::vector<double> ordered_string_coefficients(const QuadraticFrame& frame, std::size_t root,
                                                const std::vector<double>& x0, int order);

/// Taylor-mode reference for x_i' = (v_i(t)' x) x_i: derivatives at t0 from
/// truncated power-series arithmetic on the state itself.
std::vector<std::vector<double>> taylor_mode_derivatives(const QuadraticFrame& frame,
                                                         const std::vector<double>& x0, double t0,
                                                         int order);

/// Richardson-extrapolated central difference of order k (1..4) of f at t.
template <class F>
double richardson_derivative(F f, double t, double H, int k);

double rel_err(double got, double want, double floor = 0.0);

std::string join(const std::vector<double>& v);

// ---------------------------------------------------------------------------

template <class F>
double central_difference(F f, double t, double H, int k) {
  switch (k) {
    case 1: return (f(t + H) - f(t - H)) / (2 * H);
    case 2: return (f(t + H) - 2 * f(t) + f(t - H)) / (H * H);
    case 3: return (f(t + 2 * H) - 2 * f(t + H) + 2 * f(t - H) - f(t - 2 * H)) / (2 * H * H * H);
    case 4:
      return (f(t + 2 * H) - 4 * f(t + H) + 6 * f(t) - 4 * f(t - H) + f(t - 2 * H)) / (H * H * H * H);
    default: return 0.0;
  }
}

template <class F>
double richardson_derivative(F f, double t, double H, int k) {
  const double coarse = central_difference(f, t, H, k);
  const double fine = central_difference(f, t, H / 2, k);
  return (4 * fine - coarse) / 3;
}

}  // namespace sigmapi::testing
