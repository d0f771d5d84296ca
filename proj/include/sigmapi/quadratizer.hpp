#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sigmapi/frame.hpp"
#include "sigmapi/ode.hpp"

namespace sigmapi {

enum class QuadratizationKind { Canonical, Inclusive, Inverse };

const char* to_string(QuadratizationKind k);

/// Driver coordinate Z_{i,l} = x_i^{-1} X_{i,l}, flattened to s = offset[i] + l.
struct DriverCoordinate {
  std::size_t equation = 0;
  std::size_t term = 0;
};

struct Quadratization {
  /// The quadratized ODE. For inclusive quadratizations this already holds
  /// the appended 0 * x_i^2 terms.
  SigmaPiOde source;
  QuadratizationKind kind = QuadratizationKind::Canonical;
  /// pi[s][j] = p^l_{i,j} - delta_{i,j}
  std::vector<std::vector<Exponent>> pi;
  std::vector<Monomial> phi;
  std::vector<DriverCoordinate> coords;
  std::vector<std::size_t> offset;  // alpha_i
  /// Per equation, the coordinate with Phi = x_i when one exists.
  std::vector<std::optional<std::size_t>> identity;

  std::size_t driver_dim() const { return phi.size(); }
  std::size_t flatten(std::size_t i, std::size_t l) const { return offset[i] + l; }
};

Quadratization quadratize_canonical(const SigmaPiOde& ode);
Quadratization quadratize_inclusive(const SigmaPiOde& ode);
/// Same coordinate layout as the canonical one; the state is W = Z^{-1}.
Quadratization inverse_driver(const SigmaPiOde& ode);

/// V_{(i,l),(j,t)} = pi^l_{i,j} v_{j,t}. Throws NotQuadratic for the inverse
/// orientation, whose right-hand side is not quadratic in W.
QuadraticFrame driver_frame(const Quadratization& q);

/// The inverse Driver W_s' = -(sum_j pi_s[j] sum_t v_{j,t} W_{(j,t)}^{-1}) W_s
/// written as a sigma-pi ODE in W.
SigmaPiOde inverse_driver_ode(const Quadratization& q);

/// Z = Phi(x). Throws DomainError(DomainViolation) where a power is undefined.
std::vector<double> phi_eval(const Quadratization& q, std::span<const double> x);

/// Appends (0, monomial) to equation `host`.
SigmaPiOde add_fictitious_monomial(const SigmaPiOde& ode, std::size_t host, const Monomial& monomial);

}  // namespace sigmapi
