#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sigmapi/monomial.hpp"
#include "sigmapi/time_jet.hpp"

namespace sigmapi {

struct Term {
  TimeJet coeff;
  Monomial monomial;

  friend bool operator==(const Term&, const Term&) = default;
};

/// x_i' = sum_l v_{i,l}(t) X_{i,l}(x), i = 0..n-1. An equation with no terms
/// is the zero equation; it is kept distinct from one whose terms all carry
/// zero coefficients.
class SigmaPiOde {
 public:
  SigmaPiOde() = default;
  /// n zero equations.
  explicit SigmaPiOde(std::size_t n) : equations_(n) {}
  /// Throws InvalidArgument when a monomial references an index >= n.
  explicit SigmaPiOde(std::vector<std::vector<Term>> equations);

  std::size_t dim() const { return equations_.size(); }
  std::span<const Term> equation(std::size_t i) const { return equations_.at(i); }
  const std::vector<std::vector<Term>>& equations() const { return equations_; }

  /// nu_i
  std::size_t term_count(std::size_t i) const { return equations_.at(i).size(); }
  std::size_t total_terms() const;

  /// Copy with (coeff, monomial) appended to equation i.
  SigmaPiOde with_term(std::size_t i, Term term) const;

  friend bool operator==(const SigmaPiOde&, const SigmaPiOde&) = default;

 private:
  std::vector<std::vector<Term>> equations_;
};

/// Right-hand side at (t, x). Throws DomainError(DomainViolation) where a
/// power is undefined.
std::vector<double> evaluate_rhs(const SigmaPiOde& ode, double t, std::span<const double> x);

}  // namespace sigmapi
