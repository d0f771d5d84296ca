#include "sigmapi/ode.hpp"

#include <string>

#include "sigmapi/errors.hpp"

namespace sigmapi {

SigmaPiOde::SigmaPiOde(std::vector<std::vector<Term>> equations) : equations_(std::move(equations)) {
  const std::size_t n = equations_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& term : equations_[i])
      if (!term.monomial.is_constant() && term.monomial.max_index() >= n)
        throw Error(ErrorCode::InvalidArgument,
                    "equation " + std::to_string(i + 1) + " references x" +
                        std::to_string(term.monomial.max_index() + 1) + " beyond n = " +
                        std::to_string(n));
}

std::size_t SigmaPiOde::total_terms() const {
  std::size_t d = 0;
  for (const auto& eq : equations_) d += eq.size();
  return d;
}

SigmaPiOde SigmaPiOde::with_term(std::size_t i, Term term) const {
  auto eqs = equations_;
  eqs.at(i).push_back(std::move(term));
  return SigmaPiOde(std::move(eqs));
}

std::vector<double> evaluate_rhs(const SigmaPiOde& ode, double t, std::span<const double> x) {
  std::vector<double> out(ode.dim(), 0.0);
  for (std::size_t i = 0; i < ode.dim(); ++i)
    for (const auto& term : ode.equation(i)) out[i] += term.coeff(t) * term.monomial.eval(x);
  return out;
}

}  // namespace sigmapi
