#include "sigmapi/quadratizer.hpp"

#include "sigmapi/errors.hpp"

namespace sigmapi {

const char* to_string(QuadratizationKind k) {
  switch (k) {
    case QuadratizationKind::Canonical: return "canonical";
    case QuadratizationKind::Inclusive: return "inclusive";
    case QuadratizationKind::Inverse: return "inverse";
  }
  return "unknown";
}

namespace {

Quadratization build(const SigmaPiOde& ode, QuadratizationKind kind) {
  Quadratization q;
  q.source = ode;
  q.kind = kind;
  const std::size_t n = ode.dim();
  q.identity.assign(n, std::nullopt);
  const Exponent one = Exponent::integer(1);
  for (std::size_t i = 0; i < n; ++i) {
    q.offset.push_back(q.phi.size());
    const auto eq = ode.equation(i);
    for (std::size_t l = 0; l < eq.size(); ++l) {
      Monomial phi = eq[l].monomial;
      phi.multiply(i, Exponent::integer(-1));
      std::vector<Exponent> row(n);
      for (const auto& [j, p] : phi.factors()) row[j] = p;
      if (!q.identity[i] && phi == Monomial::variable(i, one)) q.identity[i] = q.phi.size();
      q.pi.push_back(std::move(row));
      q.phi.push_back(std::move(phi));
      q.coords.push_back({i, l});
    }
  }
  return q;
}

}  // namespace

Quadratization quadratize_canonical(const SigmaPiOde& ode) {
  if (ode.total_terms() == 0)
    throw DomainError(ErrorCode::EmptySystem, "every equation is the zero equation");
  return build(ode, QuadratizationKind::Canonical);
}

Quadratization quadratize_inclusive(const SigmaPiOde& ode) {
  SigmaPiOde extended = ode;
  for (std::size_t i = 0; i < ode.dim(); ++i) {
    const Monomial square = Monomial::variable(i, Exponent::integer(2));
    bool present = false;
    for (const auto& term : ode.equation(i)) present = present || term.monomial == square;
    if (!present) extended = add_fictitious_monomial(extended, i, square);
  }
  return build(extended, QuadratizationKind::Inclusive);
}

Quadratization inverse_driver(const SigmaPiOde& ode) {
  if (ode.total_terms() == 0)
    throw DomainError(ErrorCode::EmptySystem, "every equation is the zero equation");
  return build(ode, QuadratizationKind::Inverse);
}

QuadraticFrame driver_frame(const Quadratization& q) {
  if (q.kind == QuadratizationKind::Inverse)
    throw NumericError(ErrorCode::NotQuadratic, "the inverse Driver has no quadratic frame");
  const std::size_t d = q.driver_dim();
  QuadraticFrame frame(d);
  for (std::size_t s = 0; s < d; ++s) {
    for (std::size_t j = 0; j < q.source.dim(); ++j) {
      const double p = q.pi[s][j].value();
      if (p == 0.0) continue;
      const auto eq = q.source.equation(j);
      for (std::size_t t = 0; t < eq.size(); ++t)
        if (!eq[t].coeff.is_zero()) frame(s, q.flatten(j, t)) = eq[t].coeff * p;
    }
  }
  return frame;
}

SigmaPiOde inverse_driver_ode(const Quadratization& q) {
  const std::size_t d = q.driver_dim();
  std::vector<std::vector<Term>> eqs(d);
  for (std::size_t s = 0; s < d; ++s) {
    for (std::size_t j = 0; j < q.source.dim(); ++j) {
      const double p = q.pi[s][j].value();
      if (p == 0.0) continue;
      const auto eq = q.source.equation(j);
      for (std::size_t t = 0; t < eq.size(); ++t) {
        if (eq[t].coeff.is_zero()) continue;
        const std::size_t c = q.flatten(j, t);
        Monomial m = Monomial::variable(s);
        m.multiply(c, Exponent::integer(-1));
        eqs[s].push_back({eq[t].coeff * -p, std::move(m)});
      }
    }
  }
  return SigmaPiOde(std::move(eqs));
}

std::vector<double> phi_eval(const Quadratization& q, std::span<const double> x) {
  if (x.size() != q.source.dim())
    throw Error(ErrorCode::InvalidArgument, "state dimension does not match the ODE");
  std::vector<double> z;
  z.reserve(q.driver_dim());
  for (const auto& m : q.phi) z.push_back(m.eval(x));
  return z;
}

SigmaPiOde add_fictitious_monomial(const SigmaPiOde& ode, std::size_t host, const Monomial& monomial) {
  if (host >= ode.dim()) throw Error(ErrorCode::InvalidArgument, "host index out of range");
  return ode.with_term(host, {TimeJet::zero(), monomial});
}

}  // namespace sigmapi
