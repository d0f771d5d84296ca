#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace sigmapi::testing {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

QuadraticFrame random_stationary_frame(Rng& rng, std::size_t m, double lo, double hi) {
  std::vector<std::vector<double>> rows(m, std::vector<double>(m));
  for (auto& row : rows)
    for (auto& v : row) v = uniform(rng, lo, hi);
  return QuadraticFrame::constant(rows);
}

QuadraticFrame random_jet_frame(Rng& rng, std::size_t m) {
  QuadraticFrame f(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const int kind = static_cast<int>(rng() % 4);
      if (kind == 0) continue;
      std::vector<double> c{uniform(rng, -1, 1)};
      if (kind >= 2) c.push_back(uniform(rng, -1, 1));
      if (kind == 3) c.push_back(uniform(rng, -0.5, 0.5));
      f(i, j) = TimeJet(c);
    }
  }
  return f;
}

std::vector<double> random_point(Rng& rng, std::size_t m, double lo, double hi) {
  std::vector<double> x(m);
  for (auto& v : x) v = uniform(rng, lo, hi);
  return x;
}

namespace {

Exponent pooled_exponent(Rng& rng) {
  static const Exponent pool[] = {
      Exponent::integer(-3), Exponent::integer(-2), Exponent::integer(-1), Exponent::integer(0),
      Exponent::integer(1),  Exponent::integer(2),  Exponent::integer(3),  Rational{1, 2},
      Rational{-1, 2},       Rational{1, 3},        Rational{-1, 3}};
  return pool[rng() % std::size(pool)];
}

}  // namespace

SigmaPiOde random_sigma_pi_ode(Rng& rng, std::size_t n_max, std::size_t nu_max, bool jet_coeffs) {
  const std::size_t n = 1 + rng() % n_max;
  std::vector<std::vector<Term>> eqs(n);
  for (auto& eq : eqs) {
    const std::size_t nu = 1 + rng() % nu_max;
    for (std::size_t l = 0; l < nu; ++l) {
      std::vector<Monomial::Factor> factors;
      for (std::size_t j = 0; j < n; ++j) factors.emplace_back(j, pooled_exponent(rng));
      TimeJet c = jet_coeffs ? TimeJet({uniform(rng, -1, 1), uniform(rng, -1, 1)})
                             : TimeJet::constant(uniform(rng, -1, 1));
      eq.push_back({c, Monomial(std::move(factors))});
    }
  }
  return SigmaPiOde(std::move(eqs));
}

SigmaPiOde random_driver_type_ode(Rng& rng, std::size_t n) {
  std::vector<std::vector<Term>> eqs(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      Monomial m = Monomial::variable(i);
      m.multiply(l, Exponent::integer(1));
      eqs[i].push_back({TimeJet::constant(uniform(rng, -1, 1)), m});
    }
  return SigmaPiOde(std::move(eqs));
}

SigmaPiOde random_text_ode(Rng& rng) {
  const std::size_t n = 1 + rng() % 5;
  std::vector<std::vector<Term>> eqs(n);
  auto real = [&rng] {
    switch (rng() % 5) {
      case 0: return std::round(uniform(rng, -9, 9));
      case 1: return uniform(rng, -1, 1) * std::pow(10.0, static_cast<double>(rng() % 30) - 15);
      default: return uniform(rng, -100, 100);
    }
  };
  for (auto& eq : eqs) {
    if (rng() % 6 == 0) continue;  // zero equation
    const std::size_t nu = 1 + rng() % 4;
    for (std::size_t l = 0; l < nu; ++l) {
      TimeJet coeff;
      switch (rng() % 5) {
        case 0: coeff = TimeJet::constant(0.0); break;
        case 1: {
          std::vector<double> c(2 + rng() % 4);
          for (auto& v : c) v = real();
          coeff = TimeJet(c);
          break;
        }
        case 2: {
          std::vector<double> c(1 + rng() % 5);
          for (auto& v : c) v = real();
          coeff = TimeJet(c, 0.0, false);
          break;
        }
        default: coeff = TimeJet::constant(real());
      }
      std::vector<Monomial::Factor> factors;
      const std::size_t nf = rng() % 4;
      for (std::size_t f = 0; f < nf; ++f) {
        const std::size_t j = rng() % n;
        Exponent p;
        switch (rng() % 3) {
          case 0: p = Exponent::integer(static_cast<std::int64_t>(rng() % 11) - 5); break;
          case 1: {
            const auto den = static_cast<std::int64_t>(1 + rng() % 9);
            p = Rational::make(static_cast<std::int64_t>(rng() % 19) - 9, den);
            break;
          }
          default: p = Exponent::decimal(real());
        }
        factors.emplace_back(j, p);
      }
      eq.push_back({coeff, Monomial(std::move(factors))});
    }
  }
  return SigmaPiOde(std::move(eqs));
}

std::vector<double> ordered_string_coefficients(const QuadraticFrame& frame, std::size_t root,
                                                const std::vector<double>& x0, int order) {
  const std::size_t m = frame.dim();
  const auto v = frame.values_at(0.0);
  auto at = [&](std::size_t i, std::size_t j) { return v[i * m + j]; };
  std::vector<double> c(order + 1, 0.0);
  c[0] = x0[root];
  // value(i_1..i_k) = prod_r (v_{root,i_r} + sum_{q<r} v_{i_q,i_r})
  std::vector<std::size_t> str;
  std::function<void(double, double)> walk = [&](double value, double monomial) {
    const int k = static_cast<int>(str.size());
    if (k > 0) c[k] += value * monomial * x0[root];
    if (k == order) return;
    for (std::size_t j = 0; j < m; ++j) {
      double g = at(root, j);
      for (std::size_t q : str) g += at(q, j);
      str.push_back(j);
      walk(value * g, monomial * x0[j]);
      str.pop_back();
    }
  };
  walk(1.0, 1.0);
  return c;
}

std::vector<std::vector<double>> taylor_mode_derivatives(const QuadraticFrame& frame,
                                                         const std::vector<double>& x0, double t0,
                                                         int order) {
  const std::size_t m = frame.dim();
  // Taylor coefficients of v_{ij}(t) about t0
  std::vector<std::vector<double>> vc(m * m);
  for (std::size_t e = 0; e < m * m; ++e) {
    const auto& jet = frame.entries()[e];
    auto c = jet.coeffs();
    const double h = t0 - jet.center();
    // expand the polynomial about t0 by repeated synthetic division
    std::vector<double> b(c.begin(), c.end());
    for (std::size_t i = 0; i + 1 < b.size(); ++i)
      for (std::size_t k = b.size() - 1; k > i; --k) b[k - 1] += h * b[k];
    vc[e] = b;
  }
  std::vector<std::vector<double>> a(m, std::vector<double>(order + 1, 0.0));  // normalized
  for (std::size_t i = 0; i < m; ++i) a[i][0] = x0[i];
  for (int k = 0; k < order; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      // w_i = sum_j v_ij x_j up to degree k, then (w_i x_i)_k
      std::vector<double> w(k + 1, 0.0);
      for (std::size_t j = 0; j < m; ++j) {
        const auto& v = vc[i * m + j];
        for (int p = 0; p <= k; ++p)
          for (int q = 0; q <= k - p && q < static_cast<int>(v.size()); ++q) w[p + q] += v[q] * a[j][p];
      }
      double s = 0.0;
      for (int p = 0; p <= k; ++p) s += w[p] * a[i][k - p];
      a[i][k + 1] = s / (k + 1);
    }
  }
  std::vector<std::vector<double>> d(order + 1, std::vector<double>(m));
  double fact = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) fact *= k;
    for (std::size_t i = 0; i < m; ++i) d[k][i] = a[i][k] * fact;
  }
  return d;
}

double rel_err(double got, double want, double floor) {
  const double denom = std::max(std::abs(want), floor);
  if (denom == 0.0) return std::abs(got - want);
  return std::abs(got - want) / denom;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s;
}

}  // namespace sigmapi::testing
