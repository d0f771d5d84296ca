#include "sigmapi/series.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "sigmapi/errors.hpp"

namespace sigmapi {

std::size_t IndexMultiset::count(std::size_t index) const {
  for (const auto& [j, c] : entries_)
    if (j == index) return c;
  return 0;
}

IndexMultiset IndexMultiset::with(std::size_t index) const {
  IndexMultiset out = *this;
  auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), index,
                             [](const Entry& e, std::size_t i) { return e.first < i; });
  if (it != out.entries_.end() && it->first == index)
    ++it->second;
  else
    out.entries_.insert(it, {index, 1});
  ++out.total_;
  return out;
}

bool Support::contains(std::size_t j) const {
  return std::binary_search(columns.begin(), columns.end(), j);
}

Support support(const QuadraticFrame& frame) {
  const std::size_t m = frame.dim();
  Support s;
  s.rho.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    bool used = false;
    for (std::size_t i = 0; i < m; ++i) used = used || !frame(i, j).is_zero();
    if (used) s.columns.push_back(j);
  }
  for (std::size_t j : s.columns)
    for (std::size_t l : s.columns)
      if (!frame(l, j).is_zero()) s.rho[j].push_back(l);
  return s;
}

const Layer* CoefficientTensor::layer(int k, int s) const {
  auto it = layers.find({k, s});
  return it == layers.end() ? nullptr : &it->second;
}

double SeriesSolution::normalized(int k, std::size_t r) const {
  double c = coeffs.at(k).at(r);
  for (int j = 2; j <= k; ++j) c /= j;
  return c;
}

namespace {

void check_order(int order) {
  if (order < 0 || order > kMaxOrder)
    throw Error(ErrorCode::InvalidArgument,
                "order must lie in [0, " + std::to_string(kMaxOrder) + "], got " + std::to_string(order));
}

std::vector<std::size_t> resolve_components(const QuadraticFrame& frame,
                                            std::span<const std::size_t> components) {
  std::vector<std::size_t> out(components.begin(), components.end());
  if (out.empty())
    for (std::size_t i = 0; i < frame.dim(); ++i) out.push_back(i);
  for (std::size_t i : out)
    if (i >= frame.dim()) throw Error(ErrorCode::InvalidArgument, "component index out of range");
  return out;
}

bool droppable(const TimeJet& v) { return v.exact() && v.is_zero(); }

/// gamma(m, j) = v_{root,j} + sum_{l in m} count_l v_{l,j}
template <class Value, class Get>
Value multiplier(const IndexMultiset& m, std::size_t root, std::size_t j, const Support& supp, Get get) {
  Value g = get(root, j);
  for (std::size_t l : supp.rho[j]) {
    const std::size_t c = m.count(l);
    if (c != 0) g += get(l, j) * static_cast<double>(c);
  }
  return g;
}

CoefficientTensor build_general(const QuadraticFrame& frame, const Support& supp, std::size_t root,
                                int order) {
  CoefficientTensor t;
  t.root = root;
  t.order = order;
  t.layers[{1, 1}][IndexMultiset{}] = TimeJet::constant(1.0);
  auto get = [&frame](std::size_t i, std::size_t j) { return frame(i, j); };
  for (int k = 1; k <= order; ++k) {
    for (int s = 1; s <= k + 1; ++s) {
      Layer next;
      if (const Layer* prev = t.layer(k, s - 1)) {
        for (const auto& [m, val] : *prev) {
          for (std::size_t j : supp.columns) {
            TimeJet g = multiplier<TimeJet>(m, root, j, supp, get);
            if (droppable(g)) continue;
            next[m.with(j)] += val * g;
          }
        }
      }
      if (const Layer* same = t.layer(k, s)) {
        for (const auto& [m, val] : *same) next[m] += val.derivative();
      }
      std::erase_if(next, [](const auto& kv) { return droppable(kv.second); });
      if (!next.empty()) t.layers[{k + 1, s}] = std::move(next);
    }
  }
  return t;
}

CoefficientTensor build_stationary(const std::vector<double>& values, std::size_t dim, const Support& supp,
                                   std::size_t root, int order) {
  using Flat = std::map<IndexMultiset, double>;
  auto get = [&values, dim](std::size_t i, std::size_t j) { return values[i * dim + j]; };
  CoefficientTensor t;
  t.root = root;
  t.order = order;
  Flat cur{{IndexMultiset{}, 1.0}};
  t.layers[{1, 1}][IndexMultiset{}] = TimeJet::constant(1.0);
  for (int k = 1; k <= order; ++k) {
    Flat next;
    for (const auto& [m, val] : cur) {
      for (std::size_t j : supp.columns) {
        const double g = multiplier<double>(m, root, j, supp, get);
        if (g == 0.0) continue;
        next[m.with(j)] += val * g;
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second == 0.0; });
    if (next.empty()) break;
    Layer& layer = t.layers[{k + 1, k + 1}];
    for (const auto& [m, val] : next) layer.emplace(m, TimeJet::constant(val));
    cur = std::move(next);
  }
  return t;
}

template <class Build>
std::vector<CoefficientTensor> build_all(const std::vector<std::size_t>& roots, Execution exec,
                                         Build build) {
  std::vector<CoefficientTensor> out(roots.size());
  const long count = static_cast<long>(roots.size());
  if (exec == Execution::Serial) {
    for (long r = 0; r < count; ++r) out[r] = build(roots[r]);
    return out;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (long r = 0; r < count; ++r) {
    try {
      out[r] = build(roots[r]);
    } catch (...) {
#pragma omp critical(sigmapi_series_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace

SeriesPlan plan_general(const QuadraticFrame& frame, int order, std::span<const std::size_t> components,
                        Execution exec) {
  check_order(order);
  SeriesPlan plan;
  plan.frame = frame;
  plan.supp = support(frame);
  plan.order = order;
  plan.components = resolve_components(frame, components);
  plan.tensors = build_all(plan.components, exec, [&](std::size_t root) {
    return build_general(frame, plan.supp, root, order);
  });
  return plan;
}

SeriesPlan plan_stationary(const QuadraticFrame& frame, int order,
                           std::span<const std::size_t> components, Execution exec) {
  check_order(order);
  if (!frame.is_stationary())
    throw NumericError(ErrorCode::NotStationary, "the frame has time-dependent entries");
  SeriesPlan plan;
  plan.frame = frame;
  plan.supp = support(frame);
  plan.order = order;
  plan.stationary = true;
  plan.components = resolve_components(frame, components);
  const auto values = frame.values_at(0.0);
  plan.tensors = build_all(plan.components, exec, [&](std::size_t root) {
    return build_stationary(values, frame.dim(), plan.supp, root, order);
  });
  return plan;
}

SeriesSolution assemble(const SeriesPlan& plan, std::span<const double> x0, double t0) {
  const std::size_t m = plan.frame.dim();
  if (x0.size() != m) throw Error(ErrorCode::InvalidArgument, "x0 does not match the frame dimension");
  for (std::size_t i = 0; i < m; ++i)
    if (x0[i] == 0.0)
      throw DomainError(ErrorCode::ZeroComponent,
                        "x" + std::to_string(i + 1) + "(t0) = 0 lies outside the Driver domain");
  SeriesSolution sol;
  sol.t0 = t0;
  sol.x0.assign(x0.begin(), x0.end());
  sol.order = plan.order;
  sol.components = plan.components;
  sol.coeffs.assign(plan.order + 1, std::vector<double>(plan.components.size(), 0.0));
  sol.radius_bound = convergence_bound(plan.frame, x0, t0);
  sol.frame_ref = plan.frame.fingerprint();

  auto value_at = [t0](const TimeJet& v) {
    if (!v.exact() && v.center() != t0)
      throw NumericError(ErrorCode::MixedCenters,
                         "a truncated coefficient jet can only be expanded at its own center");
    return v(t0);
  };
  for (std::size_t r = 0; r < plan.components.size(); ++r) {
    const auto& tensor = plan.tensors[r];
    const double xi = x0[plan.components[r]];
    for (int k = 0; k <= plan.order; ++k) {
      double c = 0.0;
      for (int s = 1; s <= k + 1; ++s) {
        const Layer* layer = tensor.layer(k + 1, s);
        if (!layer) continue;
        for (const auto& [key, v] : *layer) {
          double term = value_at(v);
          for (const auto& [j, cnt] : key.entries()) term *= std::pow(x0[j], static_cast<double>(cnt));
          c += term;
        }
      }
      sol.coeffs[k][r] = xi * c;
    }
  }
  return sol;
}

SeriesSolution taylor_general(const QuadraticFrame& frame, std::span<const double> x0, double t0, int order,
                              std::span<const std::size_t> components, Execution exec) {
  for (double v : x0)
    if (v == 0.0) throw DomainError(ErrorCode::ZeroComponent, "x0 has a zero component");
  return assemble(plan_general(frame, order, components, exec), x0, t0);
}

SeriesSolution taylor_stationary(const QuadraticFrame& frame, std::span<const double> x0, int order,
                                 std::span<const std::size_t> components, Execution exec) {
  for (double v : x0)
    if (v == 0.0) throw DomainError(ErrorCode::ZeroComponent, "x0 has a zero component");
  return assemble(plan_stationary(frame, order, components, exec), x0, 0.0);
}

namespace {

struct BoundData {
  double sigma_vm = 0.0;
  double xm = 0.0;
};

BoundData bound_data(const QuadraticFrame& frame, std::span<const double> x0, double t0) {
  BoundData b;
  double vm = 0.0;
  for (const auto& v : frame.entries()) vm = std::max(vm, std::abs(v(t0)));
  for (double x : x0) b.xm = std::max(b.xm, std::abs(x));
  b.sigma_vm = static_cast<double>(support(frame).columns.size()) * vm;
  return b;
}

}  // namespace

double convergence_bound(const QuadraticFrame& frame, std::span<const double> x0, double t0) {
  const auto b = bound_data(frame, x0, t0);
  if (b.sigma_vm == 0.0 || b.xm == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (b.sigma_vm * b.xm);
}

double bound_envelope(const QuadraticFrame& frame, std::span<const double> x0, double t0, double t) {
  const auto b = bound_data(frame, x0, t0);
  const double dt = std::abs(t - t0);
  const double rate = b.sigma_vm * b.xm;
  if (rate * dt >= 1.0)
    throw NumericError(ErrorCode::OutOfRadius, "t lies outside the guaranteed convergence interval");
  return b.xm / (1.0 - rate * dt);
}

Evaluation evaluate(const SeriesSolution& series, double t) {
  Evaluation ev;
  const double h = t - series.t0;
  ev.outside_radius = std::abs(h) >= series.radius_bound;
  const std::size_t nc = series.components.size();
  ev.values.assign(nc, 0.0);
  ev.error_estimate.assign(nc, 0.0);
  if (h == 0.0) {
    for (std::size_t r = 0; r < nc; ++r) ev.values[r] = series.coeffs[0][r];
    return ev;
  }
  std::vector<double> inv_fact(series.order + 1, 1.0);
  for (int k = 1; k <= series.order; ++k) inv_fact[k] = inv_fact[k - 1] / k;
  for (std::size_t r = 0; r < nc; ++r) {
    double acc = 0.0;
    for (int k = series.order; k >= 0; --k) acc = acc * h + series.coeffs[k][r] * inv_fact[k];
    ev.values[r] = acc;
    const int K = series.order;
    ev.error_estimate[r] = series.order == 0 ? 0.0
                                             : std::abs(series.coeffs[K][r] * inv_fact[K] * std::pow(h, K));
  }
  return ev;
}

namespace {

// Largest of the last two kept terms; a single term underestimates series
// with alternating zero coefficients.
double tail_estimate(const SeriesSolution& sol, std::size_t r, double h) {
  double est = 0.0;
  for (int k = std::max(1, sol.order - 1); k <= sol.order; ++k)
    est = std::max(est, std::abs(sol.normalized(k, r) * std::pow(h, k)));
  return est;
}

}  // namespace

Continuation continue_to(const QuadraticFrame& frame, std::span<const double> x0, double t0, double target,
                         int order, const ContinuationPolicy& policy) {
  if (!(policy.step_fraction > 0.0 && policy.step_fraction <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "step fraction must lie in (0, 1]");
  if (policy.max_steps <= 0) throw Error(ErrorCode::InvalidArgument, "max_steps must be positive");
  if (!std::isfinite(target) || !std::isfinite(t0))
    throw Error(ErrorCode::InvalidArgument, "times must be finite");
  for (double v : x0)
    if (v == 0.0) throw DomainError(ErrorCode::ZeroComponent, "x0 has a zero component");

  Continuation out;
  out.values.assign(x0.begin(), x0.end());
  if (target == t0) return out;

  const SeriesPlan plan = frame.is_stationary() ? plan_stationary(frame, order) : plan_general(frame, order);
  const double dir = target > t0 ? 1.0 : -1.0;
  double t = t0;
  int steps = 0;
  while (t != target) {
    if (steps >= policy.max_steps)
      throw NumericError(ErrorCode::StepLimit, "step limit reached at t = " + std::to_string(t));
    const auto sol = assemble(plan, out.values, t);
    const double remaining = std::abs(target - t);
    double h = std::isinf(sol.radius_bound) ? remaining
                                            : std::min(policy.step_fraction * sol.radius_bound, remaining);
    Evaluation ev;
    bool accepted = false;
    for (int halving = 0; halving <= policy.max_halvings; ++halving, h *= 0.5) {
      ev = evaluate(sol, t + dir * h);
      accepted = true;
      for (std::size_t i = 0; i < ev.values.size(); ++i) {
        const double scale = std::max(std::abs(ev.values[i]), std::abs(out.values[i]));
        if (!(tail_estimate(sol, i, h) <= policy.truncation_tolerance * scale)) accepted = false;
      }
      if (accepted) break;
    }
    const double next_t = h >= remaining ? target : t + dir * h;
    if (!accepted || next_t == t)
      throw NumericError(ErrorCode::Divergence,
                         "series steps collapsed near t = " + std::to_string(t) + "; singularity ahead");
    for (std::size_t i = 0; i < ev.values.size(); ++i) {
      const double v = ev.values[i], prev = out.values[i];
      if (!std::isfinite(v))
        throw NumericError(ErrorCode::Divergence, "non-finite value near t = " + std::to_string(next_t));
      if (v == 0.0 || std::signbit(v) != std::signbit(prev) || std::abs(v) <= 1e-12 * std::abs(prev))
        throw DomainError(ErrorCode::DomainExit,
                          "x" + std::to_string(i + 1) + " reached 0 near t = " + std::to_string(next_t));
    }
    out.values = std::move(ev.values);
    t = next_t;
    out.path.push_back(t);
    ++steps;
  }
  return out;
}

double ScalarSeries::operator()(double t) const {
  const double h = t - t0;
  double acc = 0.0;
  for (auto it = normalized.rbegin(); it != normalized.rend(); ++it) acc = acc * h + *it;
  return acc;
}

ScalarSeries component_series(const SeriesSolution& series, std::size_t r) {
  ScalarSeries s;
  s.t0 = series.t0;
  for (int k = 0; k <= series.order; ++k) s.normalized.push_back(series.normalized(k, r));
  return s;
}

namespace {

std::vector<double> cauchy(const std::vector<double>& a, const std::vector<double>& b, std::size_t n) {
  std::vector<double> c(n, 0.0);
  for (std::size_t i = 0; i < n && i < a.size(); ++i)
    for (std::size_t j = 0; i + j < n && j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

std::vector<double> reciprocal(const std::vector<double>& a, std::size_t n) {
  if (a.empty() || a[0] == 0.0)
    throw DomainError(ErrorCode::ZeroComponent, "negative power of a series vanishing at its center");
  std::vector<double> b(n, 0.0);
  b[0] = 1.0 / a[0];
  for (std::size_t k = 1; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k && j < a.size(); ++j) acc += a[j] * b[k - j];
    b[k] = -acc / a[0];
  }
  return b;
}

std::vector<double> power(std::vector<double> a, int q, std::size_t n) {
  if (q < 0) {
    a = reciprocal(a, n);
    q = -q;
  }
  std::vector<double> r(n, 0.0);
  r[0] = 1.0;
  while (q > 0) {
    if (q & 1) r = cauchy(r, a, n);
    q >>= 1;
    if (q > 0) a = cauchy(a, a, n);
  }
  return r;
}

}  // namespace

ScalarSeries observable_series(std::span<const ScalarSeries> series, std::span<const int> q) {
  if (series.size() != q.size())
    throw Error(ErrorCode::InvalidArgument, "one exponent per series is required");
  ScalarSeries out;
  std::size_t n = 0;
  bool first = true;
  for (const auto& s : series) {
    if (!first && s.t0 != out.t0)
      throw NumericError(ErrorCode::MixedCenters, "observable factors have different centers");
    n = first ? s.normalized.size() : std::min(n, s.normalized.size());
    out.t0 = s.t0;
    first = false;
  }
  if (first) n = 1;
  std::vector<double> acc(n, 0.0);
  acc[0] = 1.0;
  for (std::size_t r = 0; r < series.size(); ++r)
    if (q[r] != 0) acc = cauchy(acc, power(series[r].normalized, q[r], n), n);
  out.normalized = std::move(acc);
  return out;
}

ScalarSeries observable_series(const SeriesSolution& series, std::span<const int> q) {
  std::vector<ScalarSeries> parts;
  for (std::size_t r = 0; r < series.components.size(); ++r) parts.push_back(component_series(series, r));
  return observable_series(parts, q);
}

}  // namespace sigmapi
