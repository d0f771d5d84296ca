#include "sigmapi/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "sigmapi/errors.hpp"

namespace sigmapi::oracle {

namespace {

using State = std::vector<double>;
using Rhs = std::function<State(double, const State&)>;

State axpy(const State& x, double a, const State& k) {
  State y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + a * k[i];
  return y;
}

bool finite(const State& x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

Trajectory integrate(const Rhs& f, const State& x0, double t0, double t1, double h, const char* kind) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::InvalidArgument, "step must be positive");
  if (!std::isfinite(t0) || !std::isfinite(t1)) throw Error(ErrorCode::InvalidArgument, "times must be finite");
  const double span = std::abs(t1 - t0);
  if (span / h > 1e7) throw Error(ErrorCode::InvalidArgument, "more than 1e7 steps requested");
  const double dir = t1 >= t0 ? 1.0 : -1.0;
  const auto steps = static_cast<std::size_t>(std::ceil(span / h - 1e-9));

  Trajectory tr;
  tr.step = h;
  tr.rhs_kind = kind;
  tr.times.reserve(steps + 1);
  tr.states.reserve(steps + 1);
  tr.times.push_back(t0);
  tr.states.push_back(x0);
  State x = x0;
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = t0 + dir * h * static_cast<double>(n);
    const double tn = (n + 1 == steps) ? t1 : t0 + dir * h * static_cast<double>(n + 1);
    const double dt = tn - t;
    State k1, k2, k3, k4;
    try {
      k1 = f(t, x);
      k2 = f(t + dt / 2, axpy(x, dt / 2, k1));
      k3 = f(t + dt / 2, axpy(x, dt / 2, k2));
      k4 = f(tn, axpy(x, dt, k3));
    } catch (const DomainError& e) {
      throw DomainError(ErrorCode::DomainExit, "trajectory left the domain near t = " + std::to_string(t) +
                                                   " (" + e.what() + ")");
    }
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    if (!finite(x)) throw NumericError(ErrorCode::Blowup, "non-finite state near t = " + std::to_string(tn));
    tr.times.push_back(tn);
    tr.states.push_back(x);
  }
  if (dir < 0) {
    std::reverse(tr.times.begin(), tr.times.end());
    std::reverse(tr.states.begin(), tr.states.end());
  }
  return tr;
}

Rhs ode_rhs(const SigmaPiOde& ode) {
  return [&ode](double t, const State& x) {
    State dx(ode.dim(), 0.0);
    for (std::size_t i = 0; i < ode.dim(); ++i)
      for (const auto& term : ode.equation(i)) dx[i] += term.coeff(t) * term.monomial.eval(x);
    return dx;
  };
}

Rhs frame_rhs(const QuadraticFrame& frame) {
  return [&frame](double t, const State& x) {
    const std::size_t m = frame.dim();
    State dx(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) acc += frame(i, j)(t) * x[j];
      dx[i] = acc * x[i];
    }
    return dx;
  };
}

Trajectory window(const Rhs& f, const State& x0, double t0, double a, double b, double h, const char* kind) {
  if (!(a <= t0 && t0 <= b)) throw Error(ErrorCode::InvalidArgument, "the window must contain t0");
  Trajectory back = integrate(f, x0, t0, a, h, kind);
  Trajectory fwd = integrate(f, x0, t0, b, h, kind);
  back.times.insert(back.times.end(), fwd.times.begin() + 1, fwd.times.end());
  back.states.insert(back.states.end(), fwd.states.begin() + 1, fwd.states.end());
  return back;
}

void check_dim(std::size_t expected, const State& x0) {
  if (x0.size() != expected) throw Error(ErrorCode::InvalidArgument, "x0 has the wrong dimension");
}

}  // namespace

Trajectory rk4(const SigmaPiOde& ode, const std::vector<double>& x0, double t0, double t1, double h) {
  check_dim(ode.dim(), x0);
  return integrate(ode_rhs(ode), x0, t0, t1, h, "sigma-pi");
}

Trajectory rk4(const QuadraticFrame& frame, const std::vector<double>& x0, double t0, double t1, double h) {
  check_dim(frame.dim(), x0);
  return integrate(frame_rhs(frame), x0, t0, t1, h, "frame");
}

Trajectory rk4_window(const QuadraticFrame& frame, const std::vector<double>& x0, double t0, double a, double b,
                      double h) {
  check_dim(frame.dim(), x0);
  return window(frame_rhs(frame), x0, t0, a, b, h, "frame");
}

Trajectory rk4_window(const SigmaPiOde& ode, const std::vector<double>& x0, double t0, double a, double b,
                      double h) {
  check_dim(ode.dim(), x0);
  return window(ode_rhs(ode), x0, t0, a, b, h, "sigma-pi");
}

CompareReport compare(const std::function<std::vector<double>(double)>& series_eval, const Trajectory& traj,
                      Window w, double center, double radius) {
  CompareReport rep;
  double sum_sq = 0.0;
  std::size_t terms = 0;
  for (std::size_t n = 0; n < traj.times.size(); ++n) {
    const double t = traj.times[n];
    if (t < w.lo || t > w.hi) continue;
    ++rep.samples;
    if (std::abs(t - center) >= radius) ++rep.out_of_radius;
    const auto s = series_eval(t);
    const auto& o = traj.states[n];
    if (s.size() != o.size()) throw Error(ErrorCode::InvalidArgument, "series and trajectory dimensions differ");
    for (std::size_t i = 0; i < o.size(); ++i) {
      const double diff = std::abs(s[i] - o[i]);
      const double rel = o[i] != 0.0 ? diff / std::abs(o[i]) : diff;
      const double e = std::isnan(rel) ? std::numeric_limits<double>::infinity() : rel;
      if (rep.samples == 1 && i == 0) rep.worst_time = t;
      if (e > rep.max_rel_error) {
        rep.max_rel_error = e;
        rep.worst_time = t;
      }
      sum_sq += e * e;
      ++terms;
    }
  }
  if (rep.samples == 0) throw NumericError(ErrorCode::EmptyWindow, "no trajectory samples inside the window");
  rep.rms_rel_error = terms ? std::sqrt(sum_sq / static_cast<double>(terms)) : 0.0;
  return rep;
}

void write_csv(std::ostream& out, const Trajectory& traj) {
  const std::size_t m = traj.states.empty() ? 0 : traj.states.front().size();
  out << "t";
  for (std::size_t i = 0; i < m; ++i) out << ",x" << i + 1;
  out << "\n";
  char buf[40];
  for (std::size_t n = 0; n < traj.times.size(); ++n) {
    std::snprintf(buf, sizeof buf, "%.17g", traj.times[n]);
    out << buf;
    for (double v : traj.states[n]) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << "," << buf;
    }
    out << "\n";
  }
}

}  // namespace sigmapi::oracle
