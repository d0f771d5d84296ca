#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "sigmapi/frame.hpp"
#include "sigmapi/ode.hpp"

namespace sigmapi::oracle {

struct Trajectory {
  std::vector<double> times;  // strictly increasing
  std::vector<std::vector<double>> states;
  double step = 0.0;
  std::string rhs_kind;  // "sigma-pi" or "frame"
};

/// Classical RK4 with fixed step h and an exact landing on t1 (which may lie
/// before t0). Requires |t1 - t0| / h <= 1e7. Throws NumericError(Blowup) on
/// a non-finite state and DomainError(DomainExit) when a power becomes
/// undefined mid-step.
Trajectory rk4(const SigmaPiOde& ode, const std::vector<double>& x0, double t0, double t1, double h);
Trajectory rk4(const QuadraticFrame& frame, const std::vector<double>& x0, double t0, double t1, double h);

/// Both directions from t0, merged into one increasing trajectory over [a, b].
Trajectory rk4_window(const QuadraticFrame& frame, const std::vector<double>& x0, double t0, double a,
                      double b, double h);
Trajectory rk4_window(const SigmaPiOde& ode, const std::vector<double>& x0, double t0, double a, double b,
                      double h);

struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

struct CompareReport {
  double max_rel_error = 0.0;
  double rms_rel_error = 0.0;
  double worst_time = 0.0;
  std::size_t samples = 0;
  std::size_t out_of_radius = 0;
};

/// Componentwise relative error |s - o| / |o| (absolute where o = 0) over the
/// trajectory samples inside the window. Samples with |t - center| >= radius
/// are counted in out_of_radius. Throws NumericError(EmptyWindow).
CompareReport compare(const std::function<std::vector<double>(double)>& series_eval, const Trajectory& traj,
                      Window window, double center = 0.0,
                      double radius = std::numeric_limits<double>::infinity());

/// Header "t,x1,...,xm", one row per sample, %.17g.
void write_csv(std::ostream& out, const Trajectory& traj);

}  // namespace sigmapi::oracle
