#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gus/operators.hpp"

namespace gus {

enum class RunStatus { Completed, BlowUpDetected, StepUnderflow };

std::string run_status_name(RunStatus s);

/// Monitor values recorded at every time step (states may be subsampled,
/// conservation claims are per-time).
struct MonitorSeries {
  std::vector<double> t;
  std::vector<std::string> names;
  std::vector<std::vector<double>> cols;

  const std::vector<double>& col(const std::string& name) const;
  bool has(const std::string& name) const;
};

template <class State>
struct Trajectory {
  const EvolutionProblem* problem = nullptr;
  std::vector<double> times;   // sampled times (strictly increasing from 0)
  std::vector<State> states;   // sampled coefficient vectors
  MonitorSeries monitors;      // per-step series
  RunStatus status = RunStatus::Completed;
  double t_est = 0.0;          // last stable time when status != Completed
  double u0_norm = 0.0;
  double dt = 0.0;
};

using RealTrajectory = Trajectory<Vec>;      // single field, or [psi; phi] stacked
using ComplexTrajectory = Trajectory<CVec>;  // NSE

struct IntegrateOptions {
  double blowup_threshold = 0.0;  // 0 -> default 1e8 * ||u0||
  int sample_stride = 1;
  bool reverse = false;  // integrate with the negated operator
  /// Extra per-step monitors: name -> G; records integral of G(u) over the
  /// domain at every step (real single-field problems only).
  std::vector<std::pair<std::string, std::function<double(double)>>> entropy_monitors;
  /// Per-step accumulation hook: (t, trapezoid weight * dt, node values).
  std::function<void(double, double, const Vec&)> step_hook;
};

RealTrajectory integrate(const EvolutionProblem& pb, const RealField& u0, double T,
                         double dt, const IntegrateOptions& opts = {});
ComplexTrajectory integrate(const EvolutionProblem& pb, const ComplexField& u0, double T,
                            double dt, const IntegrateOptions& opts = {});
RealTrajectory integrate_pair(const EvolutionProblem& pb, const RealField& psi0,
                              const RealField& phi0, double T, double dt,
                              const IntegrateOptions& opts = {});

/// Split a stacked pair state into (psi, phi) fields.
std::pair<RealField, RealField> split_pair_state(const FunctionSpace& s, const Vec& state);

struct FunctionalReport {
  std::string name;
  double initial = 0.0;
  double max_abs_drift = 0.0;
  double max_rel_drift = 0.0;
  bool monotone_nonincreasing = false;
};

struct ConservationReport {
  std::vector<FunctionalReport> functionals;
  bool certificate = false;
  std::string coercive_functional;

  const FunctionalReport& get(const std::string& name) const;
};

/// Drift statistics against the t=0 value for every monitored functional.
/// Relative drift is `abs drift / max(|F(0)|, scale)` where the scale for
/// zero-initial functionals (momentum of odd data) is sqrt(|domain|)*||u0||.
/// The certificate follows the coercive-integral-of-motion logic: set only if
/// the named functional is nonincreasing within tolerance and the run
/// completed.
template <class State>
ConservationReport conservation_report(const Trajectory<State>& traj, double tolerance,
                                       const std::string& coercive_functional);

/// Per-sampled-time series of integral G(u(t,x)) dx. Measured, not asserted.
std::vector<std::pair<double, double>> entropy_series(
    const RealTrajectory& traj, const std::function<double(double)>& G);

}  // namespace gus
