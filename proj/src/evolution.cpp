#include "gus/evolution.hpp"

#include <cmath>
#include <stdexcept>

namespace gus {

std::string run_status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Completed: return "completed";
    case RunStatus::BlowUpDetected: return "blow_up_detected";
    case RunStatus::StepUnderflow: return "step_underflow";
  }
  return "?";
}

const std::vector<double>& MonitorSeries::col(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return cols[i];
  throw std::invalid_argument("unknown monitor: " + name);
}

bool MonitorSeries::has(const std::string& name) const {
  for (const auto& n : names)
    if (n == name) return true;
  return false;
}

namespace {

double field_norm_parseval(const FunctionSpace& s, const Vec& c) {
  return std::sqrt((c.array().square() * s.basis_norms2().array()).sum());
}

double field_norm_parseval(const FunctionSpace& s, const CVec& c) {
  return std::sqrt((c.array().abs2() * s.basis_norms2().array()).sum());
}

// Monitor evaluators -----------------------------------------------------------

struct RealMonitors {
  const EvolutionProblem* pb;
  const IntegrateOptions* opts;
  bool pair_layout;

  std::vector<std::string> names() const {
    std::vector<std::string> n;
    if (pair_layout) {
      n = {"energy", "psi_norm", "phi_norm"};
    } else {
      n = {"momentum", "energy", "norm"};
      for (const auto& em : opts->entropy_monitors) n.push_back(em.first);
    }
    return n;
  }

  bool needs_nodes() const {
    return pair_layout || !opts->entropy_monitors.empty() || bool(opts->step_hook);
  }

  void eval(const Vec& state, const Vec& nodes, std::vector<double>& out) const {
    const FunctionSpace& s = pb->space();
    out.clear();
    if (pair_layout) {
      const int d = s.dim();
      double phi2 = 0.0, grad2 = 0.0, psi2 = 0.0;
      for (int i = 0; i < d; ++i) {
        const double kh = s.basis_wavenumber(i);
        psi2 += state[i] * state[i] * s.basis_norm2(i);
        grad2 += kh * kh * state[i] * state[i] * s.basis_norm2(i);
        phi2 += state[d + i] * state[d + i] * s.basis_norm2(i);
      }
      // nodes here carries psi sampled on the grid
      double nlp = 0.0;
      for (int j = 0; j < s.num_nodes(); ++j)
        nlp += std::pow(std::abs(nodes[j]), pb->p());
      nlp *= s.quad_weight();
      const double energy = 0.5 * phi2 + 0.5 * grad2 + nlp / pb->p();
      out = {energy, std::sqrt(psi2), std::sqrt(phi2)};
      return;
    }
    const double momentum = state[0] * 2.0 * s.beta();
    const double energy = 0.5 * (state.array().square() * s.basis_norms2().array()).sum();
    out = {momentum, energy, std::sqrt(2.0 * energy)};
    for (const auto& em : opts->entropy_monitors) {
      double acc = 0.0;
      for (int j = 0; j < s.num_nodes(); ++j) {
        const double g = em.second(nodes[j]);
        if (!std::isfinite(g))
          throw std::domain_error("entropy monitor: non-finite G at sampled value");
        acc += g;
      }
      out.push_back(acc * s.quad_weight());
    }
  }
};

struct ComplexMonitors {
  const EvolutionProblem* pb;

  std::vector<std::string> names() const {
    return {"mass", "energy", "energy_paper_sign", "grad_norm"};
  }

  void eval(const CVec& state, const CVec& nodes, std::vector<double>& out) const {
    const FunctionSpace& s = pb->space();
    double mass = 0.0, grad2 = 0.0;
    for (int i = 0; i < s.dim(); ++i) {
      const double kh = s.basis_wavenumber(i);
      const double a2 = std::norm(state[i]) * s.basis_norm2(i);
      mass += a2;
      grad2 += kh * kh * a2;
    }
    double pterm = 0.0, vterm = 0.0;
    const bool have_v = pb->potential_nodes().size() == s.num_nodes();
    for (int j = 0; j < s.num_nodes(); ++j) {
      const double m2 = std::norm(nodes[j]);
      pterm += std::pow(m2, 0.5 * pb->p());
      if (have_v) vterm += pb->potential_nodes()[j] * m2;
    }
    pterm *= s.quad_weight();
    vterm *= s.quad_weight();
    const double eminus = 0.5 * grad2 + vterm - (2.0 / pb->p()) * pterm;
    const double eplus = 0.5 * grad2 + vterm + (2.0 / pb->p()) * pterm;
    out = {mass, eminus, eplus, std::sqrt(grad2)};
  }
};

}  // namespace

// Generic RK4 loop over a flat state vector -------------------------------------

namespace {

template <class StateVec, class Rhs, class Monitors, class NodeSynth>
Trajectory<StateVec> rk4_run(const EvolutionProblem& pb, StateVec u, double T, double dt,
                             const IntegrateOptions& opts, Rhs rhs, Monitors mon,
                             NodeSynth synth_nodes, double u0_norm) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
  if (!(T >= dt)) throw std::invalid_argument("integrate: need dt <= T");
  if (opts.sample_stride < 1)
    throw std::invalid_argument("integrate: sample_stride must be >= 1");

  Trajectory<StateVec> traj;
  traj.problem = &pb;
  traj.u0_norm = u0_norm;
  traj.dt = dt;
  const double blowup =
      opts.blowup_threshold > 0.0 ? opts.blowup_threshold : 1e8 * std::max(u0_norm, 1e-300);

  const long nsteps = std::lround(T / dt);
  traj.times.reserve(nsteps / opts.sample_stride + 2);
  traj.states.reserve(nsteps / opts.sample_stride + 2);
  traj.monitors.names = mon.names();
  traj.monitors.cols.assign(traj.monitors.names.size(), {});

  std::vector<double> mvals;
  auto record_monitors = [&](double t, const StateVec& st, double hookw) {
    decltype(synth_nodes(st)) nodes;
    const bool need = mon.needs_nodes() || bool(opts.step_hook);
    if (need) nodes = synth_nodes(st);
    mon.eval(st, nodes, mvals);
    traj.monitors.t.push_back(t);
    for (std::size_t i = 0; i < mvals.size(); ++i) traj.monitors.cols[i].push_back(mvals[i]);
    if (opts.step_hook) opts.step_hook(t, hookw * dt, reinterpret_cast<const Vec&>(nodes));
    return true;
  };

  auto sample_state = [&](double t, const StateVec& st) {
    traj.times.push_back(t);
    traj.states.push_back(st);
  };

  record_monitors(0.0, u, 0.5);
  sample_state(0.0, u);

  StateVec k1, k2, k3, k4, tmp;
  const double sgn = opts.reverse ? -1.0 : 1.0;
  for (long step = 0; step < nsteps; ++step) {
    k1 = rhs(u);
    tmp = u + (0.5 * dt * sgn) * k1;
    k2 = rhs(tmp);
    tmp = u + (0.5 * dt * sgn) * k2;
    k3 = rhs(tmp);
    tmp = u + (dt * sgn) * k3;
    k4 = rhs(tmp);
    u = u + (dt * sgn / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double t = (step + 1) * dt;
    double nrm = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i) nrm += std::norm(u[i]);
    if (!std::isfinite(nrm)) {
      traj.status = RunStatus::StepUnderflow;
      traj.t_est = step * dt;
      break;
    }
    record_monitors(t, u, (step + 1 == nsteps) ? 0.5 : 1.0);
    const bool is_sample = ((step + 1) % opts.sample_stride == 0) || (step + 1 == nsteps);
    if (is_sample) sample_state(t, u);
    // blow-up detection on the function-space norm
    const double last_norm =
        traj.monitors.has("norm")
            ? traj.monitors.col("norm").back()
            : (traj.monitors.has("mass") ? std::sqrt(traj.monitors.col("mass").back())
                                         : std::sqrt(2.0 * traj.monitors.col("energy").back()));
    if (last_norm > blowup) {
      traj.status = RunStatus::BlowUpDetected;
      traj.t_est = step * dt;
      break;
    }
  }
  return traj;
}

}  // namespace

RealTrajectory integrate(const EvolutionProblem& pb, const RealField& u0, double T,
                         double dt, const IntegrateOptions& opts) {
  if (pb.layout() != FieldLayout::Single || pb.complex_flavor())
    throw std::invalid_argument("integrate: problem expects a different state flavor");
  require_same_space(u0.space, &pb.space());
  const FunctionSpace& s = pb.space();
  auto rhs = [&pb](const Vec& c) {
    RealField u(const_cast<const FunctionSpace&>(pb.space()), c);
    return apply_rhs(pb, u).c;
  };
  RealMonitors mon{&pb, &opts, false};
  auto synth = [&s](const Vec& c) {
    Vec nodes;
    s.synth(c, nodes);
    return nodes;
  };
  return rk4_run<Vec>(pb, u0.c, T, dt, opts, rhs, mon, synth,
                      field_norm_parseval(s, u0.c));
}

ComplexTrajectory integrate(const EvolutionProblem& pb, const ComplexField& u0, double T,
                            double dt, const IntegrateOptions& opts) {
  if (!pb.complex_flavor())
    throw std::invalid_argument("integrate: problem is not complex-flavored");
  require_same_space(u0.space, &pb.space());
  const FunctionSpace& s = pb.space();
  if (opts.step_hook)
    throw std::invalid_argument("integrate: step_hook supports the real flavor only");
  auto rhs = [&pb](const CVec& c) {
    ComplexField u(pb.space(), c);
    return apply_rhs(pb, u).c;
  };
  ComplexMonitors mon{&pb};
  auto synth = [&s](const CVec& c) {
    CVec nodes;
    s.synth(c, nodes);
    return nodes;
  };
  return rk4_run<CVec>(pb, u0.c, T, dt, opts, rhs, mon, synth,
                       field_norm_parseval(s, u0.c));
}

RealTrajectory integrate_pair(const EvolutionProblem& pb, const RealField& psi0,
                              const RealField& phi0, double T, double dt,
                              const IntegrateOptions& opts) {
  if (pb.layout() != FieldLayout::Pair)
    throw std::invalid_argument("integrate_pair: problem is not a pair system");
  require_same_space(psi0.space, &pb.space());
  require_same_space(phi0.space, &pb.space());
  const FunctionSpace& s = pb.space();
  const int d = s.dim();
  Vec state(2 * d);
  state.head(d) = psi0.c;
  state.tail(d) = phi0.c;

  auto rhs = [&pb, d](const Vec& st) {
    RealField psi(pb.space(), st.head(d).eval());
    RealField phi(pb.space(), st.tail(d).eval());
    auto [dpsi, dphi] = wave_rhs(psi, phi, pb.p());
    Vec out(2 * d);
    out.head(d) = dpsi.c;
    out.tail(d) = dphi.c;
    return out;
  };
  RealMonitors mon{&pb, &opts, true};
  auto synth = [&s, d](const Vec& st) {
    Vec nodes;
    s.synth(Vec(st.head(d)), nodes);
    return nodes;
  };
  const double n0 = std::sqrt(
      (psi0.c.array().square() * s.basis_norms2().array()).sum() +
      (phi0.c.array().square() * s.basis_norms2().array()).sum());
  return rk4_run<Vec>(pb, state, T, dt, opts, rhs, mon, synth, n0);
}

std::pair<RealField, RealField> split_pair_state(const FunctionSpace& s, const Vec& state) {
  const int d = s.dim();
  if (state.size() != 2 * d)
    throw std::invalid_argument("split_pair_state: wrong state size");
  return {RealField(s, state.head(d).eval()), RealField(s, state.tail(d).eval())};
}

const FunctionalReport& ConservationReport::get(const std::string& name) const {
  for (const auto& f : functionals)
    if (f.name == name) return f;
  throw std::invalid_argument("unknown functional: " + name);
}

template <class State>
ConservationReport conservation_report(const Trajectory<State>& traj, double tolerance,
                                       const std::string& coercive_functional) {
  if (traj.monitors.t.empty())
    throw std::invalid_argument("conservation_report: empty trajectory");
  ConservationReport rep;
  rep.coercive_functional = coercive_functional;
  const double len = traj.problem->space().domain_length();
  bool found_coercive = false;
  for (std::size_t i = 0; i < traj.monitors.names.size(); ++i) {
    const auto& name = traj.monitors.names[i];
    const auto& col = traj.monitors.cols[i];
    FunctionalReport fr;
    fr.name = name;
    fr.initial = col.front();
    double scale = std::abs(fr.initial);
    if (scale < 1e-14 * std::max(1.0, traj.u0_norm))
      scale = std::sqrt(len) * std::max(traj.u0_norm, 1e-300);
    bool mono = true;
    const double mono_tol = tolerance * std::max(scale, 1e-300);
    double prev = fr.initial;
    for (double v : col) {
      const double d = std::abs(v - fr.initial);
      fr.max_abs_drift = std::max(fr.max_abs_drift, d);
      if (v > prev + mono_tol) mono = false;
      prev = std::min(prev, v);
    }
    fr.max_rel_drift = fr.max_abs_drift / scale;
    fr.monotone_nonincreasing = mono;
    rep.functionals.push_back(fr);
    if (name == coercive_functional) found_coercive = true;
  }
  if (!coercive_functional.empty() && !found_coercive)
    throw std::invalid_argument("conservation_report: unknown coercive functional " +
                                coercive_functional);
  rep.certificate = false;
  if (found_coercive && traj.status == RunStatus::Completed)
    rep.certificate = rep.get(coercive_functional).monotone_nonincreasing;
  return rep;
}

template ConservationReport conservation_report<Vec>(const Trajectory<Vec>&, double,
                                                     const std::string&);
template ConservationReport conservation_report<CVec>(const Trajectory<CVec>&, double,
                                                      const std::string&);

std::vector<std::pair<double, double>> entropy_series(
    const RealTrajectory& traj, const std::function<double(double)>& G) {
  const FunctionSpace& s = traj.problem->space();
  std::vector<std::pair<double, double>> out;
  out.reserve(traj.times.size());
  Vec nodes;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    s.synth(traj.states[i], nodes);
    double acc = 0.0;
    for (int j = 0; j < s.num_nodes(); ++j) {
      const double g = G(nodes[j]);
      if (!std::isfinite(g))
        throw std::domain_error("entropy_series: non-finite G at sampled value");
      acc += g;
    }
    out.emplace_back(traj.times[i], acc * s.quad_weight());
  }
  return out;
}

}  // namespace gus
