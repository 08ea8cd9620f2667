#include "gus/operators.hpp"

#include <cmath>

namespace gus {

OperatorTag parse_operator_tag(const std::string& s) {
  if (s == "burgers") return OperatorTag::Burgers;
  if (s == "viscous_burgers") return OperatorTag::ViscousBurgers;
  if (s == "nse") return OperatorTag::NSE;
  if (s == "nonlinear_wave") return OperatorTag::NonlinearWave;
  if (s == "linear_advection") return OperatorTag::LinearAdvection;
  throw std::invalid_argument("unknown operator tag: " + s);
}

std::string operator_tag_name(OperatorTag t) {
  switch (t) {
    case OperatorTag::Burgers: return "burgers";
    case OperatorTag::ViscousBurgers: return "viscous_burgers";
    case OperatorTag::NSE: return "nse";
    case OperatorTag::NonlinearWave: return "nonlinear_wave";
    case OperatorTag::LinearAdvection: return "linear_advection";
  }
  return "?";
}

EvolutionProblem::EvolutionProblem(OperatorTag tag, const FunctionSpace& space, double nu,
                                   double p, double c,
                                   const std::function<double(double)>& potential)
    : tag_(tag), space_(&space), nu_(nu), p_(p), c_(c) {
  layout_ = (tag == OperatorTag::NonlinearWave) ? FieldLayout::Pair : FieldLayout::Single;
  switch (tag) {
    case OperatorTag::Burgers:
    case OperatorTag::LinearAdvection:
      if (space.kind() != SpaceKind::Periodic)
        throw std::invalid_argument("this operator requires a Periodic space");
      break;
    case OperatorTag::ViscousBurgers:
      if (space.kind() != SpaceKind::Periodic)
        throw std::invalid_argument("viscous_burgers requires a Periodic space");
      if (nu < 0.0) throw std::invalid_argument("viscous_burgers requires nu >= 0");
      break;
    case OperatorTag::NSE:
      if (space.kind() != SpaceKind::Periodic)
        throw std::invalid_argument("nse requires a Periodic space");
      if (!(p > 2.0)) throw std::invalid_argument("nse requires p > 2");
      break;
    case OperatorTag::NonlinearWave:
      if (space.kind() != SpaceKind::Dirichlet)
        throw std::invalid_argument("nonlinear_wave requires a Dirichlet space");
      if (!(p > 2.0)) throw std::invalid_argument("nonlinear_wave requires p > 2");
      break;
  }
  if (tag == OperatorTag::NSE) {
    v_nodes_ = Vec::Zero(space.num_nodes());
    if (potential)
      for (int j = 0; j < space.num_nodes(); ++j)
        v_nodes_[j] = potential(space.quad_nodes()[j]);
  }
}

RealField burgers_rhs(const RealField& u) {
  const FunctionSpace& s = *u.space;
  if (s.kind() != SpaceKind::Periodic)
    throw std::invalid_argument("burgers_rhs: Periodic space required");
  Vec un = node_values(u);
  Vec dn = node_values(derivative(u));
  Vec prod = -(un.array() * dn.array());
  auto out = project_nodes(s, prod);
  return out;
}

RealField viscous_burgers_rhs(const RealField& u, double nu) {
  if (nu < 0.0) throw std::invalid_argument("viscous_burgers_rhs: nu must be >= 0");
  RealField out = burgers_rhs(u);
  if (nu != 0.0) {
    const FunctionSpace& s = *u.space;
    for (int i = 0; i < s.dim(); ++i) {
      const double kh = s.basis_wavenumber(i);
      out.c[i] += -nu * kh * kh * u.c[i];
    }
  }
  return out;
}

ComplexField nse_rhs(const ComplexField& u, const Vec& potential_nodes, double p) {
  const FunctionSpace& s = *u.space;
  if (s.kind() != SpaceKind::Periodic)
    throw std::invalid_argument("nse_rhs: Periodic space required");
  if (!(p > 2.0)) throw std::invalid_argument("nse_rhs: p must be > 2");
  CVec un = node_values(u);
  CVec g(s.num_nodes());
  const bool have_v = potential_nodes.size() == s.num_nodes();
  for (int j = 0; j < s.num_nodes(); ++j) {
    const double mod = std::abs(un[j]);
    const double amp = (mod == 0.0) ? 0.0 : std::pow(mod, p - 2.0);
    cd val = -amp * un[j];
    if (have_v) val += potential_nodes[j] * un[j];
    g[j] = val;
  }
  ComplexField pg = project_nodes(s, g);
  ComplexField out(s);
  const cd minus_i(0.0, -1.0);
  for (int i = 0; i < s.dim(); ++i) {
    const double kh = s.basis_wavenumber(i);
    out.c[i] = minus_i * (0.5 * kh * kh * u.c[i] + pg.c[i]);
  }
  return out;
}

std::pair<RealField, RealField> wave_rhs(const RealField& psi, const RealField& phi,
                                         double p) {
  require_same_space(psi.space, phi.space);
  const FunctionSpace& s = *psi.space;
  if (s.kind() != SpaceKind::Dirichlet)
    throw std::invalid_argument("wave_rhs: Dirichlet space required");
  if (!(p > 2.0)) throw std::invalid_argument("wave_rhs: p must be > 2");
  Vec pn = node_values(psi);
  Vec g(s.num_nodes());
  for (int j = 0; j < s.num_nodes(); ++j) {
    const double mod = std::abs(pn[j]);
    g[j] = (mod == 0.0) ? 0.0 : -std::pow(mod, p - 2.0) * pn[j];
  }
  RealField nl = project_nodes(s, g);
  RealField acc = laplacian(psi) + nl;
  return {phi, acc};
}

RealField advection_rhs(const RealField& u, double c) {
  RealField d = derivative(u);
  d.c *= -c;
  return d;
}

RealField apply_rhs(const EvolutionProblem& pb, const RealField& u) {
  switch (pb.tag()) {
    case OperatorTag::Burgers: return burgers_rhs(u);
    case OperatorTag::ViscousBurgers: return viscous_burgers_rhs(u, pb.nu());
    case OperatorTag::LinearAdvection: return advection_rhs(u, pb.advection_speed());
    default:
      throw std::invalid_argument("apply_rhs: real flavor not defined for this tag");
  }
}

ComplexField apply_rhs(const EvolutionProblem& pb, const ComplexField& u) {
  if (pb.tag() != OperatorTag::NSE)
    throw std::invalid_argument("apply_rhs: complex flavor is the NSE path");
  return nse_rhs(u, pb.potential_nodes(), pb.p());
}

EntropyFlux::EntropyFlux(std::function<double(double)> g_prime)
    : g_prime_(std::move(g_prime)) {
  if (!g_prime_) throw std::invalid_argument("EntropyFlux: missing G'");
}

EntropyFlux EntropyFlux::monomial(int m) {
  if (m < 1) throw std::invalid_argument("EntropyFlux::monomial: m >= 1 required");
  EntropyFlux f;
  f.monomial_m_ = m;
  return f;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double EntropyFlux::operator()(double u) const {
  if (monomial_m_ > 0) {
    // G = s^m: H(u) = m/(m+1) u^{m+1}
    const int m = monomial_m_;
    return static_cast<double>(m) / (m + 1) * std::pow(u, m + 1);
  }
  if (u == 0.0) return 0.0;
  auto f = [&](double s) {
    const double g = g_prime_(s);
    if (!std::isfinite(g)) throw std::domain_error("entropy_flux: non-finite G'");
    return s * g;
  };
  const double a = std::min(0.0, u), b = std::max(0.0, u);
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = 1e-10 * std::max(1.0, std::abs(whole));
  const double v = adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
  return (u >= 0.0) ? v : -v;
}

}  // namespace gus
