#include "gus/function_space.hpp"

#include <algorithm>
#include <cmath>

namespace gus {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

int quad_size_for(int K) {
  int M = 8;
  while (M < 3 * K + 2) M *= 2;
  return M;
}

// 10-point Gauss-Legendre on [-1,1].
const double kGx[10] = {-0.9739065285171717, -0.8650633666889845, -0.6794095682990244,
                        -0.4333953941292472, -0.1488743389816312, 0.1488743389816312,
                        0.4333953941292472,  0.6794095682990244,  0.8650633666889845,
                        0.9739065285171717};
const double kGw[10] = {0.0666713443086881, 0.1494513491505806, 0.2190863625159820,
                        0.2692667193099963, 0.2955242247147529, 0.2955242247147529,
                        0.2692667193099963, 0.2190863625159820, 0.1494513491505806,
                        0.0666713443086881};

}  // namespace

FunctionSpace::FunctionSpace(SpaceKind kind, double beta, int K)
    : kind_(kind), beta_(beta), K_(K) {
  if (!(beta > 0.0)) throw std::invalid_argument("build_space: beta must be positive");
  if (K < 0) throw std::invalid_argument("build_space: K must be nonnegative");
  if (kind == SpaceKind::Dirichlet && K < 1)
    throw std::invalid_argument("build_space: Dirichlet space needs K >= 1");

  M_ = quad_size_for(K);
  if (kind_ == SpaceKind::Periodic) {
    dim_ = 2 * K + 1;
    w_ = 2.0 * beta_ / M_;
    nodes_.resize(M_);
    for (int j = 0; j < M_; ++j) nodes_[j] = -beta_ + 2.0 * beta_ * j / M_;
    norm2_.resize(dim_);
    norm2_[0] = 2.0 * beta_;
    for (int k = 1; k <= K_; ++k) {
      norm2_[2 * k - 1] = beta_;
      norm2_[2 * k] = beta_;
    }
    fft_ = std::make_shared<Fft>(static_cast<std::size_t>(M_));
    scratch_.resize(M_);
  } else {
    dim_ = K;
    w_ = beta_ / M_;
    nodes_.resize(M_);
    for (int j = 0; j < M_; ++j) nodes_[j] = (j + 0.5) * beta_ / M_;
    norm2_ = Vec::Constant(dim_, beta_ / 2.0);
    basis_at_nodes_.resize(M_, dim_);
    for (int k = 1; k <= K_; ++k)
      for (int j = 0; j < M_; ++j)
        basis_at_nodes_(j, k - 1) = std::sin(k * kPi * nodes_[j] / beta_);
  }
}

double FunctionSpace::basis_wavenumber(int i) const {
  if (kind_ == SpaceKind::Periodic) {
    if (i == 0) return 0.0;
    const int k = (i + 1) / 2;
    return k * kPi / beta_;
  }
  return (i + 1) * kPi / beta_;
}

double FunctionSpace::basis_value(int i, double x) const {
  if (kind_ == SpaceKind::Periodic) {
    if (i == 0) return 1.0;
    const int k = (i + 1) / 2;
    const double th = k * kPi * x / beta_;
    return (i % 2 == 1) ? std::cos(th) : std::sin(th);
  }
  return std::sin((i + 1) * kPi * x / beta_);
}

void FunctionSpace::synth_complex(const CVec& coeffs, CVec& values) const {
  values.resize(M_);
  if (kind_ == SpaceKind::Periodic) {
    std::fill(scratch_.begin(), scratch_.end(), cd(0.0, 0.0));
    scratch_[0] = coeffs[0];
    for (int k = 1; k <= K_; ++k) {
      const cd a = coeffs[2 * k - 1];
      const cd b = coeffs[2 * k];
      const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
      scratch_[k] = 0.5 * sgn * (a - cd(0, 1) * b);
      scratch_[M_ - k] = 0.5 * sgn * (a + cd(0, 1) * b);
    }
    fft_->inverse_unscaled(scratch_.data());
    for (int j = 0; j < M_; ++j) values[j] = scratch_[j];
  } else {
    values = basis_at_nodes_.cast<cd>() * coeffs;
  }
}

void FunctionSpace::analyze_complex(const CVec& vals, CVec& pairings) const {
  pairings.resize(dim_);
  if (kind_ == SpaceKind::Periodic) {
    for (int j = 0; j < M_; ++j) scratch_[j] = vals[j];
    fft_->forward(scratch_.data());
    pairings[0] = w_ * scratch_[0];
    for (int k = 1; k <= K_; ++k) {
      const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
      const cd Fk = scratch_[k];
      const cd Fmk = scratch_[M_ - k];
      pairings[2 * k - 1] = w_ * sgn * 0.5 * (Fk + Fmk);
      pairings[2 * k] = w_ * sgn * (cd(0, 1) * 0.5) * (Fk - Fmk);
    }
  } else {
    pairings = (basis_at_nodes_.transpose().cast<cd>() * vals) * w_;
  }
}

void FunctionSpace::synth(const Vec& coeffs, Vec& node_values) const {
  if (kind_ == SpaceKind::Dirichlet) {
    node_values = basis_at_nodes_ * coeffs;
    return;
  }
  CVec cv = coeffs.cast<cd>();
  CVec out;
  synth_complex(cv, out);
  node_values = out.real();
}

void FunctionSpace::synth(const CVec& coeffs, CVec& node_values) const {
  synth_complex(coeffs, node_values);
}

void FunctionSpace::analyze(const Vec& vals, Vec& pairings) const {
  if (kind_ == SpaceKind::Dirichlet) {
    pairings = (basis_at_nodes_.transpose() * vals) * w_;
    return;
  }
  CVec cv = vals.cast<cd>();
  CVec out;
  analyze_complex(cv, out);
  pairings = out.real();
}

void FunctionSpace::analyze(const CVec& vals, CVec& pairings) const {
  analyze_complex(vals, pairings);
}

SpaceKind parse_space_kind(const std::string& s) {
  if (s == "periodic" || s == "Periodic") return SpaceKind::Periodic;
  if (s == "dirichlet" || s == "Dirichlet") return SpaceKind::Dirichlet;
  throw std::invalid_argument("unknown space kind: " + s);
}

FunctionSpace build_space(SpaceKind kind, double beta, int K) {
  return FunctionSpace(kind, beta, K);
}

// -- integrals and inner products ---------------------------------------------

double integral(const RealField& u) {
  const FunctionSpace& s = *u.space;
  if (s.kind() == SpaceKind::Periodic) return u.c[0] * 2.0 * s.beta();
  double acc = 0.0;
  for (int k = 1; k <= s.dim(); ++k)
    if (k % 2 == 1) acc += u.c[k - 1] * 2.0 * s.beta() / (k * kPi);
  return acc;
}

cd integral(const ComplexField& u) {
  const FunctionSpace& s = *u.space;
  if (s.kind() == SpaceKind::Periodic) return u.c[0] * 2.0 * s.beta();
  cd acc(0, 0);
  for (int k = 1; k <= s.dim(); ++k)
    if (k % 2 == 1) acc += u.c[k - 1] * (2.0 * s.beta() / (k * kPi));
  return acc;
}

double inner_product(const RealField& u, const RealField& v) {
  require_same_space(u.space, v.space);
  return (u.c.array() * v.c.array() * u.space->basis_norms2().array()).sum();
}

cd inner_product(const ComplexField& u, const ComplexField& v) {
  require_same_space(u.space, v.space);
  return (u.c.conjugate().array() * v.c.array() *
          u.space->basis_norms2().array().cast<cd>())
      .sum();
}

double norm(const RealField& u) { return std::sqrt(inner_product(u, u)); }
double norm(const ComplexField& u) { return std::sqrt(std::abs(inner_product(u, u))); }

// -- projection ---------------------------------------------------------------

double gauss_integrate(const std::function<double(double)>& f, double a, double b,
                       int panels) {
  const double h = (b - a) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    for (int g = 0; g < 10; ++g) acc += kGw[g] * f(c + 0.5 * h * kGx[g]);
  }
  return acc * 0.5 * h;
}

namespace {

int projection_panels(const FunctionSpace& s) {
  return std::max(32, 2 * s.mode_count());
}

template <class Scalar>
Field<Scalar> project_impl(const FunctionSpace& s,
                           const std::function<Scalar(double)>& f) {
  const int panels = projection_panels(s);
  const double a = s.domain_min(), b = s.domain_max();
  const double h = (b - a) / panels;
  // cache f at the Gauss points once
  std::vector<double> xs(panels * 10);
  std::vector<Scalar> fv(panels * 10);
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    for (int g = 0; g < 10; ++g) {
      const double x = c + 0.5 * h * kGx[g];
      xs[p * 10 + g] = x;
      Scalar v = f(x);
      if (!std::isfinite(std::abs(v)))
        throw std::domain_error("project: non-finite sample value");
      fv[p * 10 + g] = v;
    }
  }
  Field<Scalar> out(s);
  for (int i = 0; i < s.dim(); ++i) {
    Scalar acc{};
    for (int p = 0; p < panels; ++p)
      for (int g = 0; g < 10; ++g)
        acc += Scalar(kGw[g]) * fv[p * 10 + g] * s.basis_value(i, xs[p * 10 + g]);
    out.c[i] = acc * Scalar(0.5 * h) / Scalar(s.basis_norm2(i));
  }
  return out;
}

}  // namespace

RealField project(const FunctionSpace& s, const std::function<double(double)>& f) {
  return project_impl<double>(s, f);
}
ComplexField project(const FunctionSpace& s, const std::function<cd(double)>& f) {
  return project_impl<cd>(s, f);
}

RealField project_nodes(const FunctionSpace& s, const Vec& node_values) {
  if (node_values.size() != s.num_nodes())
    throw std::invalid_argument("project_nodes: wrong node count");
  Vec q;
  s.analyze(node_values, q);
  return RealField(s, (q.array() / s.basis_norms2().array()).matrix());
}

ComplexField project_nodes(const FunctionSpace& s, const CVec& node_values) {
  if (node_values.size() != s.num_nodes())
    throw std::invalid_argument("project_nodes: wrong node count");
  CVec q;
  s.analyze(node_values, q);
  return ComplexField(s, (q.array() / s.basis_norms2().array().cast<cd>()).matrix());
}

Vec node_values(const RealField& u) {
  Vec out;
  u.space->synth(u.c, out);
  return out;
}

CVec node_values(const ComplexField& u) {
  CVec out;
  u.space->synth(u.c, out);
  return out;
}

// -- differential operators ----------------------------------------------------

namespace {

template <class Scalar>
Field<Scalar> derivative_impl(const Field<Scalar>& u) {
  const FunctionSpace& s = *u.space;
  if (s.kind() != SpaceKind::Periodic)
    throw std::invalid_argument(
        "derivative: the duality derivative is defined on the Periodic family only");
  Field<Scalar> out(s);
  out.c[0] = Scalar(0);
  for (int k = 1; k <= s.mode_count(); ++k) {
    const double kh = k * kPi / s.beta();
    out.c[2 * k - 1] = Scalar(kh) * u.c[2 * k];    // cos coef of Du
    out.c[2 * k] = Scalar(-kh) * u.c[2 * k - 1];   // sin coef of Du
  }
  return out;
}

template <class Scalar>
Field<Scalar> laplacian_impl(const Field<Scalar>& u) {
  const FunctionSpace& s = *u.space;
  Field<Scalar> out(s);
  for (int i = 0; i < s.dim(); ++i) {
    const double kh = s.basis_wavenumber(i);
    out.c[i] = Scalar(-kh * kh) * u.c[i];
  }
  return out;
}

}  // namespace

RealField derivative(const RealField& u) { return derivative_impl(u); }
ComplexField derivative(const ComplexField& u) { return derivative_impl(u); }
RealField laplacian(const RealField& u) { return laplacian_impl(u); }
ComplexField laplacian(const ComplexField& u) { return laplacian_impl(u); }

RealField multiply_project(const RealField& u, const RealField& v) {
  require_same_space(u.space, v.space);
  Vec a = node_values(u), b = node_values(v);
  return project_nodes(*u.space, (a.array() * b.array()).matrix());
}

ComplexField multiply_project(const ComplexField& u, const ComplexField& v) {
  require_same_space(u.space, v.space);
  CVec a = node_values(u), b = node_values(v);
  return project_nodes(*u.space, (a.array() * b.array()).matrix());
}

namespace {

template <class Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic> evaluate_impl(const Field<Scalar>& u,
                                                    const Vec& points) {
  const FunctionSpace& s = *u.space;
  const double lo = s.domain_min(), hi = s.domain_max();
  const double tol = 1e-12 * (1.0 + std::abs(hi - lo));
  Eigen::Vector<Scalar, Eigen::Dynamic> out(points.size());
  for (Eigen::Index p = 0; p < points.size(); ++p) {
    const double x = points[p];
    if (x < lo - tol || x > hi + tol)
      throw std::domain_error("evaluate: point outside the closed domain");
    Scalar acc{};
    for (int i = 0; i < s.dim(); ++i) acc += u.c[i] * Scalar(s.basis_value(i, x));
    out[p] = acc;
  }
  return out;
}

}  // namespace

Vec evaluate(const RealField& u, const Vec& points) { return evaluate_impl(u, points); }
CVec evaluate(const ComplexField& u, const Vec& points) { return evaluate_impl(u, points); }

Vec derivative_node_values(const RealField& u) {
  const FunctionSpace& s = *u.space;
  if (s.kind() == SpaceKind::Periodic) return node_values(derivative(u));
  Vec out = Vec::Zero(s.num_nodes());
  const Vec& x = s.quad_nodes();
  for (int k = 1; k <= s.dim(); ++k) {
    const double kh = k * kPi / s.beta();
    for (int j = 0; j < s.num_nodes(); ++j)
      out[j] += u.c[k - 1] * kh * std::cos(kh * x[j]);
  }
  return out;
}

Vec pair_with_basis_derivative(const FunctionSpace& s, const Vec& g) {
  if (g.size() != s.num_nodes())
    throw std::invalid_argument("pair_with_basis_derivative: wrong node count");
  Vec out = Vec::Zero(s.dim());
  const Vec& x = s.quad_nodes();
  if (s.kind() == SpaceKind::Dirichlet) {
    for (int k = 1; k <= s.dim(); ++k) {
      const double kh = k * kPi / s.beta();
      double acc = 0.0;
      for (int j = 0; j < s.num_nodes(); ++j) acc += g[j] * kh * std::cos(kh * x[j]);
      out[k - 1] = acc * s.quad_weight();
    }
    return out;
  }
  // Periodic: phi_0' = 0; <g,(cos_k)'> = -k^ <g,sin_k>, <g,(sin_k)'> = k^ <g,cos_k>.
  Vec q;
  s.analyze(g, q);
  for (int k = 1; k <= s.mode_count(); ++k) {
    const double kh = k * kPi / s.beta();
    out[2 * k - 1] = -kh * q[2 * k];
    out[2 * k] = kh * q[2 * k - 1];
  }
  return out;
}

double pair_dense(const RealField& u, const std::function<double(double)>& f) {
  const FunctionSpace& s = *u.space;
  const int panels = std::max(64, 4 * s.mode_count());
  return gauss_integrate(
      [&](double x) {
        double acc = 0.0;
        for (int i = 0; i < s.dim(); ++i) acc += u.c[i] * s.basis_value(i, x);
        return acc * f(x);
      },
      s.domain_min(), s.domain_max(), panels);
}

}  // namespace gus
