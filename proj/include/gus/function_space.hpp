#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "gus/fft.hpp"

namespace gus {

using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using cd = std::complex<double>;

enum class SpaceKind { Periodic, Dirichlet };

/// Finite trigonometric Galerkin space with a quadrature grid that is exact
/// for all products of three basis functions on the periodic family
/// (node count = smallest power of two >= 3K+2).
///
/// Periodic on [-beta, beta]: basis {1, cos(k pi x/beta), sin(k pi x/beta)},
/// k = 1..K, dim = 2K+1, uniform nodes, trapezoid weights.
/// Dirichlet on [0, beta]: basis {sin(k pi x/beta)}, k = 1..K, dim = K,
/// composite-midpoint nodes.
class FunctionSpace {
 public:
  FunctionSpace(SpaceKind kind, double beta, int K);

  SpaceKind kind() const { return kind_; }
  double beta() const { return beta_; }
  int mode_count() const { return K_; }
  int dim() const { return dim_; }
  int num_nodes() const { return M_; }
  double quad_weight() const { return w_; }
  const Vec& quad_nodes() const { return nodes_; }
  double domain_length() const { return kind_ == SpaceKind::Periodic ? 2 * beta_ : beta_; }
  double domain_min() const { return kind_ == SpaceKind::Periodic ? -beta_ : 0.0; }
  double domain_max() const { return beta_; }

  /// Squared L2 norm of basis function i.
  double basis_norm2(int i) const { return norm2_[i]; }
  const Vec& basis_norms2() const { return norm2_; }

  /// Wavenumber k*pi/beta of the mode that basis index i belongs to
  /// (0 for the periodic constant).
  double basis_wavenumber(int i) const;

  /// Basis function value at a point.
  double basis_value(int i, double x) const;

  /// Node values of basis-coefficient vectors (synthesis) and quadrature
  /// pairings q_i = w * sum_j g(x_j) phi_i(x_j) (analysis).
  void synth(const Vec& coeffs, Vec& node_values) const;
  void synth(const CVec& coeffs, CVec& node_values) const;
  void analyze(const Vec& node_values, Vec& pairings) const;
  void analyze(const CVec& node_values, CVec& pairings) const;

  bool same(const FunctionSpace& other) const { return this == &other; }

 private:
  void synth_complex(const CVec& coeffs, CVec& values) const;
  void analyze_complex(const CVec& values, CVec& pairings) const;

  SpaceKind kind_;
  double beta_;
  int K_;
  int dim_;
  int M_;
  double w_;
  Vec nodes_;
  Vec norm2_;
  std::shared_ptr<Fft> fft_;        // Periodic path (size M)
  Mat basis_at_nodes_;              // Dirichlet path: M x dim
  mutable std::vector<cd> scratch_;
};

/// Coefficients of one field in a FunctionSpace basis.
template <class Scalar>
struct Field {
  const FunctionSpace* space = nullptr;
  Eigen::Vector<Scalar, Eigen::Dynamic> c;

  Field() = default;
  explicit Field(const FunctionSpace& s)
      : space(&s), c(Eigen::Vector<Scalar, Eigen::Dynamic>::Zero(s.dim())) {}
  Field(const FunctionSpace& s, Eigen::Vector<Scalar, Eigen::Dynamic> coeffs)
      : space(&s), c(std::move(coeffs)) {
    if (c.size() != s.dim()) throw std::invalid_argument("Field: coefficient length != dim");
  }
};

using RealField = Field<double>;
using ComplexField = Field<cd>;

inline void require_same_space(const FunctionSpace* a, const FunctionSpace* b) {
  if (a == nullptr || b == nullptr || a != b)
    throw std::invalid_argument("fields belong to different spaces");
}

SpaceKind parse_space_kind(const std::string& s);

/// Factory enforcing the FunctionSpace invariants.
FunctionSpace build_space(SpaceKind kind, double beta, int K);

// -- field arithmetic ---------------------------------------------------------

template <class Scalar>
Field<Scalar> operator+(const Field<Scalar>& a, const Field<Scalar>& b) {
  require_same_space(a.space, b.space);
  return Field<Scalar>(*a.space, a.c + b.c);
}
template <class Scalar>
Field<Scalar> operator-(const Field<Scalar>& a, const Field<Scalar>& b) {
  require_same_space(a.space, b.space);
  return Field<Scalar>(*a.space, a.c - b.c);
}
template <class Scalar, class S2>
Field<Scalar> operator*(S2 s, const Field<Scalar>& a) {
  return Field<Scalar>(*a.space, (a.c * Scalar(s)).eval());
}

// -- core operations ----------------------------------------------------------

/// Integral over the domain (closed form in the basis; exact).
double integral(const RealField& u);
cd integral(const ComplexField& u);

/// L2 inner product; Hermitian (conjugate-linear in the first slot) for the
/// complex flavor. Exact for members of the space (Parseval).
double inner_product(const RealField& u, const RealField& v);
cd inner_product(const ComplexField& u, const ComplexField& v);

double norm(const RealField& u);
double norm(const ComplexField& u);

/// Canonical projection of a pointwise function handle: the unique u in the
/// space with <u,v> = <f,v> for all basis v. Pairings are computed with a
/// composite Gauss-Legendre rule on the open domain, so members of the space
/// are reproduced to round-off and smooth f is projected at quadrature
/// accuracy.
RealField project(const FunctionSpace& s, const std::function<double(double)>& f);
ComplexField project(const FunctionSpace& s, const std::function<cd(double)>& f);

/// Discrete projection of node values (the space's own quadrature). This is
/// the P used for extended operators (pointwise-apply-then-project).
RealField project_nodes(const FunctionSpace& s, const Vec& node_values);
ComplexField project_nodes(const FunctionSpace& s, const CVec& node_values);

/// Node values of a field on the quadrature grid.
Vec node_values(const RealField& u);
CVec node_values(const ComplexField& u);

/// Duality derivative D (periodic family only): D(1)=0, skew-adjoint,
/// maps cos_k -> -k^ sin_k and sin_k -> +k^ cos_k.
RealField derivative(const RealField& u);
ComplexField derivative(const ComplexField& u);

/// Laplacian: diagonal, multiplies mode k by -(k pi/beta)^2. Any space kind.
RealField laplacian(const RealField& u);
ComplexField laplacian(const ComplexField& u);

/// P(u*v): pointwise product at the quadrature nodes, then projection.
RealField multiply_project(const RealField& u, const RealField& v);
ComplexField multiply_project(const ComplexField& u, const ComplexField& v);

/// Pointwise basis synthesis at arbitrary points of the closed domain.
Vec evaluate(const RealField& u, const Vec& points);
CVec evaluate(const ComplexField& u, const Vec& points);

/// Node values of the classical derivative u' (both kinds; for Dirichlet the
/// result is a cosine series evaluated at the nodes).
Vec derivative_node_values(const RealField& u);

/// Quadrature pairings against basis-function derivatives:
/// r_i = w * sum_j g(x_j) phi_i'(x_j). Used by weak forms.
Vec pair_with_basis_derivative(const FunctionSpace& s, const Vec& g_nodes);

/// Dense pairing <u, f> with an arbitrary pointwise handle via composite
/// Gauss-Legendre on the open domain.
double pair_dense(const RealField& u, const std::function<double(double)>& f);

/// Composite Gauss-Legendre integral of a pointwise handle on [a, b].
double gauss_integrate(const std::function<double(double)>& f, double a, double b,
                       int panels);

}  // namespace gus
