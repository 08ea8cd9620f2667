#pragma once

#include <functional>
#include <optional>
#include <string>

#include "gus/function_space.hpp"

namespace gus {

enum class OperatorTag { Burgers, ViscousBurgers, NSE, NonlinearWave, LinearAdvection };

enum class FieldLayout { Single, Pair };

OperatorTag parse_operator_tag(const std::string& s);
std::string operator_tag_name(OperatorTag t);

/// Right-hand-side definition for d/dt u = P(A(u)): operator tag plus the
/// parameters the tag needs. Immutable after construction; the potential is
/// sampled at the quadrature nodes once.
class EvolutionProblem {
 public:
  EvolutionProblem(OperatorTag tag, const FunctionSpace& space, double nu = 0.0,
                   double p = 0.0, double c = 0.0,
                   const std::function<double(double)>& potential = nullptr);

  OperatorTag tag() const { return tag_; }
  const FunctionSpace& space() const { return *space_; }
  double nu() const { return nu_; }
  double p() const { return p_; }
  double advection_speed() const { return c_; }
  FieldLayout layout() const { return layout_; }
  const Vec& potential_nodes() const { return v_nodes_; }
  bool complex_flavor() const { return tag_ == OperatorTag::NSE; }

 private:
  OperatorTag tag_;
  const FunctionSpace* space_;
  double nu_;
  double p_;
  double c_;
  FieldLayout layout_;
  Vec v_nodes_;
};

/// -P(u Du). Periodic, real flavor.
RealField burgers_rhs(const RealField& u);

/// burgers_rhs(u) + nu * laplacian(u); bit-identical to burgers_rhs at nu = 0.
RealField viscous_burgers_rhs(const RealField& u, double nu);

/// -i P(-1/2 lap u + V u - |u|^{p-2} u). Periodic, complex flavor, p > 2.
ComplexField nse_rhs(const ComplexField& u, const Vec& potential_nodes, double p);

/// First-order wave system on a Dirichlet space:
/// d/dt psi = phi, d/dt phi = lap psi - P(|psi|^{p-2} psi).
std::pair<RealField, RealField> wave_rhs(const RealField& psi, const RealField& phi,
                                         double p);

/// -c Du (closed-form accuracy oracle for the integrator).
RealField advection_rhs(const RealField& u, double c);

/// Dispatch on the problem tag (single-field flavors).
RealField apply_rhs(const EvolutionProblem& pb, const RealField& u);
ComplexField apply_rhs(const EvolutionProblem& pb, const ComplexField& u);

/// Entropy flux H(u) = integral_0^u s G'(s) ds for an entropy G with G(0)=0,
/// computed by adaptive quadrature (relative tolerance 1e-10) with monomial
/// fast paths.
class EntropyFlux {
 public:
  /// General C^1 entropy: supply G' (G itself is not needed for H).
  explicit EntropyFlux(std::function<double(double)> g_prime);
  /// Monomial fast path: G(u) = u^m, m >= 1.
  static EntropyFlux monomial(int m);

  double operator()(double u) const;

 private:
  EntropyFlux() = default;
  std::function<double(double)> g_prime_;
  int monomial_m_ = 0;  // 0 = generic path
};

}  // namespace gus
