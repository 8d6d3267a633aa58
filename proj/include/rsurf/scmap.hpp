#pragma once

#include <complex>
#include <vector>

#include "rsurf/isometry.hpp"

namespace rsurf {

using Cplx = std::complex<double>;

/// Complete Euler beta integral B(s, t).
double beta_complete(double s, double t);

/// Where a point sits relative to a closed standard triangle.
enum class TriangleLocation { Outside, Interior, Edge12, Edge13, Edge23, Vertex1, Vertex2, Vertex3 };

/// Right triangle in standard position: vertices 0, cos(theta), e^{i*theta}.
struct Triangle {
  double theta = 0.0;
  Cplx v1{0.0, 0.0}, v2{0.0, 0.0}, v3{0.0, 0.0};

  static Triangle standard(double theta);
  bool contains(const Cplx& x, double tol = 1e-9) const;
  TriangleLocation locate(const Cplx& x, double tol = 1e-9) const;
  /// Distance to the boundary, negative outside.
  double boundary_slack(const Cplx& x) const;
};

/// Numerical realization of the conformal map f = h o g^{-1} between the
/// standard triangles P (angle alpha) and Q (angle beta), via the
/// half-plane Schwarz-Christoffel integrals with Gauss-Jacobi quadrature
/// absorbing the endpoint singularities.
///
/// Immutable after construction; evaluations are const and thread-safe.
class SCMapContext {
 public:
  explicit SCMapContext(const SurfaceParams& params, double tol = 1e-10);

  const SurfaceParams& params() const { return params_; }
  const Triangle& domain() const { return P_; }
  const Triangle& range() const { return Q_; }
  double norm_a() const { return A_; }
  double norm_b() const { return B_; }
  double tol() const { return tol_; }

  /// g (which = 'g') or h ('h') on the closed upper half-plane.
  Cplx half_plane_map(const Cplx& z, char which) const;

  /// Solve g(z) = x for x in the closed triangle P; z in the closed UHP.
  Cplx invert_g(const Cplx& x) const;

  Cplx forward_map(const Cplx& x) const;
  Cplx forward_derivative(const Cplx& x) const;
  /// f'(x) given z = g^{-1}(x), avoiding a second inversion.
  Cplx derivative_at_z(const Cplx& z) const;

 private:
  struct QuadRule {
    std::vector<double> nodes;    // in (0, 1)
    std::vector<double> weights;  // absorb the weight function
  };

  // Integral of t^{pf-1}(1-t)^{-1/2} dt from 0 to z, UHP branches.
  Cplx sc_integral(double pf, const Cplx& z, const QuadRule& rule0,
                   const QuadRule& rule_tail) const;
  Cplx map_eval(char which, const Cplx& z) const;

  SurfaceParams params_;
  double tol_;
  double pf_g_, pf_h_;      // alpha/pi, beta/pi
  double A_ = 0.0, B_ = 0.0;
  Triangle P_, Q_;
  QuadRule rule0_g_, rule0_h_;        // weight u^{pf-1} at the left endpoint
  QuadRule rule_tail_g_, rule_tail_h_;  // weight u^{-1/2-pf} at the left endpoint
  QuadRule rule_sqrt_;                // weight u^{-1/2} at the left endpoint
  QuadRule rule_leg_;                 // Gauss-Legendre on [0,1]
  std::vector<std::pair<Cplx, Cplx>> seeds_;  // (z, g(z)) coarse grid
};

}  // namespace rsurf
