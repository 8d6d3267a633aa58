#pragma once

#include <array>
#include <complex>
#include <vector>

#include "rsurf/cyclotomic.hpp"

namespace rsurf {

/// The triple (n, p, q) fixing the right triangles: alpha = pi*p/n at vertex 1
/// of P, beta = pi*q/n at vertex 1 of Q, both in (0, pi/2).
struct SurfaceParams {
  int n = 0;
  int p = 0;
  int q = 0;

  /// Validates 0 < p,q < n/2, p != q, and gcd(p,q) sharing no factor with n.
  static SurfaceParams make(int n, int p, int q);

  /// Conductor of the working cyclotomic field, lcm(4, 2n).
  int conductor() const;

  double alpha() const;  // pi*p/n
  double beta() const;   // pi*q/n
  double a() const { return std::cos(alpha()); }
  double b() const { return std::cos(beta()); }

  /// 2*cos(pi*p/n) and 2*cos(pi*q/n) as exact field elements.
  CycNum two_a() const;
  CycNum two_b() const;

  bool operator==(const SurfaceParams& o) const {
    return n == o.n && p == o.p && q == o.q;
  }
  bool operator<(const SurfaceParams& o) const {
    if (n != o.n) return n < o.n;
    if (p != o.p) return p < o.p;
    return q < o.q;
  }
};

/// Rotation angle as an exact fraction of a full turn, reduced to [0, 1).
struct Turn {
  long num = 0;
  long den = 1;

  static Turn of(long num, long den);
  Turn operator+(const Turn& o) const;
  Turn operator-() const;
  bool operator==(const Turn& o) const { return num == o.num && den == o.den; }
  bool is_zero() const { return num == 0; }
  bool is_half() const { return 2 * num == den; }
  double radians() const;
  /// zeta_m^{m*num/den}; m must be divisible by den.
  CycNum phase(int conductor) const;
};

/// An isometry of X x Y: (x, y) -> (Rx * s(x) + tx, Ry * s(y) + ty) where
/// s is conjugation when flip is set, Rx/Ry are the unit phases of rotX/rotY,
/// and the translation parts are exact cyclotomic numbers with cached float
/// mirrors.
class Isometry {
 public:
  Isometry() = default;

  static Isometry identity(int conductor);
  static Isometry conjugation(int conductor);                     // sigma
  static Isometry rotation(int conductor, Turn rx, Turn ry);      // r(theta, phi)
  static Isometry translation(const CycNum& u, const CycNum& v);  // t(u, v)

  bool flip() const { return flip_; }
  Turn rot_x() const { return rot_x_; }
  Turn rot_y() const { return rot_y_; }
  const CycNum& trans_x() const { return trans_x_; }
  const CycNum& trans_y() const { return trans_y_; }
  int conductor() const { return trans_x_.conductor(); }

  Isometry compose(const Isometry& o) const;  // this after o
  Isometry inverse() const;

  std::array<std::complex<double>, 2> apply(const std::complex<double>& x,
                                            const std::complex<double>& y) const;
  /// Action on the X component alone (and Y alone).
  std::complex<double> apply_x(const std::complex<double>& x) const;
  std::complex<double> apply_y(const std::complex<double>& y) const;
  std::pair<CycNum, CycNum> apply_exact(const CycNum& x, const CycNum& y) const;

  bool operator==(const Isometry& o) const;
  bool is_identity() const;
  bool is_translation() const { return !flip_ && rot_x_.is_zero() && rot_y_.is_zero(); }

  std::string to_string() const;

 private:
  bool flip_ = false;
  Turn rot_x_{};
  Turn rot_y_{};
  CycNum trans_x_ = CycNum::zero(4);
  CycNum trans_y_ = CycNum::zero(4);
};

/// Exact translation vector (u, v) in X x Y.
struct TransVec {
  CycNum u;
  CycNum v;

  bool operator==(const TransVec& o) const { return u == o.u && v == o.v; }
  bool operator<(const TransVec& o) const { return u < o.u || (u == o.u && v < o.v); }
  TransVec operator+(const TransVec& o) const { return {u + o.u, v + o.v}; }
  TransVec operator-(const TransVec& o) const { return {u - o.u, v - o.v}; }
  TransVec operator-() const { return {-u, -v}; }
  std::array<double, 4> embed() const;
};

/// A finite G1-invariant set of translations.
struct Star {
  std::vector<TransVec> elements;
  size_t size() const { return elements.size(); }
};

/// The three Schwarz reflections fixing the edges 12, 13, 23 of the
/// fundamental graph: sigma, r(2a,2b)-conjugation form and the glide at the
/// hypotenuse-opposite edge.
std::array<Isometry, 3> edge_generators(const SurfaceParams& params);

/// |R| for R generated by r(2*alpha, 2*beta); equals n.
int rotation_subgroup_order(const SurfaceParams& params);

/// Whether some power of r(2*alpha, 2*beta) equals r(pi, pi), decided on
/// exact turn fractions.
bool contains_half_turn(const SurfaceParams& params);

/// Orders of the vertex groups: |G1| = 2n, |G2| = 4, |G3| = 2n'.
int vertex_group_order(const SurfaceParams& params, int vertex);

/// The star Sigma: G1-orbit of t(2a, 2b), translation parts only.
/// Enumeration order: k = 0..n-1 of the r^k-conjugates (the sigma-branch
/// repeats the same set and is deduplicated).
Star star(const SurfaceParams& params);

/// All pairwise sums of Sigma elements with Sigma^{-1} = -Sigma elements,
/// deduplicated exactly (contains 0).
Star star_difference(const SurfaceParams& params);

/// Order of the derived point group <sigma, r(2a,2b), r(pi,pi)> computed by
/// closure over exact rotation parts; 2n or 4n.
int derived_point_group_order(const SurfaceParams& params);

}  // namespace rsurf
