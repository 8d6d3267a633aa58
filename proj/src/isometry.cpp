#include "rsurf/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rsurf {

SurfaceParams SurfaceParams::make(int n, int p, int q) {
  if (n < 1 || p < 1 || q < 1) throw std::invalid_argument("SurfaceParams: positive integers required");
  if (2 * p >= n || 2 * q >= n)
    throw std::invalid_argument("SurfaceParams: angles must lie in (0, pi/2)");
  if (p == q) throw std::invalid_argument("SurfaceParams: trivial graph (p == q)");
  if (std::gcd(std::gcd(p, q), n) != 1)
    throw std::invalid_argument("SurfaceParams: gcd(p,q) shares a factor with n");
  return SurfaceParams{n, p, q};
}

int SurfaceParams::conductor() const { return std::lcm(4, 2 * n); }

double SurfaceParams::alpha() const { return std::numbers::pi * p / n; }
double SurfaceParams::beta() const { return std::numbers::pi * q / n; }

CycNum SurfaceParams::two_a() const {
  const int m = conductor();
  const long k = long(m) / (2 * n) * p;
  return CycNum::root_of_unity(m, k) + CycNum::root_of_unity(m, -k);
}

CycNum SurfaceParams::two_b() const {
  const int m = conductor();
  const long k = long(m) / (2 * n) * q;
  return CycNum::root_of_unity(m, k) + CycNum::root_of_unity(m, -k);
}

Turn Turn::of(long num, long den) {
  if (den <= 0) throw std::invalid_argument("Turn: positive denominator required");
  long g = std::gcd(std::abs(num), den);
  num /= g;
  den /= g;
  num %= den;
  if (num < 0) num += den;
  return Turn{num, den};
}

Turn Turn::operator+(const Turn& o) const {
  long d = std::lcm(den, o.den);
  return Turn::of(num * (d / den) + o.num * (d / o.den), d);
}

Turn Turn::operator-() const { return Turn::of(-num, den); }

double Turn::radians() const { return 2.0 * std::numbers::pi * num / den; }

CycNum Turn::phase(int m) const {
  if (m % den != 0) throw std::domain_error("Turn::phase: conductor not divisible by denominator");
  return CycNum::root_of_unity(m, (m / den) * num);
}

Isometry Isometry::identity(int m) {
  Isometry g;
  g.trans_x_ = CycNum::zero(m);
  g.trans_y_ = CycNum::zero(m);
  return g;
}

Isometry Isometry::conjugation(int m) {
  Isometry g = identity(m);
  g.flip_ = true;
  return g;
}

Isometry Isometry::rotation(int m, Turn rx, Turn ry) {
  Isometry g = identity(m);
  g.rot_x_ = rx;
  g.rot_y_ = ry;
  return g;
}

Isometry Isometry::translation(const CycNum& u, const CycNum& v) {
  if (u.conductor() != v.conductor())
    throw std::invalid_argument("Isometry::translation: conductor mismatch");
  Isometry g = identity(u.conductor());
  g.trans_x_ = u;
  g.trans_y_ = v;
  return g;
}

Isometry Isometry::compose(const Isometry& o) const {
  // (this o o)(p) = this(o(p)).
  // X-part: x -> Rx1*s1(Rx2*s2(x) + t2) + t1
  //            = Rx1*s1(Rx2) * (s1 s2)(x) + Rx1*s1(t2) + t1.
  const int m = conductor();
  if (m != o.conductor()) throw std::invalid_argument("Isometry::compose: conductor mismatch");
  Isometry g;
  g.flip_ = flip_ != o.flip_;
  const Turn orx = flip_ ? -o.rot_x_ : o.rot_x_;
  const Turn ory = flip_ ? -o.rot_y_ : o.rot_y_;
  g.rot_x_ = rot_x_ + orx;
  g.rot_y_ = rot_y_ + ory;
  const CycNum tx2 = flip_ ? o.trans_x_.conj() : o.trans_x_;
  const CycNum ty2 = flip_ ? o.trans_y_.conj() : o.trans_y_;
  g.trans_x_ = rot_x_.phase(m) * tx2 + trans_x_;
  g.trans_y_ = rot_y_.phase(m) * ty2 + trans_y_;
  return g;
}

Isometry Isometry::inverse() const {
  // x -> s(R^{-1}(x - t)) = s(R^{-1}) s(x) - s(R^{-1} t).
  const int m = conductor();
  Isometry g;
  g.flip_ = flip_;
  g.rot_x_ = flip_ ? rot_x_ : -rot_x_;
  g.rot_y_ = flip_ ? rot_y_ : -rot_y_;
  CycNum rx_inv_t = (-rot_x_).phase(m) * trans_x_;
  CycNum ry_inv_t = (-rot_y_).phase(m) * trans_y_;
  if (flip_) {
    rx_inv_t = rx_inv_t.conj();
    ry_inv_t = ry_inv_t.conj();
  }
  g.trans_x_ = -rx_inv_t;
  g.trans_y_ = -ry_inv_t;
  return g;
}

std::complex<double> Isometry::apply_x(const std::complex<double>& x) const {
  std::complex<double> w = flip_ ? std::conj(x) : x;
  const double th = rot_x_.radians();
  return std::polar(1.0, th) * w + trans_x_.embed();
}

std::complex<double> Isometry::apply_y(const std::complex<double>& y) const {
  std::complex<double> w = flip_ ? std::conj(y) : y;
  const double th = rot_y_.radians();
  return std::polar(1.0, th) * w + trans_y_.embed();
}

std::array<std::complex<double>, 2> Isometry::apply(const std::complex<double>& x,
                                                    const std::complex<double>& y) const {
  return {apply_x(x), apply_y(y)};
}

std::pair<CycNum, CycNum> Isometry::apply_exact(const CycNum& x, const CycNum& y) const {
  const int m = conductor();
  CycNum wx = flip_ ? x.conj() : x;
  CycNum wy = flip_ ? y.conj() : y;
  return {rot_x_.phase(m) * wx + trans_x_, rot_y_.phase(m) * wy + trans_y_};
}

bool Isometry::operator==(const Isometry& o) const {
  return flip_ == o.flip_ && rot_x_ == o.rot_x_ && rot_y_ == o.rot_y_ &&
         trans_x_ == o.trans_x_ && trans_y_ == o.trans_y_;
}

bool Isometry::is_identity() const {
  return !flip_ && rot_x_.is_zero() && rot_y_.is_zero() && trans_x_.is_zero() &&
         trans_y_.is_zero();
}

std::string Isometry::to_string() const {
  std::ostringstream os;
  os << (flip_ ? "sigma." : "") << "r(" << rot_x_.num << "/" << rot_x_.den << ", "
     << rot_y_.num << "/" << rot_y_.den << ").t(" << trans_x_.to_string() << ", "
     << trans_y_.to_string() << ")";
  return os.str();
}

std::array<double, 4> TransVec::embed() const {
  auto cu = u.embed();
  auto cv = v.embed();
  return {cu.real(), cu.imag(), cv.real(), cv.imag()};
}

std::array<Isometry, 3> edge_generators(const SurfaceParams& params) {
  const int m = params.conductor();
  const Isometry sigma = Isometry::conjugation(m);
  const Turn two_alpha = Turn::of(params.p, params.n);   // 2*alpha as turn fraction
  const Turn two_beta = Turn::of(params.q, params.n);
  const Isometry s13 = Isometry::rotation(m, two_alpha, two_beta).compose(sigma);
  const Turn half = Turn::of(1, 2);
  const Isometry s23 = Isometry::translation(params.two_a(), params.two_b())
                           .compose(Isometry::rotation(m, half, half))
                           .compose(sigma);
  return {sigma, s13, s23};
}

int rotation_subgroup_order(const SurfaceParams& params) { return params.n; }

bool contains_half_turn(const SurfaceParams& params) {
  // r(2*alpha,2*beta)^k = r(pi,pi) iff 2kp = n (mod 2n) and 2kq = n (mod 2n).
  const int n = params.n;
  for (int k = 0; k < n; ++k) {
    if ((2 * k * params.p - n) % (2 * n) == 0 && (2 * k * params.q - n) % (2 * n) == 0)
      return true;
  }
  return false;
}

namespace {

// n' from the vertex-1 <-> vertex-3 angle interchange.
int n_prime(const SurfaceParams& params) {
  const int n = params.n;
  const int g = std::gcd(std::gcd(2 * n, n - 2 * params.p), n - 2 * params.q);
  return 2 * n / g;
}

}  // namespace

int vertex_group_order(const SurfaceParams& params, int vertex) {
  switch (vertex) {
    case 1:
      return 2 * params.n;
    case 2:
      return 4;
    case 3:
      return 2 * n_prime(params);
    default:
      throw std::invalid_argument("vertex_group_order: vertex must be 1, 2 or 3");
  }
}

Star star(const SurfaceParams& params) {
  const int m = params.conductor();
  const int n = params.n;
  const CycNum two_a = params.two_a();
  const CycNum two_b = params.two_b();
  std::vector<TransVec> out;
  std::set<TransVec> seen;
  // Conjugating t(u,v) by r^k multiplies components by the rotation phases;
  // conjugating by sigma conjugates them. Enumeration order is k = 0..n-1
  // over the r^k-conjugates; the sigma-branch is appended afterwards and is
  // empty here because the seed components are real.
  for (int k = 0; k < n; ++k) {
    const long ex = long(m) / n * params.p * k;
    const long ey = long(m) / n * params.q * k;
    TransVec t{two_a * CycNum::root_of_unity(m, ex), two_b * CycNum::root_of_unity(m, ey)};
    if (seen.insert(t).second) out.push_back(t);
  }
  for (size_t i = 0, limit = out.size(); i < limit; ++i) {
    TransVec tc{out[i].u.conj(), out[i].v.conj()};
    if (seen.insert(tc).second) out.push_back(tc);
  }
  return Star{std::move(out)};
}

Star star_difference(const SurfaceParams& params) {
  const Star s = star(params);
  std::vector<TransVec> out;
  std::set<TransVec> seen;
  for (const TransVec& a : s.elements) {
    for (const TransVec& b : s.elements) {
      TransVec d = a - b;
      if (seen.insert(d).second) out.push_back(d);
    }
  }
  return Star{std::move(out)};
}

int derived_point_group_order(const SurfaceParams& params) {
  const int m = params.conductor();
  const Isometry sigma = Isometry::conjugation(m);
  const Isometry rot = Isometry::rotation(m, Turn::of(params.p, params.n),
                                          Turn::of(params.q, params.n));
  const Isometry half = Isometry::rotation(m, Turn::of(1, 2), Turn::of(1, 2));

  // Closure over the origin-fixing elements; all have trivial translation.
  auto key = [](const Isometry& g) {
    return std::tuple<bool, long, long, long, long>(g.flip(), g.rot_x().num, g.rot_x().den,
                                                    g.rot_y().num, g.rot_y().den);
  };
  std::set<std::tuple<bool, long, long, long, long>> seen;
  std::vector<Isometry> frontier{Isometry::identity(m)};
  seen.insert(key(frontier[0]));
  std::vector<Isometry> gens{sigma, rot, half};
  while (!frontier.empty()) {
    std::vector<Isometry> next;
    for (const Isometry& g : frontier) {
      for (const Isometry& h : gens) {
        Isometry gh = g.compose(h);
        if (seen.insert(key(gh)).second) next.push_back(gh);
      }
    }
    frontier = std::move(next);
  }
  return int(seen.size());
}

}  // namespace rsurf
