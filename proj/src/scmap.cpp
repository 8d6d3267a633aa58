#include "rsurf/scmap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rsurf {

namespace {

constexpr int kNodes = 40;

// Symmetric tridiagonal eigen-decomposition (implicit-shift QL), returning
// eigenvalues in d and first components of the normalized eigenvectors in z.
void tridiag_eigen(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
  const int n = int(d.size());
  z.assign(n, 0.0);
  z[0] = 1.0;
  std::vector<std::vector<double>> vec(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) vec[i][i] = 1.0;
  e.push_back(0.0);
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    for (;;) {
      int m = l;
      for (; m < n - 1; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-16 * dd) break;
      }
      if (m == l) break;
      if (++iter > 60) throw std::runtime_error("tridiag_eigen: no convergence");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i];
        double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        for (int k = 0; k < n; ++k) {
          f = vec[k][i + 1];
          vec[k][i + 1] = s * vec[k][i] + c * f;
          vec[k][i] = c * vec[k][i] - s * f;
        }
      }
      if (r == 0.0 && m - 1 >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  // sort ascending, carry first components
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] < d[b]; });
  std::vector<double> ds(n), zs(n);
  for (int i = 0; i < n; ++i) {
    ds[i] = d[idx[i]];
    zs[i] = vec[0][idx[i]];
  }
  d = ds;
  z = zs;
}

}  // namespace

double beta_complete(double s, double t) {
  if (s <= 0 || t <= 0) throw std::invalid_argument("beta_complete: positive arguments required");
  return std::exp(std::lgamma(s) + std::lgamma(t) - std::lgamma(s + t));
}

Triangle Triangle::standard(double theta) {
  Triangle tr;
  tr.theta = theta;
  tr.v1 = {0.0, 0.0};
  tr.v2 = {std::cos(theta), 0.0};
  tr.v3 = {std::cos(theta), std::sin(theta)};
  return tr;
}

double Triangle::boundary_slack(const Cplx& x) const {
  const double s12 = x.imag();
  const double s23 = v2.real() - x.real();
  const double s13 = std::sin(theta) * x.real() - std::cos(theta) * x.imag();
  return std::min({s12, s23, s13});
}

bool Triangle::contains(const Cplx& x, double tol) const {
  return boundary_slack(x) >= -tol;
}

TriangleLocation Triangle::locate(const Cplx& x, double tol) const {
  if (boundary_slack(x) < -tol) return TriangleLocation::Outside;
  if (std::abs(x - v1) <= tol) return TriangleLocation::Vertex1;
  if (std::abs(x - v2) <= tol) return TriangleLocation::Vertex2;
  if (std::abs(x - v3) <= tol) return TriangleLocation::Vertex3;
  const double s12 = x.imag();
  const double s23 = v2.real() - x.real();
  const double s13 = std::sin(theta) * x.real() - std::cos(theta) * x.imag();
  if (s12 <= tol) return TriangleLocation::Edge12;
  if (s23 <= tol) return TriangleLocation::Edge23;
  if (s13 <= tol) return TriangleLocation::Edge13;
  return TriangleLocation::Interior;
}

namespace {

// Gauss-Jacobi rule on [0,1] for weight u^{b_exp} (1-u)^{a_exp}:
// sum_i w_i f(u_i) = int_0^1 u^{b_exp}(1-u)^{a_exp} f(u) du.
void gauss_jacobi_01(double a_exp, double b_exp, int n, std::vector<double>& nodes,
                     std::vector<double>& weights) {
  const double A = a_exp, B = b_exp;
  std::vector<double> d(n), e;
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + A + B;
    d[k] = (k == 0) ? (B - A) / (A + B + 2.0)
                    : (B * B - A * A) / (s * (s + 2.0));
  }
  e.resize(n - 1);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + A + B;
    double num;
    if (k == 1) {
      num = 4.0 * (1.0 + A) * (1.0 + B) / ((A + B + 2.0) * (A + B + 2.0) * (A + B + 3.0));
    } else {
      num = 4.0 * k * (k + A) * (k + B) * (k + A + B) /
            (s * s * (s + 1.0) * (s - 1.0));
    }
    e[k - 1] = std::sqrt(num);
  }
  std::vector<double> z;
  tridiag_eigen(d, e, z);
  const double mu0 = std::pow(2.0, A + B + 1.0) * beta_complete(A + 1.0, B + 1.0);
  nodes.resize(n);
  weights.resize(n);
  // map x in [-1,1] to u = (1+x)/2; the 2^{A+B+1} and the du factor cancel
  // against the weight transform, leaving w_i / 2^{A+B+1}.
  for (int i = 0; i < n; ++i) {
    nodes[i] = 0.5 * (1.0 + d[i]);
    weights[i] = mu0 * z[i] * z[i] / std::pow(2.0, A + B + 1.0);
  }
}

// Power with the branch cut taken on the negative reals approached from
// below: arg in [-pi, pi), so negative reals get arg = -pi. Used for
// factors that live in the closed lower half-plane.
Cplx pow_lower(const Cplx& w, double e) {
  double th = std::arg(w);
  if (th > 0 && w.imag() == 0.0) th = -th;  // arg(pi) for negative reals -> -pi
  return std::polar(std::pow(std::abs(w), e), th * e);
}

}  // namespace

SCMapContext::SCMapContext(const SurfaceParams& params, double tol)
    : params_(params), tol_(tol) {
  pf_g_ = double(params.p) / params.n;
  pf_h_ = double(params.q) / params.n;
  P_ = Triangle::standard(params.alpha());
  Q_ = Triangle::standard(params.beta());
  A_ = P_.v2.real() / beta_complete(pf_g_, 0.5);
  B_ = Q_.v2.real() / beta_complete(pf_h_, 0.5);

  gauss_jacobi_01(0.0, pf_g_ - 1.0, kNodes, rule0_g_.nodes, rule0_g_.weights);
  gauss_jacobi_01(0.0, pf_h_ - 1.0, kNodes, rule0_h_.nodes, rule0_h_.weights);
  gauss_jacobi_01(0.0, -0.5 - pf_g_, kNodes, rule_tail_g_.nodes, rule_tail_g_.weights);
  gauss_jacobi_01(0.0, -0.5 - pf_h_, kNodes, rule_tail_h_.nodes, rule_tail_h_.weights);
  gauss_jacobi_01(0.0, -0.5, kNodes, rule_sqrt_.nodes, rule_sqrt_.weights);
  gauss_jacobi_01(0.0, 0.0, kNodes, rule_leg_.nodes, rule_leg_.weights);

  // Coarse (z, g(z)) grid seeding Newton in invert_g.
  for (double r : {0.12, 0.3, 0.5, 0.7, 0.9, 1.05, 1.2, 1.45, 1.8, 2.4, 4.0, 9.0, 30.0}) {
    for (int k = 0; k <= 20; ++k) {
      const double th = std::numbers::pi * k / 20.0;
      Cplx z = std::polar(r, th);
      if (std::abs(z - 1.0) < 0.04) continue;
      seeds_.emplace_back(z, map_eval('g', z));
    }
  }
}

Cplx SCMapContext::sc_integral(double pf, const Cplx& z, const QuadRule& rule0,
                               const QuadRule& rule_tail) const {
  if (z == Cplx(0.0, 0.0)) return {0.0, 0.0};
  if (z.imag() < -1e-12) throw std::domain_error("half_plane_map: z in the open lower half-plane");

  const double beta_full = beta_complete(pf, 0.5);

  // Large |z|: integrate the complementary tail through infinity. The full
  // integral equals e^{i pi pf} B(pf,1/2)/cos(pi pf), matching g(inf)=e^{i alpha}.
  if (std::abs(z) >= 2.0) {
    // int_0^z = full - i z^{pf-1/2} int_0^1 s^{-1/2-pf} (1 - s/z)^{-1/2} ds
    Cplx acc(0.0, 0.0);
    for (size_t i = 0; i < rule_tail.nodes.size(); ++i) {
      const Cplx t = 1.0 - rule_tail.nodes[i] / z;
      acc += rule_tail.weights[i] * pow_lower(t, -0.5);
    }
    const Cplx zp = std::pow(z, pf - 0.5);
    const Cplx full = beta_full / std::cos(std::numbers::pi * pf) *
                      std::polar(1.0, std::numbers::pi * pf);
    return full - Cplx(0.0, 1.0) * zp * acc;
  }

  // z on or near the boundary ray (1, inf): a + vertical edge leg.
  const bool near_real_beyond_1 = z.real() > 1.0 && std::abs(z.imag()) <= 1e-12;

  // Leg from 0: straight toward z (or toward 1 for the boundary ray), with
  // the u^{pf-1} endpoint rule; valid while the segment stays away from t=1.
  auto leg_from_zero = [&](const Cplx& w) {
    // int_0^w t^{pf-1}(1-t)^{-1/2} dt = w^pf int_0^1 u^{pf-1}(1-w u)^{-1/2} du
    Cplx acc(0.0, 0.0);
    for (size_t i = 0; i < rule0.nodes.size(); ++i) {
      const Cplx t = 1.0 - w * rule0.nodes[i];
      acc += rule0.weights[i] * pow_lower(t, -0.5);
    }
    return std::pow(w, pf) * acc;
  };

  // Leg between two regular points, Gauss-Legendre with principal branches.
  auto leg_smooth = [&](const Cplx& za, const Cplx& zb) {
    Cplx acc(0.0, 0.0);
    const Cplx d = zb - za;
    for (size_t i = 0; i < rule_leg_.nodes.size(); ++i) {
      const Cplx t = za + d * rule_leg_.nodes[i];
      acc += rule_leg_.weights[i] * std::pow(t, pf - 1.0) * pow_lower(1.0 - t, -0.5);
    }
    return d * acc;
  };

  // Leg ending exactly at t = 1 from a regular point, sqrt endpoint rule:
  // int_za^1 = (1-za) int_0^1 u^{-1/2} ((1-(1-za)u))^{... with t = 1-(1-za)u.
  auto leg_to_one = [&](const Cplx& za) {
    const Cplx d = 1.0 - za;
    Cplx acc(0.0, 0.0);
    for (size_t i = 0; i < rule_sqrt_.nodes.size(); ++i) {
      const Cplx t = 1.0 - d * rule_sqrt_.nodes[i];
      acc += rule_sqrt_.weights[i] * std::pow(t, pf - 1.0);
    }
    return pow_lower(d, 0.5) * acc;
  };

  // Leg from t = 1 outward to z (|z| < 2): t = 1 + (z-1)u.
  auto leg_from_one = [&](const Cplx& zb) {
    const Cplx d = zb - 1.0;
    Cplx acc(0.0, 0.0);
    for (size_t i = 0; i < rule_sqrt_.nodes.size(); ++i) {
      const Cplx t = 1.0 + d * rule_sqrt_.nodes[i];
      acc += rule_sqrt_.weights[i] * std::pow(t, pf - 1.0);
    }
    return d * pow_lower(-d, -0.5) * acc;
  };

  if (near_real_beyond_1) {
    Cplx total = leg_from_zero(Cplx(0.5, 0.0));
    total += leg_to_one(Cplx(0.5, 0.0));
    total += leg_from_one(Cplx(z.real(), 0.0));
    return total;
  }

  const double dist_to_one = std::abs(z - 1.0);

  // Vertex 2 and its neighborhood: go through t = 1 exactly.
  if (dist_to_one <= 1e-12) {
    return leg_from_zero(Cplx(0.5, 0.0)) + leg_to_one(Cplx(0.5, 0.0));
  }
  if (dist_to_one < 0.3) {
    Cplx total = leg_from_zero(Cplx(0.5, 0.0));
    total += leg_to_one(Cplx(0.5, 0.0));
    total += leg_from_one(z);
    return total;
  }

  // Generic point: one singular leg toward z, then smooth legs marching to z,
  // each step at most half the distance to the nearest singularity.
  const double r0 = std::min(0.4, 0.45 * std::abs(z));
  Cplx w = z * (r0 / std::abs(z));
  Cplx total = leg_from_zero(w);
  Cplx c = w;
  int guard = 0;
  while (std::abs(z - c) > 0) {
    if (++guard > 200) throw std::runtime_error("sc_integral: path subdivision stall");
    const double safe = 0.45 * std::min(std::abs(c - 1.0), std::abs(c) + 0.4);
    const double remain = std::abs(z - c);
    Cplx next = (remain <= safe) ? z : c + (z - c) * (safe / remain);
    // Keep the endpoint clear of t=1 as well.
    if (std::abs(next - 1.0) < 0.45 * dist_to_one && next != z) {
      next = c + (z - c) * (0.5 * safe / remain);
    }
    total += leg_smooth(c, next);
    c = next;
  }
  return total;
}

Cplx SCMapContext::map_eval(char which, const Cplx& z) const {
  if (which == 'g') return A_ * sc_integral(pf_g_, z, rule0_g_, rule_tail_g_);
  if (which == 'h') return B_ * sc_integral(pf_h_, z, rule0_h_, rule_tail_h_);
  throw std::invalid_argument("half_plane_map: which must be 'g' or 'h'");
}

Cplx SCMapContext::half_plane_map(const Cplx& z, char which) const {
  return map_eval(which, z);
}

namespace {

Cplx gprime(double A, double pf, const Cplx& z) {
  return A * std::pow(z, pf - 1.0) * pow_lower(1.0 - z, -0.5);
}

}  // namespace

Cplx SCMapContext::invert_g(const Cplx& x) const {
  if (!P_.contains(x, 1e-7))
    throw std::domain_error("invert_g: x outside the closed triangle P");

  const Cplx vertex3 = P_.v3;
  const double a = P_.v2.real();

  std::vector<Cplx> trials;
  // Local power-law seeds near the three vertices.
  if (std::abs(x) < 0.15) {
    const Cplx w = x * pf_g_ / A_;
    trials.push_back(std::pow(w, 1.0 / pf_g_));
  }
  if (std::abs(x - Cplx(a, 0.0)) < 0.15) {
    const Cplx w = (Cplx(a, 0.0) - x) / (2.0 * A_);
    trials.push_back(1.0 - w * w);
  }
  if (std::abs(x - vertex3) < 0.2) {
    // e^{i alpha} - g(z) ~ i A z^{pf-1/2} B(...)-tail: invert the power law.
    const Cplx w = (vertex3 - x) * (0.5 - pf_g_) / (Cplx(0.0, 1.0) * A_);
    const double e = 1.0 / (pf_g_ - 0.5);
    const double th = std::arg(w);
    for (double shift : {0.0, 2 * std::numbers::pi, -2 * std::numbers::pi}) {
      Cplx cand = std::polar(std::pow(std::abs(w), e), (th + shift) * e);
      if (cand.imag() > -1e-9 && std::abs(cand) > 1.0) trials.push_back(cand);
    }
  }
  // Grid seeds, nearest few.
  std::vector<std::pair<double, Cplx>> ranked;
  for (const auto& [z, gz] : seeds_) ranked.emplace_back(std::abs(gz - x), z);
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& p, const auto& q) { return p.first < q.first; });
  for (int i = 0; i < int(std::min<size_t>(4, ranked.size())); ++i)
    trials.push_back(ranked[i].second);

  const double target = 1e-11;
  Cplx best_z = trials.front();
  double best_res = 1e100;
  for (const Cplx& seed : trials) {
    Cplx z = seed;
    if (z.imag() < 0) z = Cplx(z.real(), 0.0);
    double res = std::abs(map_eval('g', z) - x);
    for (int it = 0; it < 60 && res > target; ++it) {
      const Cplx dg = gprime(A_, pf_g_, z);
      if (std::abs(dg) == 0.0) break;
      Cplx step = (map_eval('g', z) - x) / dg;
      // Damping: shrink the step until the residual decreases.
      double scale = 1.0;
      Cplx znew;
      double rnew = res;
      for (int halve = 0; halve < 12; ++halve) {
        znew = z - step * scale;
        if (znew.imag() < 0) znew = Cplx(znew.real(), 0.0);
        rnew = std::abs(map_eval('g', znew) - x);
        if (rnew < res) break;
        scale *= 0.5;
      }
      if (rnew >= res) break;
      z = znew;
      res = rnew;
    }
    if (res < best_res) {
      best_res = res;
      best_z = z;
    }
    if (best_res <= target) break;
  }
  if (best_res > 1e-9)
    throw std::runtime_error("invert_g: Newton failed, residual " + std::to_string(best_res) +
                             " at x = (" + std::to_string(x.real()) + ", " +
                             std::to_string(x.imag()) + ")");
  return best_z;
}

Cplx SCMapContext::forward_map(const Cplx& x) const {
  return map_eval('h', invert_g(x));
}

Cplx SCMapContext::derivative_at_z(const Cplx& z) const {
  return (B_ / A_) * std::pow(z, pf_h_ - pf_g_);
}

Cplx SCMapContext::forward_derivative(const Cplx& x) const {
  return derivative_at_z(invert_g(x));
}

}  // namespace rsurf
