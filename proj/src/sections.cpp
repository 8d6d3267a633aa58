#include "rsurf/sections.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace rsurf {

namespace {

constexpr double kEdgeTol = 1e-9;    // tile-membership fattening
constexpr double kVertexSnap = 1e-12;  // exact-vertex snap radius
constexpr double kVertexZone = 1e-4;   // strict-slack zone around vertices
constexpr double kDedupTol = 1e-8;
constexpr double kSingularFlag = 1e-9;

}  // namespace

double SectionPointSet::total_multiplicity() const {
  double s = 0;
  for (const auto& p : points) s += p.multiplicity;
  return s;
}

WindowPolygon window_polygon(const SurfaceParams& params) {
  if (params.n % params.p != 0)
    throw std::domain_error("window_polygon: p must divide n for the seven surfaces");
  WindowPolygon w;
  w.sides = params.n / params.p;
  w.covering = params.p;
  for (int k = 0; k < w.sides; ++k) {
    const double th = std::numbers::pi * (2.0 * k * params.p + params.p) / params.n;
    w.vertices.push_back(std::polar(1.0, th));
  }
  std::sort(w.vertices.begin(), w.vertices.end(),
            [](const Cplx& a, const Cplx& b) { return std::arg(a) < std::arg(b); });
  return w;
}

double WindowPolygon::boundary_slack(const Cplx& w) const {
  double slack = 1e300;
  const int n = int(vertices.size());
  for (int i = 0; i < n; ++i) {
    const Cplx a = vertices[i];
    const Cplx b = vertices[(i + 1) % n];
    const Cplx mid = 0.5 * (a + b);
    const Cplx nrm = mid / std::abs(mid);
    const double off = (std::conj(nrm) * a).real();
    slack = std::min(slack, off - (std::conj(nrm) * w).real());
  }
  return slack;
}

bool WindowPolygon::contains(const Cplx& w, double tol) const {
  return boundary_slack(w) >= -tol;
}

std::vector<LatticePoint> lattice_points_in_region(const LatticeBasis& basis,
                                                   const Cplx& x_center, double rx,
                                                   double ry) {
  if (basis.generators.size() != 4 || basis.det <= 0)
    throw std::domain_error("lattice_points_in_region: degenerate basis");
  // Embedded rows
  double B[4][4];
  for (int i = 0; i < 4; ++i) {
    auto e = basis.generators[i].embed();
    for (int j = 0; j < 4; ++j) B[i][j] = e[j];
  }
  // Weighted Gram: W = Gx/rx^2 + Gy/ry^2; points satisfying both disk
  // conditions lie in the ellipsoid (c - t)^T W (c - t) <= 2.
  double W[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double gx = B[i][0] * B[j][0] + B[i][1] * B[j][1];
      const double gy = B[i][2] * B[j][2] + B[i][3] * B[j][3];
      W[i][j] = gx / (rx * rx) + gy / (ry * ry);
    }
  // Center coefficients: solve sum t_i row_i = (Re x, Im x, 0, 0).
  double A[4][5];
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) A[j][i] = B[i][j];
    A[j][4] = (j == 0) ? x_center.real() : (j == 1 ? x_center.imag() : 0.0);
  }
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int i = c + 1; i < 4; ++i)
      if (std::abs(A[i][c]) > std::abs(A[piv][c])) piv = i;
    std::swap(A[c], A[piv]);
    if (std::abs(A[c][c]) < 1e-14)
      throw std::domain_error("lattice_points_in_region: degenerate embedding");
    for (int i = 0; i < 4; ++i) {
      if (i == c) continue;
      const double f = A[i][c] / A[c][c];
      for (int j = c; j <= 4; ++j) A[i][j] -= f * A[c][j];
    }
  }
  double t[4];
  for (int i = 0; i < 4; ++i) t[i] = A[i][4] / A[i][i];

  // LDL^T factorization of W for the Fincke-Pohst recursion.
  double d[4], L[4][4] = {{0}};
  {
    double M[4][4];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) M[i][j] = W[i][j];
    for (int i = 0; i < 4; ++i) {
      for (int k = 0; k < i; ++k) M[i][i] -= L[i][k] * L[i][k] * d[k];
      d[i] = M[i][i];
      L[i][i] = 1.0;
      for (int j = i + 1; j < 4; ++j) {
        double v = W[j][i];
        for (int k = 0; k < i; ++k) v -= L[j][k] * L[i][k] * d[k];
        L[j][i] = v / d[i];
      }
    }
  }
  // Q(c - t) = sum_i d_i (u_i)^2, u_i = (c_i - t_i) + sum_{j>i} L[j][i](c_j - t_j)
  const double bound = 2.0 * (1.0 + 1e-9) + 1e-9;
  std::vector<LatticePoint> out;
  std::array<long, 4> c{};
  std::function<void(int, double)> rec = [&](int level, double used) {
    if (level < 0) {
      // exact-ish region filter
      double px = 0, py = 0, qx = 0, qy = 0;
      for (int i = 0; i < 4; ++i) {
        px += c[i] * B[i][0];
        py += c[i] * B[i][1];
        qx += c[i] * B[i][2];
        qy += c[i] * B[i][3];
      }
      const Cplx X(px, py), Y(qx, qy);
      if (std::abs(X - x_center) <= rx + 1e-9 && std::abs(Y) <= ry + 1e-9)
        out.push_back(LatticePoint{c, X, Y});
      return;
    }
    double center = t[level];
    for (int j = level + 1; j < 4; ++j) center -= L[j][level] * (c[j] - t[j]);
    const double rem = bound - used;
    if (rem < 0) return;
    const double radius = std::sqrt(rem / d[level]) + 1e-9;
    const long lo = long(std::ceil(center - radius));
    const long hi = long(std::floor(center + radius));
    for (long v = lo; v <= hi; ++v) {
      c[level] = v;
      double u = v - center;
      rec(level - 1, used + d[level] * u * u);
    }
    c[level] = 0;
  };
  rec(3, 0.0);
  std::sort(out.begin(), out.end(), [](const LatticePoint& a, const LatticePoint& b) {
    return a.coeffs < b.coeffs;
  });
  return out;
}

namespace {

// Tile bookkeeping shared by analytic sections, model sections and the
// correspondence: coset representatives of G modulo the lattice group, and
// exact transfer tables for edge and vertex canonicalization.
struct TileSystem {
  const SurfaceDescriptor* desc = nullptr;
  int conductor = 4;
  std::vector<Isometry> reps;  // coset representatives h
  // Float caches of h^{-1} on X and of h on Y.
  struct RepCache {
    bool flip;
    Cplx inv_rot_x, inv_tx;  // x' = inv_rot_x * s(x - tx_global?) see apply
    Isometry iso, inv;
  };
  std::vector<RepCache> cache;
  // pair_table[h][edge] = (h', mu): h o rho_edge = t(mu) o h'.
  struct Transfer {
    int h_prime;
    std::array<long, 4> mu;
  };
  std::vector<std::array<Transfer, 3>> pair_table;
  // vertex_table[h][v] = orbit of h under the vertex group (w != id included).
  std::vector<std::array<std::vector<Transfer>, 3>> vertex_table;
  int ramification[3] = {1, 1, 1};
  bool has_extra_coset = false;
  CycNum sigma0_u = CycNum::zero(4), sigma0_v = CycNum::zero(4);

  std::array<long, 4> lattice_coords(const TransVec& v) const;
};

// Solve integer coordinates of a lattice translation in the reduced basis.
std::array<long, 4> TileSystem::lattice_coords(const TransVec& v) const {
  const auto& gens = desc->lattice.generators;
  // Solve over Q using the Gram system: G c = <gens, v>.
  Rat rhs[4];
  for (int i = 0; i < 4; ++i) rhs[i] = inner_product(gens[i], v);
  RationalMatrix A(4, 5);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) A.at(i, j) = desc->lattice.gram.at(i, j);
    A.at(i, 4) = rhs[i];
  }
  for (int c = 0; c < 4; ++c) {
    int piv = -1;
    for (int i = c; i < 4; ++i)
      if (A.at(i, c) != 0) { piv = i; break; }
    if (piv < 0) throw std::logic_error("lattice_coords: singular Gram");
    for (int j = 0; j <= 4; ++j) std::swap(A.at(piv, j), A.at(c, j));
    for (int i = 0; i < 4; ++i) {
      if (i == c || A.at(i, c) == 0) continue;
      Rat f = A.at(i, c) / A.at(c, c);
      for (int j = c; j <= 4; ++j) A.at(i, j) -= f * A.at(c, j);
    }
  }
  std::array<long, 4> out{};
  TransVec check{CycNum::zero(conductor), CycNum::zero(conductor)};
  for (int i = 0; i < 4; ++i) {
    Rat ci = A.at(i, 4) / A.at(i, i);
    if (ci.get_den() != 1)
      throw std::logic_error("lattice_coords: translation not in the lattice");
    out[i] = long(ci.get_num().get_si());
    check.u = check.u + gens[i].u.scaled(Rat(out[i]));
    check.v = check.v + gens[i].v.scaled(Rat(out[i]));
  }
  if (!(check.u == v.u && check.v == v.v))
    throw std::logic_error("lattice_coords: inconsistent solution");
  return out;
}

TileSystem build_tile_system(const SurfaceDescriptor& desc) {
  TileSystem ts;
  ts.desc = &desc;
  const SurfaceParams& params = desc.params;
  const int m = params.conductor();
  ts.conductor = m;

  const Isometry sigma = Isometry::conjugation(m);
  const Isometry rot = Isometry::rotation(m, Turn::of(params.p, params.n),
                                          Turn::of(params.q, params.n));
  // G1 representatives: r^k sigma^e.
  std::vector<Isometry> g1;
  Isometry rk = Isometry::identity(m);
  for (int k = 0; k < params.n; ++k) {
    g1.push_back(rk);
    g1.push_back(rk.compose(sigma));
    rk = rot.compose(rk);
  }
  ts.reps = g1;
  ts.has_extra_coset = !desc.half_turn_in_r;
  if (ts.has_extra_coset) {
    const Isometry glide = Isometry::translation(params.two_a(), params.two_b())
                               .compose(Isometry::rotation(m, Turn::of(1, 2), Turn::of(1, 2)));
    for (const Isometry& h : g1) ts.reps.push_back(glide.compose(h));
  }
  ts.sigma0_u = params.two_a();
  ts.sigma0_v = params.two_b();

  // Ramification indices of pi_X at the three vertex types.
  const SurfaceParams comp = complementary_parameters(params);
  ts.ramification[0] = params.p;
  ts.ramification[1] = 1;
  ts.ramification[2] = comp.p;

  // Edge reflections of the source triangle (as isometries of X x Y).
  const auto edge_refl = edge_generators(params);

  // Vertex groups in source coordinates.
  std::array<std::vector<Isometry>, 3> vgroups;
  const int pairs_for_vertex[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int v = 0; v < 3; ++v) {
    std::vector<Isometry> group{Isometry::identity(m)};
    for (;;) {
      bool grew = false;
      for (size_t i = 0; i < group.size(); ++i) {
        for (int gidx : pairs_for_vertex[v]) {
          Isometry cand = group[i].compose(edge_refl[gidx]);
          bool seen = false;
          for (const auto& g : group)
            if (g == cand) { seen = true; break; }
          if (!seen) {
            group.push_back(cand);
            grew = true;
          }
        }
      }
      if (!grew) break;
    }
    vgroups[v] = std::move(group);
  }

  // Decompose q = t(mu) o h' with h' in reps (unique by flip+rotations).
  auto decompose = [&](const Isometry& q) -> TileSystem::Transfer {
    for (size_t i = 0; i < ts.reps.size(); ++i) {
      const Isometry& h = ts.reps[i];
      if (h.flip() != q.flip() || !(h.rot_x() == q.rot_x()) || !(h.rot_y() == q.rot_y()))
        continue;
      Isometry diff = q.compose(h.inverse());
      if (!diff.is_translation()) continue;
      TransVec mu{diff.trans_x(), diff.trans_y()};
      return TileSystem::Transfer{int(i), ts.lattice_coords(mu)};
    }
    throw std::logic_error("tile system: decomposition failed");
  };

  ts.pair_table.resize(ts.reps.size());
  ts.vertex_table.resize(ts.reps.size());
  for (size_t i = 0; i < ts.reps.size(); ++i) {
    for (int e = 0; e < 3; ++e)
      ts.pair_table[i][e] = decompose(ts.reps[i].compose(edge_refl[e]));
    for (int v = 0; v < 3; ++v) {
      for (const Isometry& w : vgroups[v])
        ts.vertex_table[i][v].push_back(decompose(ts.reps[i].compose(w)));
    }
  }

  ts.cache.resize(ts.reps.size());
  for (size_t i = 0; i < ts.reps.size(); ++i) {
    ts.cache[i].iso = ts.reps[i];
    ts.cache[i].inv = ts.reps[i].inverse();
    ts.cache[i].flip = ts.reps[i].flip();
  }
  return ts;
}

struct TileId {
  int h;
  std::array<long, 4> c;
  bool operator<(const TileId& o) const {
    if (h != o.h) return h < o.h;
    return c < o.c;
  }
  bool operator==(const TileId& o) const { return h == o.h && c == o.c; }
};

std::string provenance_string(const TileId& id) {
  std::ostringstream os;
  os << "h" << id.h << ":" << id.c[0] << "," << id.c[1] << "," << id.c[2] << "," << id.c[3];
  return os.str();
}

TileId shifted(const TileId& id, const TileSystem::Transfer& tr) {
  TileId out;
  out.h = tr.h_prime;
  for (int i = 0; i < 4; ++i) out.c[i] = id.c[i] + tr.mu[i];
  return out;
}

// Emissions prior to dedup.
struct RawEmission {
  Cplx y;
  int multiplicity;
  TileId id;
  bool near_singular;
};

enum class MembershipKind { Skip, Interior, Edge, Vertex };

struct Membership {
  MembershipKind kind = MembershipKind::Skip;
  int index = 0;  // edge (0,1,2) = (12, 13, 23) or vertex (0,1,2) = (1,2,3)
  bool near_singular = false;
};

Membership classify_point(const Triangle& P, const Cplx& xprime) {
  Membership mb;
  const Cplx verts[3] = {P.v1, P.v2, P.v3};
  double dmin = 1e300;
  int vmin = -1;
  for (int v = 0; v < 3; ++v) {
    const double dv = std::abs(xprime - verts[v]);
    if (dv < dmin) { dmin = dv; vmin = v; }
  }
  const double s12 = xprime.imag();
  const double s23 = P.v2.real() - xprime.real();
  const double s13 = std::sin(P.theta) * xprime.real() - std::cos(P.theta) * xprime.imag();
  const double slack = std::min({s12, s23, s13});
  mb.near_singular = (vmin == 0 || vmin == 2) && dmin <= kSingularFlag;

  if (dmin <= kVertexSnap) {
    mb.kind = MembershipKind::Vertex;
    mb.index = vmin;
    return mb;
  }
  if (dmin <= kVertexZone) {
    // strict geometry near vertices, no fattening
    mb.kind = (slack >= 0) ? MembershipKind::Interior : MembershipKind::Skip;
    return mb;
  }
  if (slack < -kEdgeTol) {
    mb.kind = MembershipKind::Skip;
    return mb;
  }
  if (s12 <= kEdgeTol || s13 <= kEdgeTol || s23 <= kEdgeTol) {
    mb.kind = MembershipKind::Edge;
    mb.index = (s12 <= s13 && s12 <= s23) ? 0 : (s13 <= s23 ? 1 : 2);
    return mb;
  }
  mb.kind = MembershipKind::Interior;
  return mb;
}

// All tiles over x paired with their membership, canonicalized so that each
// surface point appears exactly once.
std::vector<RawEmission> enumerate_tiles(const SurfaceDescriptor& desc,
                                         const SCMapContext& ctx, const TileSystem& ts,
                                         const Cplx& x, double R, bool with_map) {
  const Triangle& P = ctx.domain();
  const Triangle& Q = ctx.range();
  const double coset_reach = ts.has_extra_coset
                                 ? std::abs(Cplx(ts.sigma0_u.embed())) + 0.01
                                 : 0.0;
  const double rx = 1.0 + coset_reach + 0.5;
  const double ry = R + 1.0 + (ts.has_extra_coset ? std::abs(Cplx(ts.sigma0_v.embed())) : 0.0) + 0.5;
  auto lam = lattice_points_in_region(desc.lattice, x, rx, ry);

  std::vector<RawEmission> out;
  for (const LatticePoint& lp : lam) {
    for (size_t hi = 0; hi < ts.reps.size(); ++hi) {
      const Isometry& inv = ts.cache[hi].inv;
      // gamma = t(lambda) o h; x' = h^{-1}(x - lambda_X)
      const Cplx xprime = inv.apply_x(x - lp.x);
      Membership mb = classify_point(P, xprime);
      if (mb.kind == MembershipKind::Skip) continue;

      TileId id{int(hi), lp.coeffs};
      int mult = 1;
      bool canonical = true;
      Cplx y;

      if (mb.kind == MembershipKind::Vertex) {
        // canonical over the vertex-group orbit
        for (const auto& tr : ts.vertex_table[hi][mb.index]) {
          TileId other = shifted(id, tr);
          if (other < id) { canonical = false; break; }
        }
        if (!canonical) continue;
        mult = ts.ramification[mb.index];
        const Cplx qv = (mb.index == 0) ? Q.v1 : (mb.index == 1 ? Q.v2 : Q.v3);
        y = lp.y + ts.cache[hi].iso.apply_y(qv);
      } else {
        if (mb.kind == MembershipKind::Edge) {
          TileId partner = shifted(id, ts.pair_table[hi][mb.index]);
          if (partner < id) continue;  // partner emits
        }
        if (!with_map) {
          y = lp.y + ts.cache[hi].iso.apply_y(Cplx(0.0, 0.0));
        } else {
          // clamp slightly-outside points onto the closed triangle
          Cplx xp = xprime;
          if (P.boundary_slack(xp) < 0) {
            const double s12 = xp.imag();
            const double s23 = P.v2.real() - xp.real();
            const double s13 =
                std::sin(P.theta) * xp.real() - std::cos(P.theta) * xp.imag();
            if (s12 < 0) xp = Cplx(xp.real(), 0.0);
            if (s23 < 0) xp = Cplx(P.v2.real(), xp.imag());
            if (s13 < 0) {
              const Cplx nrm(std::sin(P.theta), -std::cos(P.theta));
              xp -= nrm * s13;
            }
          }
          y = lp.y + ts.cache[hi].iso.apply_y(ctx.forward_map(xp));
        }
      }
      out.push_back(RawEmission{y, mult, id, mb.near_singular});
    }
  }
  return out;
}

SectionPointSet finalize(const SurfaceDescriptor& desc, SectionKind kind, const Cplx& x,
                         double R, std::vector<RawEmission> raw) {
  SectionPointSet set;
  set.params = desc.params;
  set.kind = kind;
  set.center_x = x;
  set.radius = R;

  // radius filter, then position dedup at 1e-8.
  std::vector<RawEmission> kept;
  for (auto& e : raw)
    if (std::abs(e.y) <= R + 1e-12) kept.push_back(e);
  std::sort(kept.begin(), kept.end(), [](const RawEmission& a, const RawEmission& b) {
    if (a.y.real() != b.y.real()) return a.y.real() < b.y.real();
    if (a.y.imag() != b.y.imag()) return a.y.imag() < b.y.imag();
    return a.id < b.id;
  });
  std::vector<bool> used(kept.size(), false);
  for (size_t i = 0; i < kept.size(); ++i) {
    if (used[i]) continue;
    SectionPoint p;
    p.y = kept[i].y;
    p.multiplicity = kept[i].multiplicity;
    p.provenance = provenance_string(kept[i].id);
    p.near_singular_vertex = kept[i].near_singular;
    // linear scan forward while Re within tolerance
    for (size_t j = i + 1; j < kept.size(); ++j) {
      if (kept[j].y.real() - kept[i].y.real() > kDedupTol) break;
      if (used[j]) continue;
      if (std::abs(kept[j].y - p.y) <= kDedupTol) {
        p.multiplicity += kept[j].multiplicity;
        p.near_singular_vertex = p.near_singular_vertex || kept[j].near_singular;
        used[j] = true;
      }
    }
    set.points.push_back(p);
    set.warning_near_singular = set.warning_near_singular || p.near_singular_vertex;
  }
  std::sort(set.points.begin(), set.points.end(), [](const SectionPoint& a, const SectionPoint& b) {
    if (a.y.real() != b.y.real()) return a.y.real() < b.y.real();
    return a.y.imag() < b.y.imag();
  });
  return set;
}

}  // namespace

SectionPointSet analytic_section(const SurfaceDescriptor& desc, const SCMapContext& ctx,
                                 const Cplx& x, double R) {
  TileSystem ts = build_tile_system(desc);
  auto raw = enumerate_tiles(desc, ctx, ts, x, R, /*with_map=*/true);
  return finalize(desc, SectionKind::Analytic, x, R, std::move(raw));
}

SectionPointSet model_section(const SurfaceDescriptor& desc, const Cplx& x, double R) {
  const SurfaceParams& params = desc.params;
  const WindowPolygon window = window_polygon(params);
  SectionPointSet set;
  set.params = params;
  set.kind = SectionKind::Flattened;
  set.center_x = x;
  set.radius = R;

  const bool extra = !desc.half_turn_in_r;
  const Cplx s0u = Cplx(params.two_a().embed());
  const Cplx s0v = Cplx(params.two_b().embed());
  const double rx = 1.0 + (extra ? std::abs(s0u) : 0.0) + 0.2;
  const double ry = R + (extra ? std::abs(s0v) : 0.0) + 0.2;
  auto lam = lattice_points_in_region(desc.lattice, x, rx, ry);

  for (const LatticePoint& lp : lam) {
    // direct site: window P about pi_X(lambda)
    const double slack = window.boundary_slack(x - lp.x);
    if (slack >= -kEdgeTol && std::abs(lp.y) <= R) {
      SectionPoint p;
      p.y = lp.y;
      p.multiplicity = window.covering;
      p.window_boundary = std::abs(slack) <= kEdgeTol;
      std::ostringstream os;
      os << "L:" << lp.coeffs[0] << "," << lp.coeffs[1] << "," << lp.coeffs[2] << ","
         << lp.coeffs[3];
      p.provenance = os.str();
      set.points.push_back(p);
    }
    if (extra) {
      // coset site lambda + sigma0 with the reflected window -P
      const Cplx sx = lp.x + s0u;
      const Cplx sy = lp.y + s0v;
      const double slack2 = window.boundary_slack(-(x - sx));
      if (slack2 >= -kEdgeTol && std::abs(sy) <= R) {
        SectionPoint p;
        p.y = sy;
        p.multiplicity = window.covering;
        p.window_boundary = std::abs(slack2) <= kEdgeTol;
        std::ostringstream os;
        os << "L+s0:" << lp.coeffs[0] << "," << lp.coeffs[1] << "," << lp.coeffs[2] << ","
           << lp.coeffs[3];
        p.provenance = os.str();
        set.points.push_back(p);
      }
    }
  }
  std::sort(set.points.begin(), set.points.end(), [](const SectionPoint& a, const SectionPoint& b) {
    if (a.y.real() != b.y.real()) return a.y.real() < b.y.real();
    return a.y.imag() < b.y.imag();
  });
  return set;
}

double empirical_density(const SectionPointSet& set) {
  if (set.radius <= 0) return 0.0;
  return set.total_multiplicity() / (std::numbers::pi * set.radius * set.radius);
}

CorrespondenceResult correspondence(const SurfaceDescriptor& desc, const SCMapContext& ctx,
                                    const Cplx& x, double R) {
  TileSystem ts = build_tile_system(desc);
  auto raw = enumerate_tiles(desc, ctx, ts, x, R + 1.5, /*with_map=*/true);

  // model heights per tile: gamma_Y(0)
  CorrespondenceResult res;
  double sum = 0;
  for (const RawEmission& e : raw) {
    // recompute the flattened height for the same tile
    // lambda_Y = sum c_i gen_i (Y part), h = reps[e.id.h]
    Cplx lam_y(0, 0);
    for (int i = 0; i < 4; ++i) {
      auto emb = desc.lattice.generators[i].embed();
      lam_y += double(e.id.c[i]) * Cplx(emb[2], emb[3]);
    }
    const Cplx ym = lam_y + ts.cache[e.id.h].iso.apply_y(Cplx(0.0, 0.0));
    if (std::abs(ym) > R) continue;
    CorrespondencePair pair;
    pair.y_analytic = e.y;
    pair.y_model = ym;
    pair.distance = std::abs(e.y - ym);
    pair.provenance = provenance_string(e.id);
    res.max_distance = std::max(res.max_distance, pair.distance);
    sum += pair.distance;
    res.pairs.push_back(std::move(pair));
  }
  if (!res.pairs.empty()) res.mean_distance = sum / double(res.pairs.size());
  return res;
}

}  // namespace rsurf
