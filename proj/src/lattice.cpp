#include "rsurf/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace rsurf {

std::string to_string(RootLatticeTag tag) {
  switch (tag) {
    case RootLatticeTag::A4: return "A4";
    case RootLatticeTag::A2xA2: return "A2xA2";
    case RootLatticeTag::D4: return "D4";
    case RootLatticeTag::A2xZ2: return "A2xZ2";
    default: return "unknown";
  }
}

Rat inner_product(const TransVec& a, const TransVec& b) {
  CycNum s = a.u * b.u.conj() + a.v * b.v.conj();
  CycNum re = s.real_part();
  if (!re.is_rational())
    throw std::domain_error("inner_product: irrational Gram entry: " + re.to_string());
  return re.rational_value();
}

namespace {

// Power-basis coordinate row of the four real components (Re u, Im u, Re v,
// Im v), 4*phi(m) rational entries.
std::vector<Rat> real_coords(const TransVec& t) {
  const CycNum parts[4] = {t.u.real_part(), t.u.imag_part(), t.v.real_part(),
                           t.v.imag_part()};
  std::vector<Rat> row;
  for (const CycNum& p : parts)
    for (const Rat& c : p.coeffs()) row.push_back(c);
  return row;
}

// Complex power-basis coordinates (u coeffs, v coeffs), 2*phi(m) entries.
std::vector<Rat> complex_coords(const TransVec& t) {
  std::vector<Rat> row;
  for (const Rat& c : t.u.coeffs()) row.push_back(c);
  for (const Rat& c : t.v.coeffs()) row.push_back(c);
  return row;
}

// Canonical row-style HNF over Z: positive pivots, entries above pivots
// reduced into [0, pivot). Returns the nonzero rows.
std::vector<std::vector<Int>> hnf_rows(std::vector<std::vector<Int>> work) {
  if (work.empty()) return {};
  const int cols = int(work[0].size());
  int r = 0;
  for (int piv = 0; piv < cols && r < int(work.size()); ++piv) {
    bool any = false;
    for (size_t i = r; i < work.size(); ++i)
      if (work[i][piv] != 0) { any = true; break; }
    if (!any) continue;
    for (;;) {
      int best = -1;
      for (size_t i = r; i < work.size(); ++i) {
        if (work[i][piv] == 0) continue;
        if (best < 0 || abs(work[i][piv]) < abs(work[best][piv])) best = int(i);
      }
      if (best < 0) break;
      std::swap(work[r], work[best]);
      if (work[r][piv] < 0)
        for (Int& v : work[r]) v = -v;
      bool done = true;
      for (size_t i = r + 1; i < work.size(); ++i) {
        if (work[i][piv] == 0) continue;
        Int f = work[i][piv] / work[r][piv];  // floor for nonneg pivot
        if (work[i][piv] < 0 && work[i][piv] % work[r][piv] != 0) f -= 1;
        for (int j = 0; j < cols; ++j) work[i][j] -= f * work[r][j];
        if (work[i][piv] != 0) done = false;
      }
      if (done) break;
    }
    for (int i = 0; i < r; ++i) {
      Int f = work[i][piv] / work[r][piv];
      if (work[i][piv] < 0 && work[i][piv] % work[r][piv] != 0) f -= 1;
      if (f != 0)
        for (int j = 0; j < cols; ++j) work[i][j] -= f * work[r][j];
    }
    ++r;
  }
  work.resize(r);
  return work;
}

// Scale rational rows to integers by the global lcm of denominators.
// Returns the integer rows and the scale L (rows represent L * original).
std::pair<std::vector<std::vector<Int>>, Int> to_integer_rows(
    const std::vector<std::vector<Rat>>& rows) {
  Int L(1);
  for (const auto& row : rows)
    for (const Rat& v : row) L = lcm(L, v.get_den());
  std::vector<std::vector<Int>> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<Int> r;
    r.reserve(row.size());
    for (const Rat& v : row) {
      Rat s = v * Rat(L);
      r.push_back(s.get_num());  // canonical mpq: den == 1 here
    }
    out.push_back(std::move(r));
  }
  return {std::move(out), L};
}

TransVec vec_from_complex_coords(int m, const std::vector<Rat>& row) {
  const int d = totient(m);
  std::vector<Rat> uc(row.begin(), row.begin() + d);
  std::vector<Rat> vc(row.begin() + d, row.begin() + 2 * d);
  return {CycNum::from_coeffs(m, std::move(uc)), CycNum::from_coeffs(m, std::move(vc))};
}

}  // namespace

int translation_module_rank(const std::vector<TransVec>& vectors) {
  if (vectors.empty()) return 0;
  const int cols = int(real_coords(vectors[0]).size());
  RationalMatrix M(int(vectors.size()), cols);
  for (size_t i = 0; i < vectors.size(); ++i) {
    auto row = real_coords(vectors[i]);
    for (int j = 0; j < cols; ++j) M.at(int(i), j) = row[j];
  }
  return rational_rank(M);
}

std::vector<TransVec> module_hnf_basis(const std::vector<TransVec>& vectors) {
  if (vectors.empty()) return {};
  const int m = vectors[0].u.conductor();
  std::vector<std::vector<Rat>> rows;
  rows.reserve(vectors.size());
  for (const TransVec& v : vectors) rows.push_back(complex_coords(v));
  auto [irows, L] = to_integer_rows(rows);
  auto h = hnf_rows(std::move(irows));
  std::vector<TransVec> out;
  out.reserve(h.size());
  const Rat inv = Rat(1) / Rat(L);
  for (const auto& row : h) {
    std::vector<Rat> r;
    r.reserve(row.size());
    for (const Int& v : row) r.push_back(Rat(v) * inv);
    out.push_back(vec_from_complex_coords(m, r));
  }
  return out;
}

bool module_contains(const std::vector<TransVec>& basis, const TransVec& v) {
  if (basis.empty()) return v.u.is_zero() && v.v.is_zero();
  // Solve sum_i c_i * basis_i = v over Q, then check integrality.
  const int nb = int(basis.size());
  std::vector<std::vector<Rat>> rows;
  for (const TransVec& b : basis) rows.push_back(complex_coords(b));
  std::vector<Rat> target = complex_coords(v);
  const int cols = int(target.size());
  // Gaussian elimination on the transposed system (cols equations).
  RationalMatrix A(cols, nb + 1);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < nb; ++i) A.at(j, i) = rows[i][j];
    A.at(j, nb) = target[j];
  }
  int rank = 0;
  std::vector<int> pivot_of_row;
  for (int col = 0; col < nb && rank < cols; ++col) {
    int piv = -1;
    for (int i = rank; i < cols; ++i)
      if (A.at(i, col) != 0) { piv = i; break; }
    if (piv < 0) continue;
    for (int j = 0; j <= nb; ++j) std::swap(A.at(piv, j), A.at(rank, j));
    for (int i = 0; i < cols; ++i) {
      if (i == rank || A.at(i, col) == 0) continue;
      Rat f = A.at(i, col) / A.at(rank, col);
      for (int j = col; j <= nb; ++j) A.at(i, j) -= f * A.at(rank, j);
    }
    pivot_of_row.push_back(col);
    ++rank;
  }
  // consistency: rows beyond rank must have zero RHS
  for (int i = rank; i < cols; ++i)
    if (A.at(i, nb) != 0) return false;
  for (int i = 0; i < rank; ++i) {
    Rat c = A.at(i, nb) / A.at(i, pivot_of_row[i]);
    if (c.get_den() != 1) return false;
  }
  return true;
}

namespace {

struct Gso {
  std::vector<std::vector<Rat>> mu;
  std::vector<Rat> norms;  // squared norms of the orthogonalized vectors
};

Gso compute_gso(const std::vector<std::vector<Rat>>& gram) {
  const int nb = int(gram.size());
  Gso g;
  g.mu.assign(nb, std::vector<Rat>(nb, Rat(0)));
  g.norms.assign(nb, Rat(0));
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < i; ++j) {
      Rat num = gram[i][j];
      for (int k = 0; k < j; ++k) num -= g.mu[i][k] * g.mu[j][k] * g.norms[k];
      if (g.norms[j] == 0) throw std::domain_error("LLL: dependent basis");
      g.mu[i][j] = num / g.norms[j];
    }
    Rat n = gram[i][i];
    for (int k = 0; k < i; ++k) n -= g.mu[i][k] * g.mu[i][k] * g.norms[k];
    g.norms[i] = n;
  }
  return g;
}

Rat round_rat(const Rat& r) {
  Int num = r.get_num(), den = r.get_den();
  Int q = num / den, rem = num % den;
  if (rem < 0) { rem += den; q -= 1; }
  if (2 * rem > den || (2 * rem == den && q % 2 != 0)) q += 1;
  return Rat(q);
}

}  // namespace

LatticeBasis reduce_basis(const std::vector<TransVec>& vectors) {
  const int rank = translation_module_rank(vectors);
  if (rank != 4) throw std::domain_error("not crystallographic: module rank " + std::to_string(rank));
  std::vector<TransVec> hnf = module_hnf_basis(vectors);
  if (hnf.size() != 4) throw std::domain_error("not crystallographic: HNF size mismatch");

  const int m = hnf[0].u.conductor();
  std::vector<TransVec> b = hnf;
  std::vector<std::array<long, 4>> U = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};

  auto gram_of = [&](const std::vector<TransVec>& vs) {
    std::vector<std::vector<Rat>> g(4, std::vector<Rat>(4));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j <= i; ++j) g[i][j] = g[j][i] = inner_product(vs[i], vs[j]);
    return g;
  };

  auto gram = gram_of(b);
  {
    RationalMatrix G(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) G.at(i, j) = gram[i][j];
    if (rational_det(G) == 0)
      throw std::domain_error("not crystallographic: degenerate embedding (det 0)");
  }

  const Rat delta(99, 100);
  Gso gso = compute_gso(gram);
  int k = 1;
  while (k < 4) {
    for (int j = k - 1; j >= 0; --j) {
      Rat mu = gso.mu[k][j];
      if (2 * abs(mu) > 1) {
        Rat r = round_rat(mu);
        long ri = long(r.get_num().get_si());
        b[k] = {b[k].u - b[j].u.scaled(r), b[k].v - b[j].v.scaled(r)};
        for (int t = 0; t < 4; ++t) U[k][t] -= ri * U[j][t];
        gram = gram_of(b);
        gso = compute_gso(gram);
      }
    }
    if (gso.norms[k] >= (delta - gso.mu[k][k - 1] * gso.mu[k][k - 1]) * gso.norms[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      std::swap(U[k], U[k - 1]);
      gram = gram_of(b);
      gso = compute_gso(gram);
      k = std::max(k - 1, 1);
    }
  }

  LatticeBasis out;
  out.conductor = m;
  out.generators = b;
  out.hnf_basis = hnf;
  out.gram = RationalMatrix(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.gram.at(i, j) = gram[i][j];
  out.det = rational_det(out.gram);
  out.unimodular_history = U;
  {
    RationalMatrix Um(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) Um.at(i, j) = Rat(U[i][j]);
    Rat du = rational_det(Um);
    if (du != 1 && du != -1) throw std::logic_error("reduce_basis: non-unimodular history");
  }
  return out;
}

BasisKind natural_basis_kind(const SurfaceParams& params) {
  return contains_half_turn(params) ? BasisKind::Basis1 : BasisKind::Basis2;
}

std::vector<TransVec> closed_form_basis(const SurfaceParams& params, BasisKind which) {
  const Star s = star(params);
  const int n = params.n;
  std::vector<TransVec> out;
  for (int k = 1; k <= 4; ++k) {
    if (which == BasisKind::Basis1) {
      out.push_back(s.elements[k % n]);
    } else {
      out.push_back(s.elements[(k + 1) % n] - s.elements[k % n]);
    }
  }
  return out;
}

RationalMatrix gram_closed_form(const SurfaceParams& params, BasisKind which) {
  const auto basis = closed_form_basis(params, which);
  RationalMatrix G(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) G.at(i, j) = inner_product(basis[i], basis[j]);
  return G;
}

std::optional<CycNum> rational_sqrt_in_field(const Rat& value, int m) {
  if (value < 0) return std::nullopt;
  if (value == 0) return CycNum::zero(m);
  // Split numerator and denominator into square * squarefree by trial division.
  auto split = [](Int v) {
    Int sq(1), sf(1);
    for (Int p(2); p * p <= v; ++p) {
      if (v % p != 0) continue;
      int e = 0;
      while (v % p == 0) { v /= p; ++e; }
      for (int i = 0; i < e / 2; ++i) sq *= p;
      if (e % 2) sf *= p;
    }
    sf *= v;
    return std::pair<Int, Int>(sq, sf);
  };
  auto [nsq, nsf] = split(value.get_num());
  auto [dsq, dsf] = split(value.get_den());
  // value = (nsq/dsq)^2 * (nsf/dsf); sqrt = (nsq/dsq) * sqrt(nsf*dsf)/dsf.
  Rat outer = Rat(nsq, dsq) / Rat(dsf);
  outer.canonicalize();
  Int rad = nsf * dsf;  // squarefree? nsf, dsf squarefree and coprime (reduced), so yes
  CycNum root = CycNum::one(m);
  Int r = rad;
  for (Int p(2); p <= r; ++p) {
    if (r % p != 0) continue;
    r /= p;
    std::optional<CycNum> sp;
    long pl = p.get_si();
    if (pl == 2) {
      if (m % 8 == 0)
        sp = CycNum::root_of_unity(m, m / 8) + CycNum::root_of_unity(m, -(m / 8));
    } else if (m % pl == 0) {
      // Gauss sum: sum_t legendre(t, p) zeta_p^t = sqrt(p) for p = 1 mod 4,
      // i*sqrt(p) for p = 3 mod 4.
      CycNum gsum = CycNum::zero(m);
      for (long t = 1; t < pl; ++t) {
        long ls = 1;
        {  // Euler criterion
          long e = (pl - 1) / 2, base = t % pl, acc = 1;
          while (e) {
            if (e & 1) acc = acc * base % pl;
            base = base * base % pl;
            e >>= 1;
          }
          ls = (acc == 1) ? 1 : -1;
        }
        CycNum zt = CycNum::root_of_unity(m, (m / pl) * t);
        gsum = (ls > 0) ? gsum + zt : gsum - zt;
      }
      if (pl % 4 == 1) {
        sp = gsum;
      } else if (m % 4 == 0) {
        sp = gsum * CycNum::root_of_unity(m, -(m / 4));  // divide by i
      }
    }
    if (!sp) return std::nullopt;
    root = root * *sp;
  }
  CycNum result = root.scaled(outer);
  // Exactness guard; also fixes the sign to the positive square root.
  if (!((result * result) == CycNum::from_rational(m, value)))
    return std::nullopt;
  if (result.embed().real() < 0) result = -result;
  return result;
}

VolumeResult determinant_volume(const LatticeBasis& basis) {
  VolumeResult r;
  r.det_m = basis.det;
  r.volume = std::sqrt(r.det_m.get_d());
  r.volume_exact = rational_sqrt_in_field(r.det_m, basis.conductor);
  return r;
}

namespace {

// Exact completion-of-squares data for a PD rational quadratic form.
struct SquareForm {
  std::vector<std::vector<Rat>> q;  // q[i][i] and q[i][j] for j > i
};

SquareForm complete_squares(const RationalMatrix& G) {
  const int n = G.rows;
  std::vector<std::vector<Rat>> q(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q[i][j] = G.at(i, j);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] = q[i][j] / q[i][i];
    }
    for (int k = i + 1; k < n; ++k)
      for (int l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
  }
  return SquareForm{std::move(q)};
}

void enumerate_rec(const SquareForm& f, const RationalMatrix& G, int level,
                   std::array<long, 4>& c, const Rat& bound,
                   std::vector<std::array<long, 4>>& out) {
  // Q(c) = sum_i q_ii (c_i + sum_{j>i} q_ij c_j)^2; enumerate c_level given
  // the tail c_{level+1..3}.
  if (level < 0) {
    if (c == std::array<long, 4>{0, 0, 0, 0}) return;
    // exact check
    Rat norm(0);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) norm += G.at(i, j) * Rat(c[i]) * Rat(c[j]);
    if (norm <= bound) out.push_back(c);
    return;
  }
  // residual bound for this level: bound - contributions of higher levels
  // computed in float with a safety margin, exactness restored at the leaf.
  double rem = bound.get_d();
  for (int i = level + 1; i < 4; ++i) {
    double inner = c[i];
    for (int j = i + 1; j < 4; ++j) inner += f.q[i][j].get_d() * c[j];
    rem -= f.q[i][i].get_d() * inner * inner;
  }
  if (rem < -1e-9) return;
  double center = 0;
  for (int j = level + 1; j < 4; ++j) center += f.q[level][j].get_d() * c[j];
  const double radius = std::sqrt(std::max(0.0, rem) / f.q[level][level].get_d()) + 1e-6;
  const long lo = long(std::ceil(-center - radius - 0.5));
  const long hi = long(std::floor(-center + radius + 0.5));
  for (long v = lo; v <= hi; ++v) {
    c[level] = v;
    enumerate_rec(f, G, level - 1, c, bound, out);
  }
  c[level] = 0;
}

}  // namespace

std::vector<std::array<long, 4>> enumerate_by_norm(const RationalMatrix& gram,
                                                   const Rat& bound) {
  SquareForm f = complete_squares(gram);
  std::vector<std::array<long, 4>> out;
  std::array<long, 4> c{0, 0, 0, 0};
  enumerate_rec(f, gram, 3, c, bound, out);
  return out;
}

namespace {

RationalMatrix canonical_gram(RootLatticeTag tag, const std::vector<Rat>& scales) {
  RationalMatrix G(4, 4);
  auto set = [&](int i, int j, Rat v) { G.at(i, j) = v; };
  switch (tag) {
    case RootLatticeTag::A4: {
      const Rat s = scales.at(0);
      for (int i = 0; i < 4; ++i) set(i, i, 2 * s);
      for (int i = 0; i < 3; ++i) { set(i, i + 1, s); set(i + 1, i, s); }
      break;
    }
    case RootLatticeTag::D4: {
      const Rat s = scales.at(0);
      // Basis (1,1,0,0), (1,-1,0,0), (0,0,1,1), (1,0,0,1) of {x: sum even}.
      const int M[4][4] = {{2, 0, 0, 1}, {0, 2, 0, 1}, {0, 0, 2, 1}, {1, 1, 1, 2}};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) set(i, j, M[i][j] * s);
      break;
    }
    case RootLatticeTag::A2xA2: {
      const Rat s1 = scales.at(0), s2 = scales.at(1);
      set(0, 0, 2 * s1); set(1, 1, 2 * s1); set(0, 1, s1); set(1, 0, s1);
      set(2, 2, 2 * s2); set(3, 3, 2 * s2); set(2, 3, s2); set(3, 2, s2);
      break;
    }
    case RootLatticeTag::A2xZ2: {
      const Rat s1 = scales.at(0), s2 = scales.at(1);
      set(0, 0, 2 * s1); set(1, 1, 2 * s1); set(0, 1, s1); set(1, 0, s1);
      set(2, 2, s2); set(3, 3, s2);
      break;
    }
    default:
      throw std::invalid_argument("canonical_gram: unknown tag");
  }
  return G;
}

// Vector counts at the three smallest nonzero norms.
std::vector<std::pair<Rat, int>> shell_counts(const RationalMatrix& G, int shells = 3) {
  Rat maxdiag(0);
  for (int i = 0; i < 4; ++i) maxdiag = std::max(maxdiag, G.at(i, i));
  Rat bound = 3 * maxdiag;
  for (;;) {
    auto vecs = enumerate_by_norm(G, bound);
    std::map<Rat, int> hist;
    for (const auto& c : vecs) {
      Rat norm(0);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) norm += G.at(i, j) * Rat(c[i]) * Rat(c[j]);
      if (norm > 0) hist[norm]++;
    }
    if (int(hist.size()) >= shells) {
      std::vector<std::pair<Rat, int>> out(hist.begin(), hist.end());
      out.resize(shells);
      return out;
    }
    bound *= 2;
  }
}

Rat form_ip(const RationalMatrix& G, const std::array<long, 4>& a,
            const std::array<long, 4>& b) {
  Rat s(0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += G.at(i, j) * Rat(a[i]) * Rat(b[j]);
  return s;
}

long det4_long(const std::vector<std::array<long, 4>>& S) {
  RationalMatrix M(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) M.at(i, j) = Rat(S[i][j]);
  Rat d = rational_det(M);
  return long(d.get_num().get_si());
}

// DFS for rows v_1..v_4 among candidate short vectors with prescribed
// pairwise inner products, driven by a precomputed inner-product table;
// unimodularity checked at the leaf.
struct WitnessSearch {
  const std::vector<std::array<long, 4>>& cands;
  const RationalMatrix& target;
  std::vector<std::vector<Rat>> ip;  // pairwise form values
  std::vector<int> rows;

  bool run(int level) {
    if (level == 4) {
      std::vector<std::array<long, 4>> S;
      for (int r : rows) S.push_back(cands[r]);
      return std::abs(det4_long(S)) == 1;
    }
    for (int v = 0; v < int(cands.size()); ++v) {
      if (ip[v][v] != target.at(level, level)) continue;
      bool ok = true;
      for (int j = 0; j < level; ++j) {
        if (ip[rows[j]][v] != target.at(j, level)) { ok = false; break; }
      }
      if (!ok) continue;
      rows.push_back(v);
      if (run(level + 1)) return true;
      rows.pop_back();
    }
    return false;
  }
};

}  // namespace

RootLatticeId identify_root_lattice(const LatticeBasis& basis) {
  const RationalMatrix& G = basis.gram;
  auto shells = shell_counts(G);

  // Candidate block scales come from the observed shell norms.
  std::vector<Rat> norm_opts;
  for (auto& [n, c] : shells) norm_opts.push_back(n);

  const Rat det_g = rational_det(G);

  auto try_tag = [&](RootLatticeTag tag,
                     const std::vector<Rat>& scales) -> std::optional<RootLatticeId> {
    RationalMatrix target = canonical_gram(tag, scales);
    // A unimodular witness preserves the determinant.
    if (rational_det(target) != det_g) return std::nullopt;
    // candidate vectors: everything up to the largest target diagonal
    Rat maxd(0);
    for (int i = 0; i < 4; ++i) maxd = std::max(maxd, target.at(i, i));
    auto cands = enumerate_by_norm(G, maxd);
    WitnessSearch search{cands, target, {}, {}};
    search.ip.assign(cands.size(), std::vector<Rat>(cands.size()));
    for (size_t i = 0; i < cands.size(); ++i)
      for (size_t j = i; j < cands.size(); ++j)
        search.ip[i][j] = search.ip[j][i] = form_ip(G, cands[i], cands[j]);
    if (!search.run(0)) return std::nullopt;
    // Cross-check: the three smallest shells must match the canonical lattice.
    if (shell_counts(target) != shells) return std::nullopt;
    RootLatticeId id;
    id.tag = tag;
    id.block_scales = scales;
    for (int r : search.rows) id.witness.push_back(cands[r]);
    return id;
  };

  std::vector<Rat> half_norms;
  for (const Rat& n : norm_opts) half_norms.push_back(n / 2);

  for (const Rat& s : half_norms) {
    if (auto id = try_tag(RootLatticeTag::A4, {s})) return *id;
  }
  for (const Rat& s : half_norms) {
    if (auto id = try_tag(RootLatticeTag::D4, {s})) return *id;
  }
  for (const Rat& s1 : half_norms)
    for (const Rat& s2 : half_norms) {
      if (s2 < s1) continue;
      if (auto id = try_tag(RootLatticeTag::A2xA2, {s1, s2})) return *id;
    }
  for (const Rat& s1 : half_norms)
    for (const Rat& s2 : norm_opts) {
      if (auto id = try_tag(RootLatticeTag::A2xZ2, {s1, s2})) return *id;
    }
  return RootLatticeId{};
}

PeriodicityResult periodicity_rank(const SurfaceParams& params, const LatticeBasis& basis) {
  // rank of pi_X(Lambda) from the exact coordinates of the u components
  const int m = basis.conductor;
  const int d = totient(m);
  RationalMatrix M(4, 2 * d);
  for (int i = 0; i < 4; ++i) {
    const CycNum re = basis.generators[i].u.real_part();
    const CycNum im = basis.generators[i].u.imag_part();
    for (int j = 0; j < d; ++j) {
      M.at(i, j) = re.coeffs()[j];
      M.at(i, d + j) = im.coeffs()[j];
    }
  }
  const int rank_x = rational_rank(M);
  const int expected = totient(params.n / std::gcd(params.n, params.p));
  if (rank_x != expected)
    throw std::domain_error("periodicity_rank: exact rank of pi_X(Lambda) (" +
                            std::to_string(rank_x) + ") disagrees with totient formula (" +
                            std::to_string(expected) + ")");
  PeriodicityResult r;
  r.rank_lambda_y = 4 - rank_x;
  if (r.rank_lambda_y == 2)
    r.cls = SectionClass::Periodic;
  else if (r.rank_lambda_y == 0)
    r.cls = SectionClass::Quasiperiodic;
  else
    throw std::domain_error("periodicity_rank: rank(Lambda_Y) = " +
                            std::to_string(r.rank_lambda_y) + " contradicts the dichotomy");
  return r;
}

}  // namespace rsurf
