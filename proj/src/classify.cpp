#include "rsurf/classify.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace rsurf {

std::vector<int> admissible_n() { return {6, 8, 10, 12}; }

std::vector<SurfaceParams> enumerate_candidates() {
  std::vector<SurfaceParams> out;
  for (int n : admissible_n()) {
    for (int p = 1; 4 * p <= n; ++p) {
      for (int q = p + 1; 2 * q <= n - 2 * p; ++q) {
        if (std::gcd(std::gcd(p, q), n) != 1) continue;
        out.push_back(SurfaceParams::make(n, p, q));
      }
    }
  }
  return out;
}

std::optional<int> rank_lower_bound(const SurfaceParams& params) {
  const int n = params.n;
  auto bound_with = [&](int d1, int d2) -> std::optional<int> {
    // d1 plays the divisor role: d1 > 1 and d1 | n.
    if (d1 <= 1 || n % d1 != 0) return std::nullopt;
    return totient(n / d1) + totient(n / std::gcd(n, d2));
  };
  auto b1 = bound_with(params.p, params.q);
  auto b2 = bound_with(params.q, params.p);
  if (b1 && b2) return std::max(*b1, *b2);
  if (b1) return b1;
  if (b2) return b2;
  return std::nullopt;
}

SurfaceParams complementary_parameters(const SurfaceParams& params) {
  const int n = params.n;
  const int g = std::gcd(std::gcd(2 * n, n - 2 * params.p), n - 2 * params.q);
  const int np = 2 * n / g;
  if ((n - 2 * params.p) % g != 0 || (n - 2 * params.q) % g != 0)
    throw std::logic_error("complementary_parameters: non-integer result");
  const int pp = (n - 2 * params.p) / g;
  const int qp = (n - 2 * params.q) / g;
  return SurfaceParams::make(np, pp, qp);
}

std::vector<TransVec> lattice_group_generators(const SurfaceParams& params) {
  return contains_half_turn(params) ? star(params).elements
                                    : star_difference(params).elements;
}

int lattice_group_rank(const SurfaceParams& params) {
  return translation_module_rank(lattice_group_generators(params));
}

QuotientGroup quotient_group(const SurfaceParams& params) {
  const bool half = params.n % 2 == 0 && params.p % 2 == 1 && params.q % 2 == 1;
  if (half != contains_half_turn(params))
    throw std::logic_error("quotient_group: parity rule disagrees with the exact turn test");
  QuotientGroup qg;
  if (half) {
    qg.order = 2 * params.n;
    qg.dihedral_tag = "d" + std::to_string(params.n);
  } else {
    qg.order = 4 * params.n;
    qg.dihedral_tag = "d" + std::to_string(2 * params.n);
  }
  if (qg.order != derived_point_group_order(params))
    throw std::logic_error("quotient_group: disagrees with the derived point group order");
  return qg;
}

int genus(const SurfaceParams& params) {
  const QuotientGroup qg = quotient_group(params);
  Rat sum = Rat(1, 2 * params.n) + Rat(1, vertex_group_order(params, 2)) +
            Rat(1, vertex_group_order(params, 3));
  Rat two_minus_2g = Rat(qg.order) * (sum - Rat(1, 2));
  Rat g = (Rat(2) - two_minus_2g) / 2;
  if (g.get_den() != 1) throw std::domain_error("genus: non-integer result");
  return int(g.get_num().get_si());
}

DensityValue density_exact(const SurfaceParams& params, const LatticeBasis& basis) {
  const int m = basis.conductor;
  const QuotientGroup qg = quotient_group(params);
  // sin(2*pi*p/n) = (zeta^k - zeta^-k) / (2i), k = m*p/n.
  const long k = long(m) / params.n * params.p;
  const CycNum minus_i = CycNum::root_of_unity(m, 3L * (m / 4));
  const CycNum sin_2a =
      ((CycNum::root_of_unity(m, k) - CycNum::root_of_unity(m, -k)) * minus_i)
          .scaled(Rat(1, 2));
  const VolumeResult vol = determinant_volume(basis);
  if (!vol.volume_exact)
    throw std::domain_error("density_exact: |Lambda| not representable in the working field");
  // 1/|Lambda| = |Lambda| / det.
  const CycNum inv_vol = vol.volume_exact->scaled(Rat(1) / vol.det_m);
  DensityValue d;
  Rat quarter_order(qg.order, 4);
  quarter_order.canonicalize();
  d.exact = (sin_2a * inv_vol).scaled(quarter_order);
  d.value = d.exact.embed().real();
  const CycNum rho2 = d.exact * d.exact;
  if (rho2.is_rational()) d.rho_squared_rational = rho2.rational_value();
  return d;
}

SurfaceDescriptor describe_surface(const SurfaceParams& params) {
  SurfaceDescriptor desc;
  desc.params = params;
  desc.half_turn_in_r = contains_half_turn(params);
  desc.quotient = quotient_group(params);
  desc.lattice = reduce_basis(lattice_group_generators(params));
  desc.root_id = identify_root_lattice(desc.lattice);
  desc.volume = determinant_volume(desc.lattice);
  desc.genus_value = genus(params);
  desc.density = density_exact(params, desc.lattice);
  desc.periodicity = periodicity_rank(params, desc.lattice);
  return desc;
}

std::vector<SurfaceDescriptor> classify_all() {
  std::vector<SurfaceParams> survivors;
  for (const SurfaceParams& cand : enumerate_candidates()) {
    auto bound = rank_lower_bound(cand);
    if (bound && *bound > 4) continue;
    if (lattice_group_rank(cand) != 4) continue;
    // Positive determinant is enforced inside reduce_basis.
    survivors.push_back(cand);
  }

  std::set<SurfaceParams> final_set(survivors.begin(), survivors.end());
  for (const SurfaceParams& s : survivors) {
    const SurfaceParams swapped = SurfaceParams::make(s.n, s.q, s.p);
    const SurfaceParams normalized = complementary_parameters(swapped);
    if (!final_set.count(normalized)) final_set.insert(normalized);
  }

  std::vector<SurfaceDescriptor> out;
  for (const SurfaceParams& s : final_set) out.push_back(describe_surface(s));
  std::sort(out.begin(), out.end(), [](const SurfaceDescriptor& a, const SurfaceDescriptor& b) {
    return a.params < b.params;
  });
  if (out.size() != 7)
    throw std::logic_error("classify_all: expected seven surfaces, derived " +
                           std::to_string(out.size()));
  return out;
}

}  // namespace rsurf
