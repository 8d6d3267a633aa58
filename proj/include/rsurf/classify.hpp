#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rsurf/cyclotomic.hpp"
#include "rsurf/isometry.hpp"
#include "rsurf/lattice.hpp"

namespace rsurf {

/// G/Lambda as an abstract dihedral group.
struct QuotientGroup {
  int order = 0;
  std::string dihedral_tag;  // "d8", "d10", "d12", "d24"
};

/// rho with exact and float views; rho_squared is kept when it is rational.
struct DensityValue {
  CycNum exact;
  double value = 0.0;
  std::optional<Rat> rho_squared_rational;
};

/// One row of the classification table plus all derived lattice data.
struct SurfaceDescriptor {
  SurfaceParams params;
  bool half_turn_in_r = false;
  QuotientGroup quotient;
  LatticeBasis lattice;
  RootLatticeId root_id;
  VolumeResult volume;
  int genus_value = 0;
  DensityValue density;
  PeriodicityResult periodicity;
};

/// {6, 8, 10, 12}: n >= 6 from the angle inequalities intersected with the
/// crystallographic-order restriction.
std::vector<int> admissible_n();

/// All (n, p, q) with n admissible, 0 < p <= n/4, p < q <= n/2 - p and the
/// common-factor side condition.
std::vector<SurfaceParams> enumerate_candidates();

/// Best lower bound on rank(Lambda) from the divisor lemma, applied with p
/// and with q; nullopt when neither hypothesis holds.
std::optional<int> rank_lower_bound(const SurfaceParams& params);

/// The triple (n', p', q') parameterizing the angles at vertex 3.
SurfaceParams complementary_parameters(const SurfaceParams& params);

/// Generators of the lattice group: Sigma if the half turn lies in the
/// rotation subgroup, SigmaSigma^{-1} otherwise.
std::vector<TransVec> lattice_group_generators(const SurfaceParams& params);

/// Exact rank of the lattice group of the candidate surface.
int lattice_group_rank(const SurfaceParams& params);

/// Order 2n with tag d_n when the half turn lies in R (n even, p and q both
/// odd); otherwise order 4n with tag d_2n. Cross-checked against the exact
/// group computations; throws on disagreement.
QuotientGroup quotient_group(const SurfaceParams& params);

/// Genus from the Euler formula over the tile complex; throws if not integral.
int genus(const SurfaceParams& params);

/// rho = |G/Lambda| * |P| / |Lambda| with |P| = sin(2*pi*p/n)/4.
DensityValue density_exact(const SurfaceParams& params, const LatticeBasis& basis);

/// Full derivation for a crystallographic triple.
SurfaceDescriptor describe_surface(const SurfaceParams& params);

/// The complete classification: enumerate, prune, exact rank test, add the
/// interchange surfaces, derive all descriptor fields. Returns exactly seven
/// descriptors sorted by (n, p, q).
std::vector<SurfaceDescriptor> classify_all();

}  // namespace rsurf
