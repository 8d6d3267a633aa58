#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rsurf/cyclotomic.hpp"
#include "rsurf/isometry.hpp"

namespace rsurf {

/// Which closed-form generator family Eqs. use: Basis1 applies when the
/// rotation subgroup contains the half turn, Basis2 otherwise.
enum class BasisKind { Basis1, Basis2 };

/// A rank-4 translation lattice with exact Gram data.
///
/// `generators` is the LLL-reduced basis (delta = 99/100 on the exact Gram),
/// derived deterministically from the module: canonical HNF basis first,
/// then exact LLL. `unimodular_history` maps the HNF basis to `generators`
/// (reduced = U * hnf). Both bases generate the same Z-module.
struct LatticeBasis {
  int conductor = 4;
  std::vector<TransVec> generators;                  // 4, LLL-reduced
  std::vector<TransVec> hnf_basis;                   // 4, canonical HNF basis
  RationalMatrix gram;                               // Gram of `generators`
  Rat det;                                           // det(gram) > 0
  std::vector<std::array<long, 4>> unimodular_history;  // det +-1
};

enum class RootLatticeTag { A4, A2xA2, D4, A2xZ2, Unknown };

std::string to_string(RootLatticeTag tag);

struct RootLatticeId {
  RootLatticeTag tag = RootLatticeTag::Unknown;
  /// One positive rational scale per canonical block (1 block for A4/D4,
  /// 2 blocks for the products).
  std::vector<Rat> block_scales;
  /// Unimodular witness: witness * gram * witness^T equals the canonical
  /// block Gram scaled blockwise.
  std::vector<std::array<long, 4>> witness;
};

/// Exact real inner product of two translation vectors viewed in R^4.
/// Throws std::domain_error if the value is not rational.
Rat inner_product(const TransVec& a, const TransVec& b);

/// Rank of the subgroup of R^4 generated by the vectors: exact rank of the
/// matrix of power-basis coordinates of the four real components.
int translation_module_rank(const std::vector<TransVec>& vectors);

/// Canonical basis of the Z-module spanned by the vectors (row HNF).
std::vector<TransVec> module_hnf_basis(const std::vector<TransVec>& vectors);

/// Exact membership test against a module basis.
bool module_contains(const std::vector<TransVec>& basis, const TransVec& v);

/// Two-stage reduction: canonical HNF basis of the abstract module, then
/// LLL (delta = 99/100) with exact rational Gram.
/// Throws std::domain_error("not crystallographic") when the module rank is
/// not 4 or the four generators are linearly dependent in R^4.
LatticeBasis reduce_basis(const std::vector<TransVec>& vectors);

/// The closed-form generators e_k, k = 1..4:
///   Basis1: e_k = (2a w_p^k, 2b w_q^k),
///   Basis2: e_k = (2a (w_p - 1) w_p^k, 2b (w_q - 1) w_q^k),
/// with w_p = exp(2*pi*i*p/n), w_q = exp(2*pi*i*q/n).
std::vector<TransVec> closed_form_basis(const SurfaceParams& params, BasisKind which);

/// The basis family matching the group structure of the surface.
BasisKind natural_basis_kind(const SurfaceParams& params);

/// Exact Gram matrix of the closed-form basis; every entry is certified
/// rational (throws otherwise).
RationalMatrix gram_closed_form(const SurfaceParams& params, BasisKind which);

struct VolumeResult {
  Rat det_m;                        // det of the Gram, exact
  double volume;                    // sqrt(det), float view
  std::optional<CycNum> volume_exact;  // sqrt(det) in Q(zeta_m) when constructible
};

/// |Lambda| = sqrt(det M).
VolumeResult determinant_volume(const LatticeBasis& basis);

/// sqrt of a positive rational inside Q(zeta_m), when the square root of its
/// squarefree part lies in the field.
std::optional<CycNum> rational_sqrt_in_field(const Rat& value, int conductor);

/// Identify the lattice geometry against the canonical root lattices,
/// witnessed by a unimodular transform and cross-checked by comparing vector
/// counts at the three smallest norms with the canonical lattice.
RootLatticeId identify_root_lattice(const LatticeBasis& basis);

/// All nonzero integer coefficient vectors c with c^T G c <= bound, exact.
std::vector<std::array<long, 4>> enumerate_by_norm(const RationalMatrix& gram,
                                                   const Rat& bound);

enum class SectionClass { Periodic, Quasiperiodic };

struct PeriodicityResult {
  int rank_lambda_y = 0;
  SectionClass cls = SectionClass::Periodic;
};

/// rank(Lambda_Y) = 4 - rank(pi_X(Lambda)); the exact rank must agree with
/// the totient formula phi(n / gcd(n, p)) and be 0 or 2 (throws otherwise).
PeriodicityResult periodicity_rank(const SurfaceParams& params, const LatticeBasis& basis);

}  // namespace rsurf
