#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "rsurf/classify.hpp"
#include "rsurf/scmap.hpp"

namespace rsurf {

struct SectionPoint {
  Cplx y;
  int multiplicity = 1;
  std::string provenance;
  bool near_singular_vertex = false;  // within 1e-9 of a singular vertex image
  bool window_boundary = false;       // model sets: window membership ambiguous
};

enum class SectionKind { Analytic, Flattened };

struct SectionPointSet {
  SurfaceParams params;
  SectionKind kind = SectionKind::Analytic;
  Cplx center_x;
  double radius = 0.0;
  std::vector<SectionPoint> points;
  bool warning_near_singular = false;

  double total_multiplicity() const;
};

/// The flattening window: regular (n/p)-gon of circumradius 1 covered p
/// times, vertices at exp(i*(2k+1)*pi*p/n).
struct WindowPolygon {
  int sides = 0;
  int covering = 1;  // multiplicity p
  std::vector<Cplx> vertices;

  /// Signed distance to the boundary (positive inside).
  double boundary_slack(const Cplx& w) const;
  bool contains(const Cplx& w, double tol = 1e-9) const;
};

WindowPolygon window_polygon(const SurfaceParams& params);

/// Lattice elements with the X component in the disk of radius rx about
/// x_center and the Y component in the disk of radius ry about the origin.
struct LatticePoint {
  std::array<long, 4> coeffs;  // in basis.generators
  Cplx x;                      // pi_X
  Cplx y;                      // pi_Y
};

std::vector<LatticePoint> lattice_points_in_region(const LatticeBasis& basis,
                                                   const Cplx& x_center, double rx,
                                                   double ry);

/// The analytic section A(x): Y coordinates of all surface points over x
/// with |y| <= R, with multiplicities and tile provenance.
SectionPointSet analytic_section(const SurfaceDescriptor& desc, const SCMapContext& ctx,
                                 const Cplx& x, double R);

/// The flattened model set: lattice sites whose window contains x, with
/// multiplicity p (plus the reflected-window coset for surfaces without the
/// half turn in R).
SectionPointSet model_section(const SurfaceDescriptor& desc, const Cplx& x, double R);

/// Sum of multiplicities divided by the disk area pi R^2.
double empirical_density(const SectionPointSet& set);

struct CorrespondencePair {
  Cplx y_analytic;
  Cplx y_model;
  double distance = 0.0;
  std::string provenance;
};

struct CorrespondenceResult {
  std::vector<CorrespondencePair> pairs;
  double max_distance = 0.0;
  double mean_distance = 0.0;
};

/// Tile-by-tile pairing of the analytic section with the flattened one;
/// every pair is at distance at most 1 (the diameter of Q).
CorrespondenceResult correspondence(const SurfaceDescriptor& desc, const SCMapContext& ctx,
                                    const Cplx& x, double R);

}  // namespace rsurf
