#pragma once

#include <string>
#include <vector>

#include "isoform/deform.hpp"
#include "isoform/forms.hpp"
#include "isoform/harmonic.hpp"
#include "isoform/moebius.hpp"

namespace isoform {

struct ParallelReport {
  /// Largest angle (radians, lines mod pi) between df*(e*) and df(e).
  double max_deviation = 0;
  /// Dual edges shorter than 1e-14 times the largest; excluded from the max.
  int zero_edges = 0;
};

ParallelReport reciprocal_parallel_check(const Realization& source, const std::vector<Vec3>& fstar);

/// max_i |sum_j <df(e_ij), df*(e*_ij)>| / max_e |df| |df*|.
double duality_sum_residual(const Realization& source, const std::vector<Vec3>& fstar);

struct MinimalSurface {
  Realization source;
  /// One point per face of the source mesh.
  std::vector<Vec3> fstar;
  double closure = 0;
  int components = 1;
  ParallelReport parallel;
  double duality_sum = 0;
  /// max_v ||f_v| - 1| of the source (zero for a Gauss map).
  double sphere_deviation = 0;
};

/// Integrates tau over the dual graph and reports the duality residuals.
/// Throws Error("minimal") for tau identically zero.
MinimalSurface christoffel_dual(const Realization& source, const DualOneForm<Vec3>& tau);

struct WeierstrassConfig {
  double stereographic_radius = 1.0;
  double harmonic_tol = 1e-10;
  double transport_tol = 1e-7;
  double closure_tol = 1e-8;
};

struct WeierstrassResult {
  HarmonicFunction harmonic;
  HarmonicNormalField normal_field;
  TransportResult transport;
  MinimalSurface surface;
  /// Relative residuals of tau = dZ on the planar domain before transport.
  StressResiduals planar_residuals;
  /// max |f*| used to make closure relative.
  double scale = 0;
  double relative_closure = 0;
};

/// Planar domain + boundary values -> discrete minimal surface. Seam pairs
/// are solved as identified vertices (see solve_dirichlet). Each stage is
/// gated by the configured tolerance; a failing gate throws Error("minimal").
WeierstrassResult weierstrass(const Realization& domain, const std::vector<double>& boundary,
                              const std::vector<SeamPair>& seam = {}, const WeierstrassConfig& config = {});

/// Polygons of the dual mesh: the face ring of every interior vertex.
std::vector<std::vector<int>> dual_polygons(const SurfaceMesh& mesh);

}  // namespace isoform
