#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "isoform/harmonic.hpp"
#include "isoform/mesh.hpp"

namespace isoform {

/// Planar domain with polar data for boundary expressions. theta lies in
/// [0, 2pi); on a cut annulus the seam copies carry 0 and 2pi.
struct Domain {
  Realization realization;
  std::vector<double> r;
  std::vector<double> theta;
  /// Interior seam vertices of a cut annulus (theta = 0 copy, 2pi copy).
  std::vector<SeamPair> seam;
};

/// n x n grid on [0,1]^2, every square split along its north-east diagonal.
Domain grid_disk(int n);

/// n x n grid on [-half, half]^2 with the same diagonal pattern.
Domain square_domain(int n, double half = 1.0);

/// n_r rings (geometric radii from r_in to r_out) by n_theta + 1 columns;
/// the columns at theta = 0 and theta = 2pi are distinct vertices, which
/// makes the mesh a disk.
Domain cut_annulus(double r_in, double r_out, int n_r, int n_theta);

/// The same annulus without the cut (chi = 0).
Domain annulus(double r_in, double r_out, int n_r, int n_theta);

/// Jessen's orthogonal icosahedron on the sphere of radius sqrt(5).
Realization jessen();

enum class Platonic { tetra, octa, icosa };
Platonic parse_platonic(const std::string& name);

/// Unit circumsphere, outward orientation.
Realization platonic(Platonic which);

/// f(s, t) = g1^s g2^t (r, 0, 0), g_i the screw motion by angle theta_i
/// (clockwise about z) and height h_i.
struct CylinderParams {
  double r = 1.0;
  double theta1 = 2 * 3.14159265358979323846 / 7;
  double h1 = 0.0;
  double theta2 = 3.14159265358979323846 / 9;
  double h2 = 0.4;
  /// Window s, t in [-half_extent, half_extent].
  int half_extent = 3;

  Eigen::Matrix<double, 5, 1> vector() const;
  static CylinderParams from_vector(const Eigen::Matrix<double, 5, 1>& p, int half_extent);
};

Vec3 cylinder_point(const CylinderParams& p, double s, double t);

struct CylinderWindow {
  Realization realization;
  /// Vertex id of (s, t).
  int vertex(int s, int t) const;
  int half_extent = 3;
  /// Lengths of the edge classes a = (0,0)-(1,0), b = (1,0)-(0,1),
  /// c = (0,1)-(0,0).
  double la = 0, lb = 0, lc = 0;
  /// Largest spread of lengths within a class.
  double class_spread = 0;
  /// Integrated mean curvature at (0,0) and the spread over all interior
  /// vertices.
  double H = 0;
  double H_spread = 0;
};

/// Throws Error("generators") when the window is degenerate (for example
/// h1 = h2 = 0 puts every vertex on one circle).
CylinderWindow homogeneous_cylinder(const CylinderParams& p);

/// mu = (l_a, l_b, l_c, H).
Eigen::Vector4d cylinder_mu(const CylinderParams& p);

struct CylinderFlex {
  Eigen::Matrix<double, 4, 5> jacobian;
  Eigen::Matrix<double, 4, 1> singular_values;
  int rank = 0;
  std::vector<Eigen::Matrix<double, 5, 1>> kernel;
  /// Vertex field of the first kernel vector.
  std::vector<Vec3> fdot;
  /// One-sided changes of mu along f + lambda fdot at lambda and lambda/2.
  double change = 0, change_half = 0;
  double observed_order = 0;
  /// (4 D(lambda/2) - D(lambda)) / lambda, componentwise max.
  double richardson_rate = 0;
  /// Analytic max |<d fdot, df>| / l over all window edges.
  double max_length_rate = 0;
  /// Relative residual of the best infinitesimal rigid-motion fit.
  double rigid_fit_residual = 0;
};

/// Central-difference Jacobian with step eps (1 + |p_i|) per coordinate and
/// the first-order check of the resulting deformation at step lambda.
CylinderFlex cylinder_flex(const CylinderParams& p, double eps = 1e-5, double lambda = 1e-3);

/// Relative residual of the least-squares fit fdot ~ a + w x f.
double rigid_fit_residual(const std::vector<Vec3>& f, const std::vector<Vec3>& fdot);

}  // namespace isoform
