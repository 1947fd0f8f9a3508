#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "isoform/forms.hpp"
#include "isoform/isothermic.hpp"
#include "isoform/mesh.hpp"

namespace isoform {

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Lorentz = Eigen::Matrix<double, 5, 5>;

/// Minkowski product with signature (+,+,+,+,-).
double minkowski(const Vec5& a, const Vec5& b);

/// (f, (1 - |f|^2)/2, (1 + |f|^2)/2).
Vec5 light_cone_lift(const Vec3& f);

/// Inverse of the lift up to scale: x / (v4 + v5).
Vec3 light_cone_project(const Vec5& v);

struct MoebiusPrimitive {
  enum class Kind { translate, rotate, scale, invert };
  Kind kind = Kind::translate;
  Vec3 t = Vec3::Zero();
  Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
  double s = 1.0;
};

/// Composition of Euclidean primitives and the inversion x -> -x/|x|^2,
/// applied left to right.
class MoebiusMap {
 public:
  MoebiusMap() = default;

  static MoebiusMap translation(const Vec3& t);
  static MoebiusMap rotation(const Eigen::Matrix3d& R);
  static MoebiusMap scaling(double s);
  static MoebiusMap inversion();
  /// "translate 0 0 2; rotate ax ay az angle; scale 0.5; invert".
  static MoebiusMap parse(const std::string& text);

  /// This map followed by `next`.
  MoebiusMap then(const MoebiusMap& next) const;

  /// Pointwise application of the chain; throws MeshError(vertex_at_origin)
  /// when an inversion meets a point within 1e-12 of the origin.
  Vec3 apply(const Vec3& x) const;

  /// Equivalent Lorentz matrix acting on light-cone lifts.
  Lorentz matrix() const;

  const std::vector<MoebiusPrimitive>& chain() const { return chain_; }

 private:
  std::vector<MoebiusPrimitive> chain_;
};

Realization apply(const MoebiusMap& map, const Realization& r);

/// f -> -f / |f|^2.
Realization invert(const Realization& r);

/// Inverse stereographic projection of the z = 0 plane onto the unit sphere,
/// as the chain scale(1/radius), translate(-N), invert, scale(-2),
/// translate(N) with N = (0, 0, 1). The origin goes to (0, 0, -1) and the
/// circle of the given radius to the equator.
MoebiusMap stereographic_chain(double radius = 1.0);

Realization stereographic(const Realization& planar, double radius = 1.0);

struct TransportResult {
  Realization image;
  std::vector<double> k;
  DualOneForm<Vec3> tau;
  StressResiduals residuals;
  /// max lambda_i lambda_j / min lambda_i lambda_j over interior edges.
  double amplification = 1;
  bool flagged = false;
};

/// Transports a stress k of f to the image under `map`:
/// k~_ij = k_ij lambda_i lambda_j, where M lift(f_i) = lambda_i lift(f~_i).
/// For a single inversion lambda_i = |f_i|^2.
TransportResult transport_stress(const Realization& r, const std::vector<double>& k, const MoebiusMap& map,
                                 double tol = 1e-8);

/// transport_stress through a single inversion.
TransportResult transport_tau(const Realization& r, const std::vector<double>& k, double tol = 1e-8);

/// Max deviation (relative to max |tau~|) between tau~ = k~ df^{-1} and the
/// quaternion products f_i tau f_j-bar and f_j tau f_i-bar.
double quaternion_transport_deviation(const Realization& r, const std::vector<double>& k);

/// Angle in [0, pi] between the circumcircles of the two faces at an
/// interior edge; 0 for four cocircular points.
double circumcircle_angle(const Realization& r, int edge);

struct Circumsphere {
  bool degenerate = false;
  /// Unit spacelike Minkowski vector of the sphere through the four vertices
  /// of the edge's face pair, in the order tail, head, the two apexes.
  Vec5 s = Vec5::Zero();
};

Circumsphere circumsphere(const Realization& r, int edge, double degenerate_tol = 1e-10);

struct SphereAngle {
  bool degenerate = false;
  double angle = 0;
};

SphereAngle circumsphere_angle(const Realization& r, int edge1, int edge2);

/// Pairs of interior edges that share a face; their face pairs share a
/// triangle and hence three vertices.
std::vector<std::pair<int, int>> neighboring_sphere_pairs(const SurfaceMesh& mesh);

enum class AngleKind { circles, spheres };

struct AngleRates {
  std::vector<double> at_eps;
  std::vector<double> at_half;
  std::vector<double> richardson;
  double max_abs = 0;
  /// Items skipped because a configuration was degenerate.
  int skipped = 0;
};

/// Central differences of the angles along f + t fdot at eps and eps/2, with
/// the Richardson combination (4 D(eps/2) - D(eps)) / 3. max_abs is taken
/// over the Richardson values.
AngleRates angle_rate(const Realization& r, const std::vector<Vec3>& fdot, AngleKind which, double eps = 1e-5);

/// Velocity of a one-parameter Moebius flow:
/// a + omega x x + lambda x + 2 <b, x> x - |x|^2 b.
struct MoebiusVelocity {
  Vec3 a = Vec3::Zero();
  Vec3 omega = Vec3::Zero();
  double lambda = 0;
  Vec3 b = Vec3::Zero();

  Vec3 at(const Vec3& x) const;
  std::vector<Vec3> at(const std::vector<Vec3>& xs) const;
};

}  // namespace isoform
