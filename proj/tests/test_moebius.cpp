#include <doctest.h>

#include <cmath>
#include <random>

#include "isoform/generators.hpp"
#include "isoform/isothermic.hpp"
#include "isoform/moebius.hpp"
#include "isoform/quaternion.hpp"

using namespace isoform;

TEST_CASE("light cone lift") {
  Vec3 x(0.3, -1.2, 2.0);
  Vec5 v = light_cone_lift(x);
  CHECK(std::abs(minkowski(v, v)) < 1e-14);
  CHECK((light_cone_project(v) - x).norm() < 1e-15);
  CHECK((light_cone_project(3.5 * v) - x).norm() < 1e-15);
}

TEST_CASE("matrix representation agrees with the direct action") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> U(-1, 1);
  MoebiusMap m = MoebiusMap::parse("translate 0.5 -0.2 1; rotate 1 1 0 0.8; invert; scale -1.7; translate 0 0 0.3; invert");
  Lorentz M = m.matrix();
  Lorentz J = Lorentz::Identity();
  J(4, 4) = -1;
  CHECK((M.transpose() * J * M - J).cwiseAbs().maxCoeff() < 1e-10 * M.cwiseAbs().maxCoeff() * M.cwiseAbs().maxCoeff());
  for (int t = 0; t < 20; ++t) {
    Vec3 x(U(rng), U(rng), U(rng));
    CHECK((light_cone_project(M * light_cone_lift(x)) - m.apply(x)).norm() < 1e-10 * (1 + m.apply(x).norm()));
  }
}

TEST_CASE("inversion") {
  Vec3 x(1, 2, 2);
  MoebiusMap inv = MoebiusMap::inversion();
  CHECK((inv.apply(x) + x / 9.0).norm() < 1e-15);
  CHECK((inv.then(inv).apply(x) - x).norm() < 1e-12);
  CHECK_THROWS_AS(inv.apply(Vec3::Zero()), MeshError);
}

TEST_CASE("chain parsing errors") {
  CHECK_THROWS_AS(MoebiusMap::parse("shear 1"), Error);
  CHECK_THROWS_AS(MoebiusMap::parse("translate 1 2"), Error);
  CHECK_THROWS_AS(MoebiusMap::parse("scale 0"), Error);
  CHECK_THROWS_AS(MoebiusMap::parse("rotate 0 0 0 1"), Error);
  CHECK_THROWS_AS(MoebiusMap::parse("invert 3"), Error);
  CHECK(MoebiusMap::parse("  ; invert ;").chain().size() == 1);
}

TEST_CASE("stereographic projection lands on the unit sphere") {
  Domain d = square_domain(7, 2.0);
  Realization s = stereographic(d.realization, 1.0);
  for (const auto& p : s.positions()) CHECK(std::abs(p.norm() - 1) < 1e-12);
  // The origin goes to the south pole.
  MoebiusMap st = stereographic_chain(1.0);
  CHECK((st.apply(Vec3::Zero()) - Vec3(0, 0, -1)).norm() < 1e-12);
  CHECK((st.apply(Vec3(1, 0, 0)) - Vec3(1, 0, 0)).norm() < 1e-12);
  CHECK_THROWS_AS(stereographic(jessen(), 1.0), Error);
}

TEST_CASE("stress transport through a single inversion") {
  Realization j = apply(MoebiusMap::translation(Vec3(0.1, 0.2, 4)), jessen());
  SelfStressBasis b = isothermic_basis(j);
  REQUIRE(b.nullity == 1);
  TransportResult tr = transport_tau(j, b.stresses[0]);
  CHECK_FALSE(tr.flagged);
  CHECK(tr.residuals.max() < 1e-10);
  const auto edges = j.mesh().interior_edges();
  for (std::size_t n = 0; n < edges.size(); ++n) {
    int h = j.mesh().edge_halfedge(edges[n]);
    double want = b.stresses[0][n] * j.position(j.mesh().tail(h)).squaredNorm() * j.position(j.mesh().head(h)).squaredNorm();
    CHECK(tr.k[n] == doctest::Approx(want).epsilon(1e-12));
  }
  CHECK(quaternion_transport_deviation(j, b.stresses[0]) < 1e-10);
}

TEST_CASE("circumcircle angle on planar configurations") {
  // Square split along a diagonal: both circumcircles coincide.
  auto mesh = make_mesh(4, {{0, 1, 2}, {0, 2, 3}});
  Realization sq(mesh, {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0, 1, 0)});
  int e = mesh->interior_edges()[0];
  double a = circumcircle_angle(sq, e);
  CHECK(std::min(a, M_PI - a) < 1e-7);
  // Rhombus with 60 degree angles: circumcircles of two equilateral
  // triangles meet at 60 degrees (or its supplement).
  Realization rh(mesh, {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1.5, std::sqrt(3) / 2, 0), Vec3(0.5, std::sqrt(3) / 2, 0)});
  double b = circumcircle_angle(rh, e);
  CHECK(std::min(b, M_PI - b) == doctest::Approx(M_PI / 3));
  // Invariance under inversion.
  double c = circumcircle_angle(apply(MoebiusMap::parse("translate 0.3 0.1 0.7; invert"), rh), e);
  CHECK(c == doctest::Approx(b).epsilon(1e-10));
}

TEST_CASE("circumspheres") {
  // Four cospherical points give a well-defined sphere; a planar quad is a
  // plane (still a sphere in Moebius geometry); a degenerate configuration
  // is flagged.
  Realization oct = platonic(Platonic::octa);
  auto pairs = neighboring_sphere_pairs(oct.mesh());
  CHECK(pairs.size() == 3 * oct.mesh().face_count());
  for (auto [e1, e2] : pairs) {
    SphereAngle s = circumsphere_angle(oct, e1, e2);
    CHECK_FALSE(s.degenerate);
    CHECK(std::abs(s.angle) < 1e-7);  // all on the unit sphere
  }
  Circumsphere c = circumsphere(oct, 0);
  CHECK(std::abs(minkowski(c.s, light_cone_lift(oct.position(0)))) < 1e-12);
}

TEST_CASE("infinitesimal Moebius velocity") {
  MoebiusVelocity w;
  w.b = Vec3(0, 0, 1);
  Vec3 x(1, 0, 0);
  // 2<b,x>x - |x|^2 b
  CHECK((w.at(x) - Vec3(0, 0, -1)).norm() < 1e-15);
  w = MoebiusVelocity{};
  w.omega = Vec3(0, 0, 1);
  CHECK((w.at(x) - Vec3(0, 1, 0)).norm() < 1e-15);
}

TEST_CASE("angle rates") {
  // Off the sphere, so that neighbouring circumspheres are distinct.
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(-0.1, 0.1);
  std::vector<Vec3> p = jessen().positions();
  for (auto& x : p) x += Vec3(U(rng), U(rng), U(rng));
  Realization r = jessen().with_positions(p);
  MoebiusVelocity w;
  w.a = Vec3(0.1, 0.2, -0.3);
  w.omega = Vec3(0.4, 0, 0.1);
  w.lambda = 0.3;
  w.b = Vec3(0.05, -0.1, 0.02);
  AngleRates c = angle_rate(r, w.at(r.positions()), AngleKind::circles);
  AngleRates s = angle_rate(r, w.at(r.positions()), AngleKind::spheres);
  CHECK(c.max_abs < 1e-6);
  CHECK(s.max_abs < 1e-6);
  CHECK(c.at_eps.size() == r.mesh().interior_edges().size());
}

TEST_CASE("quaternion algebra") {
  Quaternion i{0, Vec3(1, 0, 0)}, j{0, Vec3(0, 1, 0)}, k{0, Vec3(0, 0, 1)};
  CHECK(((i * j) - k).norm() < 1e-15);
  CHECK(((i * i) - Quaternion{-1, Vec3::Zero()}).norm() < 1e-15);
  Quaternion q{0.5, Vec3(1, -2, 3)};
  CHECK(((q * q.inverse()) - Quaternion{1, Vec3::Zero()}).norm() < 1e-15);
  CHECK(q.norm() == doctest::Approx(std::sqrt(14.25)));
}
