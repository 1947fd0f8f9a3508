#include <doctest.h>

#include <cmath>

#include "isoform/generators.hpp"
#include "isoform/isothermic.hpp"

using namespace isoform;

TEST_CASE("platonic solids") {
  struct Row {
    Platonic p;
    int v, e, f;
  };
  for (Row row : {Row{Platonic::tetra, 4, 6, 4}, Row{Platonic::octa, 6, 12, 8}, Row{Platonic::icosa, 12, 30, 20}}) {
    Realization r = platonic(row.p);
    CHECK(r.mesh().vertex_count() == row.v);
    CHECK(r.mesh().edge_count() == row.e);
    CHECK(r.mesh().face_count() == row.f);
    CHECK(r.mesh().genus() == 0);
    for (const auto& x : r.positions()) CHECK(x.norm() == doctest::Approx(1.0));
    // Outward orientation: each face normal points away from the origin.
    FaceGeometry g = face_geometry(r);
    for (int f = 0; f < r.mesh().face_count(); ++f) CHECK(g.normals[f].dot(r.position(r.mesh().face(f)[0])) > 0);
  }
  CHECK(parse_platonic("octa") == Platonic::octa);
  CHECK_THROWS_AS(parse_platonic("cube"), Error);
}

TEST_CASE("Jessen's icosahedron") {
  Realization j = jessen();
  CHECK(j.mesh().vertex_count() == 12);
  CHECK(j.mesh().edge_count() == 30);
  CHECK(j.mesh().face_count() == 20);
  for (const auto& x : j.positions()) CHECK(x.norm() == doctest::Approx(std::sqrt(5.0)));
  // Dihedral angles are right angles or reflex.
  MeanCurvatureData h = mean_curvature(j);
  int right = 0;
  for (double a : h.alpha)
    if (std::abs(std::abs(a) - M_PI / 2) < 1e-12) ++right;
  CHECK(right == 30);
}

TEST_CASE("planar domains") {
  Domain s = square_domain(4, 2.0);
  CHECK(s.realization.mesh().vertex_count() == 16);
  CHECK(s.realization.position(0).x() == -2.0);
  Domain c = cut_annulus(0.5, 2.0, 3, 8);
  CHECK(c.realization.mesh().vertex_count() == 3 * 9);
  CHECK(c.realization.mesh().euler_characteristic() == 1);
  CHECK(c.seam.size() == 1);
  for (std::size_t v = 0; v < c.r.size(); ++v) CHECK(c.r[v] == doctest::Approx(c.realization.position(v).norm()));
  Domain a = annulus(0.5, 2.0, 3, 8);
  CHECK(a.realization.mesh().euler_characteristic() == 0);
  CHECK(a.realization.mesh().boundary_loops().size() == 2);
}

TEST_CASE("homogeneous cylinder") {
  CylinderParams p;
  CylinderWindow w = homogeneous_cylinder(p);
  CHECK(w.class_spread < 1e-12);
  CHECK(w.H_spread < 1e-12);
  CHECK(w.la > 0);
  Vec3 x = cylinder_point(p, 0, 0);
  CHECK((x - Vec3(p.r, 0, 0)).norm() < 1e-15);
  CHECK((w.realization.position(w.vertex(1, 0)) - cylinder_point(p, 1, 0)).norm() < 1e-12);
  CylinderParams q = CylinderParams::from_vector(p.vector(), 2);
  CHECK(q.half_extent == 2);
  CHECK(q.theta2 == p.theta2);
  p.h1 = p.h2 = 0;
  CHECK_THROWS_AS(homogeneous_cylinder(p), Error);
}

TEST_CASE("rigid fit residual") {
  std::vector<Vec3> f{Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1), Vec3(1, 1, 1)};
  Vec3 a(0.1, 0.2, 0.3), w(0.5, -0.4, 0.2);
  std::vector<Vec3> v;
  for (const auto& x : f) v.push_back(a + w.cross(x));
  CHECK(rigid_fit_residual(f, v) < 1e-12);
  v[3] += Vec3(0, 0, 1);
  CHECK(rigid_fit_residual(f, v) > 1e-2);
}
