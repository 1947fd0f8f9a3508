#include "isoform/report.hpp"

#include <fstream>
#include <iostream>

namespace isoform {

Json to_json(const Vec3& v) { return Json::array({v[0], v[1], v[2]}); }

Json to_json(const std::vector<Vec3>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

Json to_json(const StressResiduals& r) {
  return {{"closedness", r.closedness}, {"parallelism", r.parallelism}, {"pairing", r.pairing},
          {"scalar_row", r.scalar_row}};
}

Json mesh_report(const Realization& r) {
  const SurfaceMesh& m = r.mesh();
  Json loops = Json::array();
  for (const auto& loop : m.boundary_loops()) loops.push_back(loop.size());
  Json j;
  j["schema"] = kReportSchema;
  j["chi"] = m.euler_characteristic();
  if (auto g = m.genus())
    j["genus"] = *g;
  else
    j["genus"] = nullptr;
  j["counts"] = {{"vertices", m.vertex_count()},
                 {"edges", m.edge_count()},
                 {"faces", m.face_count()},
                 {"interior_vertices", m.interior_vertices().size()},
                 {"boundary_vertices", m.boundary_vertices().size()},
                 {"interior_edges", m.interior_edges().size()},
                 {"boundary_edges", m.boundary_edges().size()}};
  j["boundary_loops"] = {{"count", m.boundary_loops().size()}, {"lengths", loops}};
  j["degeneracy_grade"] = to_string(r.grade());
  j["reoriented_faces"] = m.reoriented_face_count();
  return j;
}

Json stress_report(const SelfStressBasis& b, int spectrum_tail) {
  Json j;
  j["rows"] = b.rows;
  j["cols"] = b.cols;
  j["rank_tol"] = b.rank_tol;
  j["nullity"] = b.nullity;
  j["verdict"] = to_string(b.verdict);
  j["gap_ratio"] = std::isfinite(b.gap_ratio) ? Json(b.gap_ratio) : Json(nullptr);
  Json tail = Json::array();
  const Eigen::Index n = b.singular_values.size();
  const double smax = n ? b.singular_values[0] : 0.0;
  for (Eigen::Index i = std::max<Eigen::Index>(0, n - spectrum_tail); i < n; ++i)
    tail.push_back(smax > 0 ? b.singular_values[i] / smax : 0.0);
  j["relative_spectrum_tail"] = tail;
  Json vecs = Json::array();
  for (std::size_t i = 0; i < b.stresses.size(); ++i)
    vecs.push_back({{"support", b.support[i]}, {"residuals", to_json(b.residuals[i])}});
  j["basis"] = vecs;
  j["lifted_nullity"] = b.lifted_nullity;
  j["lifted_max_principal_angle"] = b.lifted_angle;
  j["euclidean_nullity"] = b.euclidean_nullity;
  return j;
}

Json conformal_report(const ConformalDimension& cd) {
  return {{"kernel_dimension", cd.kernel_dimension}, {"bound", cd.bound},
          {"genus", cd.genus},
          {"verdict", to_string(cd.verdict)},
          {"counting_predicate", cd.counting_predicate}};
}

Json inscribed_report(const InscribedReport& ir) {
  return {{"radius", ir.radius},
          {"radius_deviation", ir.radius_deviation},
          {"euclidean_nullity", ir.euclidean_nullity},
          {"sphere_identity", ir.sphere_identity},
          {"rigidity_corank", ir.rigidity_corank},
          {"flexible", ir.flexible},
          {"verdict", to_string(ir.verdict)},
          {"agree", ir.agree}};
}

void write_json_file(const std::string& path, const Json& j) {
  if (path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cli-io", "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace isoform
