#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "isoform/deform.hpp"
#include "isoform/isothermic.hpp"
#include "isoform/mesh.hpp"

namespace isoform {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

Json to_json(const Vec3& v);
Json to_json(const std::vector<Vec3>& vs);
Json to_json(const StressResiduals& r);

/// {schema, chi, genus, counts, boundary_loops, degeneracy_grade}.
Json mesh_report(const Realization& r);

/// Nullity, verdict, tail of the singular-value spectrum, per-vector
/// residuals and supports, and the lifted/Euclidean cross-checks.
Json stress_report(const SelfStressBasis& basis, int spectrum_tail = 12);

Json conformal_report(const ConformalDimension& cd);
Json inscribed_report(const InscribedReport& ir);

void write_json_file(const std::string& path, const Json& j);

}  // namespace isoform
