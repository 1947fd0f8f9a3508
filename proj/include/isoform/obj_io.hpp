#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "isoform/mesh.hpp"

namespace isoform {

struct ObjData {
  std::vector<Vec3> positions;
  std::vector<Triangle> triangles;
};

/// Reads `v x y z` and `f i j k` records (1-based; negative indices count
/// from the end; `i/t/n` forms use the vertex index). Other records are
/// ignored. Non-triangular faces throw Error("cli-io").
ObjData read_obj(std::istream& in);
/// "-" reads standard input.
ObjData read_obj_file(const std::string& path);

Realization to_realization(const ObjData& data);

/// Writes with 17 significant digits.
void write_obj(std::ostream& out, const Realization& r);
void write_obj_file(const std::string& path, const Realization& r);

/// Polygon soup (used for dual meshes).
void write_polygons(std::ostream& out, const std::vector<Vec3>& points, const std::vector<std::vector<int>>& polygons);

}  // namespace isoform
