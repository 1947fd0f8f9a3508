#include "isoform/obj_io.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace isoform {

ObjData read_obj(std::istream& in) {
  ObjData data;
  std::string line;
  int lineno = 0;
  std::vector<std::vector<long>> raw_faces;
  std::vector<int> face_lines;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream is(line);
    std::string tag;
    if (!(is >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Vec3 p;
      if (!(is >> p[0] >> p[1] >> p[2])) throw Error("cli-io", "OBJ line " + std::to_string(lineno) + ": bad vertex");
      data.positions.push_back(p);
    } else if (tag == "f") {
      std::vector<long> idx;
      std::string tok;
      while (is >> tok) {
        try {
          idx.push_back(std::stol(tok.substr(0, tok.find('/'))));
        } catch (const std::exception&) {
          throw Error("cli-io", "OBJ line " + std::to_string(lineno) + ": bad face index '" + tok + "'");
        }
      }
      if (idx.size() != 3)
        throw Error("cli-io", "OBJ line " + std::to_string(lineno) + ": only triangles are supported");
      raw_faces.push_back(idx);
      face_lines.push_back(lineno);
    }
  }
  const long n = static_cast<long>(data.positions.size());
  for (std::size_t f = 0; f < raw_faces.size(); ++f) {
    Triangle t;
    for (int c = 0; c < 3; ++c) {
      long i = raw_faces[f][c];
      long v = i > 0 ? i - 1 : n + i;
      if (i == 0 || v < 0 || v >= n)
        throw Error("cli-io", "OBJ line " + std::to_string(face_lines[f]) + ": vertex index " + std::to_string(i) +
                                  " out of range");
      t[c] = static_cast<int>(v);
    }
    data.triangles.push_back(t);
  }
  return data;
}

ObjData read_obj_file(const std::string& path) {
  if (path == "-") return read_obj(std::cin);
  std::ifstream in(path);
  if (!in) throw Error("cli-io", "cannot open '" + path + "'");
  return read_obj(in);
}

Realization to_realization(const ObjData& data) {
  return Realization(make_mesh(static_cast<int>(data.positions.size()), data.triangles), data.positions);
}

namespace {

void write_vertices(std::ostream& out, const std::vector<Vec3>& points) {
  out << std::setprecision(17);
  for (const auto& p : points) out << "v " << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
}

}  // namespace

void write_obj(std::ostream& out, const Realization& r) {
  write_vertices(out, r.positions());
  for (const auto& t : r.mesh().faces()) out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

void write_obj_file(const std::string& path, const Realization& r) {
  if (path == "-") {
    write_obj(std::cout, r);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cli-io", "cannot write '" + path + "'");
  write_obj(out, r);
}

void write_polygons(std::ostream& out, const std::vector<Vec3>& points, const std::vector<std::vector<int>>& polygons) {
  write_vertices(out, points);
  for (const auto& poly : polygons) {
    out << 'f';
    for (int v : poly) out << ' ' << v + 1;
    out << '\n';
  }
}

}  // namespace isoform
