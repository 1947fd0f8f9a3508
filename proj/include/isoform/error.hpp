#pragma once

#include <stdexcept>
#include <string>

namespace isoform {

/// Base exception. Every error carries the tag of the module that raised it,
/// so CLI messages read "[harmonic] singular Dirichlet system ...".
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& message)
      : std::runtime_error("[" + module + "] " + message), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

enum class MeshErrorKind {
  bad_index,
  degenerate_triangle,
  duplicate_face,
  non_manifold_edge,
  non_orientable,
  disconnected,
  bad_vertex_link,
  collinear_face,
  vertex_at_origin,
};

class MeshError : public Error {
 public:
  MeshError(MeshErrorKind kind, const std::string& message)
      : Error("mesh-core", message), kind_(kind) {}

  MeshErrorKind kind() const noexcept { return kind_; }

 private:
  MeshErrorKind kind_;
};

}  // namespace isoform
