#pragma once

#include "isoform/mesh.hpp"

namespace isoform {

/// Quaternion w + v with R^3 embedded as the pure imaginaries.
struct Quaternion {
  double w = 0;
  Vec3 v = Vec3::Zero();

  static Quaternion pure(const Vec3& x) { return {0.0, x}; }

  Quaternion conj() const { return {w, -v}; }
  double norm2() const { return w * w + v.squaredNorm(); }
  double norm() const;
  Quaternion inverse() const;
};

Quaternion operator*(const Quaternion& a, const Quaternion& b);
Quaternion operator+(const Quaternion& a, const Quaternion& b);
Quaternion operator-(const Quaternion& a, const Quaternion& b);
Quaternion operator*(double s, const Quaternion& a);

}  // namespace isoform
