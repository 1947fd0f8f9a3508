#include "isoform/quaternion.hpp"

#include <cmath>

namespace isoform {

double Quaternion::norm() const { return std::sqrt(norm2()); }

Quaternion Quaternion::inverse() const {
  double n = norm2();
  return {w / n, -v / n};
}

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.v.dot(b.v), a.w * b.v + b.w * a.v + a.v.cross(b.v)};
}

Quaternion operator+(const Quaternion& a, const Quaternion& b) { return {a.w + b.w, a.v + b.v}; }
Quaternion operator-(const Quaternion& a, const Quaternion& b) { return {a.w - b.w, a.v - b.v}; }
Quaternion operator*(double s, const Quaternion& a) { return {s * a.w, s * a.v}; }

}  // namespace isoform
