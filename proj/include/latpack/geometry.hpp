#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>

namespace latpack {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  constexpr double norm2() const { return x * x + y * y + z * z; }
  double max_abs() const { return std::fmax(std::fabs(x), std::fmax(std::fabs(y), std::fabs(z))); }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline Vec3 normalized(const Vec3& v) { return v / v.norm(); }

inline std::ostream& operator<<(std::ostream& os, const Vec3& v) {
  return os << '(' << v.x << ", " << v.y << ", " << v.z << ')';
}

/// 3x3 matrix stored row-major. Lattice bases keep basis vectors in columns.
struct Mat3 {
  std::array<double, 9> a{};

  static constexpr Mat3 identity() {
    Mat3 m;
    m.a = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    return m;
  }
  static constexpr Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    Mat3 m;
    m.a = {c0.x, c1.x, c2.x, c0.y, c1.y, c2.y, c0.z, c1.z, c2.z};
    return m;
  }

  constexpr double operator()(int r, int c) const { return a[static_cast<std::size_t>(3 * r + c)]; }
  constexpr double& operator()(int r, int c) { return a[static_cast<std::size_t>(3 * r + c)]; }

  constexpr Vec3 col(int c) const { return {(*this)(0, c), (*this)(1, c), (*this)(2, c)}; }
  constexpr Vec3 row(int r) const { return {(*this)(r, 0), (*this)(r, 1), (*this)(r, 2)}; }

  constexpr Vec3 operator*(const Vec3& v) const {
    return {a[0] * v.x + a[1] * v.y + a[2] * v.z, a[3] * v.x + a[4] * v.y + a[5] * v.z,
            a[6] * v.x + a[7] * v.y + a[8] * v.z};
  }
  constexpr Mat3 operator*(const Mat3& o) const {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0;
        for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
        m(i, j) = s;
      }
    return m;
  }
  constexpr Mat3 operator+(const Mat3& o) const {
    Mat3 m;
    for (std::size_t i = 0; i < 9; ++i) m.a[i] = a[i] + o.a[i];
    return m;
  }
  constexpr Mat3 operator-(const Mat3& o) const {
    Mat3 m;
    for (std::size_t i = 0; i < 9; ++i) m.a[i] = a[i] - o.a[i];
    return m;
  }
  constexpr Mat3 operator*(double s) const {
    Mat3 m;
    for (std::size_t i = 0; i < 9; ++i) m.a[i] = a[i] * s;
    return m;
  }

  constexpr double det() const {
    return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
           a[2] * (a[3] * a[7] - a[4] * a[6]);
  }
  constexpr Mat3 transposed() const {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = (*this)(j, i);
    return m;
  }
  /// Inverse via adjugate; caller guarantees det != 0.
  constexpr Mat3 inverse() const {
    const double d = det();
    Mat3 m;
    m(0, 0) = (a[4] * a[8] - a[5] * a[7]) / d;
    m(0, 1) = (a[2] * a[7] - a[1] * a[8]) / d;
    m(0, 2) = (a[1] * a[5] - a[2] * a[4]) / d;
    m(1, 0) = (a[5] * a[6] - a[3] * a[8]) / d;
    m(1, 1) = (a[0] * a[8] - a[2] * a[6]) / d;
    m(1, 2) = (a[2] * a[3] - a[0] * a[5]) / d;
    m(2, 0) = (a[3] * a[7] - a[4] * a[6]) / d;
    m(2, 1) = (a[1] * a[6] - a[0] * a[7]) / d;
    m(2, 2) = (a[0] * a[4] - a[1] * a[3]) / d;
    return m;
  }
  double max_abs() const {
    double m = 0;
    for (double v : a) m = std::fmax(m, std::fabs(v));
    return m;
  }
};

}  // namespace latpack
