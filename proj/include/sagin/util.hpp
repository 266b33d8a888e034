// util.hpp - small shared helpers: vectors, dense tensors, hashing, formatting
#pragma once

#include <cstdint>
#include <cstdio>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace sagin {

struct Vec2 {
  double x = 0.0, y = 0.0;
};

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline double dist2(const Vec2& a, const Vec2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

inline double dist3(const Vec3& a, const Vec3& b) {
  return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) +
                   (a.z - b.z) * (a.z - b.z));
}

// Dense row-major matrix / rank-3 tensor; just enough for allocations and MLPs.
struct Mat {
  int rows = 0, cols = 0;
  std::vector<double> v;

  Mat() = default;
  Mat(int r, int c, double fill = 0.0) : rows(r), cols(c), v(size_t(r) * c, fill) {}
  double& operator()(int r, int c) { return v[size_t(r) * cols + c]; }
  double operator()(int r, int c) const { return v[size_t(r) * cols + c]; }
};

struct Cube {
  int d0 = 0, d1 = 0, d2 = 0;
  std::vector<double> v;

  Cube() = default;
  Cube(int a, int b, int c, double fill = 0.0)
      : d0(a), d1(b), d2(c), v(size_t(a) * b * c, fill) {}
  double& operator()(int i, int j, int k) { return v[(size_t(i) * d1 + j) * d2 + k]; }
  double operator()(int i, int j, int k) const {
    return v[(size_t(i) * d1 + j) * d2 + k];
  }
};

// Raised when a numeric update produces non-finite values.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// FNV-1a 64-bit, used for checkpoint checksums and run-manifest content hashes.
inline uint64_t fnv1a(const void* data, size_t n, uint64_t h = 1469598103934665603ull) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

inline uint64_t fnv1a(const std::string& s) { return fnv1a(s.data(), s.size()); }

// Deterministic shortest-ish decimal formatting (g++ 11 has no <format>).
inline std::string fmt_g(double x, int prec = 10) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
  return buf;
}

inline bool nearly(double a, double b, double rel = 1e-9, double abs_tol = 1e-12) {
  return std::fabs(a - b) <= std::max(abs_tol, rel * std::max(std::fabs(a), std::fabs(b)));
}

}  // namespace sagin
