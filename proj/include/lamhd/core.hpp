#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace lamhd {

/// Two-component transverse vector; used for the transverse velocity and
/// the transverse magnetic field.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2& operator+=(Vec2 b) { x += b.x; y += b.y; return *this; }
    Vec2& operator-=(Vec2 b) { x -= b.x; y -= b.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
    friend Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm_sq(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm_sq(a)); }

/// Scalar samples at cell centers (length n_cells).
using CenterField = std::vector<double>;
/// Scalar samples at faces (length n_cells + 1).
using FaceField = std::vector<double>;
/// Transverse-vector samples at cell centers.
using CenterField2 = std::vector<Vec2>;
/// Transverse-vector samples at faces.
using FaceField2 = std::vector<Vec2>;

} // namespace lamhd
