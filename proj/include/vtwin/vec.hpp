#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace vtwin
{

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
// Lengths are in units of the design wavelength, so k = 2*pi.
inline constexpr double k0 = two_pi;

struct Vec2
{
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2 a, Vec2 b) = default;

    double norm() const { return std::hypot(x, y); }
};

struct Vec3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend bool operator==(Vec3 a, Vec3 b) = default;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    double rho() const { return std::hypot(x, y); }
    double phi() const { return std::atan2(y, x); }
};

inline double dot(Vec3 a, Vec3 b)
{
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

/// Complex 3-vector (field or dipole moment), Cartesian components.
struct CVec3
{
    cplx x{};
    cplx y{};
    cplx z{};

    CVec3 &operator+=(const CVec3 &o)
    {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    friend CVec3 operator+(CVec3 a, const CVec3 &b) { return a += b; }
    friend CVec3 operator-(const CVec3 &a, const CVec3 &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend CVec3 operator*(cplx s, const CVec3 &a) { return {s * a.x, s * a.y, s * a.z}; }
    friend bool operator==(const CVec3 &a, const CVec3 &b) = default;

    double norm2() const { return std::norm(x) + std::norm(y) + std::norm(z); }
};

// Real direction dotted into a complex vector (no conjugation).
inline cplx dot(Vec3 a, const CVec3 &b)
{
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline CVec3 to_complex(Vec3 v)
{
    return {v.x, v.y, v.z};
}

} // namespace vtwin
