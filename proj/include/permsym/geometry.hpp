#pragma once

#include "permsym/exactphase.hpp"
#include "permsym/tolerances.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace permsym {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 &operator+=(const Vec3 &o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }

  constexpr double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr Vec3 cross(const Vec3 &o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  /// Caller guarantees a nonzero vector.
  Vec3 normalized() const { return *this * (1.0 / norm()); }

  friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;
};

/// A spin quantization frame: three axes, right-handed (x = y × z).
struct Frame {
  Vec3 x_axis;
  Vec3 y_axis;
  Vec3 z_axis;

  /// Components of v along the frame axes.
  Vec3 to_local(const Vec3 &v) const {
    return {v.dot(x_axis), v.dot(y_axis), v.dot(z_axis)};
  }
  Vec3 to_global(const Vec3 &v) const {
    return x_axis * v.x + y_axis * v.y + z_axis * v.z;
  }

  /// Largest deviation from a right-handed orthonormal triad.
  double orthonormality_residual() const;
};

struct CanonicalAngles {
  double theta = 0.0; ///< polar angle in [0, π]
  TurnAngle phi;      ///< azimuth, rank-0 representative in [0, 2π)
  double phi_radians = 0.0; ///< the same azimuth before snapping, in [0, 2π)
};

/// k = Σ p̂_i, unnormalized.
Vec3 aggregate_axis(std::span<const Vec3> momenta, const Tolerances &tol = {});

/// z = p̂_i, y = k × p̂_i (normalized), x = y × z.
Frame helicity_frame(const Vec3 &p, const Vec3 &k, const Tolerances &tol = {});

/// z = k̂, y = k × p̂_i (normalized), x = y × z. The x-axis is the direction of
/// p_i projected onto the plane normal to k.
Frame aggregate_frame(const Vec3 &p, const Vec3 &k, const Tolerances &tol = {});

/// Frame with z = ẑ_dir and x the component of x_dir normal to it.
Frame frame_from_zx(const Vec3 &z_dir, const Vec3 &x_dir,
                    const Tolerances &tol = {});

/// Order-independent canonical frame about k: z = k̂, x = the laboratory x
/// axis projected normal to k (laboratory y when x is parallel to k).
Frame default_canonical_frame(const Vec3 &k, const Tolerances &tol = {});

CanonicalAngles canonical_angles(const Vec3 &p, const Frame &canonical,
                                 const Tolerances &tol = {});

/// |Σ_i (p̂_i − (p̂_i·k̂) k̂)|
double check_transverse_sum(std::span<const Vec3> momenta, const Vec3 &k);

/// Azimuth of particle i implied by the remaining particles, since the
/// transverse components about the aggregate axis sum to zero.
TurnAngle dependent_phi(std::size_t i, std::span<const CanonicalAngles> angles,
                        const Tolerances &tol = {});
/// dependent_phi before snapping, in [0, 2π), from the unsnapped azimuths.
double dependent_phi_radians(std::size_t i, std::span<const CanonicalAngles> angles,
                             const Tolerances &tol = {});

/// Aggregate axis of the listed particles only.
Vec3 subset_axis(std::span<const Vec3> momenta,
                 std::span<const std::size_t> subset,
                 const Tolerances &tol = {});

/// φ_j − φ_i in [0, 2π) measured in the pair's own common frame (z along the
/// pair axis). Always π for a nondegenerate pair.
double pair_azimuth_difference(const Vec3 &p_i, const Vec3 &p_j,
                               const Tolerances &tol = {});

/// Rodrigues rotation of v about `axis` by `angle` radians.
Vec3 rotate_about(const Vec3 &v, const Vec3 &axis, double angle);
Frame rotate_about(const Frame &f, const Vec3 &axis, double angle);

/// Unit vector with polar angle θ and azimuth φ in the given frame.
Vec3 direction_from_angles(double theta, double phi_radians,
                           const Frame &frame);

} // namespace permsym
