#include "permsym/geometry.hpp"

#include "permsym/error.hpp"

#include <algorithm>
#include <numbers>
#include <string>

namespace permsym {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec3 unit_or_throw(const Vec3 &p, const Tolerances &tol, std::size_t index) {
  const double n = p.norm();
  if (!(n > tol.normalization))
    throw Error(ErrorKind::ZeroMomentum,
                "momentum " + std::to_string(index) + " has zero length");
  return p * (1.0 / n);
}

Vec3 unit_axis(const Vec3 &k, const Tolerances &tol) {
  const double n = k.norm();
  if (!(n >= tol.geometric))
    throw Error(ErrorKind::DegenerateAxis, "aggregate axis vanishes");
  return k * (1.0 / n);
}

// Shared by the two per-particle frames: y = k̂ × p̂ normalized.
Vec3 frame_y_axis(const Vec3 &p, const Vec3 &k, const Tolerances &tol) {
  const Vec3 ph = unit_or_throw(p, tol, 0);
  const Vec3 kh = unit_axis(k, tol);
  const Vec3 y = kh.cross(ph);
  if (y.norm() < tol.geometric)
    throw Error(ErrorKind::CollinearDegenerate,
                "momentum is parallel to the aggregate axis");
  return y.normalized();
}

} // namespace

double Frame::orthonormality_residual() const {
  double r = 0.0;
  r = std::max(r, std::fabs(x_axis.norm() - 1.0));
  r = std::max(r, std::fabs(y_axis.norm() - 1.0));
  r = std::max(r, std::fabs(z_axis.norm() - 1.0));
  r = std::max(r, std::fabs(x_axis.dot(y_axis)));
  r = std::max(r, std::fabs(y_axis.dot(z_axis)));
  r = std::max(r, std::fabs(z_axis.dot(x_axis)));
  r = std::max(r, (x_axis - y_axis.cross(z_axis)).norm());
  return r;
}

Vec3 aggregate_axis(std::span<const Vec3> momenta, const Tolerances &tol) {
  if (momenta.size() < 2)
    throw Error(ErrorKind::Validation,
                "aggregate axis needs at least two momenta");
  Vec3 k;
  for (std::size_t i = 0; i < momenta.size(); ++i)
    k += unit_or_throw(momenta[i], tol, i);
  if (k.norm() < tol.geometric)
    throw Error(ErrorKind::DegenerateAxis,
                "unit momenta sum to zero; no aggregate axis");
  return k;
}

Frame helicity_frame(const Vec3 &p, const Vec3 &k, const Tolerances &tol) {
  Frame f;
  f.z_axis = unit_or_throw(p, tol, 0);
  f.y_axis = frame_y_axis(p, k, tol);
  f.x_axis = f.y_axis.cross(f.z_axis);
  return f;
}

Frame aggregate_frame(const Vec3 &p, const Vec3 &k, const Tolerances &tol) {
  Frame f;
  f.y_axis = frame_y_axis(p, k, tol);
  f.z_axis = unit_axis(k, tol);
  f.x_axis = f.y_axis.cross(f.z_axis);
  return f;
}

Frame frame_from_zx(const Vec3 &z_dir, const Vec3 &x_dir,
                    const Tolerances &tol) {
  Frame f;
  const double zn = z_dir.norm();
  if (!(zn > tol.normalization))
    throw Error(ErrorKind::DegenerateAxis, "frame z-axis has zero length");
  f.z_axis = z_dir * (1.0 / zn);
  const Vec3 xp = x_dir - f.z_axis * x_dir.dot(f.z_axis);
  if (xp.norm() < tol.geometric)
    throw Error(ErrorKind::CollinearDegenerate,
                "frame x-direction is parallel to its z-axis");
  f.x_axis = xp.normalized();
  f.y_axis = f.z_axis.cross(f.x_axis);
  return f;
}

Frame default_canonical_frame(const Vec3 &k, const Tolerances &tol) {
  const Vec3 kh = unit_axis(k, tol);
  const Vec3 lab_x{1.0, 0.0, 0.0};
  const Vec3 lab_y{0.0, 1.0, 0.0};
  // Prefer lab x unless it is (nearly) parallel to k.
  if ((lab_x - kh * lab_x.dot(kh)).norm() > 1e-6)
    return frame_from_zx(kh, lab_x, tol);
  return frame_from_zx(kh, lab_y, tol);
}

CanonicalAngles canonical_angles(const Vec3 &p, const Frame &canonical,
                                 const Tolerances &tol) {
  const Vec3 local = canonical.to_local(unit_or_throw(p, tol, 0));
  const double transverse = std::hypot(local.x, local.y);
  if (transverse < tol.geometric)
    throw Error(ErrorKind::CollinearDegenerate,
                "momentum lies along the canonical z-axis; azimuth undefined");
  CanonicalAngles a;
  a.theta = std::atan2(transverse, local.z);
  a.phi_radians = std::atan2(local.y, local.x);
  if (a.phi_radians < 0)
    a.phi_radians += kTwoPi;
  a.phi = TurnAngle::from_turns(a.phi_radians / kTwoPi, tol).rank0();
  return a;
}

double check_transverse_sum(std::span<const Vec3> momenta, const Vec3 &k) {
  const Vec3 kh = k.normalized();
  Vec3 sum;
  for (const Vec3 &p : momenta) {
    const Vec3 ph = p.normalized();
    sum += ph - kh * ph.dot(kh);
  }
  return sum.norm();
}

double dependent_phi_radians(std::size_t i, std::span<const CanonicalAngles> angles,
                             const Tolerances &tol) {
  if (i >= angles.size())
    throw Error(ErrorKind::UnknownIdentity,
                "dependent_phi index " + std::to_string(i) + " out of range");
  double sx = 0.0, sy = 0.0;
  for (std::size_t j = 0; j < angles.size(); ++j) {
    if (j == i)
      continue;
    const double st = std::sin(angles[j].theta);
    const double ph = angles[j].phi_radians;
    sx += st * std::cos(ph);
    sy += st * std::sin(ph);
  }
  if (std::fabs(sx) < tol.normalization && std::fabs(sy) < tol.normalization)
    throw Error(ErrorKind::IndeterminatePhi,
                "transverse components of the other particles vanish");
  // Particle i's transverse component is minus the sum of the others.
  double phi = std::atan2(-sy, -sx);
  if (phi < 0)
    phi += kTwoPi;
  return phi;
}

TurnAngle dependent_phi(std::size_t i, std::span<const CanonicalAngles> angles,
                        const Tolerances &tol) {
  return TurnAngle::from_turns(dependent_phi_radians(i, angles, tol) / kTwoPi, tol).rank0();
}

Vec3 subset_axis(std::span<const Vec3> momenta,
                 std::span<const std::size_t> subset, const Tolerances &tol) {
  if (subset.size() < 2)
    throw Error(ErrorKind::Validation, "subset needs at least two particles");
  std::vector<Vec3> chosen;
  chosen.reserve(subset.size());
  for (std::size_t idx : subset) {
    if (idx >= momenta.size())
      throw Error(ErrorKind::UnknownIdentity,
                  "subset index " + std::to_string(idx) + " out of range");
    chosen.push_back(momenta[idx]);
  }
  return aggregate_axis(chosen, tol);
}

double pair_azimuth_difference(const Vec3 &p_i, const Vec3 &p_j,
                               const Tolerances &tol) {
  const Vec3 pair[2] = {p_i, p_j};
  const Vec3 k = aggregate_axis(pair, tol);
  const Frame frame = default_canonical_frame(k, tol);
  const auto a = canonical_angles(p_i, frame, tol);
  const auto b = canonical_angles(p_j, frame, tol);
  double d = std::fmod(b.phi_radians - a.phi_radians, kTwoPi);
  if (d < 0)
    d += kTwoPi;
  return d;
}

Vec3 rotate_about(const Vec3 &v, const Vec3 &axis, double angle) {
  const Vec3 u = axis.normalized();
  const double c = std::cos(angle), s = std::sin(angle);
  return v * c + u.cross(v) * s + u * (u.dot(v) * (1.0 - c));
}

Frame rotate_about(const Frame &f, const Vec3 &axis, double angle) {
  return {rotate_about(f.x_axis, axis, angle), rotate_about(f.y_axis, axis, angle),
          rotate_about(f.z_axis, axis, angle)};
}

Vec3 direction_from_angles(double theta, double phi_radians,
                           const Frame &frame) {
  const double st = std::sin(theta);
  return frame.to_global(
      {st * std::cos(phi_radians), st * std::sin(phi_radians), std::cos(theta)});
}

} // namespace permsym
