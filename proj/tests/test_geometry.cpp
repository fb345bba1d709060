#include "permsym/error.hpp"
#include "permsym/geometry.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace permsym;
using namespace permsym::testing;

namespace {

constexpr double kTol = 1e-9;

void expect_vec_near(const Vec3 &a, const Vec3 &b, double tol = kTol) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.z, b.z, tol);
}

ErrorKind kind_of(auto &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Validation;
}

double circular_gap(double a, double b) {
  const double t = 2 * std::numbers::pi;
  const double d = std::fmod(std::abs(a - b), t);
  return std::min(d, t - d);
}

} // namespace

TEST(AggregateAxis, Examples) {
  const std::vector<Vec3> pair{{1, 0, 0}, {0, 1, 0}};
  expect_vec_near(aggregate_axis(pair), {1, 1, 0});

  const std::vector<Vec3> b2b{{1, 0, 0}, {-1, 0, 0}};
  EXPECT_EQ(kind_of([&] { aggregate_axis(b2b); }), ErrorKind::DegenerateAxis);

  const std::vector<Vec3> zero{{1, 0, 0}, {0, 0, 0}};
  EXPECT_EQ(kind_of([&] { aggregate_axis(zero); }), ErrorKind::ZeroMomentum);

  const std::vector<Vec3> one{{1, 0, 0}};
  EXPECT_EQ(kind_of([&] { aggregate_axis(one); }), ErrorKind::Validation);

  // Three momenta 120° apart in the xy-plane with a common z component.
  std::vector<Vec3> tri;
  for (int i = 0; i < 3; ++i) {
    const double a = 2 * std::numbers::pi * i / 3;
    tri.push_back({std::cos(a), std::sin(a), 0.7});
  }
  const Vec3 k = aggregate_axis(tri);
  expect_vec_near(k.normalized(), {0, 0, 1});
}

TEST(Frames, HelicityExample) {
  const Frame f = helicity_frame({1, 0, 0}, {1, 1, 0});
  expect_vec_near(f.z_axis, {1, 0, 0});
  expect_vec_near(f.y_axis, {0, 0, -1});
  expect_vec_near(f.x_axis, {0, -1, 0});
  EXPECT_LT(f.orthonormality_residual(), kTol);
  EXPECT_EQ(kind_of([] { helicity_frame({1, 1, 0}, {2, 2, 0}); }),
            ErrorKind::CollinearDegenerate);
}

TEST(Frames, AggregateExample) {
  const Vec3 k{0, 0, 2};
  const Frame f = aggregate_frame({1, 0, 1}, k);
  expect_vec_near(f.z_axis, {0, 0, 1});
  expect_vec_near(f.x_axis, {1, 0, 0});
  EXPECT_EQ(kind_of([&] { aggregate_frame({0, 0, 1}, k); }),
            ErrorKind::CollinearDegenerate);
}

TEST(Frames, PairFramesRelatedByHalfTurn) {
  Gen g(31);
  for (int n = 0; n < 200; ++n) {
    const auto ps = random_momenta(g, 2);
    const Vec3 k = aggregate_axis(ps);
    const Frame a = helicity_frame(ps[0], k);
    const Frame b = helicity_frame(ps[1], k);
    const Frame ra = rotate_about(a, k, std::numbers::pi);
    expect_vec_near(ra.x_axis, b.x_axis, 1e-9);
    expect_vec_near(ra.y_axis, b.y_axis, 1e-9);
    expect_vec_near(ra.z_axis, b.z_axis, 1e-9);
  }
}

TEST(CanonicalAngles, Examples) {
  const auto a = canonical_angles({2, 0, 0}, kLab);
  EXPECT_NEAR(a.theta, std::numbers::pi / 2, kTol);
  ASSERT_TRUE(a.phi.is_exact());
  EXPECT_EQ(a.phi.exact_fraction(), q(0));
  const auto b = canonical_angles({-1, 0, 0}, kLab);
  EXPECT_EQ(b.phi.exact_fraction(), q(1, 2));
  EXPECT_EQ(kind_of([] { canonical_angles({0, 0, 3}, kLab); }),
            ErrorKind::CollinearDegenerate);
}

TEST(CanonicalAngles, RotationShiftsAzimuth) {
  Gen g(32);
  for (int n = 0; n < 500; ++n) {
    Vec3 p = g.unit();
    if (std::hypot(p.x, p.y) < 1e-3)
      continue;
    const double alpha = g.real(0, 2 * std::numbers::pi);
    const auto before = canonical_angles(p, kLab);
    const auto after = canonical_angles(rotate_about(p, {0, 0, 1}, alpha), kLab);
    EXPECT_LT(circular_gap(after.phi_radians, before.phi_radians + alpha), 1e-9);
    EXPECT_NEAR(after.theta, before.theta, 1e-9);
  }
}

TEST(TransverseSum, Examples) {
  const std::vector<Vec3> pair{{1, 0, 0}, {0, 1, 0}};
  EXPECT_LT(check_transverse_sum(pair, aggregate_axis(pair)), 1e-15);
  EXPECT_GT(check_transverse_sum(pair, {0, 0, 1}), 0.5);
}

TEST(DependentPhi, Examples) {
  const std::vector<Vec3> pair{{1, 0, 1}, {-1, 0, 1}};
  const Frame c = default_canonical_frame(aggregate_axis(pair));
  std::vector<CanonicalAngles> angles{canonical_angles(pair[0], c), canonical_angles(pair[1], c)};
  EXPECT_EQ(angles[0].phi.exact_fraction(), q(0));
  const TurnAngle phi_b = dependent_phi(1, angles);
  EXPECT_EQ(phi_b.exact_fraction(), q(1, 2));
  EXPECT_LT(circular_gap(dependent_phi_radians(0, angles), angles[0].phi_radians), kTol);
}

TEST(SubsetAxis, Examples) {
  Gen g(33);
  for (int n = 0; n < 200; ++n) {
    const auto ps = random_momenta(g, 4);
    const std::vector<std::size_t> all{0, 1, 2, 3};
    expect_vec_near(subset_axis(ps, all), aggregate_axis(ps), 1e-12);
    const std::vector<std::size_t> three{0, 2, 3};
    const Vec3 k3 = subset_axis(ps, three);
    const std::vector<Vec3> sub{ps[0], ps[2], ps[3]};
    EXPECT_LT(check_transverse_sum(sub, k3), kTol);
    EXPECT_NEAR(pair_azimuth_difference(ps[0], ps[1]), std::numbers::pi, kTol);
  }
}

TEST(GeometryProperty, RandomConfigurations) {
  Gen g(34);
  for (int n = 0; n < 1000; ++n) {
    const auto ps = random_momenta(g);
    const Vec3 k = aggregate_axis(ps);
    EXPECT_LT(check_transverse_sum(ps, k), kTol);
    const Frame c = default_canonical_frame(k);
    EXPECT_LT(c.orthonormality_residual(), kTol);
    std::vector<CanonicalAngles> angles;
    for (const auto &p : ps) {
      EXPECT_LT(helicity_frame(p, k).orthonormality_residual(), kTol);
      EXPECT_LT(aggregate_frame(p, k).orthonormality_residual(), kTol);
      angles.push_back(canonical_angles(p, c));
      const double r = angles.back().phi_radians;
      EXPECT_LT(circular_gap(angles.back().phi.radians(), r), 2 * std::numbers::pi * 1e-9);
      EXPECT_GE(r, 0.0);
      EXPECT_LT(r, 2 * std::numbers::pi);
    }
    for (std::size_t i = 0; i < ps.size(); ++i)
      EXPECT_LT(circular_gap(dependent_phi_radians(i, angles), angles[i].phi_radians), kTol);
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j)
        EXPECT_NEAR(pair_azimuth_difference(ps[i], ps[j]), std::numbers::pi, kTol);

    // List order does not matter.
    auto shuffled = ps;
    std::shuffle(shuffled.begin(), shuffled.end(), g.engine());
    const Vec3 k2 = aggregate_axis(shuffled);
    expect_vec_near(k2, k, 1e-12);
    const Frame c2 = default_canonical_frame(k2);
    expect_vec_near(c2.x_axis, c.x_axis, 1e-12);
  }
}

TEST(GeometryProperty, UnitVectors) {
  Gen g(35);
  for (int n = 0; n < 1000; ++n) {
    const Vec3 v = g.unit() * g.real(1e-3, 1e3);
    EXPECT_NEAR(v.normalized().norm(), 1.0, 1e-12);
    const Vec3 d = direction_from_angles(g.real(0, std::numbers::pi),
                                         g.real(0, 2 * std::numbers::pi), kLab);
    EXPECT_NEAR(d.norm(), 1.0, 1e-12);
  }
}
