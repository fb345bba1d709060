#pragma once

#include "permsym/exactphase.hpp"
#include "permsym/rational.hpp"

#include <map>
#include <utility>

namespace permsym {

/// sign·√square, exact.
struct SignedSqrt {
  int sign = 0;
  Rational square = 0;

  double value() const;
  friend bool operator==(const SignedSqrt &, const SignedSqrt &) = default;
};

/// Coupled state |J, M⟩ of spins j1 ⊗ j2, expanded over the unnormalized
/// ladder kets |m⟩~ = (J₋)^{j−m}|j, j⟩ of each factor. In that basis both
/// ladder operators have rational matrix elements, so the whole
/// construction is exact.
class CoupledMultiplet {
public:
  /// Highest weight from ker J₊, then repeated J₋. Condon–Shortley phase.
  CoupledMultiplet(HalfInt j1, HalfInt j2, HalfInt J);

  HalfInt j1() const { return j1_; }
  HalfInt j2() const { return j2_; }
  HalfInt total() const { return J_; }

  /// ⟨j1 m1; j2 m2 | J M⟩ with M = m1 + m2; zero outside the multiplet.
  SignedSqrt coefficient(HalfInt m1, HalfInt m2) const;

  /// Largest |J₊|J,J⟩| component; 0 confirms the highest weight.
  Rational raising_residual() const;

private:
  using Key = std::pair<int, int>; // (2 m1, 2 m2)
  HalfInt j1_, j2_, J_;
  // Keyed by 2M, then ladder-basis coefficients.
  std::map<int, std::map<Key, Rational>> ladder_;
  Rational residual_ = 0;
};

SignedSqrt clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                          HalfInt J, HalfInt M);

/// ε with C(j,j,J; m1,m2) = ε·C(j,j,J; m2,m1) for every m1, m2, read off the
/// coupled states. Throws std::logic_error if no single ε fits.
int pair_exchange_symmetry(HalfInt j, HalfInt J);

} // namespace permsym
