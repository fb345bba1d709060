#include "permsym/clebsch_gordan.hpp"

#include <cmath>
#include <stdexcept>

namespace permsym {

namespace {

// ‖(J₋)^{j−m}|j, j⟩‖², from ν(j) = 1, ν(m−1) = ν(m)(j+m)(j−m+1).
Rational ladder_norm(int tj, int tm) {
  Rational nu = 1;
  for (int t = tj; t > tm; t -= 2)
    nu *= make_rational(tj + t, 2) * make_rational(tj - t + 2, 2);
  return nu;
}

// J₊|m⟩~ = (j+m+1)(j−m)|m+1⟩~
Rational raise(int tj, int tm) {
  return make_rational(tj + tm + 2, 2) * make_rational(tj - tm, 2);
}

} // namespace

double SignedSqrt::value() const { return sign * std::sqrt(to_double(square)); }

CoupledMultiplet::CoupledMultiplet(HalfInt j1, HalfInt j2, HalfInt J)
    : j1_(j1), j2_(j2), J_(J) {
  const int a = j1.twice(), b = j2.twice(), t = J.twice();
  if (a < 0 || b < 0 || t < std::abs(a - b) || t > a + b || (a + b - t) % 2 != 0)
    throw std::invalid_argument("coupling violates the triangle rule");

  // Highest weight: solve J₊ v = 0 in the M = J subspace by recurrence on m1.
  const int lo = std::max(-a, t - b);
  const int hi = std::min(a, t + b);
  std::map<Key, Rational> top;
  Rational c = 1;
  top[{lo, t - lo}] = c;
  for (int mu = lo + 2; mu <= hi; mu += 2) {
    c = -c * raise(a, mu - 2) / raise(b, t - mu);
    top[{mu, t - mu}] = c;
  }
  // Condon–Shortley: ⟨j1 j1; j2 J−j1 | J J⟩ > 0.
  if (top.rbegin()->second < 0)
    for (auto &[k, v] : top)
      v = -v;

  // Residual of J₊ on the highest weight.
  std::map<Key, Rational> raised;
  for (const auto &[k, v] : top) {
    if (k.first < a)
      raised[{k.first + 2, k.second}] += v * raise(a, k.first);
    if (k.second < b)
      raised[{k.first, k.second + 2}] += v * raise(b, k.second);
  }
  for (const auto &[k, v] : raised)
    residual_ = std::max(residual_, v < 0 ? Rational(-v) : v);

  ladder_[t] = std::move(top);
  for (int M = t; M > -t; M -= 2) {
    std::map<Key, Rational> next;
    for (const auto &[k, v] : ladder_[M]) {
      if (k.first > -a)
        next[{k.first - 2, k.second}] += v;
      if (k.second > -b)
        next[{k.first, k.second - 2}] += v;
    }
    ladder_[M - 2] = std::move(next);
  }
}

SignedSqrt CoupledMultiplet::coefficient(HalfInt m1, HalfInt m2) const {
  const int M = m1.twice() + m2.twice();
  auto level = ladder_.find(M);
  if (level == ladder_.end())
    return {};
  auto it = level->second.find({m1.twice(), m2.twice()});
  if (it == level->second.end() || it->second == 0)
    return {};
  Rational norm = 0;
  for (const auto &[k, v] : level->second)
    norm += v * v * ladder_norm(j1_.twice(), k.first) * ladder_norm(j2_.twice(), k.second);
  const Rational &v = it->second;
  SignedSqrt out;
  out.sign = v < 0 ? -1 : 1;
  out.square = v * v * ladder_norm(j1_.twice(), m1.twice()) *
               ladder_norm(j2_.twice(), m2.twice()) / norm;
  return out;
}

Rational CoupledMultiplet::raising_residual() const { return residual_; }

SignedSqrt clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                          HalfInt J, HalfInt M) {
  if (m1.twice() + m2.twice() != M.twice())
    return {};
  if (!is_valid_projection(j1, m1) || !is_valid_projection(j2, m2) ||
      !is_valid_projection(J, M))
    return {};
  const int a = j1.twice(), b = j2.twice(), t = J.twice();
  if (t < std::abs(a - b) || t > a + b || (a + b - t) % 2 != 0)
    return {};
  return CoupledMultiplet(j1, j2, J).coefficient(m1, m2);
}

int pair_exchange_symmetry(HalfInt j, HalfInt J) {
  const CoupledMultiplet mult(j, j, J);
  int eps = 0;
  for (int t1 = -j.twice(); t1 <= j.twice(); t1 += 2) {
    for (int t2 = -j.twice(); t2 <= j.twice(); t2 += 2) {
      const auto fwd = mult.coefficient(HalfInt::from_twice(t1), HalfInt::from_twice(t2));
      const auto rev = mult.coefficient(HalfInt::from_twice(t2), HalfInt::from_twice(t1));
      if (fwd.square != rev.square)
        throw std::logic_error("coupled state is not an exchange eigenstate");
      if (fwd.sign == 0)
        continue;
      const int e = fwd.sign * rev.sign;
      if (eps != 0 && e != eps)
        throw std::logic_error("coupled state has mixed exchange symmetry");
      eps = e;
    }
  }
  if (eps == 0)
    throw std::logic_error("empty coupled multiplet");
  return eps;
}

} // namespace permsym
