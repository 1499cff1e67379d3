#pragma once

#include <utility>

#include "kt/poly.hpp"

namespace kt {

// Reduced rational function num/den: gcd(num, den) = 1 and den monic.
// Equality of reduced forms is the equality of values, so this is a normal
// form for field arithmetic in K(t).
template <class K>
class RatFunc {
 public:
  RatFunc(Poly<K> num, Poly<K> den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }
  explicit RatFunc(Poly<K> num) : num_(std::move(num)), den_() {
    if (num_.is_zero()) throw validation_error("RatFunc: cannot infer field from 0/1; give a denominator");
    den_ = Poly<K>::constant(num_.lead().one());
  }
  static RatFunc constant(const K& x) { return RatFunc(Poly<K>::constant(x), Poly<K>::constant(x.one())); }

  const Poly<K>& num() const { return num_; }
  const Poly<K>& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  long map_degree() const { return std::max(num_.degree(), den_.degree()); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw validation_error("RatFunc: division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc operator-() const { return RatFunc(-num_, den_); }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

 private:
  void reduce() {
    if (den_.is_zero()) throw validation_error("RatFunc: zero denominator");
    if (num_.is_zero()) {
      den_ = Poly<K>::constant(den_.lead().one());
      return;
    }
    Poly<K> g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
    const K lc = den_.lead();
    if (!(lc == lc.one())) {
      const K inv = lc.inv();
      num_ = num_ * inv;
      den_ = den_ * inv;
    }
  }

  Poly<K> num_, den_;
};

// sum_i f_i U^i V^(n-i) for n >= deg f; the numerator/denominator of f(U/V)
// after clearing V^n.
template <class K>
Poly<K> eval_homogenized(const Poly<K>& f, const Poly<K>& U, const Poly<K>& V, long n) {
  if (f.is_zero()) return Poly<K>();
  const K one = f.lead().one();
  Poly<K> acc;
  // running powers: U^i built up, V^(n-i) built down via a precomputed table
  std::vector<Poly<K>> vpow;
  vpow.push_back(Poly<K>::constant(one));
  for (long i = 1; i <= n; ++i) vpow.push_back(vpow.back() * V);
  Poly<K> upow = Poly<K>::constant(one);
  for (long i = 0; i <= f.degree(); ++i) {
    acc = acc + upow * vpow[static_cast<std::size_t>(n - i)] * f[static_cast<std::size_t>(i)];
    if (i < f.degree()) upow = upow * U;
  }
  return acc;
}

// R(s): substitute the rational function s into R.
template <class K>
RatFunc<K> compose(const RatFunc<K>& R, const RatFunc<K>& s) {
  const long n = R.map_degree();
  if (n <= 0) return R;
  Poly<K> num = eval_homogenized(R.num(), s.num(), s.den(), n);
  Poly<K> den = eval_homogenized(R.den(), s.num(), s.den(), n);
  return RatFunc<K>(std::move(num), std::move(den));
}

}  // namespace kt
