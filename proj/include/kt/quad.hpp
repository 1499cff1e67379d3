#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

#include "kt/errors.hpp"

namespace kt {

inline bool is_squarefree_positive(unsigned long d) {
  if (d == 0) return false;
  for (unsigned long q = 2; q * q <= d; ++q)
    if (d % (q * q) == 0) return false;
  return true;
}

// Element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)), d a positive
// squarefree integer.  d = 1 is allowed and collapses to Q (sqrt(1) -> 1 at
// construction), so tau = i instances stay canonical.  Signs are decided
// exactly: for mixed-sign a, b compare a^2 against b^2 d.
class Quad {
 public:
  Quad(mpq_class a, mpq_class b, unsigned long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (d == 0) throw validation_error("Quad: d must be positive");
    if (a_.get_den() == 0 || b_.get_den() == 0) throw validation_error("Quad: zero denominator");
    a_.canonicalize();
    b_.canonicalize();
    if (d == 1) {
      a_ += b_;
      b_ = 0;
    }
  }
  static Quad rational(mpq_class a, unsigned long d) { return Quad(std::move(a), mpq_class(0), d); }

  const mpq_class& a() const { return a_; }
  const mpq_class& b() const { return b_; }
  unsigned long d() const { return d_; }

  Quad zero() const { return rational(mpq_class(0), d_); }
  Quad one() const { return rational(mpq_class(1), d_); }
  Quad from_int(long n) const { return rational(mpq_class(static_cast<signed long>(n)), d_); }
  unsigned long characteristic() const { return 0; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

  int sign() const {
    const int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // a and b have opposite signs: compare |a| with |b|sqrt(d) exactly.
    mpq_class diff = a_ * a_ - b_ * b_ * static_cast<signed long>(d_);
    const int sd = sgn(diff);
    return sd == 0 ? 0 : (sd > 0 ? sa : sb);
  }

  Quad conj() const { return Quad(a_, -b_, d_); }

  Quad inv() const {
    if (is_zero()) throw validation_error("Quad: division by zero");
    mpq_class n = a_ * a_ - b_ * b_ * static_cast<signed long>(d_);
    if (sgn(n) == 0) throw internal_error("Quad: zero norm for nonzero element (d not squarefree?)");
    return Quad(a_ / n, -b_ / n, d_);
  }

  std::string str() const {
    if (sgn(b_) == 0) return a_.get_str();
    return a_.get_str() + "+" + b_.get_str() + "*sqrt(" + std::to_string(d_) + ")";
  }

  friend Quad operator+(const Quad& x, const Quad& y) {
    x.check_same(y);
    return Quad(x.a_ + y.a_, x.b_ + y.b_, x.d_);
  }
  friend Quad operator-(const Quad& x, const Quad& y) {
    x.check_same(y);
    return Quad(x.a_ - y.a_, x.b_ - y.b_, x.d_);
  }
  friend Quad operator*(const Quad& x, const Quad& y) {
    x.check_same(y);
    return Quad(x.a_ * y.a_ + x.b_ * y.b_ * static_cast<signed long>(x.d_),
                x.a_ * y.b_ + x.b_ * y.a_, x.d_);
  }
  friend Quad operator/(const Quad& x, const Quad& y) { return x * y.inv(); }
  Quad operator-() const { return Quad(-a_, -b_, d_); }

  friend bool operator==(const Quad& x, const Quad& y) {
    x.check_same(y);
    return cmp(x.a_, y.a_) == 0 && cmp(x.b_, y.b_) == 0;
  }
  friend bool operator!=(const Quad& x, const Quad& y) { return !(x == y); }

 private:
  void check_same(const Quad& o) const {
    if (d_ != o.d_) throw validation_error("Quad: mixed fields Q(sqrt(d))");
  }
  mpq_class a_, b_;
  unsigned long d_;
};

inline int field_cmp(const Quad& x, const Quad& y) { return (x - y).sign(); }

}  // namespace kt
