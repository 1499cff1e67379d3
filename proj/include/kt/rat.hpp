#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

#include "kt/errors.hpp"

namespace kt {

// Arbitrary-precision rational, the characteristic-zero coefficient field.
// Thin value wrapper over mpq_class so that all fields expose the same
// interface (zero/one/from_int carry the field context, which is trivial
// here but matters for Fp and Quad).
class Rat {
 public:
  Rat() : v_(0) {}
  explicit Rat(long n) : v_(static_cast<signed long>(n)) {}
  Rat(long num, long den) {
    if (den == 0) throw validation_error("Rat: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  // Accepts "a" or "a/b" with optional leading sign, exact decimal digits.
  static Rat parse(const std::string& s);

  Rat zero() const { return Rat(0L); }
  Rat one() const { return Rat(1L); }
  Rat from_int(long n) const { return Rat(n); }
  unsigned long characteristic() const { return 0; }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }

  Rat inv() const {
    if (is_zero()) throw validation_error("Rat: division by zero");
    return Rat(mpq_class(1) / v_);
  }

  const mpq_class& value() const { return v_; }
  std::string str() const { return v_.get_str(); }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw validation_error("Rat: division by zero");
    return Rat(mpq_class(a.v_ / b.v_));
  }
  Rat operator-() const { return Rat(mpq_class(-v_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }

 private:
  mpq_class v_;
};

inline int field_cmp(const Rat& a, const Rat& b) { return cmp(a.value(), b.value()); }

inline Rat Rat::parse(const std::string& s) {
  const auto bad = [&]() { throw validation_error("not an exact rational: \"" + s + "\""); };
  const auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  std::string num = (slash == std::string::npos) ? s : s.substr(0, slash);
  std::string den = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
  if (!is_int(num) || !is_int(den)) bad();
  mpz_class n(num), d(den);
  if (d == 0) throw validation_error("zero denominator in \"" + s + "\"");
  mpq_class q(n, d);
  q.canonicalize();
  return Rat(std::move(q));
}

}  // namespace kt
