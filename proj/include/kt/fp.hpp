#pragma once

#include <cstdint>
#include <string>

#include "kt/errors.hpp"

namespace kt {

// Is p an odd prime?  Trial division; moduli here are desk-scale.
inline bool is_odd_prime(unsigned long p) {
  if (p < 3 || p % 2 == 0) return false;
  for (unsigned long q = 3; q * q <= p; q += 2)
    if (p % q == 0) return false;
  return true;
}

// Prime field F_p, p an odd prime.  Each element carries its modulus; mixing
// moduli is rejected.  Characteristic 2 is rejected at construction: the
// square-class group degenerates there and the Legendre form does not exist.
class Fp {
 public:
  Fp(long long value, unsigned long p) : p_(p) {
    if (p < 3 || p % 2 == 0) throw validation_error("Fp: modulus must be an odd prime >= 3");
    if (p >= (1ul << 31)) throw validation_error("Fp: modulus too large");
    long long r = value % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    v_ = static_cast<unsigned long>(r);
  }

  unsigned long value() const { return v_; }
  unsigned long modulus() const { return p_; }

  Fp zero() const { return Fp(0, p_); }
  Fp one() const { return Fp(1, p_); }
  Fp from_int(long n) const { return Fp(n, p_); }
  unsigned long characteristic() const { return p_; }

  bool is_zero() const { return v_ == 0; }

  Fp inv() const {
    if (v_ == 0) throw validation_error("Fp: division by zero");
    return pow(p_ - 2);
  }

  Fp pow(unsigned long e) const {
    unsigned long r = 1, b = v_;
    while (e) {
      if (e & 1) r = r * b % p_;
      b = b * b % p_;
      e >>= 1;
    }
    return Fp(static_cast<long long>(r), p_);
  }

  // Euler criterion; zero counts as a square.
  bool is_square() const { return v_ == 0 || pow((p_ - 1) / 2).value() == 1; }

  std::string str() const { return std::to_string(v_); }

  friend Fp operator+(const Fp& a, const Fp& b) {
    a.check_same(b);
    return Fp(static_cast<long long>(a.v_ + b.v_), a.p_);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    a.check_same(b);
    return Fp(static_cast<long long>(a.p_ + a.v_ - b.v_), a.p_);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    a.check_same(b);
    return Fp(static_cast<long long>(a.v_ * b.v_ % a.p_), a.p_);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }
  Fp operator-() const { return Fp(static_cast<long long>(p_ - v_), p_); }

  friend bool operator==(const Fp& a, const Fp& b) {
    a.check_same(b);
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

 private:
  void check_same(const Fp& o) const {
    if (p_ != o.p_) throw validation_error("Fp: mixed moduli");
  }
  unsigned long v_;
  unsigned long p_;
};

inline int field_cmp(const Fp& a, const Fp& b) {
  if (a.modulus() != b.modulus()) throw validation_error("Fp: mixed moduli");
  return a.value() < b.value() ? -1 : (a.value() > b.value() ? 1 : 0);
}

}  // namespace kt
