#pragma once

#include <algorithm>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "kt/errors.hpp"
#include "kt/rat.hpp"

namespace kt {

// Dense univariate polynomial over an exact field K.  Coefficients are
// stored constant term first; the canonical form has no trailing zeros, so
// the zero polynomial is the empty vector (degree -1).
//
// K must provide exact +,-,*,/, unary -, ==, is_zero(), inv(), and the
// context-preserving constants zero()/one()/from_int(n), plus
// characteristic().  Generic code never default-constructs a K.
template <class K>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(const K& x) {
    if (x.is_zero()) return Poly();
    return Poly(std::vector<K>{x});
  }
  static Poly monomial(const K& coeff, std::size_t deg) {
    if (coeff.is_zero()) return Poly();
    std::vector<K> c(deg + 1, coeff.zero());
    c[deg] = coeff;
    return Poly(std::move(c));
  }

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  const std::vector<K>& coeffs() const { return c_; }
  const K& operator[](std::size_t i) const { return c_.at(i); }
  const K& lead() const {
    if (c_.empty()) throw internal_error("Poly: leading coefficient of zero");
    return c_.back();
  }

  K eval(const K& x) const {
    if (c_.empty()) return x.zero();
    K acc = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const K z = a.c_[0].zero();
    std::vector<K> out;
    const std::size_t n = std::max(a.c_.size(), b.c_.size());
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const K& x = i < a.c_.size() ? a.c_[i] : z;
      const K& y = i < b.c_.size() ? b.c_[i] : z;
      out.push_back(x + y);
    }
    return Poly(std::move(out));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  Poly operator-() const {
    std::vector<K> out;
    out.reserve(c_.size());
    for (const K& x : c_) out.push_back(-x);
    return Poly(std::move(out));
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    const K z = a.c_[0].zero();
    std::vector<K> out(a.c_.size() + b.c_.size() - 1, z);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] = out[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(out));
  }
  friend Poly operator*(const Poly& a, const K& s) {
    if (s.is_zero()) return Poly();
    std::vector<K> out;
    out.reserve(a.c_.size());
    for (const K& x : a.c_) out.push_back(x * s);
    return Poly(std::move(out));
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<K> c_;
};

template <class K>
Poly<K> poly_from_ints(const K& ctx, const std::vector<long>& coeffs) {
  std::vector<K> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.push_back(ctx.from_int(v));
  return Poly<K>(std::move(c));
}

// Total order used for canonical sorting: by degree, then coefficients from
// the top down.
template <class K>
int poly_cmp(const Poly<K>& a, const Poly<K>& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (long i = a.degree(); i >= 0; --i) {
    int c = field_cmp(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)]);
    if (c != 0) return c;
  }
  return 0;
}

template <class K>
K field_pow(const K& base, unsigned long e) {
  K r = base.one();
  K b = base;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

template <class K>
Poly<K> pow_poly(const Poly<K>& f, unsigned long e) {
  if (e == 0) {
    if (f.is_zero()) throw validation_error("pow_poly: 0^0");
    return Poly<K>::constant(f.lead().one());
  }
  Poly<K> r = f;
  for (unsigned long i = 1; i < e; ++i) r = r * f;
  return r;
}

template <class K>
Poly<K> derivative(const Poly<K>& f) {
  if (f.degree() < 1) return Poly<K>();
  std::vector<K> out;
  out.reserve(static_cast<std::size_t>(f.degree()));
  for (long i = 1; i <= f.degree(); ++i) {
    const K& c = f[static_cast<std::size_t>(i)];
    out.push_back(c * c.from_int(i));
  }
  return Poly<K>(std::move(out));
}

template <class K>
Poly<K> monic(const Poly<K>& f) {
  if (f.is_zero()) throw validation_error("monic: zero polynomial");
  if (f.lead() == f.lead().one()) return f;
  return f * f.lead().inv();
}

// Quotient and remainder; the divisor must be nonzero.
template <class K>
std::pair<Poly<K>, Poly<K>> divrem(const Poly<K>& a, const Poly<K>& b) {
  if (b.is_zero()) throw validation_error("divrem: division by zero polynomial");
  if (a.degree() < b.degree()) return {Poly<K>(), a};
  const K z = b.lead().zero();
  const K binv = b.lead().inv();
  std::vector<K> r(a.coeffs());
  std::vector<K> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), z);
  const long db = b.degree();
  for (long d = a.degree(); d >= db; --d) {
    K c = r[static_cast<std::size_t>(d)];
    if (c.is_zero()) continue;
    K f = c * binv;
    q[static_cast<std::size_t>(d - db)] = f;
    for (long j = 0; j <= db; ++j)
      r[static_cast<std::size_t>(d - db + j)] =
          r[static_cast<std::size_t>(d - db + j)] - b[static_cast<std::size_t>(j)] * f;
  }
  return {Poly<K>(std::move(q)), Poly<K>(std::move(r))};
}

template <class K>
Poly<K> exact_div(const Poly<K>& a, const Poly<K>& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) throw internal_error("exact_div: division is not exact");
  return q;
}

namespace detail {

// Integer-polynomial layer behind the Q specializations of gcd/resultant.
// Primitive pseudo-remainder sequences keep intermediate sizes tame where
// naive Euclid over Q explodes.
using ZPoly = std::vector<mpz_class>;  // constant first, trimmed

inline void ztrim(ZPoly& f) {
  while (!f.empty() && sgn(f.back()) == 0) f.pop_back();
}
inline long zdeg(const ZPoly& f) { return static_cast<long>(f.size()) - 1; }

inline mpz_class zcontent(const ZPoly& f) {
  mpz_class g = 0;
  for (const auto& c : f) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;  // nonnegative
}

inline void zdiv_scalar(ZPoly& f, const mpz_class& s) {
  for (auto& c : f) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), s.get_mpz_t());
    c = q;
  }
}

// lc(B)^(deg A - deg B + 1) * A mod B, with the scaling applied on every
// step so the exponent is exact even when a top coefficient cancels early.
inline ZPoly zprem(const ZPoly& A, const ZPoly& B) {
  const long dA = zdeg(A), dB = zdeg(B);
  const mpz_class& l = B.back();
  ZPoly R = A;
  for (long k = dA; k >= dB; --k) {
    mpz_class c = R[static_cast<std::size_t>(k)];
    for (long i = 0; i < k; ++i) R[static_cast<std::size_t>(i)] *= l;
    R[static_cast<std::size_t>(k)] = 0;
    if (sgn(c) != 0)
      for (long j = 0; j < dB; ++j)
        R[static_cast<std::size_t>(k - dB + j)] -= c * B[static_cast<std::size_t>(j)];
  }
  ztrim(R);
  return R;
}

inline void zmake_primitive(ZPoly& f) {
  if (f.empty()) return;
  mpz_class c = zcontent(f);
  if (sgn(f.back()) < 0) c = -c;
  zdiv_scalar(f, c);
}

inline ZPoly zgcd_primitive(ZPoly A, ZPoly B) {
  zmake_primitive(A);
  zmake_primitive(B);
  if (zdeg(A) < zdeg(B)) std::swap(A, B);
  while (true) {
    if (B.empty()) return A;
    if (zdeg(B) == 0) return ZPoly{mpz_class(1)};
    ZPoly R = zprem(A, B);
    zmake_primitive(R);
    A = std::move(B);
    B = std::move(R);
  }
}

inline mpq_class mpq_pow_si(const mpz_class& base, long e) {
  mpz_class p;
  mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  mpq_class q = (e < 0) ? mpq_class(mpz_class(1), p) : mpq_class(p);
  q.canonicalize();
  return q;
}

// Resultant of integer polynomials under the convention
// Res(a,b) = lc(a)^deg(b) * prod b(alpha) over the roots of a.
// Primitive PRS with exact rational bookkeeping of the stripped factors.
inline mpq_class zresultant(ZPoly A, ZPoly B) {
  mpq_class acc(1);
  int sign = 1;
  while (true) {
    const long m = zdeg(A), n = zdeg(B);
    if (n == 0) return acc * mpq_pow_si(B[0], m) * sign;
    if (m == 0) return acc * mpq_pow_si(A[0], n) * sign;
    if (m < n) {
      std::swap(A, B);
      if ((m & 1) && (n & 1)) sign = -sign;
      continue;
    }
    const long e = m - n + 1;
    const mpz_class l = B.back();
    ZPoly R = zprem(A, B);
    if (R.empty()) return mpq_class(0);
    mpz_class c = zcontent(R);
    zdiv_scalar(R, c);
    const long dR = zdeg(R);
    if ((m & 1) && (n & 1)) sign = -sign;
    acc *= mpq_pow_si(l, m - dR - e * n);
    acc *= mpq_pow_si(c, n);
    A = std::move(B);
    B = std::move(R);
  }
}

// f = content * F with F primitive (positive leading coefficient).
inline std::pair<mpq_class, ZPoly> rat_primitive(const Poly<Rat>& f) {
  mpz_class den(1);
  for (const Rat& c : f.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.value().get_den().get_mpz_t());
  ZPoly F;
  F.reserve(f.coeffs().size());
  for (const Rat& c : f.coeffs()) {
    mpq_class scaled = c.value() * den;
    F.push_back(scaled.get_num());  // denominator is 1 after scaling
  }
  mpz_class cont = zcontent(F);
  if (sgn(F.back()) < 0) cont = -cont;
  zdiv_scalar(F, cont);
  mpq_class content(cont, den);
  content.canonicalize();
  return {content, F};
}

inline Poly<Rat> zpoly_to_rat(const ZPoly& f) {
  std::vector<Rat> c;
  c.reserve(f.size());
  for (const auto& x : f) c.push_back(Rat(mpq_class(x)));
  return Poly<Rat>(std::move(c));
}

}  // namespace detail

// Monic greatest common divisor.  Rejects the all-zero input.
template <class K>
Poly<K> gcd(const Poly<K>& a, const Poly<K>& b) {
  if (a.is_zero() && b.is_zero()) throw validation_error("gcd: both inputs are zero");
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if constexpr (std::is_same_v<K, Rat>) {
    auto [ca, A] = detail::rat_primitive(a);
    auto [cb, B] = detail::rat_primitive(b);
    (void)ca;
    (void)cb;
    return monic(detail::zpoly_to_rat(detail::zgcd_primitive(std::move(A), std::move(B))));
  } else {
    Poly<K> x = a, y = b;
    while (!y.is_zero()) {
      auto [q, r] = divrem(x, y);
      (void)q;
      x = std::move(y);
      y = r.is_zero() ? r : monic(r);
    }
    return monic(x);
  }
}

// Res(a,b) = lc(a)^deg(b) * prod_{a(alpha)=0} b(alpha); both inputs nonzero.
template <class K>
K resultant(const Poly<K>& a, const Poly<K>& b) {
  if (a.is_zero() || b.is_zero()) throw validation_error("resultant: zero input");
  if constexpr (std::is_same_v<K, Rat>) {
    auto [ca, A] = detail::rat_primitive(a);
    auto [cb, B] = detail::rat_primitive(b);
    mpq_class r = detail::zresultant(std::move(A), std::move(B));
    mpz_class can = ca.get_num(), cad = ca.get_den();
    mpq_class scale = detail::mpq_pow_si(can, b.degree()) / detail::mpq_pow_si(cad, b.degree());
    scale *= detail::mpq_pow_si(cb.get_num(), a.degree()) /
             detail::mpq_pow_si(cb.get_den(), a.degree());
    return Rat(mpq_class(r * scale));
  } else {
    Poly<K> A = a, B = b;
    K acc = a.lead().one();
    while (true) {
      const long m = A.degree(), n = B.degree();
      if (n == 0) return acc * field_pow(B.lead(), static_cast<unsigned long>(m));
      if (m == 0) return acc * field_pow(A.lead(), static_cast<unsigned long>(n));
      if (m < n) {
        std::swap(A, B);
        if ((m & 1) && (n & 1)) acc = -acc;
        continue;
      }
      auto [q, r] = divrem(A, B);
      (void)q;
      if (r.is_zero()) return acc.zero();
      if ((m & 1) && (n & 1)) acc = -acc;
      acc = acc * field_pow(B.lead(), static_cast<unsigned long>(m - r.degree()));
      A = std::move(B);
      B = std::move(r);
    }
  }
}

// p-th root of f = g(t^p) over F_p (Frobenius fixes the prime field, so
// coefficients carry over unchanged).
template <class K>
Poly<K> pth_root(const Poly<K>& f) {
  if (f.is_zero()) throw internal_error("pth_root: zero polynomial");
  const unsigned long p = f.lead().characteristic();
  if (p == 0) throw internal_error("pth_root: characteristic-zero field");
  std::vector<K> out;
  for (long i = 0; i <= f.degree(); ++i) {
    const K& c = f[static_cast<std::size_t>(i)];
    if (i % static_cast<long>(p) == 0)
      out.push_back(c);
    else if (!c.is_zero())
      throw internal_error("pth_root: polynomial is not of the form g(t^p)");
  }
  return Poly<K>(std::move(out));
}

// Radical: the monic product of the distinct irreducible factors.
// In characteristic p the derivative-zero layers f = g(t^p) are peeled by
// p-th-root recursion, and factors whose multiplicity is divisible by p are
// recovered from the gcd after stripping the rest.
template <class K>
Poly<K> squarefree_part(const Poly<K>& f) {
  if (f.is_zero()) throw validation_error("squarefree_part: zero polynomial");
  if (f.degree() == 0) return Poly<K>::constant(f.lead().one());
  Poly<K> fm = monic(f);
  Poly<K> d = derivative(fm);
  if (d.is_zero()) return squarefree_part(pth_root(fm));
  Poly<K> g = gcd(fm, d);
  Poly<K> v = exact_div(fm, g);
  if (f.lead().characteristic() == 0) return v;
  Poly<K> c = g;
  while (true) {
    Poly<K> h = gcd(c, v);
    if (h.degree() == 0) break;
    c = exact_div(c, h);
  }
  if (c.degree() == 0) return v;
  return v * squarefree_part(pth_root(c));
}

// f = lead * prod layers[i]^(i+1), layers monic squarefree and pairwise
// coprime (entries may be 1).  Valid in any odd characteristic.
template <class K>
struct SquarefreeDecomposition {
  K lead;
  std::vector<Poly<K>> layers;
};

template <class K>
SquarefreeDecomposition<K> squarefree_decomposition(const Poly<K>& f) {
  if (f.is_zero()) throw validation_error("squarefree_decomposition: zero polynomial");
  SquarefreeDecomposition<K> out{f.lead(), {}};
  Poly<K> g = monic(f);
  std::vector<Poly<K>> rads;
  while (g.degree() > 0) {
    Poly<K> r = squarefree_part(g);
    g = exact_div(g, r);
    rads.push_back(std::move(r));
  }
  const Poly<K> one = Poly<K>::constant(f.lead().one());
  for (std::size_t i = 0; i < rads.size(); ++i) {
    const Poly<K>& next = (i + 1 < rads.size()) ? rads[i + 1] : one;
    out.layers.push_back(exact_div(rads[i], next));
  }
  return out;
}

// The odd-multiplicity part: the canonical squarefree representative of f
// modulo squares (constants dropped).
template <class K>
Poly<K> odd_part(const Poly<K>& f) {
  auto dec = squarefree_decomposition(f);
  Poly<K> out = Poly<K>::constant(f.lead().one());
  for (std::size_t i = 0; i < dec.layers.size(); ++i)
    if (i % 2 == 0) out = out * dec.layers[i];
  return out;
}

template <class K>
std::string poly_str(const Poly<K>& f, const std::string& var = "t") {
  if (f.is_zero()) return "0";
  std::string out;
  for (long i = f.degree(); i >= 0; --i) {
    const K& c = f[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    std::string mag = neg ? cs.substr(1) : cs;
    std::string term;
    if (i == 0)
      term = mag;
    else {
      std::string v = (i == 1) ? var : var + "^" + std::to_string(i);
      term = (mag == "1") ? v : mag + "*" + v;
    }
    if (out.empty())
      out = (neg ? "-" : "") + term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out;
}

}  // namespace kt
