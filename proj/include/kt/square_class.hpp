#pragma once

#include <utility>

#include "kt/coprime.hpp"
#include "kt/poly.hpp"
#include "kt/ratfunc.hpp"

namespace kt {

// An element of k(t)^x / k(t)^x2, canonically a monic squarefree polynomial.
// Nonzero constants are trivial classes: the model is C(t), where every
// constant is a square, even when coefficients are stored over Q or F_p for
// exactness.
template <class K>
class SquareClass {
 public:
  static SquareClass trivial(const K& ctx) { return SquareClass(Poly<K>::constant(ctx.one())); }

  const Poly<K>& rep() const { return rep_; }
  bool is_trivial() const { return rep_.degree() == 0; }

  friend bool operator==(const SquareClass& a, const SquareClass& b) { return a.rep_ == b.rep_; }
  friend bool operator!=(const SquareClass& a, const SquareClass& b) { return !(a == b); }

  template <class K2>
  friend SquareClass<K2> class_of(const Poly<K2>&);
  template <class K2>
  friend SquareClass<K2> class_mul(const SquareClass<K2>&, const SquareClass<K2>&);

 private:
  explicit SquareClass(Poly<K> rep) : rep_(std::move(rep)) {}
  Poly<K> rep_;
};

template <class K>
SquareClass<K> class_of(const Poly<K>& f) {
  if (f.is_zero()) throw validation_error("class_of: zero input");
  return SquareClass<K>(odd_part(f));
}

// The class of a rational function P/Q equals the class of P*Q.
template <class K>
SquareClass<K> class_of(const RatFunc<K>& f) {
  if (f.is_zero()) throw validation_error("class_of: zero input");
  return class_of(f.num() * f.den());
}

template <class K>
SquareClass<K> class_mul(const SquareClass<K>& c1, const SquareClass<K>& c2) {
  // Both reps are squarefree, so the product's odd part is (r1/g)(r2/g).
  const Poly<K>& r1 = c1.rep();
  const Poly<K>& r2 = c2.rep();
  Poly<K> g = gcd(r1, r2);
  if (g.degree() == 0) return SquareClass<K>(r1 * r2);
  return SquareClass<K>(exact_div(r1, g) * exact_div(r2, g));
}

// Witness for f = constant * rep(c) * A^2, A monic.  Throws
// class_mismatch_error when class_of(f) != c.
template <class K>
struct SquareCofactor {
  Poly<K> cofactor;  // A
  K constant;
};

template <class K>
SquareCofactor<K> square_cofactor(const Poly<K>& f, const SquareClass<K>& c) {
  if (f.is_zero()) throw validation_error("square_cofactor: zero input");
  auto dec = squarefree_decomposition(f);
  Poly<K> parity = Poly<K>::constant(f.lead().one());
  for (std::size_t i = 0; i < dec.layers.size(); ++i)
    if (i % 2 == 0) parity = parity * dec.layers[i];
  if (!(parity == c.rep()))
    throw class_mismatch_error("square_cofactor: claimed class does not match the polynomial");
  Poly<K> A = Poly<K>::constant(f.lead().one());
  for (std::size_t i = 0; i < dec.layers.size(); ++i) {
    const unsigned long half = (static_cast<unsigned long>(i) + 1) / 2;
    if (half > 0 && dec.layers[i].degree() > 0) A = A * pow_poly(dec.layers[i], half);
  }
  return {std::move(A), dec.lead};
}

}  // namespace kt
