#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "kt/curves.hpp"
#include "kt/fp.hpp"
#include "kt/genus.hpp"
#include "kt/poly.hpp"
#include "kt/rat.hpp"
#include "kt/ratfunc.hpp"

namespace th {

inline kt::Poly<kt::Rat> qpoly(std::initializer_list<long> c) {
  return kt::poly_from_ints(kt::Rat(0L), std::vector<long>(c));
}

inline kt::Poly<kt::Fp> fpoly(unsigned long p, std::initializer_list<long> c) {
  return kt::poly_from_ints(kt::Fp(0, p), std::vector<long>(c));
}

inline kt::RatFunc<kt::Rat> qfunc(std::initializer_list<long> num, std::initializer_list<long> den) {
  return kt::RatFunc<kt::Rat>(qpoly(num), qpoly(den));
}

// random monic squarefree-ish building blocks: t - a and t^2 + b
template <class K>
kt::Poly<K> random_block(std::mt19937& rng, const K& ctx) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<long> val(-4, 4);
  if (kind(rng) < 3) {
    std::vector<K> c{ctx.from_int(val(rng)), ctx.one()};
    return kt::Poly<K>(std::move(c));
  }
  std::vector<K> c{ctx.from_int(val(rng)), ctx.from_int(val(rng)), ctx.one()};
  return kt::Poly<K>(std::move(c));
}

template <class K>
kt::Poly<K> random_poly(std::mt19937& rng, const K& ctx, long maxdeg) {
  std::uniform_int_distribution<long> dd(0, maxdeg);
  std::uniform_int_distribution<long> val(-5, 5);
  const long d = dd(rng);
  std::vector<K> c;
  for (long i = 0; i <= d; ++i) c.push_back(ctx.from_int(val(rng)));
  kt::Poly<K> f(std::move(c));
  if (f.is_zero()) return kt::Poly<K>::constant(ctx.one());
  return f;
}

// Independent oracle for the multiquadratic genus: sum of hyperelliptic
// genera (r - 2)/2 over the 2^m - 1 nontrivial products, with each r taken
// from degree parities of the product's odd part alone.  Returns -1 when
// the classes are not independent (some product is trivial).
inline long subcover_genus_sum(const std::vector<kt::Poly<kt::Rat>>& reps) {
  const std::size_t m = reps.size();
  long total = 0;
  for (std::size_t mask = 1; mask < (1u << m); ++mask) {
    kt::Poly<kt::Rat> prod = kt::Poly<kt::Rat>::constant(kt::Rat(1L));
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) prod = prod * reps[i];
    const kt::Poly<kt::Rat> u = kt::odd_part(prod);
    if (u.degree() == 0) return -1;
    const long r = u.degree() + (u.degree() % 2);
    total += (r - 2) / 2;
  }
  return total;
}

// random candidate map of degree <= 2 (nonconstant), with a nonzero denominator
inline kt::RatFunc<kt::Rat> random_map(std::mt19937& rng) {
  while (true) {
    kt::Poly<kt::Rat> num = random_poly(rng, kt::Rat(0L), 2);
    kt::Poly<kt::Rat> den = random_poly(rng, kt::Rat(0L), 1);
    if (num.is_zero() || den.is_zero()) continue;
    kt::RatFunc<kt::Rat> r(num, den);
    if (!r.is_constant()) return r;
  }
}

inline kt::Rat random_lambda(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 4);
  while (true) {
    kt::Rat l(num(rng), den(rng));
    if (!l.is_zero() && l != kt::Rat(1L)) return l;
  }
}

}  // namespace th
