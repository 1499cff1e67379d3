#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "kt/genus.hpp"
#include "kt/ratfunc.hpp"
#include "kt/square_class.hpp"

namespace kt {

// y^2 = x(x-1)(x-lambda), lambda outside {0,1}.
template <class K>
struct LegendreCurve {
  K lambda;
  explicit LegendreCurve(K l) : lambda(std::move(l)) {
    if (lambda.is_zero() || lambda == lambda.one())
      throw validation_error("LegendreCurve: lambda must avoid {0,1}");
  }
};

// A candidate diagonal rational curve on the Kummer variety of
// E_1 x ... x E_n: Legendre parameters and one nonconstant coordinate map
// per factor, all in a common parameter t.
template <class K>
struct CurveCandidate {
  std::vector<K> lambdas;
  std::vector<RatFunc<K>> maps;

  CurveCandidate(std::vector<K> ls, std::vector<RatFunc<K>> ms)
      : lambdas(std::move(ls)), maps(std::move(ms)) {
    if (lambdas.empty() || lambdas.size() != maps.size())
      throw validation_error("CurveCandidate: need n >= 1 lambdas with matching maps");
    for (const K& l : lambdas)
      if (l.is_zero() || l == l.one())
        throw validation_error("CurveCandidate: lambda must avoid {0,1}");
    for (const auto& r : maps)
      if (r.is_constant())
        throw validation_error("CurveCandidate: coordinate map is constant (candidate not diagonal)");
  }

  std::size_t n() const { return lambdas.size(); }
};

// S(t) = P(P - Q)(P - lambda Q)Q for the reduced pair (P, Q) of R.
// Scaling (P, Q) by c scales S by c^4, so the square class of S does not
// depend on the representative.
template <class K>
Poly<K> build_S(const RatFunc<K>& R, const LegendreCurve<K>& curve) {
  if (R.is_constant()) throw validation_error("build_S: constant coordinate map");
  const Poly<K>& P = R.num();
  const Poly<K>& Q = R.den();
  return P * (P - Q) * (P - Q * curve.lambda) * Q;
}

// What the hyperelliptic preimage of the candidate looks like when all the
// S_i agree modulo squares.
struct Preimage {
  bool split = false;  // two components (class of S_1 trivial)
  long genus = 0;      // genus of z^2 = S_1 when irreducible
};

template <class K>
struct LiftVerdict {
  std::vector<SquareClass<K>> classes;            // class of S_i per factor
  std::vector<std::vector<std::size_t>> partition;  // indices grouped by equal class
  bool strict_ok = false;                         // all pairwise products trivial (m = 0)
  long m = 0;                                     // F_2 rank of {class_1 * class_i}
  long obstruction_genus = 0;                     // genus of the generated multiquadratic extension
  bool excluded = false;                          // obstruction_genus >= 1
  std::optional<Preimage> preimage;               // populated when strict_ok
  std::vector<std::array<std::size_t, 3>> equal_class_triples;
};

template <class K>
LiftVerdict<K> analyze(const CurveCandidate<K>& cand) {
  LiftVerdict<K> out;
  for (std::size_t i = 0; i < cand.n(); ++i)
    out.classes.push_back(class_of(build_S(cand.maps[i], LegendreCurve<K>(cand.lambdas[i]))));

  // Partition the indices by equal class, blocks in order of first sight.
  for (std::size_t i = 0; i < out.classes.size(); ++i) {
    bool placed = false;
    for (auto& block : out.partition) {
      if (out.classes[block[0]] == out.classes[i]) {
        block.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) out.partition.push_back({i});
  }
  out.strict_ok = out.partition.size() == 1;

  // If a curve with these projections lies on the Kummer variety, its
  // function field contains k(t, sqrt(S_1 S_i) for all i); measure that
  // extension.
  std::vector<SquareClass<K>> prods;
  for (std::size_t i = 1; i < out.classes.size(); ++i)
    prods.push_back(class_mul(out.classes[0], out.classes[i]));
  out.m = f2_rank(prods).first;
  out.obstruction_genus = multiquadratic_genus(prods);
  out.excluded = out.obstruction_genus >= 1;

  if (out.strict_ok) {
    Preimage pre;
    if (out.classes[0].is_trivial()) {
      pre.split = true;
    } else {
      const long r = branch_count(std::vector<SquareClass<K>>{out.classes[0]});
      pre.split = false;
      pre.genus = (r - 2) / 2;
    }
    out.preimage = pre;
  }

  for (std::size_t i = 0; i < out.classes.size(); ++i)
    for (std::size_t j = i + 1; j < out.classes.size(); ++j)
      for (std::size_t k = j + 1; k < out.classes.size(); ++k)
        if (out.classes[i] == out.classes[j] && out.classes[j] == out.classes[k])
          out.equal_class_triples.push_back({i, j, k});

  return out;
}

// The two-factor dichotomy: the preimage of the candidate curve under
// E_1 x E_2 -> Kummer surface either splits into two components (S_1 S_2 a
// square) or is one curve, in which case z^2 = S_1 S_2 has genus 0 exactly
// when the product class has two odd-order points.
template <class K>
struct FiberReport {
  int components = 1;
  SquareClass<K> product_class;
  bool genus0 = false;
};

template <class K>
FiberReport<K> kummer_fiber(const CurveCandidate<K>& cand) {
  if (cand.n() != 2) throw validation_error("kummer_fiber: candidate must have exactly two factors");
  SquareClass<K> c1 = class_of(build_S(cand.maps[0], LegendreCurve<K>(cand.lambdas[0])));
  SquareClass<K> c2 = class_of(build_S(cand.maps[1], LegendreCurve<K>(cand.lambdas[1])));
  SquareClass<K> prod = class_mul(c1, c2);
  FiberReport<K> out{prod.is_trivial() ? 2 : 1, prod, false};
  if (out.components == 1) out.genus0 = two_odd_points(prod).exactly_two;
  return out;
}

// If z^2 = D has genus 0, its Jacobian is trivial, so no surjection onto an
// elliptic curve exists and x(x-1)(x-lambda) = D T^2 has no nonconstant
// solution for any lambda.
struct PrecheckResult {
  bool trivial_class = false;  // D a square: S itself would be a square
  bool unsolvable_over_C = false;
  long genus = 0;
};

template <class K>
PrecheckResult solvability_precheck(const SquareClass<K>& D) {
  PrecheckResult out;
  if (D.is_trivial()) {
    out.trivial_class = true;
    return out;
  }
  out.genus = multiquadratic_genus(std::vector<SquareClass<K>>{D});
  out.unsolvable_over_C = out.genus == 0;
  return out;
}

// x-coordinate of point doubling on y^2 = x(x-1)(x-lambda), by the tangent
// construction: x' = (f'(x)/2y)^2 + (1+lambda) - 2x with f = x(x-1)(x-lambda).
// Degree 4, poles exactly at the 2-torsion x-values.
template <class K>
RatFunc<K> duplication_map(const LegendreCurve<K>& curve) {
  const K one = curve.lambda.one();
  const K lam = curve.lambda;
  const Poly<K> t = Poly<K>::monomial(one, 1);
  const Poly<K> f = t * (t - Poly<K>::constant(one)) * (t - Poly<K>::constant(lam));
  const Poly<K> fp = derivative(f);
  const K four = one.from_int(4);
  const Poly<K> num = fp * fp - f * (t * one.from_int(8) - Poly<K>::constant((one + lam) * four));
  return RatFunc<K>(num, f * four);
}

}  // namespace kt
