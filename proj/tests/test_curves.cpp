#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "kt/curves.hpp"

using namespace kt;
using th::qfunc;
using th::qpoly;

namespace {

// naive schoolbook expansion used as the independent route for the worked
// fiber-product candidate (kept deliberately separate from Poly arithmetic)
std::vector<long> naive_mul(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

CurveCandidate<Rat> two_factor(long l1, long l2, RatFunc<Rat> r1, RatFunc<Rat> r2) {
  return CurveCandidate<Rat>({Rat(l1), Rat(l2)}, {std::move(r1), std::move(r2)});
}

}  // namespace

TEST_SUITE("kummer") {
  TEST_CASE("legendre validation") {
    CHECK_THROWS_AS(LegendreCurve<Rat>(Rat(0L)), validation_error);
    CHECK_THROWS_AS(LegendreCurve<Rat>(Rat(1L)), validation_error);
    CHECK_THROWS_AS(CurveCandidate<Rat>({Rat(2L)}, {RatFunc<Rat>(qpoly({5}), qpoly({1}))}),
                    validation_error);
  }

  TEST_CASE("build_S") {
    // R = t, lambda = 2 -> t(t-1)(t-2)
    CHECK(build_S(qfunc({0, 1}, {1}), LegendreCurve<Rat>(Rat(2L))) ==
          qpoly({0, 1}) * qpoly({-1, 1}) * qpoly({-2, 1}));
    // R = 1/t, lambda = 2 -> (1-t)(1-2t)t
    CHECK(build_S(qfunc({1}, {0, 1}), LegendreCurve<Rat>(Rat(2L))) ==
          qpoly({1, -1}) * qpoly({1, -2}) * qpoly({0, 1}));
    CHECK_THROWS_AS(build_S(RatFunc<Rat>(qpoly({3}), qpoly({1})), LegendreCurve<Rat>(Rat(2L))),
                    validation_error);
  }

  TEST_CASE("class of S is representative-independent") {
    std::mt19937 rng(11);
    const LegendreCurve<Rat> E(Rat(3L));
    for (int round = 0; round < 20; ++round) {
      const long c = static_cast<long>(rng() % 9) + 1;
      // same reduced map, but build S from a scaled pair by hand
      const Poly<Rat> P = qpoly({1, 2, 1});
      const Poly<Rat> Q = qpoly({-3, 0, 1});
      const Poly<Rat> Pc = P * Rat(c);
      const Poly<Rat> Qc = Q * Rat(c);
      const Poly<Rat> S1 = P * (P - Q) * (P - Q * E.lambda) * Q;
      const Poly<Rat> S2 = Pc * (Pc - Qc) * (Pc - Qc * E.lambda) * Qc;
      CHECK(class_of(S1) == class_of(S2));
    }
  }

  TEST_CASE("analyze: diagonal candidate of E x E (lambda = 4)") {
    auto v = analyze(two_factor(4, 4, qfunc({0, 1}, {1}), qfunc({0, 1}, {1})));
    CHECK(v.strict_ok);
    CHECK(v.m == 0);
    CHECK(v.obstruction_genus == 0);
    CHECK(!v.excluded);
    const Poly<Rat> expected = qpoly({0, 1}) * qpoly({-1, 1}) * qpoly({-4, 1});
    CHECK(v.classes[0].rep() == expected);
    CHECK(v.classes[1].rep() == expected);
    REQUIRE(v.preimage.has_value());
    CHECK(!v.preimage->split);
    CHECK(v.preimage->genus == 1);
  }

  TEST_CASE("analyze: fiber-product candidate lambda=(2,3), R=(2w^2-3)/(w^2-1)") {
    const RatFunc<Rat> R = qfunc({-3, 0, 2}, {-1, 0, 1});
    // independent expansion: S1 = -(2w^2-3)(w^2-2)(w^2-1), S2 = -w^2 * same
    const auto s1_naive = naive_mul(naive_mul({-3, 0, 2}, {-2, 0, 1}), {1, 0, -1});
    const auto s2_naive = naive_mul({0, 0, -1}, naive_mul(naive_mul({-3, 0, 2}, {-2, 0, 1}), {-1, 0, 1}));
    const Poly<Rat> S1 = build_S(R, LegendreCurve<Rat>(Rat(2L)));
    const Poly<Rat> S2 = build_S(R, LegendreCurve<Rat>(Rat(3L)));
    CHECK(S1 == poly_from_ints(Rat(0L), s1_naive));
    CHECK(S2 == poly_from_ints(Rat(0L), s2_naive));
    // frozen values of the hand expansion
    CHECK(S1 == qpoly({6, 0, -13, 0, 9, 0, -2}));
    CHECK(S2 == qpoly({0, 0, 6, 0, -13, 0, 9, 0, -2}));

    auto v = analyze(two_factor(2, 3, R, R));
    CHECK(v.strict_ok);
    CHECK(v.classes[0] == v.classes[1]);
    REQUIRE(v.preimage.has_value());
    CHECK(!v.preimage->split);
    CHECK(v.preimage->genus == 2);
  }

  TEST_CASE("analyze: four cosets of rank 2 give genus 0 and no triple") {
    // classes {1, a, b, ab} with a = t, b = t-1, spread over 7 factors
    const Poly<Rat> t = qpoly({0, 1});
    const Poly<Rat> t1 = qpoly({-1, 1});
    // lambda = 2 with R = x gives class x(x-1)(x-2); pick maps whose classes
    // realize the cosets via direct S-construction instead: fabricate via
    // analyze on explicit maps is overkill here, so check the coset logic on
    // the squareclass layer the way analyze consumes it.
    std::vector<SquareClass<Rat>> classes = {
        SquareClass<Rat>::trivial(Rat(0L)), class_of(t),      class_of(t1), class_of(t * t1),
        SquareClass<Rat>::trivial(Rat(0L)), class_of(t),      class_of(t1)};
    std::vector<SquareClass<Rat>> prods;
    for (std::size_t i = 1; i < classes.size(); ++i) prods.push_back(class_mul(classes[0], classes[i]));
    CHECK(f2_rank(prods).first == 2);
    CHECK(multiquadratic_genus(prods) == 0);
  }

  TEST_CASE("kummer_fiber") {
    // lambda = (2,2), R = t, t: two components
    auto f22 = kummer_fiber(two_factor(2, 2, qfunc({0, 1}, {1}), qfunc({0, 1}, {1})));
    CHECK(f22.components == 2);
    // lambda = (2,3), R = t, t: one component, product class (t-2)(t-3), genus 0
    auto f23 = kummer_fiber(two_factor(2, 3, qfunc({0, 1}, {1}), qfunc({0, 1}, {1})));
    CHECK(f23.components == 1);
    CHECK(f23.product_class.rep() == qpoly({-2, 1}) * qpoly({-3, 1}));
    CHECK(f23.genus0);
    CHECK_THROWS_AS(kummer_fiber(CurveCandidate<Rat>({Rat(2L)}, {qfunc({0, 1}, {1})})),
                    validation_error);
  }

  TEST_CASE("kummer_fiber vs brute-force odd-point count (lambda=(2,5), R1=t, R2=t^2)") {
    auto cand = two_factor(2, 5, qfunc({0, 1}, {1}), qfunc({0, 0, 1}, {1}));
    auto fib = kummer_fiber(cand);
    // oracle: odd places of S1*S2 straight from factor-refined exponents
    const Poly<Rat> S1 = build_S(cand.maps[0], LegendreCurve<Rat>(cand.lambdas[0]));
    const Poly<Rat> S2 = build_S(cand.maps[1], LegendreCurve<Rat>(cand.lambdas[1]));
    auto basis = factor_refine<Rat>({S1 * S2});
    long finite_odd = 0;
    long total_deg = 0;
    for (std::size_t j = 0; j < basis.elements.size(); ++j) {
      if (basis.inputs[0].exponents[j] % 2 == 1) finite_odd += basis.elements[j].degree();
      total_deg += basis.elements[j].degree() * basis.inputs[0].exponents[j];
    }
    const long r = finite_odd + (total_deg % 2);
    CHECK(fib.components == (finite_odd == 0 ? 2 : 1));
    if (fib.components == 1) CHECK(fib.genus0 == (r == 2));
    // frozen: product class t(t-2)(t+1)(t^2-5) has r = 6
    CHECK(fib.components == 1);
    CHECK(!fib.genus0);
    CHECK(fib.product_class.rep() ==
          qpoly({0, 1}) * qpoly({-2, 1}) * qpoly({1, 1}) * qpoly({-5, 0, 1}));
  }

  TEST_CASE("fiber dichotomy is consistent with the obstruction genus (n = 2)") {
    std::mt19937 rng(616);
    for (int round = 0; round < 25; ++round) {
      CurveCandidate<Rat> cand({th::random_lambda(rng), th::random_lambda(rng)},
                               {th::random_map(rng), th::random_map(rng)});
      const auto v = analyze(cand);
      const auto f = kummer_fiber(cand);
      CHECK((f.components == 2) == v.strict_ok);
      if (f.components == 1) CHECK(f.genus0 == (v.obstruction_genus == 0));
      CHECK(v.excluded == (f.components == 1 && !f.genus0));
    }
  }

  TEST_CASE("solvability precheck") {
    auto r1 = solvability_precheck(class_of(qpoly({-1, 1})));
    CHECK(r1.unsolvable_over_C);
    CHECK(!r1.trivial_class);
    CHECK(r1.genus == 0);
    auto r2 = solvability_precheck(class_of(qpoly({0, 1}) * qpoly({-1, 1}) * qpoly({-2, 1})));
    CHECK(!r2.unsolvable_over_C);
    CHECK(r2.genus == 1);
    Poly<Rat> six = qpoly({1});
    for (long a = 1; a <= 6; ++a) six = six * (qpoly({-a, 1}));
    auto r3 = solvability_precheck(class_of(six));
    CHECK(!r3.unsolvable_over_C);
    CHECK(r3.genus == 2);
    auto r4 = solvability_precheck(SquareClass<Rat>::trivial(Rat(0L)));
    CHECK(r4.trivial_class);
    CHECK(!r4.unsolvable_over_C);
  }

  TEST_CASE("duplication map: two derivations agree, degree 4, 2-torsion poles") {
    std::mt19937 rng(300);
    for (int round = 0; round < 8; ++round) {
      const Rat lam = th::random_lambda(rng);
      const LegendreCurve<Rat> E(lam);
      const RatFunc<Rat> dup = duplication_map(E);
      // closed form (t^2 - lambda)^2 / (4 t(t-1)(t-lambda))
      const Poly<Rat> t = qpoly({0, 1});
      const Poly<Rat> num = pow_poly(t * t - Poly<Rat>::constant(lam), 2);
      const Poly<Rat> den = t * (t - qpoly({1})) * (t - Poly<Rat>::constant(lam)) * Rat(4L);
      CHECK(dup == RatFunc<Rat>(num, den));
      CHECK(dup.map_degree() == 4);
      // poles at the 2-torsion x-values 0, 1, lambda
      for (const Rat& x : {Rat(0L), Rat(1L), lam}) {
        CHECK(dup.den().eval(x).is_zero());
        CHECK(!dup.num().eval(x).is_zero());
      }
      // graph of multiplication by 2 is a diagonal curve with equal classes
      auto v = analyze(CurveCandidate<Rat>({lam, lam}, {RatFunc<Rat>(t), dup}));
      CHECK(v.strict_ok);
    }
  }

  TEST_CASE("analyze invariance under common fractional-linear substitution") {
    std::mt19937 rng(1234);
    for (int round = 0; round < 12; ++round) {
      std::vector<Rat> lambdas;
      std::vector<RatFunc<Rat>> maps;
      std::uniform_int_distribution<int> nn(2, 4);
      const int n = nn(rng);
      for (int i = 0; i < n; ++i) {
        lambdas.push_back(th::random_lambda(rng));
        maps.push_back(th::random_map(rng));
      }
      CurveCandidate<Rat> cand(lambdas, maps);
      const auto v = analyze(cand);

      // random Moebius map with ad - bc != 0
      std::uniform_int_distribution<long> coef(-3, 3);
      long a, b, c, d;
      do {
        a = coef(rng);
        b = coef(rng);
        c = coef(rng);
        d = coef(rng);
      } while (a * d - b * c == 0);
      const RatFunc<Rat> moebius(qpoly({b, a}), qpoly({d, c}));
      std::vector<RatFunc<Rat>> moved;
      for (const auto& m : maps) moved.push_back(compose(m, moebius));
      const auto w = analyze(CurveCandidate<Rat>(lambdas, moved));

      CHECK(v.partition == w.partition);
      CHECK(v.strict_ok == w.strict_ok);
      CHECK(v.m == w.m);
      CHECK(v.obstruction_genus == w.obstruction_genus);
      CHECK(v.excluded == w.excluded);
      CHECK(v.strict_ok == (v.m == 0));
      CHECK(v.strict_ok == (v.partition.size() == 1));
    }
  }

  TEST_CASE("strict candidates admit square cofactor witnesses for every pair") {
    std::mt19937 rng(808);
    for (int round = 0; round < 6; ++round) {
      const Rat lam = th::random_lambda(rng);
      const RatFunc<Rat> t = RatFunc<Rat>(qpoly({0, 1}), qpoly({1}));
      CurveCandidate<Rat> cand({lam, lam, lam}, {t, duplication_map(LegendreCurve<Rat>(lam)), t});
      const auto v = analyze(cand);
      REQUIRE(v.strict_ok);
      std::vector<Poly<Rat>> S;
      for (std::size_t i = 0; i < cand.n(); ++i)
        S.push_back(build_S(cand.maps[i], LegendreCurve<Rat>(cand.lambdas[i])));
      for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = i + 1; j < S.size(); ++j) {
          auto w = square_cofactor(S[i] * S[j], SquareClass<Rat>::trivial(Rat(0L)));
          CHECK(Poly<Rat>::constant(w.constant) * w.cofactor * w.cofactor == S[i] * S[j]);
        }
    }
  }

  TEST_CASE("pigeonhole: 7 factors with class multiplicity <= 2 give >= 4 cosets") {
    std::mt19937 rng(4096);
    int kept = 0;
    while (kept < 40) {
      std::vector<Rat> lambdas;
      std::vector<RatFunc<Rat>> maps;
      for (int i = 0; i < 7; ++i) {
        lambdas.push_back(th::random_lambda(rng));
        maps.push_back(th::random_map(rng));
      }
      const auto v = analyze(CurveCandidate<Rat>(lambdas, maps));
      std::size_t maxmult = 0;
      for (const auto& blk : v.partition) maxmult = std::max(maxmult, blk.size());
      if (maxmult > 2) continue;
      ++kept;
      CHECK(v.partition.size() >= 4);
      CHECK(v.equal_class_triples.empty());
    }
  }
}
