#pragma once

#include <algorithm>
#include <vector>

#include "kt/poly.hpp"

namespace kt {

// GCD-free basis (factor refinement): a pairwise-coprime, squarefree, monic
// generating set expressing each input multiplicatively.  This substitutes
// for irreducible factorization everywhere valuation parities are needed --
// a basis element of degree k stands for k geometric places sharing one
// valuation vector.
template <class K>
struct CoprimeBasis {
  struct Decomposition {
    K cofactor;                  // constant
    std::vector<long> exponents; // one per basis element
  };
  std::vector<Poly<K>> elements;        // monic, squarefree, pairwise coprime, deg >= 1
  std::vector<Decomposition> inputs;    // input[i] = cofactor * prod elements[j]^exponents[j]
};

template <class K>
CoprimeBasis<K> factor_refine(const std::vector<Poly<K>>& fs) {
  for (const auto& f : fs)
    if (f.is_zero()) throw validation_error("factor_refine: zero input");

  std::vector<Poly<K>> basis;
  const auto insert = [&basis](Poly<K> g) {
    // g monic squarefree; peel shared parts against the current basis,
    // splitting basis elements where the overlap is proper.
    std::size_t i = 0;
    while (i < basis.size() && g.degree() > 0) {
      Poly<K> d = gcd(g, basis[i]);
      if (d.degree() == 0) {
        ++i;
        continue;
      }
      g = exact_div(g, d);
      if (d.degree() == basis[i].degree()) {
        ++i;
        continue;
      }
      Poly<K> rest = exact_div(basis[i], d);
      basis[i] = std::move(d);
      basis.insert(basis.begin() + static_cast<long>(i) + 1, std::move(rest));
      // g is now coprime to both pieces; skip them.
      i += 2;
    }
    if (g.degree() > 0) basis.push_back(std::move(g));
  };

  // Insert the squarefree multiplicity layers, not just the radical: an
  // input like (t-3)^3 (t-4)^2 must split its layers apart or no integer
  // exponent vector over the basis can reproduce it.
  for (const auto& f : fs) {
    if (f.degree() == 0) continue;
    for (const auto& layer : squarefree_decomposition(f).layers)
      if (layer.degree() > 0) insert(layer);
  }

  std::sort(basis.begin(), basis.end(),
            [](const Poly<K>& a, const Poly<K>& b) { return poly_cmp(a, b) < 0; });

  CoprimeBasis<K> out;
  out.elements = basis;
  for (const auto& f : fs) {
    typename CoprimeBasis<K>::Decomposition dec{f.lead(), {}};
    Poly<K> g = f;
    for (const auto& b : out.elements) {
      long e = 0;
      while (true) {
        auto [q, r] = divrem(g, b);
        if (!r.is_zero()) break;
        g = std::move(q);
        ++e;
      }
      dec.exponents.push_back(e);
    }
    if (g.degree() != 0) throw internal_error("factor_refine: basis does not cover an input");
    dec.cofactor = g.lead();
    out.inputs.push_back(std::move(dec));
  }
  return out;
}

}  // namespace kt
