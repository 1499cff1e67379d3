#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kt/coprime.hpp"
#include "kt/square_class.hpp"

namespace kt {

// Valuation parities of a set of square classes at the places of P^1.
// Finite places are grouped by coprime-basis element (degree k = k geometric
// points with one shared vector); the infinite place's entry for a class is
// deg(rep) mod 2.  r counts branch points of the subgroup the classes
// generate, m is the F_2 rank.
template <class K>
struct BranchProfile {
  std::vector<Poly<K>> places;             // finite: coprime basis elements
  std::vector<std::vector<uint8_t>> rows;  // one row per input class; columns = places, then infinity
  long m = 0;
  long r = 0;
};

namespace detail {

// Rank of a 0/1 matrix over F_2; rows are reduced in place to row echelon.
inline long f2_row_reduce(std::vector<std::vector<uint8_t>>& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  long rank = 0;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
    std::size_t sel = pivot_row;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[pivot_row], rows[sel]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != pivot_row && rows[i][c]) {
        for (std::size_t j = c; j < cols; ++j) rows[i][j] ^= rows[pivot_row][j];
      }
    }
    ++pivot_row;
    ++rank;
  }
  return rank;
}

}  // namespace detail

template <class K>
BranchProfile<K> branch_profile(const std::vector<SquareClass<K>>& cs) {
  BranchProfile<K> out;
  std::vector<Poly<K>> reps;
  reps.reserve(cs.size());
  for (const auto& c : cs) reps.push_back(c.rep());
  if (reps.empty()) return out;

  CoprimeBasis<K> basis = factor_refine(reps);
  out.places = basis.elements;
  const std::size_t cols = basis.elements.size() + 1;  // + infinity
  for (std::size_t i = 0; i < cs.size(); ++i) {
    std::vector<uint8_t> row(cols, 0);
    for (std::size_t j = 0; j < basis.elements.size(); ++j)
      row[j] = static_cast<uint8_t>(basis.inputs[i].exponents[j] & 1);
    row[cols - 1] = static_cast<uint8_t>(cs[i].rep().degree() & 1);
    out.rows.push_back(std::move(row));
  }

  // Branch places of the generated subgroup: reduce to an independent
  // generating set; a place branches iff its column is hit by some generator.
  std::vector<std::vector<uint8_t>> reduced = out.rows;
  out.m = detail::f2_row_reduce(reduced);
  long r = 0;
  for (std::size_t j = 0; j < cols; ++j) {
    bool hit = false;
    for (long i = 0; i < out.m; ++i) hit = hit || reduced[static_cast<std::size_t>(i)][j];
    if (!hit) continue;
    r += (j + 1 == cols) ? 1 : basis.elements[j].degree();
  }
  out.r = r;
  return out;
}

// F_2 rank of the class set (with its profile).
template <class K>
std::pair<long, BranchProfile<K>> f2_rank(const std::vector<SquareClass<K>>& cs) {
  BranchProfile<K> p = branch_profile(cs);
  return {p.m, std::move(p)};
}

// Number of places of P^1 where some nontrivial element of the generated
// subgroup has odd valuation.
template <class K>
long branch_count(const std::vector<SquareClass<K>>& cs) {
  return branch_profile(cs).r;
}

// Genus of the (Z/2Z)^m extension of k(t) generated by the classes, from
// 2g - 2 = 2^m(-2) + 2^(m-1) r with the effective m and r.  m = 0 gives 0.
// For m = 1 this is the hyperelliptic count (r - 2)/2.
template <class K>
long multiquadratic_genus(const std::vector<SquareClass<K>>& cs) {
  BranchProfile<K> p = branch_profile(cs);
  if (p.m == 0) return 0;
  if (p.m > 40) throw validation_error("multiquadratic_genus: rank too large");
  const long long two_m = 1ll << p.m;
  const long long rhs = -2 * two_m + (two_m / 2) * p.r;  // 2g - 2
  if ((rhs + 2) % 2 != 0 || rhs + 2 < 0) throw internal_error("multiquadratic_genus: formula gave a non-genus");
  return static_cast<long>((rhs + 2) / 2);
}

// Lemma-kummer style test: does z^2 = c have exactly two odd-order points?
// The trivial class is reported separately (its "double cover" splits into
// two components, which must not be conflated with genus 0).
struct OddPointReport {
  bool exactly_two = false;
  bool split_cover = false;  // set iff the class is trivial
};

template <class K>
OddPointReport two_odd_points(const SquareClass<K>& c) {
  if (c.is_trivial()) return {false, true};
  return {branch_count(std::vector<SquareClass<K>>{c}) == 2, false};
}

}  // namespace kt
