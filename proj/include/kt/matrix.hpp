#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "kt/errors.hpp"

namespace kt {

// Small dense matrix with value semantics.  T is an exact scalar
// (mpz_class, mpq_class, or a field type with the usual operators).
template <class T>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : r_(rows), c_(cols), a_(rows * cols, fill) {}

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }

  T& at(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  Matrix transposed() const {
    if (a_.empty()) throw internal_error("Matrix: empty");
    Matrix out(c_, r_, a_[0]);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) out.at(j, i) = at(i, j);
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw internal_error("Matrix: dimension mismatch in product");
    if (a.a_.empty() || b.a_.empty()) throw internal_error("Matrix: empty");
    Matrix out(a.r_, b.c_, a.a_[0] - a.a_[0]);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const T& s = a.at(i, k);
        for (std::size_t j = 0; j < b.c_; ++j) out.at(i, j) = out.at(i, j) + s * b.at(k, j);
      }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

 private:
  std::size_t r_, c_;
  std::vector<T> a_;
};

// Exact determinant by fraction-free (Bareiss) elimination.
inline mpz_class det_bareiss(Matrix<mpz_class> m) {
  if (m.rows() != m.cols()) throw internal_error("det_bareiss: square matrix required");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  mpz_class prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m.at(k, k)) == 0) {
      std::size_t s = k + 1;
      while (s < n && sgn(m.at(s, k)) == 0) ++s;
      if (s == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(s, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
        m.at(i, j) = q;
      }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

// Inertia of an exact symmetric matrix via pivoted LDL^T: 1x1 pivots on a
// nonzero diagonal entry, and a hyperbolic 2x2 pivot (contributing one
// positive and one negative eigenvalue) when the active diagonal is all
// zero.  Leading-minor Sylvester tests would fail on accidental zero minors;
// this never does.  K needs exact arithmetic and sign().
template <class K>
struct Inertia {
  long n_plus = 0;
  long n_minus = 0;
  long rank = 0;
  std::vector<K> pivots;  // the 1x1 pivots, in elimination order
};

template <class K>
Inertia<K> symmetric_inertia(Matrix<K> a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw internal_error("symmetric_inertia: square matrix required");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(a.at(i, j) == a.at(j, i)))
        throw internal_error("symmetric_inertia: matrix is not symmetric");

  Inertia<K> out;
  std::vector<std::size_t> act(n);
  for (std::size_t i = 0; i < n; ++i) act[i] = i;

  while (!act.empty()) {
    // 1x1 pivot on the first nonzero active diagonal entry.
    std::size_t piv = act.size();
    for (std::size_t i = 0; i < act.size(); ++i)
      if (!a.at(act[i], act[i]).is_zero()) {
        piv = i;
        break;
      }
    if (piv < act.size()) {
      const std::size_t k = act[piv];
      const K d = a.at(k, k);
      out.pivots.push_back(d);
      if (d.sign() > 0)
        ++out.n_plus;
      else
        ++out.n_minus;
      ++out.rank;
      const K dinv = d.inv();
      act.erase(act.begin() + static_cast<long>(piv));
      for (std::size_t ii = 0; ii < act.size(); ++ii)
        for (std::size_t jj = ii; jj < act.size(); ++jj) {
          const std::size_t i = act[ii], j = act[jj];
          K v = a.at(i, j) - a.at(i, k) * dinv * a.at(k, j);
          a.at(i, j) = v;
          a.at(j, i) = v;
        }
      continue;
    }
    // All active diagonal entries are zero: take a hyperbolic 2x2 block.
    std::size_t bi = act.size(), bj = act.size();
    for (std::size_t i = 0; i < act.size() && bi == act.size(); ++i)
      for (std::size_t j = i + 1; j < act.size(); ++j)
        if (!a.at(act[i], act[j]).is_zero()) {
          bi = i;
          bj = j;
          break;
        }
    if (bi == act.size()) break;  // active block is zero: done
    const std::size_t p = act[bi], q = act[bj];
    const K b = a.at(p, q);
    ++out.n_plus;
    ++out.n_minus;
    out.rank += 2;
    const K binv = b.inv();
    act.erase(act.begin() + static_cast<long>(bj));
    act.erase(act.begin() + static_cast<long>(bi));
    for (std::size_t ii = 0; ii < act.size(); ++ii)
      for (std::size_t jj = ii; jj < act.size(); ++jj) {
        const std::size_t i = act[ii], j = act[jj];
        // Schur complement of [[0,b],[b,0]].
        K v = a.at(i, j) - (a.at(i, p) * a.at(q, j) + a.at(i, q) * a.at(p, j)) * binv;
        a.at(i, j) = v;
        a.at(j, i) = v;
      }
  }
  return out;
}

}  // namespace kt
