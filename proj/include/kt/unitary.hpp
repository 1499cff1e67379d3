#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "kt/matrix.hpp"
#include "kt/quad.hpp"

namespace kt {

// tau = re + imc*sqrt(-d), a point of the upper half plane with exact
// rational coordinates in the imaginary quadratic field Q(sqrt(-d)).
struct QuadPoint {
  mpq_class re;
  mpq_class imc;  // > 0
  unsigned long d;

  QuadPoint(mpq_class re_, mpq_class imc_, unsigned long d_);
};

// Which summand of Lambda = O^(p-q) + sum Hom(O, Lambda_i) a basis vector
// belongs to, and which coordinate of it.  O-coordinates use the basis
// {1, tau}; a Hom block uses {1->1, tau->0}, {1->tau_i, tau->0},
// {1->0, tau->1}, {1->0, tau->tau_i}.
struct BasisTag {
  enum Kind { o_coordinate, hom_block } kind;
  std::size_t summand;   // which O-coordinate / which Hom block
  std::size_t position;  // 0..1 within an O-coordinate, 0..3 within a Hom block
};

// The lattice of the unitary construction.  Validation:
//   - p >= q >= 1, Im tau > 0, Im tau_i > 0;
//   - O = Z + Z tau must be a ring (2 Re tau and |tau|^2 integers), or the
//     O-action on Lambda has no integer matrix;
//   - d squarefree for every point.
// A single shared field Q(sqrt(-d)) is *not* required here; the integer
// pairing Im H is field-free.  Operations that need exact sign tests in one
// real quadratic field (h_blocks, hprime_signature) check it themselves.
struct LatticeData {
  long p = 0;
  long q = 0;
  QuadPoint tau;
  std::vector<QuadPoint> taus;  // q of them
  std::vector<BasisTag> basis;  // 2p + 2q vectors

  static LatticeData make(long p, long q, QuadPoint tau, std::vector<QuadPoint> taus);

  long rank() const { return 2 * p + 2 * q; }
  bool single_field() const;

  mpz_class trace_tau() const;  // 2 Re tau
  mpz_class norm_tau() const;   // |tau|^2

 private:
  LatticeData(long p_, long q_, QuadPoint tau_, std::vector<QuadPoint> taus_);
};

// Im(conj(a + b sigma)(c + d sigma)) / Im(sigma), evaluated exactly through
// the complex product; equals ad - bc for every non-real sigma.
mpq_class ad_bc_kernel(const QuadPoint& sigma, const mpq_class& a, const mpq_class& b,
                       const mpq_class& c, const mpq_class& d);

// Re(conj(a + b sigma)(c + d sigma)) / Im(sigma) as an element of Q(sqrt(d)).
Quad re_kernel(const QuadPoint& sigma, const mpq_class& a, const mpq_class& b, const mpq_class& c,
               const mpq_class& d);

// Gram matrix of Im H on the lattice basis: antisymmetric, integer entries,
// determinant 1 (a principal polarization).
Matrix<mpz_class> imH_gram(const LatticeData& lat);

// Per-summand real symmetric Gram blocks of H with an exact positivity
// certificate (all LDL pivots > 0).
struct HBlocks {
  std::vector<Matrix<Quad>> blocks;       // 2x2 per O-coordinate, 4x4 per Hom block
  std::vector<std::vector<Quad>> pivots;  // per block
  bool positive_definite = false;
};
HBlocks h_blocks(const LatticeData& lat);

// iota(tau) as an integer matrix (regular representation on O-coordinates,
// precomposition on Hom blocks) and the induced complex structure
// J = (iota(tau) - Re(tau)) / Im(tau) with J^2 = -I.
struct IotaStructure {
  Matrix<mpz_class> iota_tau;
  Matrix<Quad> J;
};
IotaStructure iota_structure(const LatticeData& lat);

// Signature of G'(v, w) = Im H(J v, w), the real form of H'.  The pair is
// meaningful unordered; this convention's orientation comes out as
// (n_plus, n_minus) = (2q, 2p).
struct Signature {
  long n_plus = 0;
  long n_minus = 0;
};
Signature hprime_signature(const LatticeData& lat);

// The G' Gram itself (symmetry is asserted; exposed for tests).
Matrix<Quad> hprime_gram(const LatticeData& lat);

// Row-major, space-separated integer matrix (one row per line).
std::string gram_to_text(const Matrix<mpz_class>& m);

}  // namespace kt
