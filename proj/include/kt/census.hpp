#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "kt/fp.hpp"
#include "kt/poly.hpp"

namespace kt {

// One normalized coordinate map over F_p: Q monic, gcd(P, Q) = 1, P/Q
// nonconstant, max(deg P, deg Q) <= d, together with the square-class data
// of its S-polynomial: S = lc(S) * cls * cof^2.
struct CensusWitness {
  Poly<Fp> P, Q;
  Poly<Fp> cls;           // monic squarefree class representative
  Poly<Fp> cof;           // monic cofactor A
  Fp res;                 // Res(P, Q)
  bool const_is_square;   // is lc(S) a square in F_p (the class itself treats constants as trivial)
  unsigned long long encP, encQ;  // enumeration keys: sum c_i p^i
};

// Canonical key for a monic class representative: degree first, then
// coefficients from the top down.  Orders identically to the digit value
// sum c_i p^i without overflow concerns.
std::vector<unsigned> fp_class_key(const Poly<Fp>& f);

// Exhaustive table of all normalized witnesses at (p, lambda, d), bucketed
// by square class.  Witness order is the enumeration order: ascending
// encQ = sum q_i p^i over monic Q, then ascending encP over all P.
struct ClassTable {
  unsigned long p = 0;
  unsigned long lambda = 0;
  long d = 0;
  std::vector<CensusWitness> witnesses;
  std::map<std::vector<unsigned>, std::vector<std::size_t>> by_class;

  void rebuild_index();
};

// shards > 1 splits the P-enumeration by the top coefficient slot of P and
// merges deterministically; output is byte-identical for any shard count.
ClassTable enumerate_classes(unsigned long p, unsigned long lambda, long d, unsigned shards = 1);

// Cross-pair matching between two tables (same p, same d; the lambdas may
// differ).  A split match is a shared square class (the preimage on the
// Kummer surface has two components); an irreducible match is a class pair
// whose product class has exactly two odd-order points (one component of
// genus 0).
struct SplitMatch {
  std::vector<unsigned> key;
  Poly<Fp> cls;
  std::vector<std::size_t> left, right;  // witness indices into each table
  std::string sample_text;               // "P1 | Q1 | A1 | P2 | Q2 | A2" for the first pair
};

struct IrrMatch {
  std::vector<unsigned> key1, key2;
  Poly<Fp> cls1, cls2, prod;
  std::size_t n1 = 0, n2 = 0;
  std::size_t sample1 = 0, sample2 = 0;  // first witness index on each side
  std::string sample_text;               // "P1 | Q1 | P2 | Q2" for the first pair
};

struct MatchReport {
  unsigned long p = 0;
  long d = 0;
  unsigned long lambda1 = 0, lambda2 = 0;
  std::vector<SplitMatch> splits;
  std::vector<IrrMatch> irreducibles;
  std::map<std::size_t, std::size_t> histogram1, histogram2;  // class size -> count
  unsigned long long cross_pairs = 0, split_pairs = 0, irr_pairs = 0, other_pairs = 0;
};

MatchReport find_matches(const ClassTable& t1, const ClassTable& t2);

// Batch driver: one table per input lambda, one match report per unordered
// pair (i <= j) in input order.
struct TableSummary {
  unsigned long lambda = 0;
  std::size_t witnesses = 0;
  std::size_t classes = 0;
  // witnesses whose constant cofactor lc(S) is a square in F_p; the class
  // itself treats constants as trivial, so this keeps the stricter
  // F_p-rational classification recoverable
  std::size_t square_const = 0;
};

struct CensusReport {
  unsigned long p = 0;
  long d = 0;
  std::vector<unsigned long> lambdas;
  std::vector<TableSummary> tables;
  std::vector<MatchReport> matches;
};

CensusReport census_report(unsigned long p, const std::vector<unsigned long>& lambdas, long d,
                           unsigned shards = 1, const std::string& cache_dir = "");

// On-disk cache / interchange format.  Header line "p lambda d", then one
// line per witness:
//   P-coeffs | Q-coeffs | class-coeffs | cofactor-coeffs | resultant
// with coefficients constant term first, space separated.
std::string table_to_text(const ClassTable& t);
ClassTable table_from_text(const std::string& text);

// Key-addressed cache: <dir>/table_p<p>_l<lambda>_d<d>.txt.
ClassTable load_or_build_table(const std::string& cache_dir, unsigned long p, unsigned long lambda,
                               long d, unsigned shards = 1);

// Deterministic text form of a match report (the byte contract checked
// against the independent enumeration oracle).
std::string match_to_text(const MatchReport& r);
std::string census_to_text(const CensusReport& r);

}  // namespace kt
