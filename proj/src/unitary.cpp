#include "kt/unitary.hpp"

#include <utility>

#include "kt/errors.hpp"

namespace kt {

QuadPoint::QuadPoint(mpq_class re_, mpq_class imc_, unsigned long d_)
    : re(std::move(re_)), imc(std::move(imc_)), d(d_) {
  if (re.get_den() == 0 || imc.get_den() == 0) throw validation_error("QuadPoint: zero denominator");
  re.canonicalize();
  imc.canonicalize();
  if (sgn(imc) <= 0) throw validation_error("QuadPoint: Im tau must be positive");
  if (!is_squarefree_positive(d)) throw validation_error("QuadPoint: d must be a positive squarefree integer");
}

LatticeData::LatticeData(long p_, long q_, QuadPoint tau_, std::vector<QuadPoint> taus_)
    : p(p_), q(q_), tau(std::move(tau_)), taus(std::move(taus_)) {}

mpz_class LatticeData::trace_tau() const {
  mpq_class t = 2 * tau.re;
  if (t.get_den() != 1) throw validation_error("LatticeData: 2*Re(tau) must be an integer (O must be an order)");
  return t.get_num();
}

mpz_class LatticeData::norm_tau() const {
  mpq_class n = tau.re * tau.re + tau.imc * tau.imc * static_cast<signed long>(tau.d);
  if (n.get_den() != 1) throw validation_error("LatticeData: |tau|^2 must be an integer (O must be an order)");
  return n.get_num();
}

LatticeData LatticeData::make(long p, long q, QuadPoint tau, std::vector<QuadPoint> taus) {
  if (q < 1 || p < q) throw validation_error("LatticeData: need p >= q >= 1");
  if (taus.size() != static_cast<std::size_t>(q))
    throw validation_error("LatticeData: need exactly q lattice points tau_i");
  LatticeData lat(p, q, std::move(tau), std::move(taus));
  lat.trace_tau();
  lat.norm_tau();
  for (long i = 0; i < p - q; ++i) {
    lat.basis.push_back({BasisTag::o_coordinate, static_cast<std::size_t>(i), 0});
    lat.basis.push_back({BasisTag::o_coordinate, static_cast<std::size_t>(i), 1});
  }
  for (long j = 0; j < q; ++j)
    for (std::size_t pos = 0; pos < 4; ++pos)
      lat.basis.push_back({BasisTag::hom_block, static_cast<std::size_t>(j), pos});
  return lat;
}

bool LatticeData::single_field() const {
  for (const auto& t : taus)
    if (t.d != tau.d) return false;
  return true;
}

mpq_class ad_bc_kernel(const QuadPoint& sigma, const mpq_class& a, const mpq_class& b,
                       const mpq_class& c, const mpq_class& d) {
  // conj(a + b sigma) = (a + b re) - (b imc) sqrt(-d);  c + d sigma likewise.
  const mpq_class x1 = a + b * sigma.re, y1 = -b * sigma.imc;
  const mpq_class x2 = c + d * sigma.re, y2 = d * sigma.imc;
  // sqrt(-d)-coefficient of the product, then divide by Im sigma = imc sqrt(d)
  // paired against sqrt(-d): the sqrt(d) parts cancel, leaving an exact
  // rational.
  const mpq_class im = x1 * y2 + y1 * x2;
  return im / sigma.imc;
}

Quad re_kernel(const QuadPoint& sigma, const mpq_class& a, const mpq_class& b, const mpq_class& c,
               const mpq_class& d) {
  const mpq_class x1 = a + b * sigma.re, y1 = -b * sigma.imc;
  const mpq_class x2 = c + d * sigma.re, y2 = d * sigma.imc;
  // real part of conj(..)(..) is x1 x2 - y1 y2 d; dividing by imc*sqrt(d)
  // lands in Q(sqrt(d)).
  const mpq_class re = x1 * x2 - y1 * y2 * static_cast<signed long>(sigma.d);
  return Quad(0, re / (sigma.imc * static_cast<signed long>(sigma.d)), sigma.d);
}

namespace {

// Each basis vector lives in exactly one complex line (an O-coordinate, or
// one of the two Hom(O, C) halves of a Hom block), with coordinates (a, b)
// against the line's {1, sigma} frame.
struct ComponentCoord {
  std::size_t component;
  int a;
  int b;
};

struct ComponentLayout {
  std::vector<QuadPoint> sigma;        // per component
  std::vector<ComponentCoord> coords;  // per basis vector
};

ComponentLayout layout_of(const LatticeData& lat) {
  ComponentLayout out;
  const long pq = lat.p - lat.q;
  for (long i = 0; i < pq; ++i) out.sigma.push_back(lat.tau);
  for (long j = 0; j < lat.q; ++j) {
    out.sigma.push_back(lat.taus[static_cast<std::size_t>(j)]);  // alpha(1) half
    out.sigma.push_back(lat.taus[static_cast<std::size_t>(j)]);  // alpha(tau) half
  }
  for (const BasisTag& tag : lat.basis) {
    if (tag.kind == BasisTag::o_coordinate) {
      out.coords.push_back({tag.summand, tag.position == 0 ? 1 : 0, tag.position == 1 ? 1 : 0});
    } else {
      const std::size_t comp = static_cast<std::size_t>(pq) + 2 * tag.summand + tag.position / 2;
      const int first = tag.position % 2 == 0 ? 1 : 0;
      out.coords.push_back({comp, first, 1 - first});
    }
  }
  return out;
}

}  // namespace

Matrix<mpz_class> imH_gram(const LatticeData& lat) {
  const ComponentLayout lay = layout_of(lat);
  const std::size_t n = lat.basis.size();
  Matrix<mpz_class> g(n, n, mpz_class(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& vi = lay.coords[i];
      const auto& vj = lay.coords[j];
      if (vi.component != vj.component) continue;
      mpq_class e = ad_bc_kernel(lay.sigma[vi.component], vi.a, vi.b, vj.a, vj.b);
      if (e.get_den() != 1) throw internal_error("imH_gram: non-integer pairing entry");
      g.at(i, j) = e.get_num();
    }
  return g;
}

HBlocks h_blocks(const LatticeData& lat) {
  if (!lat.single_field())
    throw validation_error("h_blocks: exact mode needs all tau in one field Q(sqrt(-d))");
  const ComponentLayout lay = layout_of(lat);
  HBlocks out;
  out.positive_definite = true;
  const unsigned long d = lat.tau.d;

  // Group basis vectors by summand, in basis order.
  std::size_t i = 0;
  while (i < lat.basis.size()) {
    const std::size_t width = lat.basis[i].kind == BasisTag::o_coordinate ? 2 : 4;
    Matrix<Quad> block(width, width, Quad::rational(0, d));
    for (std::size_t a = 0; a < width; ++a)
      for (std::size_t b = 0; b < width; ++b) {
        const auto& va = lay.coords[i + a];
        const auto& vb = lay.coords[i + b];
        if (va.component != vb.component) continue;  // the two Hom halves do not pair
        block.at(a, b) = re_kernel(lay.sigma[va.component], va.a, va.b, vb.a, vb.b);
      }
    Inertia<Quad> inert = symmetric_inertia(block);
    const bool pos = inert.rank == static_cast<long>(width) && inert.n_minus == 0;
    out.positive_definite = out.positive_definite && pos;
    out.blocks.push_back(std::move(block));
    out.pivots.push_back(std::move(inert.pivots));
    i += width;
  }
  return out;
}

IotaStructure iota_structure(const LatticeData& lat) {
  const std::size_t n = lat.basis.size();
  const mpz_class T = lat.trace_tau();
  const mpz_class N = lat.norm_tau();
  Matrix<mpz_class> M(n, n, mpz_class(0));

  // Multiplication by tau.  On an O-coordinate with basis (1, tau):
  // 1 -> tau, tau -> -N + T tau.  On a Hom block, precomposition
  // (tau.alpha)(x) = alpha(tau x) sends (x1,x2,x3,x4) to
  // (x3, x4, -N x1 + T x3, -N x2 + T x4).
  std::size_t i = 0;
  while (i < n) {
    if (lat.basis[i].kind == BasisTag::o_coordinate) {
      M.at(i, i + 1) = -N;
      M.at(i + 1, i) = 1;
      M.at(i + 1, i + 1) = T;
      i += 2;
    } else {
      M.at(i, i + 2) = 1;
      M.at(i + 1, i + 3) = 1;
      M.at(i + 2, i) = -N;
      M.at(i + 2, i + 2) = T;
      M.at(i + 3, i + 1) = -N;
      M.at(i + 3, i + 3) = T;
      i += 4;
    }
  }

  const unsigned long d = lat.tau.d;
  const Quad im_tau(0, lat.tau.imc, d);
  const Quad im_inv = im_tau.inv();
  Matrix<Quad> J(n, n, Quad::rational(0, d));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      mpq_class e(M.at(r, c));
      if (r == c) e -= lat.tau.re;
      J.at(r, c) = Quad::rational(e, d) * im_inv;
    }
  return {std::move(M), std::move(J)};
}

Matrix<Quad> hprime_gram(const LatticeData& lat) {
  if (!lat.single_field())
    throw validation_error("hprime_signature: exact mode needs all tau in one field Q(sqrt(-d))");
  const unsigned long d = lat.tau.d;
  IotaStructure io = iota_structure(lat);
  Matrix<mpz_class> a = imH_gram(lat);
  const std::size_t n = lat.basis.size();
  Matrix<Quad> aq(n, n, Quad::rational(0, d));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) aq.at(i, j) = Quad::rational(mpq_class(a.at(i, j)), d);
  // G'(v, w) = Im H(J v, w)  ==>  G' = J^T A.
  return io.J.transposed() * aq;
}

Signature hprime_signature(const LatticeData& lat) {
  Matrix<Quad> g = hprime_gram(lat);
  Inertia<Quad> inert = symmetric_inertia(g);  // throws internal_error if asymmetric
  if (inert.rank != lat.rank()) throw internal_error("hprime_signature: degenerate form");
  return {inert.n_plus, inert.n_minus};
}

std::string gram_to_text(const Matrix<mpz_class>& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += m.at(i, j).get_str();
    }
    out += '\n';
  }
  return out;
}

}  // namespace kt
