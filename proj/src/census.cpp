#include "kt/census.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "kt/curves.hpp"
#include "kt/genus.hpp"
#include "kt/square_class.hpp"

namespace kt {

namespace {

void check_census_params(unsigned long p, unsigned long lambda, long d) {
  if (!is_odd_prime(p)) throw validation_error("census: p must be an odd prime");
  const unsigned long l = lambda % p;
  if (l == 0 || l == 1)
    throw validation_error("census: lambda reduces to 0 or 1 mod p (degenerate Legendre curve)");
  if (d < 0) throw validation_error("census: degree bound must be >= 0");
}

unsigned long long checked_pow(unsigned long p, long e, unsigned long long cap) {
  unsigned long long r = 1;
  for (long i = 0; i < e; ++i) {
    if (r > cap / p) throw validation_error("census: search space too large");
    r *= p;
  }
  return r;
}

Poly<Fp> poly_from_digits(unsigned long long idx, long len, unsigned long p) {
  std::vector<Fp> c;
  c.reserve(static_cast<std::size_t>(len));
  for (long i = 0; i < len; ++i) {
    c.push_back(Fp(static_cast<long long>(idx % p), p));
    idx /= p;
  }
  return Poly<Fp>(std::move(c));
}

unsigned long long encode_poly(const Poly<Fp>& f, unsigned long p) {
  unsigned long long e = 0;
  for (long i = f.degree(); i >= 0; --i) e = e * p + f[static_cast<std::size_t>(i)].value();
  return e;
}

// One shard of the enumeration: keeps the global (encQ, encP) order within
// itself.  Shards partition P by its top coefficient slot.
std::vector<CensusWitness> enumerate_shard(unsigned long p, unsigned long lambda, long d,
                                           unsigned shards, unsigned shard) {
  std::vector<CensusWitness> out;
  if (d == 0) return out;  // no nonconstant maps at degree 0
  const Fp lam(static_cast<long long>(lambda), p);
  const unsigned long long pcount = checked_pow(p, d + 1, 1ull << 62);
  const unsigned long long top_div = pcount / p;  // p^d

  for (long qdeg = 0; qdeg <= d; ++qdeg) {
    const unsigned long long qcount = checked_pow(p, qdeg, 1ull << 62);
    for (unsigned long long qidx = 0; qidx < qcount; ++qidx) {
      std::vector<Fp> qc;
      qc.reserve(static_cast<std::size_t>(qdeg) + 1);
      unsigned long long rest = qidx;
      for (long i = 0; i < qdeg; ++i) {
        qc.push_back(Fp(static_cast<long long>(rest % p), p));
        rest /= p;
      }
      qc.push_back(Fp(1, p));
      const Poly<Fp> Q(std::move(qc));
      const unsigned long long encQ = encode_poly(Q, p);

      for (unsigned long long pidx = 0; pidx < pcount; ++pidx) {
        if ((pidx / top_div) % shards != shard) continue;
        Poly<Fp> P = poly_from_digits(pidx, d + 1, p);
        if (qdeg == 0 && P.degree() <= 0) continue;  // constant map (includes P = 0)
        if (P.is_zero()) continue;
        if (gcd(P, Q).degree() != 0) continue;

        const Poly<Fp> S = P * (P - Q) * (P - Q * lam) * Q;
        auto dec = squarefree_decomposition(S);
        Poly<Fp> cls = Poly<Fp>::constant(lam.one());
        Poly<Fp> cof = cls;
        for (std::size_t i = 0; i < dec.layers.size(); ++i) {
          if (i % 2 == 0) cls = cls * dec.layers[i];
          const unsigned long half = (static_cast<unsigned long>(i) + 1) / 2;
          if (half > 0 && dec.layers[i].degree() > 0) cof = cof * pow_poly(dec.layers[i], half);
        }
        CensusWitness w{P, Q, std::move(cls), std::move(cof), resultant(P, Q),
                        dec.lead.is_square(), pidx, encQ};
        out.push_back(std::move(w));
      }
    }
  }
  return out;
}

std::string poly_coeffs_text(const Poly<Fp>& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (long i = 0; i <= f.degree(); ++i) {
    if (i) out += ' ';
    out += std::to_string(f[static_cast<std::size_t>(i)].value());
  }
  return out;
}

}  // namespace

std::vector<unsigned> fp_class_key(const Poly<Fp>& f) {
  std::vector<unsigned> key;
  key.push_back(static_cast<unsigned>(f.degree() + 1));
  for (long i = f.degree(); i >= 0; --i)
    key.push_back(static_cast<unsigned>(f[static_cast<std::size_t>(i)].value()));
  return key;
}

void ClassTable::rebuild_index() {
  by_class.clear();
  for (std::size_t i = 0; i < witnesses.size(); ++i)
    by_class[fp_class_key(witnesses[i].cls)].push_back(i);
}

ClassTable enumerate_classes(unsigned long p, unsigned long lambda, long d, unsigned shards) {
  check_census_params(p, lambda, d);
  if (shards == 0) throw validation_error("census: shard count must be >= 1");
  // Reject absurd search spaces up front.
  if (d > 0) {
    unsigned long long qtotal = 0;
    for (long k = 0; k <= d; ++k) qtotal += checked_pow(p, k, 1ull << 40);
    const unsigned long long ptotal = checked_pow(p, d + 1, 1ull << 40);
    if (qtotal > 200000000ull / ptotal)
      throw validation_error("census: search space too large");
  }

  ClassTable t;
  t.p = p;
  t.lambda = lambda % p;
  t.d = d;

  if (shards == 1) {
    t.witnesses = enumerate_shard(p, t.lambda, d, 1, 0);
  } else {
    std::vector<std::vector<CensusWitness>> parts(shards);
    std::vector<std::thread> threads;
    threads.reserve(shards);
    for (unsigned s = 0; s < shards; ++s)
      threads.emplace_back(
          [&parts, p, d, shards, s, lam = t.lambda]() { parts[s] = enumerate_shard(p, lam, d, shards, s); });
    for (auto& th : threads) th.join();
    for (auto& part : parts)
      for (auto& w : part) t.witnesses.push_back(std::move(w));
    std::sort(t.witnesses.begin(), t.witnesses.end(),
              [](const CensusWitness& a, const CensusWitness& b) {
                return a.encQ != b.encQ ? a.encQ < b.encQ : a.encP < b.encP;
              });
  }
  t.rebuild_index();
  return t;
}

MatchReport find_matches(const ClassTable& t1, const ClassTable& t2) {
  if (t1.p != t2.p) throw validation_error("find_matches: tables have different p");
  if (t1.d != t2.d) throw validation_error("find_matches: tables have different degree bounds");
  MatchReport r;
  r.p = t1.p;
  r.d = t1.d;
  r.lambda1 = t1.lambda;
  r.lambda2 = t2.lambda;
  r.cross_pairs = static_cast<unsigned long long>(t1.witnesses.size()) * t2.witnesses.size();

  for (const auto& [key, idxs] : t1.by_class) ++r.histogram1[idxs.size()];
  for (const auto& [key, idxs] : t2.by_class) ++r.histogram2[idxs.size()];

  // Split matches: bucket join on the class key.
  for (const auto& [key, left] : t1.by_class) {
    auto it = t2.by_class.find(key);
    if (it == t2.by_class.end()) continue;
    const CensusWitness& w1 = t1.witnesses[left.front()];
    const CensusWitness& w2 = t2.witnesses[it->second.front()];
    SplitMatch m{key, w1.cls, left, it->second,
                 poly_coeffs_text(w1.P) + " | " + poly_coeffs_text(w1.Q) + " | " +
                     poly_coeffs_text(w1.cof) + " | " + poly_coeffs_text(w2.P) + " | " +
                     poly_coeffs_text(w2.Q) + " | " + poly_coeffs_text(w2.cof)};
    r.split_pairs += static_cast<unsigned long long>(left.size()) * it->second.size();
    r.splits.push_back(std::move(m));
  }

  // Irreducible matches: class-level scan; witnesses inherit from their
  // class.  Every irreducible factor of S divides one of P, P-Q,
  // P-lambda Q, Q, so class representatives factor by trial division over
  // the monic polynomials of degree <= d.  A pair matches iff the product
  // class z = (c1/g)(c2/g), g = gcd(c1, c2), has exactly two odd places:
  // with s = deg g, D = deg c1 + deg c2 - 2s, that is
  // D + (D mod 2) == 2 -- so only the shared factor degree is needed.
  struct ClassBucket {
    const std::vector<unsigned>* key;
    const std::vector<std::size_t>* idxs;
    const Poly<Fp>* cls;
    std::vector<std::pair<unsigned long long, long>> factors;  // (encode, degree), ascending
    bool complete;
  };
  std::vector<Poly<Fp>> divisors;  // monic, ascending (degree, digits)
  {
    const unsigned long p = t1.p;
    for (long k = 1; k <= t1.d; ++k) {
      unsigned long long count = 1;
      for (long i = 0; i < k; ++i) count *= p;
      for (unsigned long long idx = 0; idx < count; ++idx) {
        std::vector<Fp> c;
        unsigned long long rest = idx;
        for (long i = 0; i < k; ++i) {
          c.push_back(Fp(static_cast<long long>(rest % p), p));
          rest /= p;
        }
        c.push_back(Fp(1, p));
        divisors.push_back(Poly<Fp>(std::move(c)));
      }
    }
  }
  const auto make_buckets = [&](const ClassTable& t) {
    std::vector<ClassBucket> out;
    for (const auto& [key, idxs] : t.by_class) {
      ClassBucket b{&key, &idxs, &t.witnesses[idxs[0]].cls, {}, false};
      Poly<Fp> f = *b.cls;
      for (const auto& g : divisors) {
        if (g.degree() > f.degree()) break;
        auto [q, rem] = divrem(f, g);
        if (!rem.is_zero()) continue;
        b.factors.push_back({encode_poly(g, t.p), g.degree()});
        f = std::move(q);
      }
      b.complete = f.degree() == 0;
      out.push_back(std::move(b));
    }
    return out;
  };
  const std::vector<ClassBucket> left_buckets = make_buckets(t1);
  const std::vector<ClassBucket> right_buckets = make_buckets(t2);

  for (const auto& b1 : left_buckets) {
    const SquareClass<Fp> s1 = class_of(*b1.cls);
    for (const auto& b2 : right_buckets) {
      bool is_match = false;
      if (b1.complete && b2.complete) {
        long shared = 0;
        std::size_t i = 0, j = 0;
        while (i < b1.factors.size() && j < b2.factors.size()) {
          if (b1.factors[i].first == b2.factors[j].first) {
            shared += b1.factors[i].second;
            ++i;
            ++j;
          } else if (b1.factors[i].first < b2.factors[j].first) {
            ++i;
          } else {
            ++j;
          }
        }
        const long D = b1.cls->degree() + b2.cls->degree() - 2 * shared;
        is_match = D + (D % 2) == 2;
      } else {
        // a class not covered by degree-<= d divisors can only come from a
        // foreign cache file; fall back to the direct route
        const SquareClass<Fp> prod = class_mul(s1, class_of(*b2.cls));
        is_match = !prod.is_trivial() && two_odd_points(prod).exactly_two;
      }
      if (!is_match) continue;
      const SquareClass<Fp> prod = class_mul(s1, class_of(*b2.cls));
      const std::vector<std::size_t>& left = *b1.idxs;
      const std::vector<std::size_t>& right = *b2.idxs;
      const CensusWitness& w1 = t1.witnesses[left.front()];
      const CensusWitness& w2 = t2.witnesses[right.front()];
      IrrMatch m{*b1.key,
                 *b2.key,
                 *b1.cls,
                 *b2.cls,
                 prod.rep(),
                 left.size(),
                 right.size(),
                 left.front(),
                 right.front(),
                 poly_coeffs_text(w1.P) + " | " + poly_coeffs_text(w1.Q) + " | " +
                     poly_coeffs_text(w2.P) + " | " + poly_coeffs_text(w2.Q)};
      r.irr_pairs += static_cast<unsigned long long>(left.size()) * right.size();
      r.irreducibles.push_back(std::move(m));
    }
  }
  r.other_pairs = r.cross_pairs - r.split_pairs - r.irr_pairs;
  return r;
}

CensusReport census_report(unsigned long p, const std::vector<unsigned long>& lambdas, long d,
                           unsigned shards, const std::string& cache_dir) {
  if (lambdas.empty()) throw validation_error("census: need at least one lambda");
  CensusReport rep;
  rep.p = p;
  rep.d = d;

  std::map<unsigned long, ClassTable> tables;
  for (unsigned long l : lambdas) {
    check_census_params(p, l, d);
    const unsigned long lr = l % p;
    rep.lambdas.push_back(lr);
    if (!tables.count(lr))
      tables.emplace(lr, cache_dir.empty() ? enumerate_classes(p, lr, d, shards)
                                           : load_or_build_table(cache_dir, p, lr, d, shards));
  }
  for (unsigned long lr : rep.lambdas) {
    const ClassTable& t = tables.at(lr);
    std::size_t sq = 0;
    for (const auto& w : t.witnesses) sq += w.const_is_square ? 1 : 0;
    rep.tables.push_back({lr, t.witnesses.size(), t.by_class.size(), sq});
  }
  for (std::size_t i = 0; i < rep.lambdas.size(); ++i)
    for (std::size_t j = i; j < rep.lambdas.size(); ++j)
      rep.matches.push_back(find_matches(tables.at(rep.lambdas[i]), tables.at(rep.lambdas[j])));
  return rep;
}

std::string table_to_text(const ClassTable& t) {
  std::ostringstream os;
  os << t.p << ' ' << t.lambda << ' ' << t.d << '\n';
  for (const auto& w : t.witnesses) {
    os << poly_coeffs_text(w.P) << " | " << poly_coeffs_text(w.Q) << " | "
       << poly_coeffs_text(w.cls) << " | " << poly_coeffs_text(w.cof) << " | " << w.res.value()
       << '\n';
  }
  return os.str();
}

namespace {

Poly<Fp> parse_fp_poly(const std::string& field, unsigned long p) {
  std::istringstream is(field);
  std::vector<Fp> c;
  long long v;
  while (is >> v) {
    if (v < 0 || static_cast<unsigned long>(v) >= p)
      throw validation_error("census table: coefficient out of range");
    c.push_back(Fp(v, p));
  }
  if (c.empty()) throw validation_error("census table: empty polynomial field");
  return Poly<Fp>(std::move(c));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(" | ", start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 3;
  }
}

}  // namespace

ClassTable table_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  if (!std::getline(is, header)) throw validation_error("census table: empty file");
  std::istringstream hs(header);
  ClassTable t;
  if (!(hs >> t.p >> t.lambda >> t.d)) throw validation_error("census table: bad header");
  check_census_params(t.p, t.lambda, t.d);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != 5) throw validation_error("census table: malformed witness line");
    long long res_value = 0;
    try {
      res_value = std::stoll(fields[4]);
    } catch (const std::exception&) {
      throw validation_error("census table: bad resultant field");
    }
    CensusWitness w{parse_fp_poly(fields[0], t.p),
                    parse_fp_poly(fields[1], t.p),
                    parse_fp_poly(fields[2], t.p),
                    parse_fp_poly(fields[3], t.p),
                    Fp(res_value, t.p),
                    false,
                    0,
                    0};
    if (w.Q.is_zero() || !(w.Q.lead() == w.Q.lead().one()))
      throw validation_error("census table: witness Q not monic");
    w.encP = encode_poly(w.P, t.p);
    w.encQ = encode_poly(w.Q, t.p);
    const Poly<Fp> S = w.P * (w.P - w.Q) * (w.P - w.Q * Fp(static_cast<long long>(t.lambda), t.p)) * w.Q;
    w.const_is_square = S.lead().is_square();
    t.witnesses.push_back(std::move(w));
  }
  t.rebuild_index();
  return t;
}

ClassTable load_or_build_table(const std::string& cache_dir, unsigned long p, unsigned long lambda,
                               long d, unsigned shards) {
  check_census_params(p, lambda, d);
  namespace fs = std::filesystem;
  const fs::path dir(cache_dir);
  const fs::path file = dir / ("table_p" + std::to_string(p) + "_l" + std::to_string(lambda % p) +
                               "_d" + std::to_string(d) + ".txt");
  if (fs::exists(file)) {
    std::ifstream in(file);
    std::ostringstream buf;
    buf << in.rdbuf();
    ClassTable t = table_from_text(buf.str());
    if (t.p != p || t.lambda != lambda % p || t.d != d)
      throw validation_error("census cache: file does not match its key");
    return t;
  }
  ClassTable t = enumerate_classes(p, lambda, d, shards);
  fs::create_directories(dir);
  std::ofstream out(file);
  out << table_to_text(t);
  return t;
}

std::string match_to_text(const MatchReport& r) {
  std::ostringstream os;
  os << "match p=" << r.p << " d=" << r.d << " lambda1=" << r.lambda1 << " lambda2=" << r.lambda2
     << '\n';
  for (const auto& [size, count] : r.histogram1) os << "hist1 " << size << ' ' << count << '\n';
  for (const auto& [size, count] : r.histogram2) os << "hist2 " << size << ' ' << count << '\n';
  for (const auto& m : r.splits) {
    os << "split " << poly_coeffs_text(m.cls) << " | n1=" << m.left.size()
       << " n2=" << m.right.size() << '\n';
    os << "split_sample " << m.sample_text << '\n';
  }
  for (const auto& m : r.irreducibles) {
    os << "irr " << poly_coeffs_text(m.cls1) << " | " << poly_coeffs_text(m.cls2) << " | prod "
       << poly_coeffs_text(m.prod) << " | n1=" << m.n1 << " n2=" << m.n2 << '\n';
    os << "irr_sample " << m.sample_text << '\n';
  }
  os << "totals cross=" << r.cross_pairs << " split=" << r.split_pairs << " irr0=" << r.irr_pairs
     << " other=" << r.other_pairs << '\n';
  return os.str();
}

std::string census_to_text(const CensusReport& r) {
  std::ostringstream os;
  os << "census p=" << r.p << " d=" << r.d << " lambdas=";
  for (std::size_t i = 0; i < r.lambdas.size(); ++i) os << (i ? "," : "") << r.lambdas[i];
  os << '\n';
  for (const auto& t : r.tables)
    os << "table lambda=" << t.lambda << " witnesses=" << t.witnesses << " classes=" << t.classes
       << " square_const=" << t.square_const << '\n';
  for (const auto& m : r.matches) os << match_to_text(m);
  return os.str();
}

}  // namespace kt
