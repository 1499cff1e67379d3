#include "kt/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "kt/census.hpp"
#include "kt/genus.hpp"
#include "kt/unitary.hpp"

namespace kt {

namespace {

const json& require_field(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key))
    throw validation_error("payload: missing field \"" + key + "\"");
  return j.at(key);
}

long require_integer(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw validation_error(what + " must be an integer");
  return j.get<long>();
}

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  throw validation_error("exact rationals must be strings \"a/b\" (or integers)");
}

mpq_class mpq_from_json(const json& j) { return rat_from_json(j).value(); }

json fp_poly_to_json(const Poly<Fp>& f) {
  json a = json::array();
  if (f.is_zero()) {
    a.push_back(0);
    return a;
  }
  for (long i = 0; i <= f.degree(); ++i) a.push_back(f[static_cast<std::size_t>(i)].value());
  return a;
}

}  // namespace

Poly<Rat> poly_from_json(const json& coeffs) {
  if (!coeffs.is_array()) throw validation_error("polynomial must be a coefficient array");
  std::vector<Rat> c;
  for (const auto& e : coeffs) c.push_back(rat_from_json(e));
  return Poly<Rat>(std::move(c));
}

json poly_to_json(const Poly<Rat>& f) {
  json a = json::array();
  if (f.is_zero()) {
    a.push_back("0");
    return a;
  }
  for (long i = 0; i <= f.degree(); ++i) a.push_back(f[static_cast<std::size_t>(i)].str());
  return a;
}

CurveCandidate<Rat> candidate_from_json(const json& j) {
  const json& lambdas = require_field(j, "lambdas");
  const json& maps = require_field(j, "maps");
  if (!lambdas.is_array() || !maps.is_array())
    throw validation_error("candidate: lambdas and maps must be arrays");
  std::vector<Rat> ls;
  for (const auto& l : lambdas) ls.push_back(rat_from_json(l));
  std::vector<RatFunc<Rat>> ms;
  for (const auto& m : maps) {
    Poly<Rat> num = poly_from_json(require_field(m, "num"));
    Poly<Rat> den = poly_from_json(require_field(m, "den"));
    ms.push_back(RatFunc<Rat>(std::move(num), std::move(den)));
  }
  return CurveCandidate<Rat>(std::move(ls), std::move(ms));
}

json candidate_to_json(const CurveCandidate<Rat>& cand) {
  json j;
  j["lambdas"] = json::array();
  for (const auto& l : cand.lambdas) j["lambdas"].push_back(l.str());
  j["maps"] = json::array();
  for (const auto& m : cand.maps) {
    json mj;
    mj["num"] = poly_to_json(m.num());
    mj["den"] = poly_to_json(m.den());
    j["maps"].push_back(mj);
  }
  return j;
}

namespace {

json verify_report(const CurveCandidate<Rat>& cand) {
  const LiftVerdict<Rat> v = analyze(cand);
  json rep;
  rep["command"] = "verify";
  rep["candidate"] = candidate_to_json(cand);
  rep["n"] = cand.n();
  // nonconstant projections to every factor; validated at construction
  rep["diagonal"] = true;
  rep["diagonal_note"] =
      "diagonality is checked (every coordinate map is nonconstant); for pairwise "
      "non-isogenous factors this is equivalent to nondegeneracy, which is not decided here";
  rep["classes"] = json::array();
  for (const auto& c : v.classes) rep["classes"].push_back(poly_to_json(c.rep()));
  rep["partition"] = v.partition;
  rep["strict_ok"] = v.strict_ok;
  rep["m"] = v.m;
  rep["obstruction_genus"] = v.obstruction_genus;
  rep["excluded"] = v.excluded;
  if (v.preimage) {
    rep["preimage"]["split"] = v.preimage->split;
    rep["preimage"]["genus"] = v.preimage->genus;
  }
  rep["triples"] = v.equal_class_triples;
  if (cand.n() == 2) {
    const FiberReport<Rat> f = kummer_fiber(cand);
    rep["fiber"]["components"] = f.components;
    rep["fiber"]["product_class"] = poly_to_json(f.product_class.rep());
    rep["fiber"]["genus0"] = f.genus0;
  }
  return rep;
}

std::string verify_text(const json& rep) {
  std::ostringstream os;
  os << "verify: n=" << rep["n"].get<std::size_t>() << " (diagonal candidate)\n";
  for (std::size_t i = 0; i < rep["classes"].size(); ++i)
    os << "  class[" << i << "] = " << poly_str(poly_from_json(rep["classes"][i])) << "\n";
  os << "  partition = " << rep["partition"].dump() << "\n";
  os << "  strict_ok = " << (rep["strict_ok"].get<bool>() ? "true" : "false") << "\n";
  os << "  m = " << rep["m"].get<long>()
     << ", obstruction_genus = " << rep["obstruction_genus"].get<long>()
     << ", excluded = " << (rep["excluded"].get<bool>() ? "true" : "false") << "\n";
  if (rep.contains("preimage")) {
    if (rep["preimage"]["split"].get<bool>())
      os << "  preimage: split into 2 components\n";
    else
      os << "  preimage: irreducible, genus " << rep["preimage"]["genus"].get<long>() << "\n";
  }
  os << "  equal-class triples: " << rep["triples"].dump() << "\n";
  if (rep.contains("fiber")) {
    os << "  fiber: components=" << rep["fiber"]["components"].get<int>();
    if (rep["fiber"]["components"].get<int>() == 1)
      os << " genus0=" << (rep["fiber"]["genus0"].get<bool>() ? "true" : "false") << " product class "
         << poly_str(poly_from_json(rep["fiber"]["product_class"]));
    os << "\n";
  }
  return os.str();
}

json genus_report(const json& payload) {
  const json& classes = require_field(payload, "classes");
  if (!classes.is_array() || classes.empty())
    throw validation_error("genus: classes must be a nonempty array of polynomials");
  std::vector<SquareClass<Rat>> cs;
  for (const auto& c : classes) {
    Poly<Rat> f = poly_from_json(c);
    if (f.is_zero()) throw validation_error("genus: zero polynomial has no square class");
    cs.push_back(class_of(f));
  }
  BranchProfile<Rat> prof = branch_profile(cs);
  json rep;
  rep["command"] = "genus";
  rep["classes"] = json::array();
  for (const auto& c : cs) rep["classes"].push_back(poly_to_json(c.rep()));
  rep["places"] = json::array();
  for (const auto& b : prof.places) rep["places"].push_back(poly_to_json(b));
  rep["rows"] = prof.rows;  // last column: the infinite place
  rep["m"] = prof.m;
  rep["r"] = prof.r;
  rep["genus"] = multiquadratic_genus(cs);
  return rep;
}

std::string genus_text(const json& rep) {
  std::ostringstream os;
  os << "genus: m=" << rep["m"].get<long>() << " r=" << rep["r"].get<long>()
     << " genus=" << rep["genus"].get<long>() << "\n";
  for (std::size_t i = 0; i < rep["classes"].size(); ++i)
    os << "  class[" << i << "] = " << poly_str(poly_from_json(rep["classes"][i])) << "\n";
  os << "  finite places (coprime basis): ";
  for (std::size_t i = 0; i < rep["places"].size(); ++i)
    os << (i ? ", " : "") << poly_str(poly_from_json(rep["places"][i]));
  os << "\n";
  return os.str();
}

json precheck_report(const json& payload) {
  Poly<Rat> D = poly_from_json(require_field(payload, "D"));
  if (D.is_zero()) throw validation_error("precheck: D must be nonzero");
  const SquareClass<Rat> c = class_of(D);
  const PrecheckResult res = solvability_precheck(c);
  json rep;
  rep["command"] = "precheck";
  rep["D"] = poly_to_json(D);
  rep["class"] = poly_to_json(c.rep());
  rep["trivial_class"] = res.trivial_class;
  rep["genus"] = res.genus;
  rep["unsolvable_over_C"] = res.unsolvable_over_C;
  return rep;
}

std::string precheck_text(const json& rep) {
  std::ostringstream os;
  os << "precheck: class " << poly_str(poly_from_json(rep["class"]));
  if (rep["trivial_class"].get<bool>())
    os << " is trivial (S itself would be a square)\n";
  else
    os << " has genus " << rep["genus"].get<long>() << "; unsolvable over C: "
       << (rep["unsolvable_over_C"].get<bool>() ? "true" : "false") << "\n";
  return os.str();
}

json census_report_json(const CensusReport& r) {
  json rep;
  rep["command"] = "census";
  rep["p"] = r.p;
  rep["d"] = r.d;
  rep["lambdas"] = r.lambdas;
  rep["tables"] = json::array();
  for (const auto& t : r.tables) {
    json tj;
    tj["lambda"] = t.lambda;
    tj["witnesses"] = t.witnesses;
    tj["classes"] = t.classes;
    tj["square_const"] = t.square_const;
    rep["tables"].push_back(tj);
  }
  rep["matches"] = json::array();
  for (const auto& m : r.matches) {
    json mj;
    mj["lambda1"] = m.lambda1;
    mj["lambda2"] = m.lambda2;
    mj["splits"] = json::array();
    for (const auto& s : m.splits) {
      json sj;
      sj["class"] = fp_poly_to_json(s.cls);
      sj["n1"] = s.left.size();
      sj["n2"] = s.right.size();
      mj["splits"].push_back(sj);
    }
    mj["irreducibles"] = json::array();
    for (const auto& s : m.irreducibles) {
      json sj;
      sj["class1"] = fp_poly_to_json(s.cls1);
      sj["class2"] = fp_poly_to_json(s.cls2);
      sj["product"] = fp_poly_to_json(s.prod);
      sj["n1"] = s.n1;
      sj["n2"] = s.n2;
      mj["irreducibles"].push_back(sj);
    }
    mj["histogram1"] = m.histogram1;
    mj["histogram2"] = m.histogram2;
    mj["totals"]["cross"] = m.cross_pairs;
    mj["totals"]["split"] = m.split_pairs;
    mj["totals"]["irr0"] = m.irr_pairs;
    mj["totals"]["other"] = m.other_pairs;
    rep["matches"].push_back(mj);
  }
  return rep;
}

json lattice_report(const json& payload, const std::string& gram_out) {
  const long p = require_integer(require_field(payload, "p"), "lattice: p");
  const long q = require_integer(require_field(payload, "q"), "lattice: q");
  const long d = require_integer(require_field(payload, "d"), "lattice: d");
  if (d < 1) throw validation_error("lattice: d must be a positive squarefree integer");
  const json& tau_j = require_field(payload, "tau");
  QuadPoint tau(mpq_from_json(require_field(tau_j, "re")), mpq_from_json(require_field(tau_j, "imc")),
                static_cast<unsigned long>(d));
  std::vector<QuadPoint> taus;
  for (const auto& tj : require_field(payload, "taus"))
    taus.emplace_back(mpq_from_json(require_field(tj, "re")), mpq_from_json(require_field(tj, "imc")),
                      static_cast<unsigned long>(d));
  const LatticeData lat = LatticeData::make(p, q, std::move(tau), std::move(taus));

  const Matrix<mpz_class> imh = imH_gram(lat);
  bool antisym = true;
  for (std::size_t i = 0; i < imh.rows(); ++i)
    for (std::size_t j = 0; j < imh.cols(); ++j)
      antisym = antisym && imh.at(i, j) == -imh.at(j, i);
  const mpz_class det = det_bareiss(imh);

  const HBlocks hb = h_blocks(lat);
  const IotaStructure io = iota_structure(lat);

  // J^2 = -I, checked exactly.
  const Matrix<Quad> j2 = io.J * io.J;
  bool j2ok = true;
  const Quad zero = Quad::rational(0, lat.tau.d);
  const Quad mone = Quad::rational(-1, lat.tau.d);
  for (std::size_t i = 0; i < j2.rows(); ++i)
    for (std::size_t j = 0; j < j2.cols(); ++j) j2ok = j2ok && (j2.at(i, j) == (i == j ? mone : zero));

  // iota(tau) satisfies tau^2 - (2 Re tau) tau + |tau|^2 = 0.
  const Matrix<mpz_class> m2 = io.iota_tau * io.iota_tau;
  bool minpoly_ok = true;
  const mpz_class T = lat.trace_tau(), N = lat.norm_tau();
  for (std::size_t i = 0; i < m2.rows(); ++i)
    for (std::size_t j = 0; j < m2.cols(); ++j) {
      mpz_class v = m2.at(i, j) - T * io.iota_tau.at(i, j) + (i == j ? N : mpz_class(0));
      minpoly_ok = minpoly_ok && v == 0;
    }

  const Signature sig = hprime_signature(lat);
  if (!j2ok || !minpoly_ok) throw internal_error("lattice: iota-structure identities failed");

  if (!gram_out.empty()) {
    std::ofstream out(gram_out);
    if (!out) throw validation_error("lattice: cannot write " + gram_out);
    out << gram_to_text(imh);
  }

  json rep;
  rep["command"] = "lattice";
  rep["p"] = p;
  rep["q"] = q;
  rep["d"] = d;
  rep["rank"] = lat.rank();
  rep["det_im_h"] = det.get_str();
  rep["antisymmetric"] = antisym;
  rep["positive_definite"] = hb.positive_definite;
  rep["pivots"] = json::array();
  for (const auto& blk : hb.pivots) {
    json bj = json::array();
    for (const auto& pv : blk) bj.push_back(pv.str());
    rep["pivots"].push_back(bj);
  }
  rep["j_squared_is_minus_identity"] = j2ok;
  rep["iota_min_poly_ok"] = minpoly_ok;
  rep["signature"]["n_plus"] = sig.n_plus;
  rep["signature"]["n_minus"] = sig.n_minus;
  json unordered = json::array();
  unordered.push_back(std::min(sig.n_plus, sig.n_minus));
  unordered.push_back(std::max(sig.n_plus, sig.n_minus));
  rep["signature_unordered"] = unordered;
  json imh_j = json::array();
  for (std::size_t i = 0; i < imh.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < imh.cols(); ++j) row.push_back(imh.at(i, j).get_str());
    imh_j.push_back(row);
  }
  rep["im_h"] = imh_j;
  return rep;
}

std::string lattice_text(const json& rep) {
  std::ostringstream os;
  os << "lattice: p=" << rep["p"].get<long>() << " q=" << rep["q"].get<long>()
     << " d=" << rep["d"].get<long>() << " rank=" << rep["rank"].get<long>() << "\n";
  os << "  det(Im H) = " << rep["det_im_h"].get<std::string>()
     << " antisymmetric=" << (rep["antisymmetric"].get<bool>() ? "true" : "false") << "\n";
  os << "  H positive definite: " << (rep["positive_definite"].get<bool>() ? "true" : "false")
     << "\n";
  os << "  J^2 = -I: " << (rep["j_squared_is_minus_identity"].get<bool>() ? "true" : "false")
     << ", iota minimal polynomial: " << (rep["iota_min_poly_ok"].get<bool>() ? "ok" : "FAILED")
     << "\n";
  os << "  signature of H': {" << rep["signature_unordered"][0].get<long>() << ", "
     << rep["signature_unordered"][1].get<long>()
     << "} (this convention: n+=" << rep["signature"]["n_plus"].get<long>()
     << ", n-=" << rep["signature"]["n_minus"].get<long>() << ")\n";
  return os.str();
}

}  // namespace

std::string run(const JobSpec& spec) {
  if (spec.command == "verify") {
    const json rep = verify_report(candidate_from_json(spec.payload));
    return spec.json_output ? rep.dump(2) + "\n" : verify_text(rep);
  }
  if (spec.command == "genus") {
    const json rep = genus_report(spec.payload);
    return spec.json_output ? rep.dump(2) + "\n" : genus_text(rep);
  }
  if (spec.command == "precheck") {
    const json rep = precheck_report(spec.payload);
    return spec.json_output ? rep.dump(2) + "\n" : precheck_text(rep);
  }
  if (spec.command == "census") {
    const long p = require_integer(require_field(spec.payload, "p"), "census: p");
    const long d = require_integer(require_field(spec.payload, "degree"), "census: degree");
    const json& lj = require_field(spec.payload, "lambdas");
    if (!lj.is_array() || lj.empty()) throw validation_error("census: lambdas must be a nonempty array");
    std::vector<unsigned long> lambdas;
    for (const auto& l : lj) {
      const long v = require_integer(l, "census: lambda");
      if (v < 0) throw validation_error("census: lambda must be a nonnegative residue");
      lambdas.push_back(static_cast<unsigned long>(v));
    }
    if (p < 3) throw validation_error("census: p must be an odd prime");
    const CensusReport rep =
        census_report(static_cast<unsigned long>(p), lambdas, d, spec.shards, spec.cache_dir);
    return spec.json_output ? census_report_json(rep).dump(2) + "\n" : census_to_text(rep);
  }
  if (spec.command == "lattice") {
    const json rep = lattice_report(spec.payload, spec.gram_out);
    return spec.json_output ? rep.dump(2) + "\n" : lattice_text(rep);
  }
  throw validation_error("unknown command \"" + spec.command + "\"");
}

int run_to_exit(const JobSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    out << run(spec);
    return 0;
  } catch (const internal_error& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    return 3;
  } catch (const json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace kt
