#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "kt/curves.hpp"
#include "kt/rat.hpp"

namespace kt {

using json = nlohmann::ordered_json;

// One CLI invocation: a command, its JSON payload, and the output switches.
// Payloads validate against the per-command schema before any computation.
struct JobSpec {
  std::string command;  // verify | genus | precheck | census | lattice
  json payload;
  bool json_output = false;
  unsigned shards = 1;
  std::string cache_dir;
  std::string gram_out;  // lattice: optional path for the Im H Gram matrix
};

// Runs the job and returns the report.  Throws validation_error (or the
// JSON library's parse errors) on bad input and internal_error on broken
// internal expectations.  Reports are byte-identical for identical specs.
std::string run(const JobSpec& spec);

// Exception-to-exit-code wrapper: 0 ok, 2 validation, 3 internal
// consistency.  Reports go to `out`, diagnostics to `err`.
int run_to_exit(const JobSpec& spec, std::ostream& out, std::ostream& err);

// JSON codecs shared with the tests (schema: coefficients constant term
// first, exact rationals as "a/b" strings).
Poly<Rat> poly_from_json(const json& coeffs);
json poly_to_json(const Poly<Rat>& f);
CurveCandidate<Rat> candidate_from_json(const json& j);
json candidate_to_json(const CurveCandidate<Rat>& cand);

}  // namespace kt
