#include <doctest.h>

#include <sstream>

#include "kt/cli.hpp"

using namespace kt;

namespace {

json diag_candidate() {
  return json::parse(R"({
    "lambdas": ["4", "4"],
    "maps": [
      {"num": ["0", "1"], "den": ["1"]},
      {"num": ["0", "1"], "den": ["1"]}
    ]
  })");
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("verify: diagonal candidate report") {
    JobSpec spec{"verify", diag_candidate(), true, 1, "", ""};
    const std::string out = run(spec);
    const json rep = json::parse(out);
    CHECK(rep["strict_ok"] == true);
    CHECK(rep["m"] == 0);
    CHECK(rep["excluded"] == false);
    CHECK(rep["preimage"]["genus"] == 1);
    CHECK(rep["fiber"]["components"] == 2);
    // t(t-1)(t-4) = t^3 - 5t^2 + 4t, constant first
    CHECK(rep["classes"][0] == json::array({"0", "4", "-5", "1"}));
  }

  TEST_CASE("verify: JSON report round-trips") {
    JobSpec spec{"verify", diag_candidate(), true, 1, "", ""};
    const std::string out = run(spec);
    const json rep = json::parse(out);
    JobSpec again{"verify", rep["candidate"], true, 1, "", ""};
    CHECK(run(again) == out);
  }

  TEST_CASE("byte-identical reruns") {
    JobSpec spec{"verify", diag_candidate(), false, 1, "", ""};
    CHECK(run(spec) == run(spec));
    JobSpec census{"census", json::parse(R"({"p": 5, "lambdas": [2, 3], "degree": 1})"), true, 1, "", ""};
    CHECK(run(census) == run(census));
  }

  TEST_CASE("verify: equal-class triples are reported") {
    json payload = json::parse(R"({
      "lambdas": ["4", "4", "4"],
      "maps": [
        {"num": ["0", "1"], "den": ["1"]},
        {"num": ["0", "1"], "den": ["1"]},
        {"num": ["0", "1"], "den": ["1"]}
      ]
    })");
    const json rep = json::parse(run(JobSpec{"verify", payload, true, 1, "", ""}));
    CHECK(rep["triples"] == json::array({json::array({0, 1, 2})}));
    CHECK(rep["partition"] == json::array({json::array({0, 1, 2})}));
  }

  TEST_CASE("verify accepts a single factor") {
    json payload = json::parse(R"({"lambdas": ["4"], "maps": [{"num": ["0", "1"], "den": ["1"]}]})");
    const json rep = json::parse(run(JobSpec{"verify", payload, true, 1, "", ""}));
    CHECK(rep["n"] == 1);
    CHECK(rep["strict_ok"] == true);
    CHECK(rep["m"] == 0);
    CHECK(rep["preimage"]["genus"] == 1);
    CHECK(!rep.contains("fiber"));
  }

  TEST_CASE("genus rejects empty and zero classes") {
    std::ostringstream out, err;
    CHECK(run_to_exit(JobSpec{"genus", json::parse(R"({"classes": []})"), false, 1, "", ""}, out,
                      err) == 2);
    CHECK(run_to_exit(JobSpec{"genus", json::parse(R"({"classes": [["0"]]})"), false, 1, "", ""},
                      out, err) == 2);
  }

  TEST_CASE("genus command") {
    JobSpec spec{"genus", json::parse(R"({"classes": [["0","1"], ["-1","1"], ["-2","1"]]})"), true, 1,
                 "", ""};
    const json rep = json::parse(run(spec));
    CHECK(rep["m"] == 3);
    CHECK(rep["r"] == 4);
    CHECK(rep["genus"] == 1);
  }

  TEST_CASE("precheck command") {
    JobSpec spec{"precheck", json::parse(R"({"D": ["-1", "1"]})"), true, 1, "", ""};
    const json rep = json::parse(run(spec));
    CHECK(rep["unsolvable_over_C"] == true);
    CHECK(rep["genus"] == 0);
  }

  TEST_CASE("census validation errors exit 2") {
    JobSpec bad{"census", json::parse(R"({"p": 2, "lambdas": [1], "degree": 1})"), false, 1, "", ""};
    std::ostringstream out, err;
    CHECK(run_to_exit(bad, out, err) == 2);
    CHECK(err.str().find("invalid input") != std::string::npos);

    JobSpec badl{"census", json::parse(R"({"p": 7, "lambdas": [8], "degree": 1})"), false, 1, "", ""};
    std::ostringstream out2, err2;
    CHECK(run_to_exit(badl, out2, err2) == 2);  // 8 = 1 mod 7: degenerate reduction, fail loudly
  }

  TEST_CASE("census text embeds the match report") {
    JobSpec spec{"census", json::parse(R"({"p": 3, "lambdas": [2], "degree": 1})"), false, 1, "", ""};
    const std::string out = run(spec);
    CHECK(out.find("census p=3 d=1 lambdas=2") == 0);
    CHECK(out.find("match p=3 d=1 lambda1=2 lambda2=2") != std::string::npos);
    CHECK(out.find("totals cross=576") != std::string::npos);  // 24^2 pairs
  }

  TEST_CASE("census json records the F_p-square cofactor count") {
    JobSpec spec{"census", json::parse(R"({"p": 3, "lambdas": [2], "degree": 1})"), true, 1, "", ""};
    const json rep = json::parse(run(spec));
    CHECK(rep["tables"][0]["witnesses"] == 24);
    const std::size_t sq = rep["tables"][0]["square_const"].get<std::size_t>();
    CHECK(sq > 0);
    CHECK(sq < 24);
  }

  TEST_CASE("lattice command") {
    JobSpec spec{"lattice",
                 json::parse(R"({"p": 1, "q": 1, "d": 1,
                                 "tau": {"re": "0", "imc": "1"},
                                 "taus": [{"re": "0", "imc": "1"}]})"),
                 true, 1, "", ""};
    const json rep = json::parse(run(spec));
    CHECK(rep["det_im_h"] == "1");
    CHECK(rep["antisymmetric"] == true);
    CHECK(rep["positive_definite"] == true);
    CHECK(rep["j_squared_is_minus_identity"] == true);
    CHECK(rep["signature_unordered"] == json::array({2, 2}));
  }

  TEST_CASE("lattice off the coherent locus exits 3 (internal consistency)") {
    JobSpec spec{"lattice",
                 json::parse(R"({"p": 1, "q": 1, "d": 1,
                                 "tau": {"re": "0", "imc": "2"},
                                 "taus": [{"re": "0", "imc": "1"}]})"),
                 false, 1, "", ""};
    std::ostringstream out, err;
    CHECK(run_to_exit(spec, out, err) == 3);
    CHECK(err.str().find("internal consistency") != std::string::npos);
  }

  TEST_CASE("malformed payloads are validation errors") {
    std::ostringstream out, err;
    CHECK(run_to_exit(JobSpec{"verify", json::parse(R"({"lambdas": ["1"]})"), false, 1, "", ""}, out,
                      err) == 2);
    CHECK(run_to_exit(JobSpec{"verify",
                              json::parse(R"({"lambdas": ["1"], "maps": [{"num":["1"],"den":["1"]}]})"),
                              false, 1, "", ""},
                      out, err) == 2);  // lambda = 1
    CHECK(run_to_exit(JobSpec{"verify",
                              json::parse(R"({"lambdas": ["2"], "maps": [{"num":["5"],"den":["1"]}]})"),
                              false, 1, "", ""},
                      out, err) == 2);  // constant map
    CHECK(run_to_exit(JobSpec{"nonsense", json::object(), false, 1, "", ""}, out, err) == 2);
    CHECK(run_to_exit(JobSpec{"precheck", json::parse(R"({"D": ["1/0"]})"), false, 1, "", ""}, out,
                      err) == 2);
  }
}
