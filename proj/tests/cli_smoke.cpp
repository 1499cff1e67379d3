// End-to-end smoke test for the installed binary: spawns the real CLI,
// checks exit codes and that repeated runs are byte-identical.
//   cli_smoke <path-to-kummer-binary>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAIL: " << what << "\n";
  }
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cmd(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  return WEXITSTATUS(rc);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: cli_smoke <kummer-binary>\n";
    return 2;
  }
  const std::string bin = argv[1];
  const fs::path dir = fs::temp_directory_path() / "kt_cli_smoke";
  fs::remove_all(dir);
  fs::create_directories(dir);

  {
    std::ofstream f(dir / "cand.json");
    f << R"({"lambdas": ["4","4"],
             "maps": [{"num":["0","1"],"den":["1"]},{"num":["0","1"],"den":["1"]}]})";
  }
  {
    std::ofstream f(dir / "census_p2.json");
    f << R"({"p": 2, "lambdas": [1], "degree": 1})";
  }
  {
    std::ofstream f(dir / "census.json");
    f << R"({"p": 5, "lambdas": [2, 3], "degree": 1})";
  }
  {
    std::ofstream f(dir / "lat.json");
    f << R"({"p": 1, "q": 1, "d": 1, "tau": {"re":"0","imc":"1"}, "taus": [{"re":"0","imc":"1"}]})";
  }

  const std::string out1 = (dir / "out1.txt").string();
  const std::string out2 = (dir / "out2.txt").string();

  int rc = run_cmd(bin + " verify --input " + (dir / "cand.json").string() + " --json > " + out1);
  expect(rc == 0, "verify exits 0");
  rc = run_cmd(bin + " verify --input " + (dir / "cand.json").string() + " --json > " + out2);
  expect(rc == 0, "verify exits 0 on rerun");
  expect(slurp(out1) == slurp(out2), "verify reruns are byte-identical");
  expect(slurp(out1).find("\"strict_ok\": true") != std::string::npos, "verify reports strict_ok");

  rc = run_cmd(bin + " census --input " + (dir / "census_p2.json").string() + " > " + out1 + " 2>/dev/null");
  expect(rc == 2, "census at p = 2 is a validation error (exit 2)");

  rc = run_cmd(bin + " census --input " + (dir / "census.json").string() + " --shards 3 > " + out1);
  expect(rc == 0, "census exits 0");
  rc = run_cmd(bin + " census --input " + (dir / "census.json").string() + " --shards 1 > " + out2);
  expect(rc == 0, "census exits 0 single-shard");
  expect(slurp(out1) == slurp(out2), "census shard counts agree byte for byte");

  const std::string cache = (dir / "cache").string();
  rc = run_cmd(bin + " census --input " + (dir / "census.json").string() + " --cache-dir " + cache +
               " > " + out1);
  expect(rc == 0, "census with cache exits 0");
  expect(fs::exists(dir / "cache" / "table_p5_l2_d1.txt"), "cache file written");
  rc = run_cmd(bin + " census --input " + (dir / "census.json").string() + " --cache-dir " + cache +
               " > " + out2);
  expect(rc == 0, "census from cache exits 0");
  expect(slurp(out1) == slurp(out2), "cache hit reproduces the report");

  rc = run_cmd(bin + " lattice --input " + (dir / "lat.json").string() + " --gram-out " +
               (dir / "gram.txt").string() + " > " + out1);
  expect(rc == 0, "lattice exits 0");
  expect(slurp(dir / "gram.txt") == "0 1 0 0\n-1 0 0 0\n0 0 0 1\n0 0 -1 0\n", "gram export");

  rc = run_cmd(bin + " verify --input " + (dir / "missing.json").string() + " > " + out1 + " 2>/dev/null");
  expect(rc == 2, "missing input file exits 2");

  fs::remove_all(dir);
  if (failures == 0) {
    std::cout << "cli smoke: all checks passed\n";
    return 0;
  }
  std::cerr << failures << " smoke check(s) failed\n";
  return 1;
}
