// Command-line front end: exact square-class certificates for rational
// curves on Kummer varieties, genus computations for multiquadratic covers,
// finite-field censuses of low-degree curve witnesses, and the unitary-type
// lattice constructions.  All arithmetic is exact; repeated runs are
// byte-identical.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "kt/cli.hpp"

namespace {

int load_payload(const std::string& path, kt::json& out, std::ostream& err) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) {
      err << "cannot open input file: " << path << "\n";
      return 2;
    }
    buf << in.rdbuf();
  }
  try {
    out = kt::json::parse(buf.str());
  } catch (const kt::json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kummer - exact rational-curve certificates, censuses and unitary lattices"};
  app.require_subcommand(1);

  kt::JobSpec spec;
  std::string input;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", input, "JSON input file (- for stdin)")->required();
    sub->add_flag("--json", spec.json_output, "emit the machine-readable JSON report");
  };

  CLI::App* verify = app.add_subcommand("verify", "analyze a diagonal rational-curve candidate");
  add_common(verify);
  CLI::App* genus = app.add_subcommand("genus", "genus of the multiquadratic cover of a class set");
  add_common(genus);
  CLI::App* precheck = app.add_subcommand("precheck", "genus-0 solvability precheck for a class D");
  add_common(precheck);
  CLI::App* census = app.add_subcommand("census", "exhaustive bounded-degree census over F_p");
  add_common(census);
  census->add_option("--shards", spec.shards, "parallel shards (output is shard-count invariant)")
      ->default_val(1u);
  census->add_option("--cache-dir", spec.cache_dir, "on-disk class-table cache directory");
  CLI::App* lattice = app.add_subcommand("lattice", "unitary-type lattice: Im H, H blocks, signature");
  add_common(lattice);
  lattice->add_option("--gram-out", spec.gram_out, "write the Im H Gram matrix to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  spec.command = app.get_subcommands().front()->get_name();
  if (const int rc = load_payload(input, spec.payload, std::cerr)) return rc;
  return kt::run_to_exit(spec, std::cout, std::cerr);
}
