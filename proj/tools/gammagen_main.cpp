#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "gammagen/commands.hpp"
#include "gammagen/error.hpp"

using namespace gammagen;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

int emit(const CommandResult& r, const std::string& format) {
  if (format == "table") std::cout << render_table(r.records);
  else
    for (const auto& line : r.records) std::cout << line << '\n';
  std::cerr << r.summary << '\n';
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of generating sets, word bounds and twist identities for Gamma0(N)"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 1;
  std::string emit_format = "jsonl";
  app.add_option("--seed", seed, "Seed for randomized runs");
  app.add_option("--emit", emit_format, "Output format")->check(CLI::IsMember({"jsonl", "table"}));

  std::function<CommandResult()> run;

  auto* gens = app.add_subcommand("gens", "Certify a generating set of Gamma0(N) by coset enumeration");
  long gens_n = 0;
  bool gens_all = false;
  std::vector<std::string> gens_mats;
  std::size_t gens_cosets = 2'000'000;
  gens->add_option("N", gens_n, "Level");
  gens->add_flag("--all", gens_all, "Every tabulated level");
  gens->add_option("--matrix", gens_mats, "Generator as [[a,b],[c,d]] (repeatable)");
  gens->add_option("--max-cosets", gens_cosets, "Coset limit");
  gens->callback([&] {
    run = [&] {
      if (gens_all) return cmd_gens_table(gens_cosets);
      if (gens_n < 1) throw CLI::ValidationError("gens", "give N or --all");
      std::vector<Mat2> mats;
      for (const auto& s : gens_mats) mats.push_back(parse_mat2(s));
      return cmd_gens(gens_n, mats, gens_cosets);
    };
  });

  auto* ids = app.add_subcommand("identities", "Check the displayed matrix identities and trace conditions");
  ids->callback([&] { run = [] { return cmd_identities(); }; });

  auto* vh = app.add_subcommand("verify-hq", "Verify that H_q contains Gamma1(N) for a range of q");
  VerifyHqConfig vcfg;
  vh->add_option("--level", vcfg.N, "Level N")->required();
  vh->add_option("--q-from", vcfg.q_from, "Smallest q")->required();
  vh->add_option("--q-to", vcfg.q_to, "Largest q")->required();
  vh->add_flag("--primes-only", vcfg.primes_only, "Only prime q");
  vh->add_option("--height-bound,--height", vcfg.height_bound, "Height bound of the witness search");
  vh->add_option("--max-cosets", vcfg.max_cosets, "Coset limit of the fallback");
  vh->add_option("--witness-cache,--cache", vcfg.witness_cache, "Witness cache file (default $GAMMAGEN_CACHE)");
  bool no_fallback = false;
  vh->add_flag("--no-coset-fallback", no_fallback, "Leave sieve failures inconclusive");
  vh->callback([&] {
    run = [&] {
      if (vcfg.witness_cache.empty())
        if (const char* env = std::getenv("GAMMAGEN_CACHE")) vcfg.witness_cache = env;
      vcfg.coset_fallback = !no_fallback;
      return cmd_verify_hq(vcfg);
    };
  });

  auto* tf = app.add_subcommand("twist-fe", "Check the twist ratio and its functional equation");
  TwistFeOptions topts;
  std::string coeffs_path;
  bool random_coeffs = false;
  int random_count = 20;
  long random_modulus = 60;
  tf->add_option("--coeffs", coeffs_path, "Coefficient JSON file");
  tf->add_option("--modulus", topts.modulus, "Character modulus q");
  tf->add_flag("--all-characters", topts.all_characters, "Every character mod q");
  tf->add_option("--character", topts.character, "Character exponents on the unit group generators");
  tf->add_option("--oracle-x", topts.oracle_x, "Check the series identity up to this n (0 skips)");
  tf->add_flag("--random-coeffs", random_coeffs, "Random coefficients and characters from --seed");
  tf->add_option("--count", random_count, "Random instances");
  tf->add_option("--max-modulus", random_modulus, "Largest random modulus");
  tf->callback([&] {
    run = [&] {
      if (random_coeffs) return cmd_twist_fe_random(seed, random_count, random_modulus, topts.oracle_x);
      if (coeffs_path.empty()) throw CLI::ValidationError("twist-fe", "give --coeffs or --random-coeffs");
      topts.coeffs_json = read_file(coeffs_path);
      return cmd_twist_fe(topts);
    };
  });

  auto* rs = app.add_subcommand("ramanujan", "Ramanujan sum c_q(n)");
  long rq = 1, rn = 0;
  rs->add_option("q", rq)->required();
  rs->add_option("n", rn)->required();
  rs->callback([&] { run = [&] { return cmd_ramanujan(rq, rn); }; });

  auto* orth = app.add_subcommand("orthogonality", "Orthogonality of the c_chi on Z/Q");
  long oq = 1;
  orth->add_option("Q", oq)->required();
  orth->callback([&] { run = [&] { return cmd_orthogonality(oq); }; });

  auto* kd = app.add_subcommand("keydet", "Exact nonvanishing of the exponential-sum determinant");
  long km = 1, kn = 1;
  std::vector<long> kprimes;
  std::string ksubsets;
  int krandom = 0, kmax_h = 4;
  long kmax_q = 13, kmax_m = 6;
  kd->add_option("--m", km);
  kd->add_option("--n", kn);
  kd->add_option("--primes", kprimes)->delimiter(',');
  kd->add_option("--subsets", ksubsets, "JSON file with the h x h subsets");
  kd->add_option("--random", krandom, "Random instances from --seed");
  kd->add_option("--max-h", kmax_h);
  kd->add_option("--max-q", kmax_q);
  kd->add_option("--max-m", kmax_m);
  kd->callback([&] {
    run = [&] {
      if (krandom > 0) return cmd_keydet_random(seed, krandom, kmax_h, kmax_q, kmax_m);
      if (ksubsets.empty()) throw CLI::ValidationError("keydet", "give --subsets or --random");
      return cmd_keydet(km, kn, kprimes, read_file(ksubsets));
    };
  });

  auto* dc = app.add_subcommand("decompose", "Factor a matrix of Gamma0(N) into generators");
  long dn = 1;
  std::string dm;
  dc->add_option("N", dn)->required();
  dc->add_option("matrix", dm, "[[a,b],[c,d]]")->required();
  dc->callback([&] { run = [&] { return cmd_decompose(dn, dm); }; });

  auto* wd = app.add_subcommand("words", "Enumerate reduced words in T, W up to a height bound");
  WordsOptions wopts;
  wd->add_option("N", wopts.N)->required();
  wd->add_option("--height", wopts.height)->required();
  wd->add_flag("--below", wopts.below, "Strict bound");
  wd->add_flag("--count-only", wopts.count_only);
  wd->add_option("--max-length", wopts.max_length, "Length cap for N <= 3");
  wd->callback([&] { run = [&] { return cmd_words(wopts); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    return emit(run(), emit_format);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cout << "{\"error\":" << quote(e.what()) << "}\n";
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
