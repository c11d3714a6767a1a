// edslab: command-line front end. Results go to stdout, diagnostics to stderr.
// Exit codes: 0 ok, 1 verify-paper mismatch, 2 bad input or precondition, 3 internal check failed.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "edslab/acceptance.hpp"
#include "edslab/commands.hpp"

namespace {

struct Flags {
  std::string curve;
  std::string point;
  std::uint64_t bound = 0;
  std::string mod;
  std::string format = "text";
  bool generalized = false;
  unsigned jobs = 1;
  bool singular = false;
  bool exact = false;
  bool no_term_cap = false;
};

edslab::RunConfig to_config(const Flags& f) {
  edslab::RunConfig cfg;
  cfg.curve = f.curve;
  cfg.point = f.point;
  cfg.bound = f.bound;
  if (!f.mod.empty()) {
    cfg.modulus = edslab::parse_integer(f.mod);
    if (*cfg.modulus < 1) throw edslab::Error(edslab::ErrorKind::Precondition, "--mod must be positive");
  }
  cfg.format = edslab::parse_format(f.format);
  cfg.generalized = f.generalized;
  cfg.jobs = f.jobs;
  cfg.allow_singular = f.singular;
  cfg.force_exact = f.exact;
  if (const char* cap = std::getenv("EDSLAB_TERM_CAP")) {
    try {
      cfg.eds.term_cap = std::stoull(cap);
    } catch (const std::exception&) {
      throw edslab::Error(edslab::ErrorKind::Parse, "EDSLAB_TERM_CAP must be a non-negative integer");
    }
  }
  cfg.eds.override_cap = f.no_term_cap;
  return cfg;
}

void add_context_flags(CLI::App* sub, Flags& f, bool needs_point = true) {
  sub->add_option("--curve", f.curve, "curve literal [a1,a2,a3,a4,a6]")->required();
  if (needs_point) sub->add_option("--point", f.point, "point literal (x,y), coordinates may be num/den")->required();
  sub->add_flag("--singular", f.singular, "accept a singular cubic (group law on the non-singular locus)");
  sub->add_option("--format", f.format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elliptic divisibility sequences: index divisibility sets, arrows and aliquot cycles"};
  app.require_subcommand(1);
  Flags f;

  auto* info = app.add_subcommand("info", "invariants, reduction types and the regularity report");
  add_context_flags(info, f);

  auto* eds = app.add_subcommand("eds", "terms D_1..D_N, one 'n<TAB>D_n' per line");
  add_context_flags(eds, f);
  eds->add_option("--bound", f.bound, "number of terms N")->required();
  eds->add_option("--mod", f.mod, "print D_n mod m");
  eds->add_flag("--no-term-cap", f.no_term_cap, "lift the exact-term guard");

  auto* divset = app.add_subcommand("divset", "S(D) = {n <= X : n | D_n}");
  add_context_flags(divset, f);
  divset->add_option("--bound", f.bound, "X")->required();
  divset->add_option("--jobs", f.jobs, "threads for prime scans")->check(CLI::PositiveNumber);
  divset->add_flag("--exact", f.exact, "test n | D_n by valuations even in regular contexts");

  auto* arr = app.add_subcommand("arrows", "arrows of S(D) up to X with their classification");
  add_context_flags(arr, f);
  arr->add_option("--bound", f.bound, "X")->required();
  arr->add_option("--jobs", f.jobs, "threads for prime scans")->check(CLI::PositiveNumber);
  arr->add_flag("--generalized", f.generalized, "allow bad primes in the reported cycles (json)");
  arr->add_flag("--exact", f.exact, "test n | D_n by valuations even in regular contexts");

  auto* aliquot = app.add_subcommand("aliquot", "cycles of p -> r_p among primes up to X");
  add_context_flags(aliquot, f);
  aliquot->add_option("--bound", f.bound, "X")->required();
  aliquot->add_flag("--generalized", f.generalized, "allow bad-reduction primes");

  auto* anomalous = app.add_subcommand("anomalous", "good primes p <= X with #E(F_p) = p");
  add_context_flags(anomalous, f, false);
  anomalous->add_option("--bound", f.bound, "X")->required();
  anomalous->add_option("--jobs", f.jobs, "threads")->check(CLI::PositiveNumber);

  std::uint64_t from = 0, to = 0;
  auto* classify = app.add_subcommand("classify", "classify one arrow n -> m");
  add_context_flags(classify, f);
  classify->add_option("--from", from, "source n")->required();
  classify->add_option("--to", to, "target m")->required();
  classify->add_flag("--exact", f.exact, "test membership by valuations");

  std::string la, lb;
  std::uint64_t lterms = 0;
  auto* lucas = app.add_subcommand("lucas", "Lucas sequence terms, divisibility set and Smyth comparison");
  lucas->add_option("--a", la, "a in L_{n+2} = a L_{n+1} - b L_n")->required();
  lucas->add_option("--b", lb, "b")->required();
  lucas->add_option("--bound", f.bound, "X for the divisibility set");
  lucas->add_option("--terms", lterms, "print L_1..L_N instead");
  lucas->add_option("--format", f.format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));

  std::string spec_file;
  bool symmetric = false;
  auto* construct = app.add_subcommand("construct", "curve with prescribed ranks from lines 'p n k'");
  construct->add_option("spec", spec_file, "prescription file ('-' for stdin)")->required();
  construct->add_flag("--symmetric", symmetric, "recenter CRT coefficients around 0");
  construct->add_option("--format", f.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  edslab::AcceptanceOptions acc;
  std::vector<std::string> expect_fail;
  std::string write_golden;
  auto* verify = app.add_subcommand("verify-paper", "run the acceptance criteria, one line each");
  verify->add_option("--filter", acc.filter, "only ids containing this text");
  verify->add_option("--expect-fail", expect_fail, "ids whose failure is known and recorded");
  verify->add_option("--golden-dir", acc.golden_dir, "also compare outputs with the files in this directory");
  verify->add_option("--write-golden", write_golden, "write the golden files to this directory and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) {
      if (!write_golden.empty()) {
        std::filesystem::create_directories(write_golden);
        for (const auto& [name, gen] : edslab::golden_outputs()) {
          std::ofstream(std::filesystem::path(write_golden) / name, std::ios::binary) << gen();
          std::cerr << "wrote " << name << "\n";
        }
        return 0;
      }
      acc.expected_fail.insert(expect_fail.begin(), expect_fail.end());
      return edslab::run_acceptance(acc, std::cout);
    }
    if (*lucas) {
      std::cout << edslab::cmd_lucas(edslab::parse_integer(la), edslab::parse_integer(lb), f.bound, lterms,
                                     edslab::parse_format(f.format));
      return 0;
    }
    if (*construct) {
      std::vector<edslab::PrescribedDatum> data;
      if (spec_file == "-") {
        data = edslab::parse_prescription(std::cin);
      } else {
        std::ifstream in(spec_file);
        if (!in) throw edslab::Error(edslab::ErrorKind::Precondition, "cannot open " + spec_file);
        data = edslab::parse_prescription(in);
      }
      std::cout << edslab::cmd_construct(data, symmetric, edslab::parse_format(f.format));
      return 0;
    }
    const auto cfg = to_config(f);
    if (*info) std::cout << edslab::cmd_curve_info(cfg);
    if (*eds) std::cout << edslab::cmd_eds(cfg);
    if (*divset) std::cout << edslab::cmd_divset(cfg);
    if (*arr) std::cout << edslab::cmd_arrows(cfg);
    if (*aliquot) std::cout << edslab::cmd_aliquot(cfg);
    if (*anomalous) std::cout << edslab::cmd_anomalous(cfg);
    if (*classify) std::cout << edslab::cmd_classify(cfg, from, to);
    return 0;
  } catch (const edslab::Error& e) {
    std::cerr << "edslab: " << e.what() << "\n";
    return e.is_internal() ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "edslab: " << e.what() << "\n";
    return 3;
  }
}
