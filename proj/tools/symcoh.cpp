// symcoh: cohomology tables, identity checks, local-model verification and
// Morse-type inequality reports for symplectic invariant-form complexes.

#include "symcoh/inequality.hpp"
#include "symcoh/report.hpp"
#include "symcoh/spec_file.hpp"
#include "symcoh/symplectic_hodge.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using namespace symcoh;

struct RunConfig {
  std::string command;
  std::string input;
  std::string format = "md";
  WittenParams witten;
  bool timestamp = false;
};

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

SpecFile require_spec(const RunConfig& cfg) {
  if (cfg.input.empty()) throw SpecError("--input is required for " + cfg.command);
  return load_spec(cfg.input);
}

const LieAlgebraSpec& require_algebra(const SpecFile& spec) {
  if (!spec.algebra) throw SpecError("field dim: " + spec.name + " has no Lie algebra (dim, d, omega)");
  return *spec.algebra;
}

Report run(const RunConfig& cfg) {
  Report r;
  r.command = cfg.command;
  if (cfg.timestamp) r.timestamp = utc_now();

  const bool spec_based = cfg.command != "witten-local";
  const bool witten = cfg.command == "witten-local" || cfg.command == "all";
  std::optional<SpecFile> spec;
  if (spec_based && !(cfg.command == "all" && cfg.input.empty())) spec = require_spec(cfg);

  std::string digest_input;
  if (spec) {
    r.input = cfg.input;
    digest_input = std::to_string(spec->digest);
  }
  if (witten) {
    r.input += (r.input.empty() ? "" : "; ") + cfg.witten.summary();
    digest_input += cfg.witten.summary();
  }
  r.input_digest = spec && !witten ? spec->digest : fnv1a64(digest_input);

  if (cfg.command == "cohomology") {
    r.sections.push_back(cohomology_section(require_algebra(*spec)));
  } else if (cfg.command == "verify-identities") {
    r.sections.push_back(identities_section(require_algebra(*spec)));
  } else if (cfg.command == "inequalities") {
    r.sections.push_back(inequality_section(*spec));
  } else if (cfg.command == "all" && spec) {
    if (spec->algebra) {
      r.sections.push_back(cohomology_section(*spec->algebra));
      r.sections.push_back(identities_section(*spec->algebra));
    }
    if (spec->morse || spec->table || spec->example2) r.sections.push_back(inequality_section(*spec));
  }
  if (witten)
    for (auto& s : witten_sections(cfg.witten)) r.sections.push_back(std::move(s));
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Symplectic Bott-Chern and Aeppli cohomology toolkit"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1, 1);

  const std::vector<std::string> names = {"cohomology", "verify-identities", "witten-local", "inequalities", "all"};
  const std::vector<std::string> help = {
      "dimension table of a Lie-algebra spec by quotient ranks and harmonic kernels",
      "exact operator identities of a Lie-algebra spec",
      "truncated oscillator model of the deformed operators near a critical point",
      "Morse-type inequalities from Morse counts, an explicit table or family parameters",
      "every check that applies to the input, plus the local model"};
  for (std::size_t i = 0; i < names.size(); ++i) {
    CLI::App* sub = app.add_subcommand(names[i], help[i]);
    sub->add_option("--input", cfg.input, "spec file");
    sub->add_option("--format", cfg.format, "md or data (JSON)")->check(CLI::IsMember({"md", "data"}));
    sub->add_flag("--timestamp", cfg.timestamp, "record the UTC run time in the report");
    if (names[i] == "witten-local" || names[i] == "all") {
      sub->add_option("--n", cfg.witten.n, "half dimension, at most 3")->check(CLI::Range(1, 3));
      sub->add_option("--np", cfg.witten.n_p, "Morse indices (default 0..2n)")->delimiter(',');
      sub->add_option("--k", cfg.witten.k, "form degrees (default 0..n)")->delimiter(',');
      sub->add_option("--T", cfg.witten.T, "deformation parameter")->check(CLI::PositiveNumber);
      sub->add_option("--eta-max", cfg.witten.eta_max, "oscillator cutoff")->check(CLI::Range(4, 16));
      sub->add_option("--seed", cfg.witten.seed, "seed for the random bound trials");
      sub->add_option("--trials", cfg.witten.trials, "random states per (n_p, k)");
    }
    if (names[i] != "witten-local" && names[i] != "all") sub->get_option("--input")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    const Report r = run(cfg);
    if (cfg.format == "data")
      std::cout << r.to_json().dump(2) << "\n";
    else
      std::cout << r.to_markdown();
    const Status s = r.overall();
    if (s == Status::inconclusive)
      std::cerr << "symcoh: kernel detection inconclusive; rerun with a larger --eta-max\n";
    return exit_code(s);
  } catch (const SpecError& e) {
    std::cerr << "symcoh: " << (cfg.input.empty() ? "" : cfg.input + ": ") << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "symcoh: " << e.what() << "\n";
    return 2;
  } catch (const ConstructionMismatch& e) {
    std::cerr << "symcoh: internal cross-check failed: " << e.what() << "\n";
    return 1;
  }
}
