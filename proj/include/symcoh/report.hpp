#pragma once

// Structured reports shared by the CLI and the acceptance suite. The JSON
// rendering is versioned ("symcoh-report/1") and deterministic: object keys
// are sorted and the timestamp is omitted unless requested.

#include "symcoh/spec_file.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace symcoh {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "symcoh-report/1";

enum class Status { pass, fail, info, inconclusive };

std::string to_string(Status s);

struct Check {
  std::string name;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json expected;
  nlohmann::json got;
  Status status = Status::info;
  std::optional<double> residual;
  std::optional<double> threshold;
  std::string note;
};

struct Section {
  std::string name;
  std::vector<Check> checks;
};

struct Report {
  std::string command;
  std::string input;         // path or parameter summary
  std::uint64_t input_digest = 0;
  std::optional<std::string> timestamp;
  std::vector<Section> sections;

  /// fail if any check fails, else inconclusive if any is, else pass.
  Status overall() const;
  nlohmann::json to_json() const;
  std::string to_markdown() const;
};

/// Process exit code for a status: 0 pass, 1 fail, 3 inconclusive.
int exit_code(Status s);

/// Cohomology table by both routes, table invariants, hard Lefschetz by both
/// criteria, the dd^Λ-side triple kernels and Betti duality.
Section cohomology_section(const LieAlgebraSpec& spec);

/// Every exact operator identity of the complex.
Section identities_section(const LieAlgebraSpec& spec);

/// Per-degree Morse bounds, the middle-degree and torsion bounds and the
/// family bounds. Needs Morse counts, an explicit table or family parameters;
/// throws SpecError when none of them is present.
Section inequality_section(const SpecFile& spec);

struct WittenParams {
  int n = 2;
  std::vector<int> n_p;  // empty: 0..2n
  std::vector<int> k;    // empty: 0..n
  double T = 1.0;
  int eta_max = 6;
  std::uint64_t seed = 1;
  std::size_t trials = 1000;

  /// Canonical one-line description, also the digest input.
  std::string summary() const;
};

/// Per n_p: kernel counts, local identities, eigenvalue formula, sat terms,
/// C_f† bound trials, T² scaling and Hodge duality. Then z-chain counts for
/// every n' ≤ n, coisotropic counts, and a note that global-analysis claims
/// are only supported at model level.
/// Throws std::invalid_argument for n outside [1, 3] or bad lists.
std::vector<Section> witten_sections(const WittenParams& params);

}  // namespace symcoh
