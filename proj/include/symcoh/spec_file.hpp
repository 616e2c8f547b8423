#pragma once

// Loader for the JSON spec documents in corpus/. A spec names a Lie algebra
// (dim, d, omega) and optionally carries Morse counts, torsion counts, an
// explicit cohomology table, or the (q, p) parameters of the McMullen–Taubes
// family. Comments (// and /* */) are allowed.
//
//   {
//     "name": "example1",
//     "dim": 4,
//     "d": [[3, [1, 2], 1], [4, [1, 3], 1]],
//     "omega": [[[1, 4], 1], [[2, 3], 1]],
//     "morse": [1, 2, 4, 2, 1]
//   }
//
// Coefficients are integers or strings "p/q". Indices are 1-based.

#include "symcoh/lie_algebra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace symcoh {

struct ExplicitTable {
  std::vector<long long> b;
  std::vector<long long> h;
};

struct FamilyParams {
  long long q;
  long long p;
};

struct SpecFile {
  std::string name;
  std::optional<LieAlgebraSpec> algebra;
  std::optional<std::vector<long long>> morse;
  std::optional<std::vector<long long>> torsion;
  std::optional<ExplicitTable> table;
  std::optional<FamilyParams> example2;
  std::uint64_t digest = 0;  // FNV-1a 64 of the raw bytes
};

/// Parses a spec document. Errors are SpecError with a "line N, field F"
/// prefix where the location can be determined.
SpecFile parse_spec(const std::string& text);

/// Reads and parses a file; unreadable paths raise SpecError.
SpecFile load_spec(const std::string& path);

/// "p/q" or "p" to an exact rational; throws std::invalid_argument.
Rational parse_rational(const std::string& s);

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace symcoh
