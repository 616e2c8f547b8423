#pragma once

// Morse-type inequalities for the d + d^Λ and dd^Λ dimensions. Pure integer
// arithmetic over a table of b_k and h_k and a vector of critical-point
// counts m_0..m_{2n}. Degrees outside [0, 2n] contribute zero.

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace symcoh {

/// Dimensions needed by the inequalities. h_times defaults to h_plus.
struct DimensionTable {
  int n = 0;
  std::vector<long long> b;
  std::vector<long long> h_plus;
  std::vector<long long> h_times;
};

struct MorseBoundRow {
  int k;
  long long h_plus;
  long long bound_plus;   // Σ_i m_{k-2i}
  long long h_times;
  long long bound_times;  // Σ_i m_{2n-k+2i}
  bool passed;
};

struct MorseBoundResult {
  std::vector<MorseBoundRow> rows;  // k = 0..n
  bool passed;
  std::optional<std::string> euler_warning;
};

/// Per-degree verdicts for k ≤ n. Throws std::invalid_argument on a length
/// mismatch or a negative count. An Euler characteristic mismatch between m
/// and b is reported as a warning only.
MorseBoundResult theorem1_check(const DimensionTable& table, const std::vector<long long>& morse);

/// h^{n-2} + 2h^{n-1} + h^n.
long long corollary1_bound(const DimensionTable& table);

/// 2 + Σ b_i, applicable only when corollary1_bound == 1 + Σ b_i.
std::optional<long long> example1_strengthened(const DimensionTable& table);

/// (Σ_i b_{k-2i} + 2τ_{k-2i},  Σ_i b_{2n-k+2i} + 2τ_{2n-k+2i}).
std::pair<long long, long long> corollary2_bound(const std::vector<long long>& betti, const std::vector<long long>& tau,
                                                 int n, int k);

struct FamilyBound {
  long long q, p;
  long long b1, b2, h1, h2;  // b3 = b1, h3 = h1
  long long betti_sum;
  long long deficit;     // q - p - 1 + Σ b_i
  long long corollary1;  // h0 + 2h1 + h2 from the same numbers
  bool consistent;       // h2 - b2 == q - p and deficit == corollary1
  DimensionTable table;
};

/// Dimensions of the McMullen–Taubes family for parameters q ≥ p ≥ 0.
/// Throws std::invalid_argument otherwise.
FamilyBound example2_bound(long long q, long long p);

long long sum(const std::vector<long long>& v);

}  // namespace symcoh
