#include "symcoh/inequality.hpp"

#include <fmt/core.h>

#include <numeric>
#include <stdexcept>

namespace symcoh {

namespace {

long long at(const std::vector<long long>& v, int i) {
  return (i < 0 || i >= static_cast<int>(v.size())) ? 0 : v[static_cast<std::size_t>(i)];
}

}  // namespace

long long sum(const std::vector<long long>& v) { return std::accumulate(v.begin(), v.end(), 0LL); }

MorseBoundResult theorem1_check(const DimensionTable& table, const std::vector<long long>& morse) {
  const int dim = 2 * table.n;
  const auto expected = static_cast<std::size_t>(dim + 1);
  if (morse.size() != expected)
    throw std::invalid_argument(fmt::format("morse data has {} entries, expected {}", morse.size(), expected));
  if (table.h_plus.size() != expected || table.b.size() != expected)
    throw std::invalid_argument("cohomology table length does not match 2n + 1");
  for (long long m : morse)
    if (m < 0) throw std::invalid_argument("morse counts must be non-negative");
  const std::vector<long long>& h_times = table.h_times.empty() ? table.h_plus : table.h_times;

  MorseBoundResult r{{}, true, std::nullopt};
  for (int k = 0; k <= table.n; ++k) {
    long long plus = 0;
    long long times = 0;
    for (int i = 0; k - 2 * i >= 0; ++i) plus += morse[static_cast<std::size_t>(k - 2 * i)];
    for (int i = 0; dim - k + 2 * i <= dim; ++i) times += morse[static_cast<std::size_t>(dim - k + 2 * i)];
    const MorseBoundRow row{k, at(table.h_plus, k), plus, at(h_times, k), times,
                          at(table.h_plus, k) <= plus && at(h_times, k) <= times};
    r.passed = r.passed && row.passed;
    r.rows.push_back(row);
  }

  long long chi_m = 0;
  long long chi_b = 0;
  for (int i = 0; i <= dim; ++i) {
    const long long sign = i % 2 == 0 ? 1 : -1;
    chi_m += sign * morse[static_cast<std::size_t>(i)];
    chi_b += sign * table.b[static_cast<std::size_t>(i)];
  }
  if (chi_m != chi_b)
    r.euler_warning = fmt::format("Σ(-1)^i m_i = {} differs from the Euler characteristic {}", chi_m, chi_b);
  return r;
}

long long corollary1_bound(const DimensionTable& table) {
  const int n = table.n;
  return at(table.h_plus, n - 2) + 2 * at(table.h_plus, n - 1) + at(table.h_plus, n);
}

std::optional<long long> example1_strengthened(const DimensionTable& table) {
  const long long total = sum(table.b);
  if (corollary1_bound(table) != 1 + total) return std::nullopt;
  return 2 + total;
}

std::pair<long long, long long> corollary2_bound(const std::vector<long long>& betti, const std::vector<long long>& tau,
                                                 int n, int k) {
  const int dim = 2 * n;
  long long plus = 0;
  long long times = 0;
  for (int i = 0; k - 2 * i >= 0; ++i) plus += at(betti, k - 2 * i) + 2 * at(tau, k - 2 * i);
  for (int i = 0; dim - k + 2 * i <= dim; ++i) times += at(betti, dim - k + 2 * i) + 2 * at(tau, dim - k + 2 * i);
  return {plus, times};
}

FamilyBound example2_bound(long long q, long long p) {
  if (p < 0 || q < p) throw std::invalid_argument(fmt::format("example2 requires q >= p >= 0, got q = {}, p = {}", q, p));
  FamilyBound f{};
  f.q = q;
  f.p = p;
  f.b1 = q + p + 2;
  f.h1 = q + p + 2;
  f.b2 = 2 * q + 2 * p + 2;
  f.h2 = 3 * q + p + 2;
  f.table.n = 2;
  f.table.b = {1, f.b1, f.b2, f.b1, 1};
  f.table.h_plus = {1, f.h1, f.h2, f.h1, 1};
  f.table.h_times = f.table.h_plus;
  f.betti_sum = sum(f.table.b);
  f.deficit = q - p - 1 + f.betti_sum;
  f.corollary1 = corollary1_bound(f.table);
  f.consistent = (f.h2 - f.b2 == q - p) && (f.deficit == f.corollary1);
  return f;
}

}  // namespace symcoh
