#include "symcoh/exterior.hpp"

#include <algorithm>

namespace symcoh {

BasisIndex BasisIndex::of(std::initializer_list<int> slots) {
  BasisIndex b;
  for (int s : slots) {
    if (s < 1 || s > kMaxBaseDimension) throw std::invalid_argument("BasisIndex: slot out of range");
    const Mask bit = Mask{1} << (s - 1);
    if (b.mask & bit) throw std::invalid_argument("BasisIndex: repeated slot");
    b.mask |= bit;
  }
  return b;
}

std::vector<int> BasisIndex::slots() const {
  std::vector<int> out;
  for (Mask rest = mask; rest; rest &= rest - 1) out.push_back(std::countr_zero(rest) + 1);
  return out;
}

std::string BasisIndex::to_string() const {
  if (mask == 0) return "1";
  std::string out = "dx{";
  bool first = true;
  for (int s : slots()) {
    if (!first) out += ",";
    out += std::to_string(s);
    first = false;
  }
  return out + "}";
}

std::vector<Mask> monomials(int dim, int degree) {
  std::vector<Mask> out;
  if (degree < 0 || degree > dim) return out;
  for (Mask m = 0; m < (Mask{1} << dim); ++m)
    if (std::popcount(m) == degree) out.push_back(m);
  return out;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// ---------------------------------------------------------------------------

SymplecticData::SymplecticData(int n, RationalMatrix omega)
    : n_(n), omega_(std::move(omega)), omega_form_(2 * n, 2) {
  const auto dim = static_cast<std::size_t>(2 * n);
  if (n < 1 || 2 * n > kMaxBaseDimension) throw std::invalid_argument("SymplecticData: n out of range");
  if (omega_.rows() != dim || omega_.cols() != dim)
    throw std::invalid_argument("SymplecticData: omega must be 2n x 2n");
  if (!(omega_ + omega_.transpose()).is_zero())
    throw std::invalid_argument("SymplecticData: omega is not antisymmetric");
  // Orthonormal basis: J has the matrix of omega.
  if (!(omega_ * omega_ + RationalMatrix::identity(dim)).is_zero())
    throw std::invalid_argument("SymplecticData: omega is not compatible with the metric (J^2 != -I)");
  auto inv = inverse(omega_);
  if (!inv) throw std::invalid_argument("SymplecticData: omega is degenerate");
  pi_ = inv->transpose();

  for (int i = 1; i <= 2 * n; ++i)
    for (int j = i + 1; j <= 2 * n; ++j) {
      const Rational& c = omega_(i - 1, j - 1);
      if (sgn(c) != 0) omega_form_.add((Mask{1} << (i - 1)) | (Mask{1} << (j - 1)), c);
    }
}

SymplecticData SymplecticData::darboux(int n) {
  RationalMatrix w(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    w(2 * i, 2 * i + 1) = 1;
    w(2 * i + 1, 2 * i) = -1;
  }
  return SymplecticData(n, std::move(w));
}

SymplecticData SymplecticData::from_pairs(
    int n, const std::vector<std::pair<std::pair<int, int>, Rational>>& entries) {
  RationalMatrix w(2 * n, 2 * n);
  for (const auto& [ij, c] : entries) {
    const auto [i, j] = ij;
    if (i < 1 || j < 1 || i > 2 * n || j > 2 * n || i == j)
      throw std::invalid_argument("SymplecticData: bad omega index pair");
    w(i - 1, j - 1) += c;
    w(j - 1, i - 1) -= c;
  }
  return SymplecticData(n, std::move(w));
}

// ---------------------------------------------------------------------------

KForm lefschetz_L(const SymplecticData& s, const KForm& a) { return wedge(s.omega_form(), a); }

KForm lefschetz_Lambda(const SymplecticData& s, const KForm& a) {
  KForm out(a.dim(), a.degree() - 2);
  if (a.degree() < 2) return out;
  for (Mask target : monomials(a.dim(), a.degree() - 2)) {
    KForm probe(a.dim(), a.degree() - 2);
    probe.add(target, 1);
    out.add(target, inner(lefschetz_L(s, probe), a));
  }
  return out;
}

KForm lefschetz_Lambda_poisson(const SymplecticData& s, const KForm& a) {
  KForm out(a.dim(), a.degree() - 2);
  for (int i = 1; i <= a.dim(); ++i)
    for (int j = i + 1; j <= a.dim(); ++j) {
      const Rational& c = s.pi()(i - 1, j - 1);
      if (sgn(c) != 0) out += contract(j, contract(i, a)) * c;
    }
  return out;
}

KForm lefschetz_L_power(const SymplecticData& s, const KForm& a, int power) {
  KForm out = a;
  for (int i = 0; i < power; ++i) out = lefschetz_L(s, out);
  return out;
}

KForm lefschetz_Lambda_power(const SymplecticData& s, const KForm& a, int power) {
  KForm out = a;
  for (int i = 0; i < power; ++i) out = lefschetz_Lambda(s, out);
  return out;
}

bool is_primitive(const SymplecticData& s, const KForm& a) {
  const bool by_lambda = lefschetz_Lambda(s, a).is_zero();
  const int k = a.degree();
  if (k <= s.n()) {
    const bool by_power = lefschetz_L_power(s, a, s.n() - k + 1).is_zero();
    if (by_power != by_lambda) throw std::logic_error("is_primitive: Λ and L^{n-k+1} criteria disagree");
  }
  return by_lambda;
}

bool is_coeffective(const SymplecticData& s, const KForm& a) {
  const bool by_L = lefschetz_L(s, a).is_zero();
  const int k = a.degree();
  if (k >= s.n()) {
    const bool by_power = lefschetz_Lambda_power(s, a, k - s.n() + 1).is_zero();
    if (by_power != by_L) throw std::logic_error("is_coeffective: L and Λ^{k-n+1} criteria disagree");
  }
  return by_L;
}

RationalMatrix primitive_basis(const SymplecticData& s, int k) {
  const int dim = s.dim();
  const auto src = monomials(dim, k);
  if (k < 2) return RationalMatrix::identity(src.size());
  const auto dst = monomials(dim, k - 2);
  RationalMatrix lam(dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    KForm e(dim, k);
    e.add(src[c], 1);
    const KForm img = lefschetz_Lambda(s, e);
    for (std::size_t r = 0; r < dst.size(); ++r) lam(r, c) = img.coefficient(dst[r]);
  }
  return nullspace(lam);
}

long long dim_primitive(int n, int k) {
  if (k < 0 || k > n) return 0;
  return binomial(2 * n, k) - binomial(2 * n, k - 2);
}

std::vector<LefschetzComponent> primitive_decompose(const SymplecticData& s, const KForm& a) {
  const int dim = s.dim(), n = s.n(), k = a.degree();
  if (a.dim() != dim) throw std::invalid_argument("primitive_decompose: dimension mismatch");
  std::vector<LefschetzComponent> out;
  if (k < 0 || k > dim || a.is_zero()) return out;

  struct Block {
    int r;
    RationalMatrix basis;  // primitive basis in degree k-2r
  };
  std::vector<Block> blocks;
  RationalMatrix images;
  for (int r = std::max(0, k - n); 2 * r <= k; ++r) {
    RationalMatrix basis = primitive_basis(s, k - 2 * r);
    RationalMatrix img(binomial(dim, k), basis.cols());
    for (std::size_t c = 0; c < basis.cols(); ++c) {
      const RationalMatrix v = to_vector(lefschetz_L_power(s, from_column(dim, k - 2 * r, basis, c), r));
      for (std::size_t i = 0; i < v.rows(); ++i) img(i, c) = v(i, 0);
    }
    images = RationalMatrix::hstack(images, img);
    blocks.push_back({r, std::move(basis)});
  }

  auto coeffs = solve(images, to_vector(a));
  if (!coeffs) throw std::logic_error("primitive_decompose: Lefschetz decomposition failed to span");

  std::size_t offset = 0;
  for (const auto& b : blocks) {
    RationalMatrix beta(b.basis.rows(), 1);
    for (std::size_t c = 0; c < b.basis.cols(); ++c)
      for (std::size_t i = 0; i < b.basis.rows(); ++i) beta(i, 0) += b.basis(i, c) * (*coeffs)(offset + c, 0);
    offset += b.basis.cols();
    KForm f = from_column(dim, k - 2 * b.r, beta);
    if (!f.is_zero()) out.push_back({b.r, std::move(f)});
  }
  return out;
}

KForm subspace_form(const SymplecticData& s, const std::vector<std::vector<Rational>>& basis) {
  const int dim = s.dim();
  RationalMatrix vecs(dim, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (static_cast<int>(basis[j].size()) != dim) throw std::invalid_argument("subspace_form: vector length");
    for (int i = 0; i < dim; ++i) vecs(i, j) = basis[j][i];
  }
  if (rank(vecs) != basis.size()) throw std::invalid_argument("subspace_form: basis is linearly dependent");

  KForm out(dim, dim);
  out.add((Mask{1} << dim) - 1, 1);
  for (const auto& v : basis) out = contract(v, out);
  return out;
}

RationalMatrix to_vector(const KForm& a) {
  const auto basis = monomials(a.dim(), a.degree());
  RationalMatrix v(basis.size(), 1);
  for (std::size_t i = 0; i < basis.size(); ++i) v(i, 0) = a.coefficient(basis[i]);
  return v;
}

KForm from_column(int dim, int degree, const RationalMatrix& m, std::size_t col) {
  const auto basis = monomials(dim, degree);
  if (m.rows() != basis.size()) throw std::invalid_argument("from_column: length does not match degree");
  KForm f(dim, degree);
  for (std::size_t i = 0; i < basis.size(); ++i) f.add(basis[i], m(i, col));
  return f;
}

}  // namespace symcoh
