#include "symcoh/witten_local.hpp"

#include <fmt/core.h>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace symcoh {

namespace {

using Triplet = Eigen::Triplet<double>;

void enumerate_occupations(int slots, int budget, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == slots) {
    out.push_back(current);
    return;
  }
  for (int m = 0; m <= budget; ++m) {
    current.push_back(m);
    enumerate_occupations(slots, budget - m, current, out);
    current.pop_back();
  }
}

SparseMatrix selection(const LocalModel& m, const std::vector<std::size_t>& states) {
  std::vector<Triplet> t;
  for (std::size_t c = 0; c < states.size(); ++c) t.emplace_back(static_cast<int>(states[c]), static_cast<int>(c), 1.0);
  SparseMatrix s(static_cast<Eigen::Index>(m.size()), static_cast<Eigen::Index>(states.size()));
  s.setFromTriplets(t.begin(), t.end());
  return s;
}

SparseMatrix identity_like(std::size_t n) {
  SparseMatrix id(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  id.setIdentity();
  return id;
}

/// Sign pair sum s_i = λ_{2i-1} + λ_{2i}, i = 1..n.
double pair_sum(const std::vector<int>& lambda, int i) { return lambda[2 * i - 2] + lambda[2 * i - 1]; }

/// λ_{Ji}: λ_{J(2i-1)} = λ_{2i}, λ_{J(2i)} = λ_{2i-1}.
int lambda_J(const std::vector<int>& lambda, int slot) {
  return slot % 2 == 1 ? lambda[slot] : lambda[slot - 2];
}

Eigen::MatrixXd to_dense(const RationalMatrix& m) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c).get_d();
  return out;
}

}  // namespace

std::vector<int> lambda_signs(int n, int n_p) {
  if (n < 1) throw std::invalid_argument("lambda_signs: n must be positive");
  if (n_p < 0 || n_p > 2 * n) throw std::invalid_argument(fmt::format("lambda_signs: n_p = {} outside [0, {}]", n_p, 2 * n));
  std::vector<int> lambda(2 * n);
  for (int i = 1; i <= n; ++i) {
    int odd = 1;
    int even = 1;
    if (n_p <= n) {
      if (i <= n_p) odd = -1;
    } else if (i <= 2 * n - n_p) {
      odd = -1;
    } else {
      odd = -1;
      even = -1;
    }
    lambda[2 * i - 2] = odd;
    lambda[2 * i - 1] = even;
  }
  return lambda;
}

LocalModel::LocalModel(const LocalModelConfig& cfg)
    : LocalModel(cfg.n, lambda_signs(cfg.n, cfg.n_p), cfg.T, cfg.eta_max) {}

LocalModel::LocalModel(int n, std::vector<int> lambda, double T, int eta_max)
    : n_(n), lambda_(std::move(lambda)), T_(T), eta_max_(eta_max) {
  if (n < 1 || 2 * n > kMaxBaseDimension) throw std::invalid_argument("LocalModel: n out of range");
  if (static_cast<int>(lambda_.size()) != 2 * n) throw std::invalid_argument("LocalModel: need 2n signs");
  for (int l : lambda_)
    if (l != 1 && l != -1) throw std::invalid_argument("LocalModel: signs must be +1 or -1");
  if (!(T > 0)) throw std::invalid_argument("LocalModel: T must be positive");
  if (eta_max < 0) throw std::invalid_argument("LocalModel: eta_max must be non-negative");

  std::vector<int> current;
  enumerate_occupations(2 * n, eta_max, current, occupations_);
  std::stable_sort(occupations_.begin(), occupations_.end(), [](const auto& a, const auto& b) {
    int ea = 0;
    int eb = 0;
    for (int v : a) ea += v;
    for (int v : b) eb += v;
    return ea < eb;
  });
  for (std::size_t i = 0; i < occupations_.size(); ++i) {
    int e = 0;
    for (int v : occupations_[i]) e += v;
    etas_.push_back(e);
    occupation_lookup_.emplace(occupations_[i], i);
  }

  const int dim = 2 * n;
  d_ = SparseMatrix(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
  d_star_ = d_;
  dLambda_ = d_;
  dLambda_star_ = d_;
  std::vector<SparseMatrix> D, Dd, e, ed;
  for (int i = 1; i <= dim; ++i) {
    D.push_back(ladder_D(i));
    Dd.push_back(ladder_Ddag(i));
    e.push_back(wedge_e(i));
    ed.push_back(contract_e(i));
  }
  for (int i = 0; i < dim; ++i) {
    d_ += D[i] * e[i];
    d_star_ += Dd[i] * ed[i];
  }
  for (int i = 1; i <= n; ++i) {
    const int odd = 2 * i - 2;
    const int even = 2 * i - 1;
    dLambda_ += D[even] * ed[odd] - D[odd] * ed[even];
    dLambda_star_ += Dd[even] * e[odd] - Dd[odd] * e[even];
  }

  const SymplecticData sd = SymplecticData::darboux(n);
  L_ = form_operator([&](const KForm& a) { return lefschetz_L(sd, a); });
  Lambda_ = form_operator([&](const KForm& a) { return lefschetz_Lambda(sd, a); });
  H_ = form_operator([](const KForm& a) { return counting_H(a); });
  star_ = form_operator([](const KForm& a) { return hodge_star(a); });

  C_ = SparseMatrix(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
  C_dag_ = C_;
  M_ = C_;
  const SparseMatrix id = identity_like(size());
  for (int i = 1; i <= n; ++i) {
    const double s = pair_sum(lambda_, i);
    if (s == 0) continue;
    const int odd = 2 * i - 2;
    const int even = 2 * i - 1;
    C_ += (-2.0 * T_ * s) * SparseMatrix(e[odd] * e[even]);
    C_dag_ += (2.0 * T_ * s) * SparseMatrix(ed[odd] * ed[even]);
    M_ += (2.0 * T_ * s) * SparseMatrix(e[odd] * ed[odd] + e[even] * ed[even] - id);
  }

  std::vector<Triplet> lap;
  std::vector<Triplet> lapL;
  for (std::size_t s = 0; s < size(); ++s) {
    const Mask J = form(s);
    double v = 2.0 * T_ * eta(s);
    double w = v;
    for (int slot = 1; slot <= dim; ++slot) {
      const double in = (J >> (slot - 1)) & 1U;
      const double l = lambda_[slot - 1];
      const double lj = lambda_J(lambda_, slot);
      v += T_ * (1.0 - l + 2.0 * l * in);
      w += T_ * (1.0 + lj - 2.0 * lj * in);
    }
    lap.emplace_back(static_cast<int>(s), static_cast<int>(s), v);
    lapL.emplace_back(static_cast<int>(s), static_cast<int>(s), w);
  }
  laplacian_ = SparseMatrix(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
  laplacian_.setFromTriplets(lap.begin(), lap.end());
  dLambda_laplacian_ = laplacian_;
  dLambda_laplacian_.setFromTriplets(lapL.begin(), lapL.end());
}

std::size_t LocalModel::occupation_index(const std::vector<int>& occ) const {
  const auto it = occupation_lookup_.find(occ);
  if (it == occupation_lookup_.end()) throw std::out_of_range("LocalModel: occupation outside the truncation");
  return it->second;
}

std::vector<std::size_t> LocalModel::interior(int margin, int degree) const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < size(); ++s)
    if (eta(s) <= eta_max_ - margin && (degree < 0 || this->degree(s) == degree)) out.push_back(s);
  return out;
}

SparseMatrix LocalModel::ladder_D(int i) const {
  // λ = +1: √(2T) a;  λ = -1: -√(2T) a†.
  const bool plus = lambda_[i - 1] == 1;
  std::vector<Triplet> t;
  const Mask forms = Mask{1} << dim();
  for (std::size_t o = 0; o < occupations_.size(); ++o) {
    std::vector<int> target = occupations_[o];
    double amp = 0;
    if (plus) {
      if (target[i - 1] == 0) continue;
      amp = std::sqrt(2.0 * T_ * target[i - 1]);
      --target[i - 1];
    } else {
      if (etas_[o] + 1 > eta_max_) continue;
      amp = -std::sqrt(2.0 * T_ * (target[i - 1] + 1));
      ++target[i - 1];
    }
    const std::size_t to = occupation_index(target);
    for (Mask f = 0; f < forms; ++f) t.emplace_back(static_cast<int>(state(to, f)), static_cast<int>(state(o, f)), amp);
  }
  SparseMatrix out(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

SparseMatrix LocalModel::ladder_Ddag(int i) const {
  // λ = +1: √(2T) a†;  λ = -1: -√(2T) a.
  const bool plus = lambda_[i - 1] == 1;
  std::vector<Triplet> t;
  const Mask forms = Mask{1} << dim();
  for (std::size_t o = 0; o < occupations_.size(); ++o) {
    std::vector<int> target = occupations_[o];
    double amp = 0;
    if (plus) {
      if (etas_[o] + 1 > eta_max_) continue;
      amp = std::sqrt(2.0 * T_ * (target[i - 1] + 1));
      ++target[i - 1];
    } else {
      if (target[i - 1] == 0) continue;
      amp = -std::sqrt(2.0 * T_ * target[i - 1]);
      --target[i - 1];
    }
    const std::size_t to = occupation_index(target);
    for (Mask f = 0; f < forms; ++f) t.emplace_back(static_cast<int>(state(to, f)), static_cast<int>(state(o, f)), amp);
  }
  SparseMatrix out(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

SparseMatrix LocalModel::wedge_e(int i) const {
  std::vector<Triplet> t;
  for (std::size_t s = 0; s < size(); ++s)
    if (const auto r = wedge_slot(i, form(s)))
      t.emplace_back(static_cast<int>(state(s >> dim(), r->second)), static_cast<int>(s), r->first);
  SparseMatrix out(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

SparseMatrix LocalModel::contract_e(int i) const {
  std::vector<Triplet> t;
  for (std::size_t s = 0; s < size(); ++s)
    if (const auto r = contract_slot(i, form(s)))
      t.emplace_back(static_cast<int>(state(s >> dim(), r->second)), static_cast<int>(s), r->first);
  SparseMatrix out(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

SparseMatrix LocalModel::form_operator(const std::function<KForm(const KForm&)>& f) const {
  const Mask forms = Mask{1} << dim();
  std::vector<std::vector<std::pair<Mask, double>>> images(forms);
  for (Mask m = 0; m < forms; ++m) {
    KForm a(dim(), std::popcount(m));
    a.add(m, 1);
    const KForm image = f(a);
    for (const auto& [mask, c] : image.terms()) images[m].emplace_back(mask, c.get_d());
  }
  std::vector<Triplet> t;
  for (std::size_t o = 0; o < occupations_.size(); ++o)
    for (Mask m = 0; m < forms; ++m)
      for (const auto& [mask, c] : images[m]) t.emplace_back(static_cast<int>(state(o, mask)), static_cast<int>(state(o, m)), c);
  SparseMatrix out(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

SparseMatrix LocalModel::apply_DPT(const SparseMatrix& X) const {
  const SparseMatrix dX = d_ * X;
  const SparseMatrix dsX = d_star_ * X;
  SparseMatrix out = d_star_ * SparseMatrix(d_ * SparseMatrix(d_star_ * dX));
  out += dLambda_star_ * SparseMatrix(d_ * SparseMatrix(d_star_ * SparseMatrix(dLambda_ * X)));
  out += d_ * SparseMatrix(dLambda_ * SparseMatrix(dLambda_star_ * dsX));
  out.prune(0.0);
  return out;
}

SparseMatrix LocalModel::apply_DPT_local_form(const SparseMatrix& X) const {
  SparseMatrix out = laplacian_ * SparseMatrix(laplacian_ * X);
  out += dLambda_star_ * SparseMatrix(d_ * SparseMatrix(C_dag_ * X));
  out += C_ * SparseMatrix(d_star_ * SparseMatrix(dLambda_ * X));
  out -= C_ * SparseMatrix(C_dag_ * X);
  out -= d_ * SparseMatrix(M_ * SparseMatrix(d_star_ * X));
  out.prune(0.0);
  return out;
}

SparseMatrix LocalModel::primitive_states(int k, int margin) const {
  SparseMatrix out;
  if (k < 0 || k > n_) return SparseMatrix(static_cast<Eigen::Index>(size()), 0);
  const Eigen::MatrixXd basis = to_dense(primitive_basis(SymplecticData::darboux(n_), k));
  const Eigen::Index p = basis.cols();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
  const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(basis.rows(), p);
  const auto monos = monomials(dim(), k);
  std::vector<Triplet> t;
  int col = 0;
  for (std::size_t o = 0; o < occupations_.size(); ++o) {
    if (etas_[o] > eta_max_ - margin) continue;
    for (Eigen::Index c = 0; c < p; ++c, ++col)
      for (std::size_t r = 0; r < monos.size(); ++r)
        if (Q(static_cast<Eigen::Index>(r), c) != 0.0)
          t.emplace_back(static_cast<int>(state(o, monos[r])), col, Q(static_cast<Eigen::Index>(r), c));
  }
  out = SparseMatrix(static_cast<Eigen::Index>(size()), col);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

Eigen::VectorXd LocalModel::ground_generator(int n_p) const {
  if (n_p < 0 || n_p > n_) throw std::invalid_argument("ground_generator: requires 0 <= n_p <= n");
  Mask J = 0;
  for (int i = 1; i <= n_p; ++i) J |= Mask{1} << (2 * i - 2);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size()));
  v(static_cast<Eigen::Index>(state(occupation_index(std::vector<int>(dim(), 0)), J))) = 1.0;
  return v;
}

double eigenvalue_W(int n, int n_p, double T, int eta, Mask J) {
  const int k = std::popcount(J);
  int extra = 0;
  for (int slot = 1; slot <= 2 * n; ++slot) {
    if (!((J >> (slot - 1)) & 1U)) continue;
    if (n_p <= n) {
      const bool r_plus = slot > 2 * n_p;
      const bool r_zero = slot % 2 == 0 && slot / 2 <= n_p;
      extra += (r_plus || r_zero) ? 1 : 0;
    } else {
      extra += (slot % 2 == 0 && slot / 2 <= 2 * n - n_p) ? 1 : 0;
    }
  }
  return 2.0 * T * (eta + n_p - k + 2 * extra);
}

// ---------------------------------------------------------------------------
// Identity checks

namespace {

struct Residual {
  const LocalModel& m;
  double tolerance;
  std::vector<LocalCheck>& out;

  /// Relative Frobenius residual of lhs - rhs, both already applied to the
  /// interior selection, against the natural size (2T)^{order/2} per column.
  void operator()(const std::string& group, const std::string& name, const SparseMatrix& lhs,
                  const SparseMatrix& rhs, double order) const {
    const double cols = std::max<double>(1.0, static_cast<double>(lhs.cols()));
    const double scale = std::pow(2.0 * m.T(), order / 2.0) * std::sqrt(cols);
    const double den = std::max({lhs.norm(), rhs.norm(), scale});
    const double r = SparseMatrix(lhs - rhs).norm() / den;
    out.push_back({group, name, r, tolerance, r < tolerance});
  }
};

SparseMatrix comm(const SparseMatrix& a, const SparseMatrix& b, const SparseMatrix& S) {
  return SparseMatrix(a * SparseMatrix(b * S)) - SparseMatrix(b * SparseMatrix(a * S));
}

SparseMatrix anti(const SparseMatrix& a, const SparseMatrix& b, const SparseMatrix& S) {
  return SparseMatrix(a * SparseMatrix(b * S)) + SparseMatrix(b * SparseMatrix(a * S));
}

}  // namespace

std::vector<LocalCheck> verify_local_identities(const LocalModel& m, double tolerance) {
  std::vector<LocalCheck> out;
  Residual check{m, tolerance, out};
  const SparseMatrix S0 = selection(m, m.interior(0));
  const SparseMatrix S1 = selection(m, m.interior(1));
  const SparseMatrix S2 = selection(m, m.interior(2));
  const SparseMatrix Z1(static_cast<Eigen::Index>(m.size()), S1.cols());
  const SparseMatrix Z2(static_cast<Eigen::Index>(m.size()), S2.cols());
  const SparseMatrix Z0(static_cast<Eigen::Index>(m.size()), S0.cols());
  const double T = m.T();
  const int dim = m.dim();

  // Ladder relations, aggregated over all pairs (i, j).
  {
    std::vector<SparseMatrix> D, Dd;
    for (int i = 1; i <= dim; ++i) {
      D.push_back(m.ladder_D(i));
      Dd.push_back(m.ladder_Ddag(i));
    }
    double worst[3] = {0, 0, 0};
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        std::vector<LocalCheck> tmp;
        Residual one{m, tolerance, tmp};
        one("ladder", "", comm(D[i], D[j], S2), Z2, 2);
        one("ladder", "", comm(Dd[i], Dd[j], S2), Z2, 2);
        const SparseMatrix expected = (i == j ? 2.0 * T * m.lambda()[i] : 0.0) * S2;
        one("ladder", "", comm(D[i], Dd[j], S2), expected, 2);
        for (int q = 0; q < 3; ++q) worst[q] = std::max(worst[q], tmp[q].residual);
      }
    out.push_back({"ladder", "[D_i, D_j] = 0", worst[0], tolerance, worst[0] < tolerance});
    out.push_back({"ladder", "[D_i†, D_j†] = 0", worst[1], tolerance, worst[1] < tolerance});
    out.push_back({"ladder", "[D_i, D_j†] = 2Tλ_i δ_ij", worst[2], tolerance, worst[2] < tolerance});
  }

  const SparseMatrix& d = m.d();
  const SparseMatrix& ds = m.d_star();
  const SparseMatrix& dL = m.dLambda();
  const SparseMatrix& dLs = m.dLambda_star();
  const SparseMatrix& L = m.L();
  const SparseMatrix& Lam = m.Lambda();
  const SparseMatrix& H = m.H();
  const SparseMatrix& C = m.C();
  const SparseMatrix& Cd = m.C_dag();
  const SparseMatrix& M = m.M();

  check("adjoint", "d_f* = d_fᵀ", ds, SparseMatrix(d.transpose()), 1);
  check("adjoint", "d^Λ_f* = (d^Λ_f)ᵀ", dLs, SparseMatrix(dL.transpose()), 1);
  check("adjoint", "C_f† = C_fᵀ", Cd, SparseMatrix(C.transpose()), 2);
  check("adjoint", "d^Λ_f* = [L, d_f*]", comm(L, ds, S1), SparseMatrix(dLs * S1), 1);

  check("squares", "d_f² = 0", SparseMatrix(d * SparseMatrix(d * S2)), Z2, 2);
  check("squares", "(d^Λ_f)² = 0", SparseMatrix(dL * SparseMatrix(dL * S2)), Z2, 2);
  check("squares", "(d_f*)² = 0", SparseMatrix(ds * SparseMatrix(ds * S2)), Z2, 2);
  check("squares", "(d^Λ_f*)² = 0", SparseMatrix(dLs * SparseMatrix(dLs * S2)), Z2, 2);
  check("squares", "d_f d^Λ_f = -d^Λ_f d_f", anti(d, dL, S2), Z2, 2);

  check("sl2", "[Λ, L] = H", comm(Lam, L, S0), SparseMatrix(H * S0), 0);
  check("sl2", "[Λ, H] = -2Λ", comm(Lam, H, S0), SparseMatrix(-2.0 * Lam * S0), 0);
  check("sl2", "[L, H] = 2L", comm(L, H, S0), SparseMatrix(2.0 * L * S0), 0);

  const SparseMatrix ddL = d * dL;
  const SparseMatrix dsdLs = ds * dLs;
  check("deformed", "[d_f, L] = 0", comm(d, L, S1), Z1, 1);
  check("deformed", "[d_f, Λ] = d^Λ_f", comm(d, Lam, S1), SparseMatrix(dL * S1), 1);
  check("deformed", "[d_f, H] = d_f", comm(d, H, S1), SparseMatrix(d * S1), 1);
  check("deformed", "[d^Λ_f, L] = d_f", comm(dL, L, S1), SparseMatrix(d * S1), 1);
  check("deformed", "[d^Λ_f, Λ] = 0", comm(dL, Lam, S1), Z1, 1);
  check("deformed", "[d^Λ_f, H] = -d^Λ_f", comm(dL, H, S1), SparseMatrix(-1.0 * dL * S1), 1);
  check("deformed", "[d_f d^Λ_f, L] = 0", comm(ddL, L, S2), Z2, 2);
  check("deformed", "[d_f d^Λ_f, Λ] = 0", comm(ddL, Lam, S2), Z2, 2);
  check("deformed", "[d_f d^Λ_f, H] = 0", comm(ddL, H, S2), Z2, 2);
  check("deformed-adjoint", "[d_f*, L] = -d^Λ_f*", comm(ds, L, S1), SparseMatrix(-1.0 * dLs * S1), 1);
  check("deformed-adjoint", "[d_f*, Λ] = 0", comm(ds, Lam, S1), Z1, 1);
  check("deformed-adjoint", "[d_f*, H] = -d_f*", comm(ds, H, S1), SparseMatrix(-1.0 * ds * S1), 1);
  check("deformed-adjoint", "[d^Λ_f*, L] = 0", comm(dLs, L, S1), Z1, 1);
  check("deformed-adjoint", "[d^Λ_f*, Λ] = -d_f*", comm(dLs, Lam, S1), SparseMatrix(-1.0 * ds * S1), 1);
  check("deformed-adjoint", "[d^Λ_f*, H] = d^Λ_f*", comm(dLs, H, S1), SparseMatrix(dLs * S1), 1);
  check("deformed-adjoint", "[d_f* d^Λ_f*, L] = 0", comm(dsdLs, L, S2), Z2, 2);
  check("deformed-adjoint", "[d_f* d^Λ_f*, Λ] = 0", comm(dsdLs, Lam, S2), Z2, 2);
  check("deformed-adjoint", "[d_f* d^Λ_f*, H] = 0", comm(dsdLs, H, S2), Z2, 2);

  check("laplacian", "d_f*d_f + d_f d_f* = Δ_{d_f} (closed form)", anti(ds, d, S2),
        SparseMatrix(m.witten_laplacian() * S2), 2);
  check("laplacian", "d^Λ_f*d^Λ_f + d^Λ_f d^Λ_f* = Δ_{d^Λ_f} (closed form)", anti(dLs, dL, S2),
        SparseMatrix(m.dLambda_laplacian() * S2), 2);
  check("laplacian", "Δ_{d_f} - Δ_{d^Λ_f} = M_f", SparseMatrix((m.witten_laplacian() - m.dLambda_laplacian()) * S0),
        SparseMatrix(M * S0), 2);

  check("anticommutator", "d_f d^Λ_f* + d^Λ_f* d_f = C_f", anti(d, dLs, S2), SparseMatrix(C * S2), 2);
  check("anticommutator", "d_f* d^Λ_f + d^Λ_f d_f* = C_f†", anti(ds, dL, S2), SparseMatrix(Cd * S2), 2);

  check("M-brackets", "[d^Λ_f, M_f] = -[d_f, C_f†]", comm(dL, M, S1), SparseMatrix(-1.0 * comm(d, Cd, S1)), 3);
  check("M-brackets", "[d_f, M_f] = [d^Λ_f, C_f]", comm(d, M, S1), comm(dL, C, S1), 3);
  check("M-brackets", "[M_f, Λ] = 2C_f†", comm(M, Lam, S0), SparseMatrix(2.0 * Cd * S0), 2);
  check("M-brackets", "[d_f*, M_f] = [d^Λ_f*, C_f†]", comm(ds, M, S1), comm(dLs, Cd, S1), 3);
  check("M-brackets", "[d^Λ_f*, M_f] = -[d_f*, C_f]", comm(dLs, M, S1), SparseMatrix(-1.0 * comm(ds, C, S1)), 3);
  check("M-brackets", "[M_f, L] = -2C_f", comm(M, L, S0), SparseMatrix(-2.0 * C * S0), 2);

  // Both forms of 𝒟_PT on the interior primitive sector.
  SparseMatrix P(static_cast<Eigen::Index>(m.size()), 0);
  for (int k = 0; k <= m.n(); ++k) {
    const SparseMatrix Pk = m.primitive_states(k, 4);
    SparseMatrix joined(static_cast<Eigen::Index>(m.size()), P.cols() + Pk.cols());
    std::vector<Triplet> t;
    for (int c = 0; c < P.outerSize(); ++c)
      for (SparseMatrix::InnerIterator it(P, c); it; ++it) t.emplace_back(static_cast<int>(it.row()), c, it.value());
    for (int c = 0; c < Pk.outerSize(); ++c)
      for (SparseMatrix::InnerIterator it(Pk, c); it; ++it)
        t.emplace_back(static_cast<int>(it.row()), static_cast<int>(P.cols()) + c, it.value());
    joined.setFromTriplets(t.begin(), t.end());
    P = joined;
  }
  if (P.cols() > 0) {
    const SparseMatrix direct = m.apply_DPT(P);
    check("D_PT", "𝒟_PT = Δ² + d^Λ*dC† + Cd*d^Λ - CC† - dMd* on primitive states", direct,
          m.apply_DPT_local_form(P), 4);
    const Eigen::MatrixXd G = Eigen::MatrixXd(SparseMatrix(P.transpose()) * direct);
    const double gnorm = std::max(G.norm(), std::pow(2.0 * T, 2.0));
    const double asym = (G - G.transpose()).norm() / gnorm;
    out.push_back({"D_PT", "𝒟_PT symmetric on primitive states", asym, tolerance, asym < tolerance});
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (G + G.transpose()), Eigen::EigenvaluesOnly);
    const double neg = std::max(0.0, -es.eigenvalues().minCoeff()) / gnorm;
    out.push_back({"D_PT", "𝒟_PT positive semidefinite on primitive states", neg, tolerance, neg < tolerance});
  }
  return out;
}

EigenvalueFormulaCheck check_eigenvalue_formula(const LocalModel& m, int n_p) {
  const auto states = m.interior(2);
  const SparseMatrix S = selection(m, states);
  const SparseMatrix lap = SparseMatrix(m.d_star() * SparseMatrix(m.d() * S)) + SparseMatrix(m.d() * SparseMatrix(m.d_star() * S));
  EigenvalueFormulaCheck r{0.0, 0.0, states.size()};
  for (int c = 0; c < lap.outerSize(); ++c) {
    const std::size_t s = states[static_cast<std::size_t>(c)];
    const double W = eigenvalue_W(m.n(), n_p, m.T(), m.eta(s), m.form(s));
    double diag = 0;
    for (SparseMatrix::InnerIterator it(lap, c); it; ++it) {
      if (static_cast<std::size_t>(it.row()) == s)
        diag = it.value();
      else
        r.max_offdiagonal = std::max(r.max_offdiagonal, std::abs(it.value()));
    }
    const double closed = m.witten_laplacian().coeff(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s));
    const double den = std::max(std::abs(W), 2.0 * m.T());
    r.max_relative_error = std::max({r.max_relative_error, std::abs(diag - W) / den, std::abs(closed - W) / den});
  }
  r.max_offdiagonal /= 2.0 * m.T();
  return r;
}

KernelResult kernel_dimension(const LocalModel& m, int n_p, int k) {
  KernelResult r{m.n(), n_p, k, 0, KernelStatus::ok, {}, 1e-8 * m.T() * m.T(), 0.0, Eigen::MatrixXd()};
  const SparseMatrix P = m.primitive_states(k, 4);
  if (P.cols() == 0) {
    r.kernel = Eigen::MatrixXd(static_cast<Eigen::Index>(m.size()), 0);
    return r;
  }
  const SparseMatrix A = m.apply_DPT(P);

  // Keep only rows that A touches.
  std::vector<int> row_map(static_cast<std::size_t>(m.size()), -1);
  int rows = 0;
  for (int c = 0; c < A.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(A, c); it; ++it)
      if (row_map[static_cast<std::size_t>(it.row())] < 0) row_map[static_cast<std::size_t>(it.row())] = rows++;
  const Eigen::Index cols = A.cols();
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(std::max<Eigen::Index>(rows, cols), cols);
  for (int c = 0; c < A.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(A, c); it; ++it) dense(row_map[static_cast<std::size_t>(it.row())], c) = it.value();

  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(dense);
  const Eigen::MatrixXd R = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(R, Eigen::ComputeFullV);
  const Eigen::VectorXd sigma = svd.singularValues();  // descending
  const Eigen::Index count = sigma.size();

  std::vector<Eigen::Index> kernel_cols;
  for (Eigen::Index i = count - 1; i >= 0; --i) {
    const double s = sigma(i);
    if (r.smallest_singular_values.size() < 4) r.smallest_singular_values.push_back(s);
    if (s < r.threshold) kernel_cols.push_back(i);
    if (s > r.threshold / 10.0 && s < r.threshold * 10.0) r.status = KernelStatus::inconclusive;
  }
  r.dimension = kernel_cols.size();
  r.kernel = Eigen::MatrixXd(static_cast<Eigen::Index>(m.size()), static_cast<Eigen::Index>(kernel_cols.size()));
  for (std::size_t j = 0; j < kernel_cols.size(); ++j) {
    const Eigen::VectorXd v = svd.matrixV().col(kernel_cols[j]);
    Eigen::VectorXd x = P * v;
    x.normalize();
    r.kernel.col(static_cast<Eigen::Index>(j)) = x;
  }
  if (r.dimension == 1 && n_p >= 0 && n_p <= m.n() && k == n_p)
    r.generator_overlap = std::abs(r.kernel.col(0).dot(m.ground_generator(n_p)));
  return r;
}

SatTerms verify_sat_identity(const LocalModel& m, const Eigen::VectorXd& alpha) {
  SatTerms s{};
  const Eigen::VectorXd lap = m.witten_laplacian() * alpha;
  s.laplacian_sq = lap.squaredNorm();
  s.c_dag_sq = (m.C_dag() * alpha).squaredNorm();
  const Eigen::VectorXd dsa = m.d_star() * alpha;
  s.m_term = dsa.dot(m.M() * dsa);
  s.combination = s.laplacian_sq - s.c_dag_sq - s.m_term;
  const SparseMatrix a = alpha.sparseView();
  const Eigen::VectorXd dpt = Eigen::MatrixXd(m.apply_DPT(a)).col(0);
  s.dpt_expectation = alpha.dot(dpt);
  s.dLambda_term = (m.dLambda() * alpha).dot(m.d() * (m.C_dag() * alpha));
  return s;
}

namespace {

std::vector<double> compressed_spectrum(const LocalModel& m) {
  std::vector<double> eig;
  for (int k = 0; k <= m.n(); ++k) {
    const SparseMatrix P = m.primitive_states(k, 4);
    if (P.cols() == 0) continue;
    const Eigen::MatrixXd G = Eigen::MatrixXd(SparseMatrix(P.transpose()) * m.apply_DPT(P));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (G + G.transpose()), Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) eig.push_back(es.eigenvalues()(i));
  }
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace

ScalingResult spectrum_scaling_check(const LocalModelConfig& cfg, std::size_t count, double tolerance) {
  LocalModelConfig twice = cfg;
  twice.T = 2.0 * cfg.T;
  const std::vector<double> lo = compressed_spectrum(LocalModel(cfg));
  const std::vector<double> hi = compressed_spectrum(LocalModel(twice));
  ScalingResult r{cfg.n, cfg.n_p, {}, {}, 0.0, true};
  const double cut_lo = 1e-8 * cfg.T * cfg.T;
  const double cut_hi = 1e-8 * twice.T * twice.T;
  std::size_t zeros_lo = 0;
  std::size_t zeros_hi = 0;
  for (double v : lo) {
    if (std::abs(v) < cut_lo) ++zeros_lo;
    else if (r.low_T.size() < count) r.low_T.push_back(v);
  }
  for (double v : hi) {
    if (std::abs(v) < cut_hi) ++zeros_hi;
    else if (r.high_T.size() < count) r.high_T.push_back(v);
  }
  if (zeros_lo != zeros_hi || r.low_T.size() != r.high_T.size()) {
    r.passed = false;
    r.max_relative_error = 1.0;
    return r;
  }
  for (std::size_t i = 0; i < r.low_T.size(); ++i)
    r.max_relative_error = std::max(r.max_relative_error, std::abs(r.high_T[i] / (4.0 * r.low_T[i]) - 1.0));
  r.passed = r.max_relative_error < tolerance;
  return r;
}

DualityResult hodge_duality_check(const LocalModelConfig& cfg) {
  DualityResult r{cfg.n, cfg.n_p, false, 0, 0, 0, 0, 2 * cfg.n - cfg.n_p, true};
  if (cfg.n_p > cfg.n) return r;
  r.applicable = true;
  const LocalModel f(cfg);
  std::vector<int> flipped = f.lambda();
  for (int& l : flipped) l = -l;
  const LocalModel g(cfg.n, flipped, cfg.T, cfg.eta_max);

  const Eigen::VectorXd gen = f.ground_generator(cfg.n_p);
  const Eigen::VectorXd dual = f.star() * gen;
  r.residual_ddLambda = (g.d() * (g.dLambda() * dual)).norm();
  r.residual_d_star = (g.d_star() * dual).norm();
  r.residual_dLambda_star = (g.dLambda_star() * dual).norm();
  const int k = cfg.n_p;
  const double sign = ((k * (2 * cfg.n - k)) % 2 == 0) ? 1.0 : -1.0;
  r.star_star_error = (g.star() * dual - sign * gen).norm();
  const double th = 1e-8 * cfg.T * cfg.T;
  r.passed = r.residual_ddLambda < th && r.residual_d_star < th && r.residual_dLambda_star < th &&
             r.star_star_error < 1e-12;
  return r;
}

// ---------------------------------------------------------------------------
// Exact inequality and combinatorics

namespace {

int r_plus(int n_p, Mask J) {
  int count = 0;
  for (Mask rest = J; rest; rest &= rest - 1)
    if (std::countr_zero(rest) + 1 > 2 * n_p) ++count;
  return count;
}

/// Σ_i s_i ι_{2i-1} ι_{2i} α with s_i = λ_{2i-1} + λ_{2i} (T factored out).
KForm c_dag_unit(int n, int n_p, const KForm& a) {
  const std::vector<int> lambda = lambda_signs(n, n_p);
  KForm out(a.dim(), a.degree() - 2);
  for (int i = 1; i <= n; ++i) {
    const int s = lambda[2 * i - 2] + lambda[2 * i - 1];
    if (s == 0) continue;
    out += contract(2 * i - 1, contract(2 * i, a)) * Rational(s);
  }
  return out;
}

std::string rational_string(const Rational& q) { return q.get_str(); }

}  // namespace

bool bigo_holds(int n, int n_p, const KForm& alpha, const Rational& a, Rational* lhs_out, Rational* rhs_out) {
  if (n_p >= n) throw std::invalid_argument("bigo_holds: requires n_p < n");
  const int k = alpha.degree();
  // T = 1: ‖C_f†α‖² = (2T)² ‖Σ s_i ι ι α‖².
  const KForm c = c_dag_unit(n, n_p, alpha);
  const Rational lhs = Rational(4) * inner(c, c);
  Rational rhs(0);
  const Rational one_minus = Rational(1) - a;
  for (const auto& [J, cJ] : alpha.terms()) {
    const int rp = r_plus(n_p, J);
    rhs += cJ * cJ * (Rational(2 * (rp / 2)) * one_minus * one_minus + Rational(k - rp) * a * a);
  }
  rhs *= 8;
  if (lhs_out) *lhs_out = lhs;
  if (rhs_out) *rhs_out = rhs;
  return lhs <= rhs;
}

BigoResult verify_bigo_bound(int n, int n_p, int k, std::size_t trials, std::uint64_t seed,
                             const std::vector<Rational>& a_values) {
  if (n_p >= n) throw std::invalid_argument("verify_bigo_bound: requires n_p < n");
  BigoResult r{n, n_p, k, trials, a_values, 0, 0.0, ""};
  const SymplecticData sd = SymplecticData::darboux(n);
  const RationalMatrix basis = primitive_basis(sd, k);
  if (basis.cols() == 0) return r;
  std::mt19937_64 rng(seed + 1000003ULL * static_cast<std::uint64_t>(n) + 1009ULL * static_cast<std::uint64_t>(n_p) +
                      static_cast<std::uint64_t>(k));
  constexpr std::uint64_t kSpan = 11;  // coefficients in [-5, 5]
  for (std::size_t t = 0; t < trials; ++t) {
    RationalMatrix coeffs(basis.cols(), 1);
    bool nonzero = false;
    while (!nonzero) {
      for (std::size_t i = 0; i < basis.cols(); ++i) {
        coeffs(i, 0) = Rational(static_cast<long>(rng() % kSpan) - 5);
        nonzero = nonzero || coeffs(i, 0) != 0;
      }
    }
    const KForm alpha = from_column(2 * n, k, basis * coeffs);
    if (alpha.is_zero()) continue;
    for (const Rational& a : a_values) {
      Rational lhs;
      Rational rhs;
      const bool ok = bigo_holds(n, n_p, alpha, a, &lhs, &rhs);
      if (rhs > 0) r.worst_ratio = std::max(r.worst_ratio, Rational(lhs / rhs).get_d());
      else if (lhs > 0) r.worst_ratio = std::max(r.worst_ratio, std::numeric_limits<double>::infinity());
      if (!ok) {
        if (r.violations == 0)
          r.first_violation = fmt::format("trial {}, a = {}: alpha = {}, lhs = {} T^2 > rhs = {} T^2", t,
                                          rational_string(a), alpha.to_string(), rational_string(lhs),
                                          rational_string(rhs));
        ++r.violations;
      }
    }
  }
  return r;
}

long long zk_formula(int n, int k) { return binomial(n, k) - binomial(n, k - 1); }

long long zk_bruteforce_boundary(int n, int k) {
  if (k < 0 || k > n) return 0;
  const auto faces = monomials(n, k - 1);
  const auto chains = monomials(n, k);
  if (k == 0) return static_cast<long long>(chains.size());
  RationalMatrix boundary(faces.size(), chains.size());
  for (std::size_t c = 0; c < chains.size(); ++c)
    for (std::size_t f = 0; f < faces.size(); ++f)
      if ((faces[f] & chains[c]) == faces[f]) boundary(f, c) = 1;
  return static_cast<long long>(chains.size()) - static_cast<long long>(rank(boundary));
}

long long zk_bruteforce_lambda(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k == 0) return 1;
  const SymplecticData sd = SymplecticData::darboux(n);
  const auto subsets = monomials(n, k);
  const auto targets = monomials(2 * n, 2 * k - 2);
  RationalMatrix image(targets.size(), subsets.size());
  for (std::size_t c = 0; c < subsets.size(); ++c) {
    Mask z = 0;
    for (Mask rest = subsets[c]; rest; rest &= rest - 1) {
      const int i = std::countr_zero(rest) + 1;
      z |= Mask{3} << (2 * i - 2);
    }
    KForm zf(2 * n, 2 * k);
    zf.add(z, 1);
    const KForm img = lefschetz_Lambda(sd, zf);
    for (std::size_t r = 0; r < targets.size(); ++r) image(r, c) = img.coefficient(targets[r]);
  }
  return static_cast<long long>(subsets.size()) - static_cast<long long>(rank(image));
}

long long coisotropic_count(int n, int k) {
  long long count = 0;
  for (Mask J : monomials(2 * n, k)) {
    Mask pairs = 0;
    bool ok = true;
    for (Mask rest = J; rest; rest &= rest - 1) {
      const int slot = std::countr_zero(rest) + 1;
      const Mask bit = Mask{1} << ((slot + 1) / 2 - 1);
      if (pairs & bit) ok = false;
      pairs |= bit;
    }
    if (ok) ++count;
  }
  return count;
}

long long coisotropic_formula(int n, int k) { return (k < 0 || k > n) ? 0 : (1LL << k) * binomial(n, k); }

long long coisotropic_quoted(int n, int k) { return (k < 0 || k > n) ? 0 : (1LL << n) * binomial(n, k); }

}  // namespace symcoh
