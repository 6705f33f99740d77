#ifndef HODGEFAN_MODEL_HPP
#define HODGEFAN_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

#include "hodgefan/exterior.hpp"

namespace hodgefan {

struct ModelConfig {
  int n = 1;
  std::vector<double> lambdas;       // nonzero grid values
  std::vector<double> weights;       // quadrature weights; filled on build if empty
  int M = 8;                         // Fock truncation: |alpha| <= M
  double tol = 1e-10;

  static std::vector<double> geometric_lambda_grid(int pow_min = -2, int pow_max = 3) {
    std::vector<double> l;
    for (int p = pow_min; p <= pow_max; ++p) {
      l.push_back(-std::ldexp(1.0, p));
      l.push_back(std::ldexp(1.0, p));
    }
    std::sort(l.begin(), l.end());
    return l;
  }

  static ModelConfig defaults() {
    ModelConfig c;
    c.lambdas = geometric_lambda_grid();
    return c;
  }

  void validate() const {
    if (n < 1) throw std::invalid_argument("ModelConfig: n must be positive");
    if (M < 4) throw std::invalid_argument("ModelConfig: M must be >= 4");
    if (lambdas.empty()) throw std::invalid_argument("ModelConfig: empty lambda grid");
    for (double l : lambdas)
      if (l == 0.0) throw std::invalid_argument("ModelConfig: lambda = 0 not allowed");
    if (!weights.empty() && weights.size() != lambdas.size())
      throw std::invalid_argument("ModelConfig: weights/lambdas size mismatch");
    for (double w : weights)
      if (w <= 0.0) throw std::invalid_argument("ModelConfig: weights must be positive");
  }
};

/// Truncated Fock basis: multi-indices alpha in N^n with |alpha| <= M,
/// ordered by level then lexicographically.
class FockBasis {
 public:
  FockBasis(int n, int M) : n_(n), M_(M) {
    std::vector<int> alpha(n, 0);
    enumerate(alpha, 0, 0);
    for (size_t i = 0; i < alphas_.size(); ++i) index_[alphas_[i]] = static_cast<int>(i);
  }

  int n() const { return n_; }
  int M() const { return M_; }
  int dim() const { return static_cast<int>(alphas_.size()); }
  const std::vector<int>& alpha(int i) const { return alphas_[i]; }
  int level(int i) const {
    int s = 0;
    for (int v : alphas_[i]) s += v;
    return s;
  }
  /// Index of alpha + e_j, or -1 when it leaves the truncation.
  int raised(int i, int j) const {
    auto a = alphas_[i];
    a[j] += 1;
    auto it = index_.find(a);
    return it == index_.end() ? -1 : it->second;
  }
  int lowered(int i, int j) const {
    if (alphas_[i][j] == 0) return -1;
    auto a = alphas_[i];
    a[j] -= 1;
    return index_.at(a);
  }

 private:
  void enumerate(std::vector<int>& alpha, int pos, int used) {
    if (pos == n_) {
      alphas_.push_back(alpha);
      return;
    }
    for (int v = 0; v + used <= M_; ++v) {
      alpha[pos] = v;
      enumerate(alpha, pos + 1, used + v);
    }
    alpha[pos] = 0;
  }

  int n_, M_;
  std::vector<std::vector<int>> alphas_;
  std::map<std::vector<int>, int> index_;
};

/// The per-lambda realization of the invariant vector fields on the
/// truncated Fock space, plus the weight grading used to track which
/// blocks survive truncation exactly.
class Model {
 public:
  explicit Model(ModelConfig cfg) : cfg_(std::move(cfg)), basis_(cfg_.n, cfg_.M) {
    cfg_.validate();
    if (cfg_.weights.empty()) cfg_.weights = trapezoid_weights(cfg_.lambdas);
  }

  const ModelConfig& config() const { return cfg_; }
  const FockBasis& basis() const { return basis_; }
  int n() const { return cfg_.n; }
  int M() const { return cfg_.M; }
  int slice_dim() const { return basis_.dim(); }
  int num_slices() const { return static_cast<int>(cfg_.lambdas.size()); }
  double lambda(int s) const { return cfg_.lambdas[s]; }
  double weight(int s) const { return cfg_.weights[s]; }

  double xi(double lambda, int level) const {
    return (cfg_.n + 2 * level) * std::abs(lambda);
  }

  /// Weight-grade offset of a basis word: +1 per holomorphic factor and -1
  /// per antiholomorphic factor for lambda > 0, negated for lambda < 0;
  /// theta contributes nothing.
  int weight_offset(const BasisWord& w, double lambda) const {
    const int d = w.p() - w.q();
    return lambda > 0 ? d : -d;
  }

  static std::vector<double> trapezoid_weights(const std::vector<double>& lam) {
    std::vector<double> sorted = lam;
    std::sort(sorted.begin(), sorted.end());
    std::map<double, double> wt;
    const size_t k = sorted.size();
    for (size_t i = 0; i < k; ++i) {
      const double lo = (i == 0) ? sorted[i] : (sorted[i - 1] + sorted[i]) / 2.0;
      const double hi = (i + 1 == k) ? sorted[i] : (sorted[i] + sorted[i + 1]) / 2.0;
      wt[sorted[i]] = std::max(hi - lo, 1e-12);
    }
    std::vector<double> out;
    out.reserve(k);
    for (double l : lam) out.push_back(wt[l]);
    return out;
  }

 private:
  ModelConfig cfg_;
  FockBasis basis_;
};

using ModelPtr = std::shared_ptr<const Model>;

inline ModelPtr build_model(ModelConfig cfg) { return std::make_shared<Model>(std::move(cfg)); }

struct Slice {
  double lambda = 0.0;
  std::vector<cd> coeffs;
};

struct ScalarField {
  ModelPtr model;
  std::vector<Slice> slices;

  ScalarField() = default;
  explicit ScalarField(ModelPtr m) : model(std::move(m)) {
    slices.resize(model->num_slices());
    for (int s = 0; s < model->num_slices(); ++s) {
      slices[s].lambda = model->lambda(s);
      slices[s].coeffs.assign(model->slice_dim(), cd(0.0));
    }
  }

  ScalarField& operator+=(const ScalarField& o) {
    for (size_t s = 0; s < slices.size(); ++s)
      for (size_t i = 0; i < slices[s].coeffs.size(); ++i)
        slices[s].coeffs[i] += o.slices[s].coeffs[i];
    return *this;
  }
  ScalarField& operator-=(const ScalarField& o) {
    for (size_t s = 0; s < slices.size(); ++s)
      for (size_t i = 0; i < slices[s].coeffs.size(); ++i)
        slices[s].coeffs[i] -= o.slices[s].coeffs[i];
    return *this;
  }
  ScalarField& operator*=(cd c) {
    for (auto& s : slices)
      for (auto& v : s.coeffs) v *= c;
    return *this;
  }
  friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
  friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
  friend ScalarField operator*(ScalarField a, cd c) { return a *= c; }
  friend ScalarField operator*(cd c, ScalarField a) { return a *= c; }
};

inline cd inner(const ScalarField& f, const ScalarField& g) {
  cd r = 0.0;
  for (size_t s = 0; s < f.slices.size(); ++s) {
    cd acc = 0.0;
    for (size_t i = 0; i < f.slices[s].coeffs.size(); ++i)
      acc += f.slices[s].coeffs[i] * std::conj(g.slices[s].coeffs[i]);
    r += f.model->weight(static_cast<int>(s)) * acc;
  }
  return r;
}

inline double norm(const ScalarField& f) { return std::sqrt(std::abs(inner(f, f).real())); }

// ---------------------------------------------------------------------------
// Invariant scalar operators
// ---------------------------------------------------------------------------

namespace detail {

/// a_j on one slice (lowers the level).
inline void apply_lower(const FockBasis& b, int j, const std::vector<cd>& in,
                        std::vector<cd>& out) {
  for (int i = 0; i < b.dim(); ++i) {
    if (in[i] == cd(0.0)) continue;
    const int t = b.lowered(i, j);
    if (t >= 0) out[t] += std::sqrt(static_cast<double>(b.alpha(i)[j])) * in[i];
  }
}

/// a_j^dagger on one slice; creation out of the top level is dropped.
inline void apply_raise(const FockBasis& b, int j, const std::vector<cd>& in,
                        std::vector<cd>& out) {
  for (int i = 0; i < b.dim(); ++i) {
    if (in[i] == cd(0.0)) continue;
    const int t = b.raised(i, j);
    if (t >= 0) out[t] += std::sqrt(static_cast<double>(b.alpha(i)[j] + 1)) * in[i];
  }
}

}  // namespace detail

/// B_j on a scalar field: sqrt(lambda) a_j for lambda > 0, and
/// -sqrt(|lambda|) a_j^dagger for lambda < 0.
inline ScalarField apply_B(int j, const ScalarField& f) {
  ScalarField out(f.model);
  const auto& b = f.model->basis();
  for (size_t s = 0; s < f.slices.size(); ++s) {
    const double lam = f.slices[s].lambda;
    std::vector<cd> tmp(b.dim());
    if (lam > 0) {
      detail::apply_lower(b, j - 1, f.slices[s].coeffs, tmp);
      for (auto& v : tmp) v *= std::sqrt(lam);
    } else {
      detail::apply_raise(b, j - 1, f.slices[s].coeffs, tmp);
      for (auto& v : tmp) v *= -std::sqrt(-lam);
    }
    out.slices[s].coeffs = std::move(tmp);
  }
  return out;
}

inline ScalarField apply_Bbar(int j, const ScalarField& f) {
  ScalarField out(f.model);
  const auto& b = f.model->basis();
  for (size_t s = 0; s < f.slices.size(); ++s) {
    const double lam = f.slices[s].lambda;
    std::vector<cd> tmp(b.dim());
    if (lam > 0) {
      detail::apply_raise(b, j - 1, f.slices[s].coeffs, tmp);
      for (auto& v : tmp) v *= -std::sqrt(lam);
    } else {
      detail::apply_lower(b, j - 1, f.slices[s].coeffs, tmp);
      for (auto& v : tmp) v *= std::sqrt(-lam);
    }
    out.slices[s].coeffs = std::move(tmp);
  }
  return out;
}

inline ScalarField apply_T(const ScalarField& f) {
  ScalarField out = f;
  for (auto& s : out.slices)
    for (auto& v : s.coeffs) v *= cd(0.0, s.lambda);
  return out;
}

/// Diagonal action: multiply the coefficient at (lambda, level) by
/// symbol(lambda, level).
inline ScalarField apply_level_symbol(const ScalarField& f,
                                      const std::function<cd(double, int)>& symbol) {
  ScalarField out = f;
  const auto& b = f.model->basis();
  for (auto& s : out.slices)
    for (int i = 0; i < b.dim(); ++i) s.coeffs[i] *= symbol(s.lambda, b.level(i));
  return out;
}

struct ScalarOp {
  enum Kind { B, Bbar, T, X, Y, L, Delta0, Box, BoxBar } kind;
  int j = 1;  // for B, Bbar, X, Y
};

/// The invariant scalar operators. L, Delta0, Box, BoxBar are exactly
/// diagonal in the Fock basis and are applied through their level symbols:
/// L -> xi, Delta0 -> xi + lambda^2, Box -> (xi - n lambda)/2,
/// BoxBar -> (xi + n lambda)/2.
inline ScalarField apply_invariant_scalar_op(const ScalarOp& op, const ScalarField& f) {
  const int n = f.model->n();
  const auto xi = [m = f.model](double lam, int lev) { return m->xi(lam, lev); };
  switch (op.kind) {
    case ScalarOp::B: return apply_B(op.j, f);
    case ScalarOp::Bbar: return apply_Bbar(op.j, f);
    case ScalarOp::T: return apply_T(f);
    case ScalarOp::X: {
      auto s = apply_B(op.j, f) + apply_Bbar(op.j, f);
      return s * cd(1.0 / std::sqrt(2.0));
    }
    case ScalarOp::Y: {
      auto s = apply_B(op.j, f) - apply_Bbar(op.j, f);
      return s * cd(0.0, 1.0 / std::sqrt(2.0));
    }
    case ScalarOp::L:
      return apply_level_symbol(f, [&](double lam, int lev) { return cd(xi(lam, lev)); });
    case ScalarOp::Delta0:
      return apply_level_symbol(
          f, [&](double lam, int lev) { return cd(xi(lam, lev) + lam * lam); });
    case ScalarOp::Box:
      return apply_level_symbol(
          f, [&](double lam, int lev) { return cd(0.5 * (xi(lam, lev) - n * lam)); });
    case ScalarOp::BoxBar:
      return apply_level_symbol(
          f, [&](double lam, int lev) { return cd(0.5 * (xi(lam, lev) + n * lam)); });
  }
  throw std::invalid_argument("apply_invariant_scalar_op: unknown op");
}

// ---------------------------------------------------------------------------
// Form fields and the CR / de Rham operators
// ---------------------------------------------------------------------------

struct FormField {
  ModelPtr model;
  std::map<BasisWord, ScalarField> comps;

  FormField() = default;
  explicit FormField(ModelPtr m) : model(std::move(m)) {}

  void add(const BasisWord& w, const ScalarField& f) {
    auto it = comps.find(w);
    if (it == comps.end()) comps.emplace(w, f);
    else it->second += f;
  }

  FormField& operator+=(const FormField& o) {
    for (const auto& [w, f] : o.comps) add(w, f);
    return *this;
  }
  FormField& operator-=(const FormField& o) {
    for (const auto& [w, f] : o.comps) add(w, f * cd(-1.0));
    return *this;
  }
  FormField& operator*=(cd c) {
    for (auto& [w, f] : comps) f *= c;
    return *this;
  }
  friend FormField operator+(FormField a, const FormField& b) { return a += b; }
  friend FormField operator-(FormField a, const FormField& b) { return a -= b; }
  friend FormField operator*(FormField a, cd c) { return a *= c; }
  friend FormField operator*(cd c, FormField a) { return a *= c; }

  const ScalarField* component(const BasisWord& w) const {
    auto it = comps.find(w);
    return it == comps.end() ? nullptr : &it->second;
  }

  int degree() const {
    int d = -1;
    for (const auto& [w, f] : comps) {
      if (d < 0) d = w.degree();
      else if (d != w.degree()) throw std::invalid_argument("FormField: mixed degree");
    }
    return d;
  }
};

inline cd inner(const FormField& a, const FormField& b) {
  cd r = 0.0;
  for (const auto& [w, f] : a.comps) {
    const ScalarField* g = b.component(w);
    if (g) r += inner(f, *g);
  }
  return r;
}

inline double norm(const FormField& a) { return std::sqrt(std::abs(inner(a, a).real())); }

inline BasisWord scalar_word(int n) {
  BasisWord w;
  w.n = n;
  return w;
}

inline BasisWord beta_word(int n, int j) {
  BasisWord w;
  w.n = n;
  w.holo = 1u << (j - 1);
  return w;
}

inline BasisWord betabar_word(int n, int j) {
  BasisWord w;
  w.n = n;
  w.anti = 1u << (j - 1);
  return w;
}

inline BasisWord theta_word(int n) {
  BasisWord w;
  w.n = n;
  w.theta = true;
  return w;
}

inline FormField scalar_as_form(const ScalarField& f) {
  FormField out(f.model);
  out.add(scalar_word(f.model->n()), f);
  return out;
}

namespace detail {

/// Split omega = omega1 + theta ^ omega2; omega2 has theta stripped.
inline std::pair<FormField, FormField> split_theta(const FormField& omega) {
  FormField horizontal(omega.model), vertical(omega.model);
  for (const auto& [w, f] : omega.comps) {
    if (!w.theta) {
      horizontal.add(w, f);
    } else {
      BasisWord stripped = w;
      stripped.theta = false;
      vertical.add(stripped, f);
    }
  }
  return {horizontal, vertical};
}

inline FormField prepend_theta(const FormField& omega) {
  FormField out(omega.model);
  const BasisWord th = theta_word(omega.model->n());
  for (const auto& [w, f] : omega.comps) {
    auto [tw, sign] = wedge_words(th, w);
    if (sign != 0) out.add(tw, f * cd(static_cast<double>(sign)));
  }
  return out;
}

}  // namespace detail

/// partial_b on a horizontal form field: sum_j B_j f beta_j ^ (.)
inline FormField apply_partial_b(const FormField& omega) {
  FormField out(omega.model);
  const int n = omega.model->n();
  for (const auto& [w, f] : omega.comps)
    for (int j = 1; j <= n; ++j) {
      auto [tw, sign] = wedge_words(beta_word(n, j), w);
      if (sign != 0) out.add(tw, apply_B(j, f) * cd(static_cast<double>(sign)));
    }
  return out;
}

inline FormField apply_partial_b_bar(const FormField& omega) {
  FormField out(omega.model);
  const int n = omega.model->n();
  for (const auto& [w, f] : omega.comps)
    for (int j = 1; j <= n; ++j) {
      auto [tw, sign] = wedge_words(betabar_word(n, j), w);
      if (sign != 0) out.add(tw, apply_Bbar(j, f) * cd(static_cast<double>(sign)));
    }
  return out;
}

/// Adjoint of partial_b: sum_j (-Bbar_j f) beta_j _| (.)
inline FormField apply_partial_b_star(const FormField& omega) {
  FormField out(omega.model);
  const int n = omega.model->n();
  for (const auto& [w, f] : omega.comps)
    for (int j = 1; j <= n; ++j) {
      auto [tw, sign] = contract_word(Generator{Generator::Beta, j}, w);
      if (sign != 0) out.add(tw, apply_Bbar(j, f) * cd(-static_cast<double>(sign)));
    }
  return out;
}

inline FormField apply_partial_b_bar_star(const FormField& omega) {
  FormField out(omega.model);
  const int n = omega.model->n();
  for (const auto& [w, f] : omega.comps)
    for (int j = 1; j <= n; ++j) {
      auto [tw, sign] = contract_word(Generator{Generator::BetaBar, j}, w);
      if (sign != 0) out.add(tw, apply_B(j, f) * cd(-static_cast<double>(sign)));
    }
  return out;
}

inline FormField apply_d_h(const FormField& omega) {
  return apply_partial_b(omega) + apply_partial_b_bar(omega);
}

inline FormField apply_d_h_star(const FormField& omega) {
  return apply_partial_b_star(omega) + apply_partial_b_bar_star(omega);
}

/// e(dtheta) on a form field: pointwise wedge with dtheta.
inline FormField apply_e_dtheta(const FormField& omega) {
  FormField out(omega.model);
  const int n = omega.model->n();
  for (const auto& [w, f] : omega.comps) {
    const Form img = e_dtheta(Form::word(w));
    for (const auto& [tw, c] : img.coeffs) out.add(tw, f * c);
  }
  return out;
}

inline FormField apply_i_dtheta(const FormField& omega) {
  FormField out(omega.model);
  for (const auto& [w, f] : omega.comps) {
    const Form img = i_dtheta(Form::word(w));
    for (const auto& [tw, c] : img.coeffs) out.add(tw, f * c);
  }
  return out;
}

inline FormField apply_T(const FormField& omega) {
  FormField out(omega.model);
  for (const auto& [w, f] : omega.comps) out.add(w, apply_T(f));
  return out;
}

/// Componentwise diagonal action keyed by the bidegree of each word.
inline FormField apply_bidegree_symbol(
    const FormField& omega, const std::function<cd(double, int, int, int)>& symbol) {
  // symbol(lambda, level, p, q)
  FormField out(omega.model);
  const auto& b = omega.model->basis();
  for (const auto& [w, f] : omega.comps) {
    ScalarField g = f;
    for (auto& s : g.slices)
      for (int i = 0; i < b.dim(); ++i) s.coeffs[i] *= symbol(s.lambda, b.level(i), w.p(), w.q());
    out.add(w, g);
  }
  return out;
}

/// Box on (p,q)-components: L/2 + i(n/2 - p)T, with symbol xi/2 - (n/2 - p) lambda.
inline FormField apply_box(const FormField& omega) {
  const int n = omega.model->n();
  return apply_bidegree_symbol(omega, [m = omega.model, n](double lam, int lev, int p, int) {
    return cd(0.5 * m->xi(lam, lev) - (0.5 * n - p) * lam);
  });
}

/// BoxBar on (p,q)-components: L/2 - i(n/2 - q)T, with symbol xi/2 + (n/2 - q) lambda.
inline FormField apply_box_bar(const FormField& omega) {
  const int n = omega.model->n();
  return apply_bidegree_symbol(omega, [m = omega.model, n](double lam, int lev, int, int q) {
    return cd(0.5 * m->xi(lam, lev) + (0.5 * n - q) * lam);
  });
}

/// Delta_H = L + i(q-p)T componentwise, with symbol xi - (q-p) lambda.
inline FormField apply_delta_h(const FormField& omega) {
  return apply_bidegree_symbol(omega, [m = omega.model](double lam, int lev, int p, int q) {
    return cd(m->xi(lam, lev) - (q - p) * lam);
  });
}

struct CrOp {
  enum Kind {
    PartialB,
    PartialBBar,
    PartialBStar,
    PartialBBarStar,
    DH,
    DHStar,
    Box,
    BoxBar,
    DeltaH
  } kind;
};

inline FormField apply_cr_op(CrOp op, const FormField& omega) {
  omega.degree();  // validates homogeneity
  switch (op.kind) {
    case CrOp::PartialB: return apply_partial_b(omega);
    case CrOp::PartialBBar: return apply_partial_b_bar(omega);
    case CrOp::PartialBStar: return apply_partial_b_star(omega);
    case CrOp::PartialBBarStar: return apply_partial_b_bar_star(omega);
    case CrOp::DH: return apply_d_h(omega);
    case CrOp::DHStar: return apply_d_h_star(omega);
    case CrOp::Box: return apply_box(omega);
    case CrOp::BoxBar: return apply_box_bar(omega);
    case CrOp::DeltaH: return apply_delta_h(omega);
  }
  throw std::invalid_argument("apply_cr_op: unknown op");
}

/// d on a k-form through the block action on (omega1, theta ^ omega2):
/// (d_H omega1 + dtheta ^ omega2) + theta ^ (T omega1 - d_H omega2).
inline FormField apply_d(const FormField& omega) {
  auto [w1, w2] = detail::split_theta(omega);
  FormField horiz = apply_d_h(w1) + apply_e_dtheta(w2);
  FormField vert = apply_T(w1) - apply_d_h(w2);
  return horiz + detail::prepend_theta(vert);
}

/// d* through the adjoint block matrix: (d_H* omega1 - T omega2,
/// i(dtheta) omega1 - d_H* omega2).
inline FormField apply_d_star(const FormField& omega) {
  auto [w1, w2] = detail::split_theta(omega);
  FormField horiz = apply_d_h_star(w1) - apply_T(w2);
  FormField vert = apply_i_dtheta(w1) - apply_d_h_star(w2);
  return horiz + detail::prepend_theta(vert);
}

namespace detail {

inline void split_one_form(const FormField& omega, FormField& plus, FormField& minus,
                           ScalarField& h) {
  plus = FormField(omega.model);
  minus = FormField(omega.model);
  h = ScalarField(omega.model);
  for (const auto& [w, f] : omega.comps) {
    if (w.theta) h += f;
    else if (w.p() == 1) plus.add(w, f);
    else minus.add(w, f);
  }
}

}  // namespace detail

/// Hodge Laplacian. k = 0 is the diagonal scalar operator; k = 1 is the
/// 3-block action on (omega_plus, omega_minus, h theta).
inline FormField apply_hodge(int k, const FormField& omega) {
  if (k == 0) {
    auto [w1, w2] = detail::split_theta(omega);
    ScalarField f = w1.comps.empty() ? ScalarField(omega.model) : w1.comps.begin()->second;
    return scalar_as_form(apply_invariant_scalar_op({ScalarOp::Delta0}, f));
  }
  if (k != 1)
    throw std::invalid_argument("apply_hodge: only k in {0,1}; compose d/d* for general k");

  FormField plus(omega.model), minus(omega.model);
  ScalarField h(omega.model);
  detail::split_one_form(omega, plus, minus, h);

  const auto delta0_shift = [&](const FormField& x, double sign_iT) {
    // (Delta0 + sign_iT * iT), diagonal: xi + lambda^2 - sign_iT * lambda.
    return apply_bidegree_symbol(x, [m = omega.model, sign_iT](double lam, int lev, int, int) {
      return cd(m->xi(lam, lev) + lam * lam - sign_iT * lam);
    });
  };

  const cd I(0.0, 1.0);
  FormField hform = scalar_as_form(h);
  FormField out_plus = delta0_shift(plus, -1.0) - I * apply_partial_b(hform);
  FormField out_minus = delta0_shift(minus, +1.0) + I * apply_partial_b_bar(hform);

  FormField hs = I * apply_partial_b_star(plus) - I * apply_partial_b_bar_star(minus);
  ScalarField out_h = hs.comps.empty() ? ScalarField(omega.model) : hs.comps.begin()->second;
  const int n = omega.model->n();
  out_h += apply_level_symbol(h, [m = omega.model, n](double lam, int lev) {
    return cd(m->xi(lam, lev) + lam * lam + n);
  });

  FormField out = out_plus + out_minus;
  BasisWord th = theta_word(omega.model->n());
  out.add(th, out_h);
  return out;
}

// ---------------------------------------------------------------------------
// Truncation management
// ---------------------------------------------------------------------------

enum class OpId {
  B,
  Bbar,
  T,
  X,
  Y,
  L,
  Delta0,
  Box,
  BoxBar,
  PartialB,
  PartialBBar,
  PartialBStar,
  PartialBBarStar,
  DH,
  DHStar,
  D,
  DStar,
  Delta1,
  EDTheta,
  IDTheta
};

/// Maximum Fock-level raise of one application (over both lambda signs).
inline int op_level_raise(OpId op) {
  switch (op) {
    case OpId::T:
    case OpId::L:
    case OpId::Delta0:
    case OpId::Box:
    case OpId::BoxBar:
    case OpId::EDTheta:
    case OpId::IDTheta:
      return 0;
    default:
      return 1;
  }
}

/// Fock-level band on which the composed chain is exactly represented.
inline std::pair<int, int> safe_band(const std::vector<OpId>& chain, int M) {
  int raise = 0;
  for (OpId op : chain) raise += op_level_raise(op);
  return {0, std::max(0, M - raise)};
}

/// Zero out all coefficients above a Fock level.
inline ScalarField restrict_levels(const ScalarField& f, int max_level) {
  ScalarField out = f;
  const auto& b = f.model->basis();
  for (auto& s : out.slices)
    for (int i = 0; i < b.dim(); ++i)
      if (b.level(i) > max_level) s.coeffs[i] = 0.0;
  return out;
}

/// Keep only coefficients whose weight grade (level + word offset) is at
/// most wmax; the operators here all preserve the grade, so such blocks are
/// exactly represented when wmax <= M-1.
inline FormField restrict_weight(const FormField& omega, int wmax) {
  FormField out(omega.model);
  const auto& b = omega.model->basis();
  for (const auto& [w, f] : omega.comps) {
    ScalarField g = f;
    for (auto& s : g.slices) {
      const int off = omega.model->weight_offset(w, s.lambda);
      for (int i = 0; i < b.dim(); ++i)
        if (b.level(i) + off > wmax) s.coeffs[i] = 0.0;
    }
    out.add(w, g);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random inputs (seeded, reproducible)
// ---------------------------------------------------------------------------

inline ScalarField random_scalar_field(const ModelPtr& model, std::mt19937_64& rng,
                                       int max_level = -1) {
  std::normal_distribution<double> nd;
  ScalarField f(model);
  const auto& b = model->basis();
  for (auto& s : f.slices)
    for (int i = 0; i < b.dim(); ++i) {
      const cd v(nd(rng), nd(rng));
      if (max_level < 0 || b.level(i) <= max_level) s.coeffs[i] = v;
    }
  return f;
}

inline std::vector<BasisWord> degree_one_words(int n) {
  std::vector<BasisWord> words;
  for (int j = 1; j <= n; ++j) words.push_back(beta_word(n, j));
  for (int j = 1; j <= n; ++j) words.push_back(betabar_word(n, j));
  words.push_back(theta_word(n));
  return words;
}

inline FormField random_form_field(const ModelPtr& model, const std::vector<BasisWord>& words,
                                   std::mt19937_64& rng, int max_weight = -1) {
  FormField out(model);
  for (const auto& w : words) out.add(w, random_scalar_field(model, rng));
  if (max_weight >= 0) out = restrict_weight(out, max_weight);
  return out;
}

/// Random 1-form supported on weight grades <= M-1, where every operator
/// chain built from d, d*, Delta1 and the CR operators is exact.
inline FormField random_safe_one_form(const ModelPtr& model, std::mt19937_64& rng,
                                      int weight_margin = 1) {
  return random_form_field(model, degree_one_words(model->n()), rng,
                           model->M() - weight_margin);
}

}  // namespace hodgefan

#endif
