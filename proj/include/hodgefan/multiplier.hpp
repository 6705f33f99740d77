#ifndef HODGEFAN_MULTIPLIER_HPP
#define HODGEFAN_MULTIPLIER_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hodgefan/decomposition.hpp"

namespace hodgefan {

/// A scalar multiplier on the positive half-line, with optional closed-form
/// derivatives (index k = order of differentiation, starting at 1).
struct MultiplierSpec {
  std::string label;
  std::function<cd(double)> eval;
  std::vector<std::function<cd(double)>> derivatives;

  cd operator()(double s) const { return eval(s); }
};

namespace detail {

/// Smooth transition: 0 for x <= 0, 1 for x >= 1.
inline double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

}  // namespace detail

inline MultiplierSpec heat_multiplier(double t) {
  if (t <= 0) throw std::invalid_argument("heat_multiplier: t must be positive");
  MultiplierSpec m;
  m.label = "heat(" + std::to_string(t) + ")";
  m.eval = [t](double s) { return cd(std::exp(-t * s)); };
  for (int k = 1; k <= 4; ++k)
    m.derivatives.push_back(
        [t, k](double s) { return cd(std::pow(-t, k) * std::exp(-t * s)); });
  return m;
}

inline MultiplierSpec imaginary_power_multiplier(double u) {
  MultiplierSpec m;
  m.label = "imaginary_power(" + std::to_string(u) + ")";
  m.eval = [u](double s) { return std::pow(cd(s), cd(0.0, u)); };
  for (int k = 1; k <= 4; ++k)
    m.derivatives.push_back([u, k](double s) {
      cd c(1.0);
      for (int i = 0; i < k; ++i) c *= cd(0.0, u) - cd(i);
      return c * std::pow(cd(s), cd(-k, u));
    });
  return m;
}

/// Smooth bump supported in [2^j, 2^{j+1}], identically 1 on the middle half.
inline MultiplierSpec dyadic_bump_multiplier(int j) {
  MultiplierSpec m;
  m.label = "dyadic_bump(" + std::to_string(j) + ")";
  const double scale = std::ldexp(1.0, j);
  m.eval = [scale](double s) {
    const double x = s / scale;
    return cd(detail::smooth_step((x - 1.0) / 0.25) * detail::smooth_step((2.0 - x) / 0.25));
  };
  return m;
}

/// Bounded ratio (s / (1 + s))^r, the scalar model of the fan symbol ratios.
inline MultiplierSpec riesz_ratio_multiplier(double r) {
  if (r <= 0) throw std::invalid_argument("riesz_ratio_multiplier: r must be positive");
  MultiplierSpec m;
  m.label = "riesz_ratio(" + std::to_string(r) + ")";
  m.eval = [r](double s) { return cd(std::pow(s / (1.0 + s), r)); };
  return m;
}

inline MultiplierSpec multiplier_library(const std::string& name, double param) {
  if (name == "heat") return heat_multiplier(param);
  if (name == "imaginary_power") return imaginary_power_multiplier(param);
  if (name == "dyadic_bump") return dyadic_bump_multiplier(static_cast<int>(param));
  if (name == "riesz_ratio") return riesz_ratio_multiplier(param);
  throw std::invalid_argument("multiplier_library: unknown multiplier " + name);
}

// ---------------------------------------------------------------------------
// Scalar spectral calculi
// ---------------------------------------------------------------------------

enum class ScalarCalcOp { Delta0, Delta0MinusIT, Delta0PlusIT, PhiPlus, PhiMinus };

/// m(op) f for the diagonal scalar operators. At the point (lambda, xi):
/// Delta0 -> xi + lambda^2; Delta0 -+ iT -> xi + lambda^2 +- lambda;
/// Phi(+-) -> xi + lambda^2 + n/2 +- sqrt(xi + lambda^2 + n^2/4).
inline ScalarField scalar_calculus(const MultiplierSpec& m, ScalarCalcOp op,
                                   const ScalarField& f) {
  const int n = f.model->n();
  return apply_fan_diagonal(f, [&m, op, n](double lam, double xi) {
    const double base = xi + lam * lam;
    switch (op) {
      case ScalarCalcOp::Delta0: return m(base);
      case ScalarCalcOp::Delta0MinusIT: return m(base + lam);
      case ScalarCalcOp::Delta0PlusIT: return m(base - lam);
      case ScalarCalcOp::PhiPlus: return m(base + 0.5 * n + std::sqrt(base + 0.25 * n * n));
      case ScalarCalcOp::PhiMinus: return m(base + 0.5 * n - std::sqrt(base + 0.25 * n * n));
    }
    return cd(0.0);
  });
}

// ---------------------------------------------------------------------------
// m(Delta1): five-term assembly
// ---------------------------------------------------------------------------

/// Functional calculus of the Hodge Laplacian on 1-forms through the
/// five-subspace splitting: the exact part via the scalar calculus conjugated
/// by R, the two co-closed parts via the shifted scalar calculi, and the two
/// curved branches via Gamma S(+-).
inline FormField m_delta1_via_decomposition(const MultiplierSpec& m, const FormField& omega) {
  if (omega.degree() > 1)
    throw std::invalid_argument("m_delta1_via_decomposition: expected a 1-form");

  FormField out = apply_R(scalar_calculus(m, ScalarCalcOp::Delta0, apply_R_star(omega)));

  FormField p2p = project(Subspace::P2Plus, omega);
  out += apply_bidegree_symbol(p2p, [&m, mm = omega.model](double lam, int lev, int, int) {
    return m(mm->xi(lam, lev) + lam * lam + lam);  // Delta0 - iT
  });
  FormField p2m = project(Subspace::P2Minus, omega);
  out += apply_bidegree_symbol(p2m, [&m, mm = omega.model](double lam, int lev, int, int) {
    return m(mm->xi(lam, lev) + lam * lam - lam);  // Delta0 + iT
  });

  FormField p3 = omega;
  p3 -= project(Subspace::P1, omega);
  p3 -= p2p;
  p3 -= p2m;
  const WTriple t = apply_Gamma_star(p3);
  out += apply_Gamma(apply_S(SBranch::Plus,
                             scalar_calculus(m, ScalarCalcOp::PhiPlus,
                                             apply_S_star(SBranch::Plus, t))));
  out += apply_Gamma(apply_S(SBranch::Minus,
                             scalar_calculus(m, ScalarCalcOp::PhiMinus,
                                             apply_S_star(SBranch::Minus, t)),
                             true));
  return out;
}

// ---------------------------------------------------------------------------
// Dense block oracle
// ---------------------------------------------------------------------------

namespace detail {

struct BlockSlot {
  BasisWord word;
  int fock_index;
};

/// Slots of one lambda-slice sharing a weight grade.
inline std::vector<BlockSlot> weight_block_slots(const Model& m, double lambda, int w) {
  std::vector<BlockSlot> slots;
  const auto& b = m.basis();
  for (const BasisWord& word : degree_one_words(m.n())) {
    const int off = m.weight_offset(word, lambda);
    for (int i = 0; i < b.dim(); ++i)
      if (b.level(i) + off == w) slots.push_back({word, i});
  }
  return slots;
}

}  // namespace detail

/// Independent oracle for m(Delta1): per lambda-slice and per weight grade,
/// assemble the dense matrix of the Hodge Laplacian on that exactly
/// represented block, eigendecompose, and apply m to the eigenvalues.
/// Grades >= M are not exactly represented and are skipped (zeroed).
inline FormField m_delta1_oracle(const MultiplierSpec& m, const FormField& omega,
                                 std::vector<double>* block_eigenvalues = nullptr) {
  if (omega.degree() > 1) throw std::invalid_argument("m_delta1_oracle: expected a 1-form");
  const ModelPtr model = omega.model;
  FormField out(model);
  for (const BasisWord& w : degree_one_words(model->n())) out.add(w, ScalarField(model));

  for (int s = 0; s < model->num_slices(); ++s) {
    const double lam = model->lambda(s);
    for (int w = -1; w <= model->M() - 1; ++w) {
      const auto slots = detail::weight_block_slots(*model, lam, w);
      if (slots.empty()) continue;
      const int k = static_cast<int>(slots.size());

      CMatrix a(k, k);
      for (int j = 0; j < k; ++j) {
        FormField unit(model);
        ScalarField uf(model);
        uf.slices[s].coeffs[slots[j].fock_index] = 1.0;
        unit.add(slots[j].word, uf);
        const FormField img = apply_hodge(1, unit);
        for (int i = 0; i < k; ++i) {
          const ScalarField* comp = img.component(slots[i].word);
          a(i, j) = comp ? comp->slices[s].coeffs[slots[i].fock_index] : cd(0.0);
        }
      }
      if ((a - a.adjoint()).max_abs() > 1e-10 * std::max(1.0, a.max_abs()))
        throw std::runtime_error("m_delta1_oracle: weight block is not hermitian");

      const auto eig = hermitian_eig(a);
      if (block_eigenvalues)
        block_eigenvalues->insert(block_eigenvalues->end(), eig.eigenvalues.begin(),
                                  eig.eigenvalues.end());
      CMatrix diag(k, k);
      for (int i = 0; i < k; ++i) diag(i, i) = m(eig.eigenvalues[i]);
      const CMatrix fn = eig.vectors * diag * eig.vectors.adjoint();

      std::vector<cd> x(k);
      for (int i = 0; i < k; ++i) {
        const ScalarField* comp = omega.component(slots[i].word);
        x[i] = comp ? comp->slices[s].coeffs[slots[i].fock_index] : cd(0.0);
      }
      const auto y = fn.apply(x);
      for (int i = 0; i < k; ++i) {
        auto it = out.comps.find(slots[i].word);
        it->second.slices[s].coeffs[slots[i].fock_index] = y[i];
      }
    }
  }
  return out;
}

}  // namespace hodgefan

#endif
