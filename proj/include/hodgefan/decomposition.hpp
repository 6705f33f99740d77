#ifndef HODGEFAN_DECOMPOSITION_HPP
#define HODGEFAN_DECOMPOSITION_HPP

#include <cmath>
#include <functional>
#include <stdexcept>

#include "hodgefan/fan.hpp"
#include "hodgefan/model.hpp"

namespace hodgefan {

// ---------------------------------------------------------------------------
// Diagonal scalar calculus on the joint spectrum
// ---------------------------------------------------------------------------

/// Apply a function of (lambda, xi) diagonally to a scalar field.
inline ScalarField apply_fan_diagonal(const ScalarField& f,
                                      const std::function<cd(double, double)>& fn) {
  const int n = f.model->n();
  return apply_level_symbol(f, [&, n](double lam, int lev) {
    return fn(lam, (n + 2 * lev) * std::abs(lam));
  });
}

inline ScalarField apply_delta0_pow(const ScalarField& f, double p) {
  return apply_fan_diagonal(
      f, [p](double lam, double xi) { return cd(std::pow(xi + lam * lam, p)); });
}

/// Cauchy-Szego-type ray projections: C keeps the bottom Fock level on
/// lambda < 0 slices, CBar the bottom level on lambda > 0 slices.
inline ScalarField apply_ray_projection(RayKind kind, const ScalarField& f) {
  ScalarField out = f;
  const auto& b = f.model->basis();
  for (auto& s : out.slices) {
    const bool on_sign = (kind == RayKind::C) ? (s.lambda < 0) : (s.lambda > 0);
    for (int i = 0; i < b.dim(); ++i)
      if (!(on_sign && b.level(i) == 0)) s.coeffs[i] = 0.0;
  }
  return out;
}

inline ScalarField apply_ray_complement(RayKind kind, const ScalarField& f) {
  ScalarField out = f;
  out -= apply_ray_projection(kind, f);
  return out;
}

namespace detail {

/// Half-power of the scalar Kohn symbol, with the kernel ray inverted to 0.
/// kind selects which operator: hol -> (xi - n lambda)/2, antihol -> +.
inline ScalarField apply_kohn_pow(bool hol, const ScalarField& f, double p) {
  const int n = f.model->n();
  return apply_fan_diagonal(f, [hol, n, p](double lam, double xi) {
    const double sym = 0.5 * (hol ? (xi - n * lam) : (xi + n * lam));
    if (sym <= 1e-12 * (1.0 + xi)) return cd(p < 0 ? 0.0 : std::pow(sym, p));
    return cd(std::pow(sym, p));
  });
}

inline ScalarField scalar_of(const FormField& omega) {
  return omega.comps.empty() ? ScalarField(omega.model) : omega.comps.begin()->second;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Intertwiners
// ---------------------------------------------------------------------------

/// R f = d (Delta0^{-1/2} f); isometric from scalars onto exact 1-forms.
inline FormField apply_R(const ScalarField& f) {
  return apply_d(scalar_as_form(apply_delta0_pow(f, -0.5)));
}

/// R* omega = Delta0^{-1/2} (d* omega).
inline ScalarField apply_R_star(const FormField& omega) {
  return apply_delta0_pow(detail::scalar_of(apply_d_star(omega)), -0.5);
}

/// Partial isometry onto co-closed (1,0)-forms: first project off the kernel
/// ray of the Kohn operator, then apply its inverse half-power and the CR
/// differential.
inline FormField apply_Ri(const ScalarField& u) {
  ScalarField g = detail::apply_kohn_pow(true, apply_ray_complement(RayKind::CBar, u), -0.5);
  return apply_partial_b(scalar_as_form(g));
}

inline ScalarField apply_Ri_star(const FormField& omega) {
  return detail::apply_kohn_pow(true, detail::scalar_of(apply_partial_b_star(omega)), -0.5);
}

inline FormField apply_Ri_bar(const ScalarField& v) {
  ScalarField g = detail::apply_kohn_pow(false, apply_ray_complement(RayKind::C, v), -0.5);
  return apply_partial_b_bar(scalar_as_form(g));
}

inline ScalarField apply_Ri_bar_star(const FormField& omega) {
  return detail::apply_kohn_pow(false, detail::scalar_of(apply_partial_b_bar_star(omega)), -0.5);
}

// ---------------------------------------------------------------------------
// W triples and Gamma
// ---------------------------------------------------------------------------

struct WTriple {
  ScalarField u, v, h;

  WTriple() = default;
  WTriple(ScalarField u_, ScalarField v_, ScalarField h_)
      : u(std::move(u_)), v(std::move(v_)), h(std::move(h_)) {}
  explicit WTriple(const ModelPtr& m) : u(m), v(m), h(m) {}

  WTriple& operator+=(const WTriple& o) {
    u += o.u;
    v += o.v;
    h += o.h;
    return *this;
  }
  WTriple& operator-=(const WTriple& o) {
    u -= o.u;
    v -= o.v;
    h -= o.h;
    return *this;
  }
  WTriple& operator*=(cd c) {
    u *= c;
    v *= c;
    h *= c;
    return *this;
  }
  friend WTriple operator+(WTriple a, const WTriple& b) { return a += b; }
  friend WTriple operator-(WTriple a, const WTriple& b) { return a -= b; }
  friend WTriple operator*(WTriple a, cd c) { return a *= c; }
};

inline cd inner(const WTriple& a, const WTriple& b) {
  return inner(a.u, b.u) + inner(a.v, b.v) + inner(a.h, b.h);
}

inline double norm(const WTriple& t) { return std::sqrt(std::abs(inner(t, t).real())); }

/// Distance of (u, v, h) from the admissible subspace: u must vanish on the
/// CBar ray and v on the C ray.
inline double w_membership_defect(const WTriple& t) {
  return std::hypot(norm(apply_ray_projection(RayKind::CBar, t.u)),
                    norm(apply_ray_projection(RayKind::C, t.v)));
}

inline WTriple project_to_W(const WTriple& t) {
  return {apply_ray_complement(RayKind::CBar, t.u), apply_ray_complement(RayKind::C, t.v), t.h};
}

/// Gamma(u, v, h) = Ri u + RiBar v + h theta. Inputs are validated against
/// the admissible-subspace constraint.
inline FormField apply_Gamma(const WTriple& t, double tol = 1e-10) {
  if (w_membership_defect(t) > tol * std::max(1.0, norm(t)))
    throw std::invalid_argument("apply_Gamma: triple violates the ray constraints");
  FormField out = apply_Ri(t.u) + apply_Ri_bar(t.v);
  out.add(theta_word(t.h.model->n()), t.h);
  return out;
}

inline WTriple apply_Gamma_star(const FormField& omega) {
  FormField plus(omega.model), minus(omega.model);
  ScalarField h(omega.model);
  for (const auto& [w, f] : omega.comps) {
    if (w.theta) h += f;
    else if (w.p() == 1) plus.add(w, f);
    else minus.add(w, f);
  }
  return {apply_Ri_star(plus), apply_Ri_bar_star(minus), h};
}

// ---------------------------------------------------------------------------
// Spectral S-branches
// ---------------------------------------------------------------------------

enum class SBranch { Zero, Plus, Minus };

namespace detail {

/// The three eigenvector components at a fan point, as diagonal multipliers.
inline std::array<cd, 3> s_symbol(SBranch branch, int n, double lam, int lev) {
  const auto pt = FanPoint::make(n, lam, lev);
  const auto e = fan_eigensystem(pt);
  switch (branch) {
    case SBranch::Zero: return e.v0;
    case SBranch::Plus: return e.v_plus;
    default: return e.v_minus;
  }
}

inline ScalarField apply_s_component(SBranch branch, int comp, const ScalarField& f) {
  const int n = f.model->n();
  return apply_level_symbol(f, [branch, comp, n](double lam, int lev) {
    return s_symbol(branch, n, lam, lev)[comp];
  });
}

inline ScalarField apply_s_component_conj(SBranch branch, int comp, const ScalarField& f) {
  const int n = f.model->n();
  return apply_level_symbol(f, [branch, comp, n](double lam, int lev) {
    return std::conj(s_symbol(branch, n, lam, lev)[comp]);
  });
}

}  // namespace detail

/// S f multiplies f by the three components of the branch eigenvector,
/// producing a W triple. The minus branch is only defined away from both
/// Szego rays; set auto_project to drop the offending coefficients instead
/// of rejecting.
inline WTriple apply_S(SBranch branch, const ScalarField& f, bool auto_project = false,
                       double tol = 1e-10) {
  ScalarField g = f;
  if (branch == SBranch::Minus) {
    const double defect = std::hypot(norm(apply_ray_projection(RayKind::C, f)),
                                     norm(apply_ray_projection(RayKind::CBar, f)));
    if (defect > tol * std::max(1.0, norm(f))) {
      if (!auto_project)
        throw std::invalid_argument("apply_S: minus branch input must vanish on both rays");
      g = apply_ray_complement(RayKind::C, apply_ray_complement(RayKind::CBar, f));
    }
  }
  return {detail::apply_s_component(branch, 0, g), detail::apply_s_component(branch, 1, g),
          detail::apply_s_component(branch, 2, g)};
}

inline ScalarField apply_S_star(SBranch branch, const WTriple& t) {
  ScalarField out = detail::apply_s_component_conj(branch, 0, t.u);
  out += detail::apply_s_component_conj(branch, 1, t.v);
  out += detail::apply_s_component_conj(branch, 2, t.h);
  return out;
}

/// Diagonal action of the 3x3 symbol matrix on a W triple, used as the
/// conjugation oracle for Gamma* (Hodge Laplacian) Gamma.
inline WTriple apply_d1_symbol(const WTriple& t) {
  const int n = t.u.model->n();
  const auto entry = [n](int i, int j, double lam, int lev) {
    return d1_at(FanPoint::make(n, lam, lev))(i, j);
  };
  WTriple out(t.u.model);
  out.u = apply_level_symbol(t.u, [&](double lam, int lev) { return entry(0, 0, lam, lev); });
  out.u += apply_level_symbol(t.h, [&](double lam, int lev) { return entry(0, 2, lam, lev); });
  out.v = apply_level_symbol(t.v, [&](double lam, int lev) { return entry(1, 1, lam, lev); });
  out.v += apply_level_symbol(t.h, [&](double lam, int lev) { return entry(1, 2, lam, lev); });
  out.h = apply_level_symbol(t.u, [&](double lam, int lev) { return entry(2, 0, lam, lev); });
  out.h += apply_level_symbol(t.v, [&](double lam, int lev) { return entry(2, 1, lam, lev); });
  out.h += apply_level_symbol(t.h, [&](double lam, int lev) { return entry(2, 2, lam, lev); });
  return out;
}

/// The shifted square-root operators sqrt(Delta0 + n^2/4) + eps*n/2 - delta*iT,
/// acting diagonally with symbol a + eps*n/2 + delta*lambda.
inline ScalarField apply_Q(int delta, int eps, const ScalarField& f) {
  const int n = f.model->n();
  return apply_level_symbol(f, [delta, eps, n](double lam, int lev) {
    return cd(fan_quantities(FanPoint::make(n, lam, lev)).q(delta, eps));
  });
}

/// Scalar calculus for the two curved spectral branches
/// Phi(+-) = Delta0 + n/2 +- sqrt(Delta0 + n^2/4).
inline ScalarField apply_phi_calculus(int sign, const std::function<cd(double)>& m,
                                      const ScalarField& f) {
  const int n = f.model->n();
  return apply_fan_diagonal(f, [sign, n, &m](double lam, double xi) {
    const double base = xi + lam * lam;
    const double a = std::sqrt(base + 0.25 * n * n);
    return m(base + 0.5 * n + sign * a);
  });
}

// ---------------------------------------------------------------------------
// Projections and the five-way decomposition
// ---------------------------------------------------------------------------

enum class Subspace { P1, P2Plus, P2Minus, PiPlus, PiMinus, P3 };

namespace detail {

inline FormField bidegree_part(const FormField& omega, int p, int q) {
  FormField out(omega.model);
  for (const auto& [w, f] : omega.comps)
    if (!w.theta && w.p() == p && w.q() == q) out.add(w, f);
  return out;
}

}  // namespace detail

inline FormField project(Subspace space, const FormField& omega) {
  if (omega.degree() > 1) throw std::invalid_argument("project: expected a 1-form");
  switch (space) {
    case Subspace::P1:
      return apply_R(apply_R_star(omega));
    case Subspace::P2Plus: {
      FormField q = detail::bidegree_part(omega, 1, 0);
      return q - apply_Ri(apply_Ri_star(q));
    }
    case Subspace::P2Minus: {
      FormField q = detail::bidegree_part(omega, 0, 1);
      return q - apply_Ri_bar(apply_Ri_bar_star(q));
    }
    case Subspace::PiPlus: {
      WTriple t = apply_Gamma_star(omega);
      return apply_Gamma(apply_S(SBranch::Plus, apply_S_star(SBranch::Plus, t)));
    }
    case Subspace::PiMinus: {
      WTriple t = apply_Gamma_star(omega);
      return apply_Gamma(apply_S(SBranch::Minus, apply_S_star(SBranch::Minus, t), true));
    }
    case Subspace::P3: {
      FormField r = omega;
      r -= project(Subspace::P1, omega);
      r -= project(Subspace::P2Plus, omega);
      r -= project(Subspace::P2Minus, omega);
      return r;
    }
  }
  throw std::invalid_argument("project: unknown subspace");
}

struct DecompositionResult {
  FormField exact;        // image of R
  FormField coclosed10;   // co-closed (1,0) part
  FormField coclosed01;   // co-closed (0,1) part
  FormField v3plus;
  FormField v3minus;
  double residual = 0.0;
  double max_cross = 0.0;  // largest pairwise normalized inner product
};

inline DecompositionResult decompose_1form(const FormField& omega) {
  DecompositionResult r;
  r.exact = project(Subspace::P1, omega);
  r.coclosed10 = project(Subspace::P2Plus, omega);
  r.coclosed01 = project(Subspace::P2Minus, omega);
  FormField p3 = omega;
  p3 -= r.exact;
  p3 -= r.coclosed10;
  p3 -= r.coclosed01;
  r.v3plus = project(Subspace::PiPlus, p3);
  r.v3minus = project(Subspace::PiMinus, p3);

  const double scale = std::max(norm(omega), 1e-300);
  FormField sum = r.exact + r.coclosed10 + r.coclosed01 + r.v3plus + r.v3minus;
  r.residual = norm(omega - sum) / scale;

  const FormField* parts[5] = {&r.exact, &r.coclosed10, &r.coclosed01, &r.v3plus, &r.v3minus};
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      const double den = std::max(norm(*parts[i]) * norm(*parts[j]), 1e-300);
      r.max_cross = std::max(r.max_cross, std::abs(inner(*parts[i], *parts[j])) / den);
    }
  return r;
}

/// Potential of the exact part: v = Delta0^{-1} d* omega, so that
/// d v = P1 omega.
inline ScalarField exact_potential(const FormField& omega) {
  return apply_delta0_pow(detail::scalar_of(apply_d_star(omega)), -1.0);
}

struct InjectivityReport {
  double max_identity_error = 0.0;
  double min_positivity = 0.0;
};

/// Checks the polynomial cancellation (d^2 - lambda^2)(d + n) =
/// d^2 - lambda^2 (d + n) + d^2 (d + n - 1) with d = xi + lambda^2 at every
/// grid point, and reports the minimum of the strictly positive factor.
inline InjectivityReport injectivity_audit(const Model& m) {
  InjectivityReport r;
  r.min_positivity = 1e300;
  const int n = m.n();
  for (int s = 0; s < m.num_slices(); ++s)
    for (int lev = 0; lev <= m.M(); ++lev) {
      const double lam = m.lambda(s);
      const double d = m.xi(lam, lev) + lam * lam;
      const double lhs = (d * d - lam * lam) * (d + n);
      const double rhs = (d * d - lam * lam * (d + n)) + d * d * (d + n - 1);
      r.max_identity_error =
          std::max(r.max_identity_error, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
      r.min_positivity = std::min(r.min_positivity, d * d * (d + n - 1));
    }
  return r;
}

}  // namespace hodgefan

#endif
