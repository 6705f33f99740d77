#ifndef HODGEFAN_SUITES_HPP
#define HODGEFAN_SUITES_HPP

#include <chrono>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hodgefan/config.hpp"
#include "hodgefan/mh_norms.hpp"
#include "hodgefan/multiplier.hpp"
#include "hodgefan/report.hpp"

namespace hodgefan {

namespace detail {

class CheckTimer {
 public:
  CheckTimer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline double relative(double err, double scale) { return err / std::max(scale, 1e-300); }

inline Form random_bidegree_form(int n, int p, int q, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Form f(n);
  for (const auto& w : bidegree_basis(n, p, q)) f.add(w, cd(nd(rng), nd(rng)));
  return f;
}

inline Form e_pow(const Form& f, int j) {
  Form r = f;
  for (int k = 0; k < j; ++k) r = e_dtheta(r);
  return r;
}

/// Worst defect of the Hodge Laplacian against the advertised scalar symbol on
/// each of the five decomposition parts.
inline double part_symbol_defect(const DecompositionResult& dec, double scale) {
  double worst = 0.0;
  const auto check = [&](const FormField& part, const FormField& expected) {
    worst = std::max(worst, relative(norm(apply_hodge(1, part) - expected), scale));
  };
  check(dec.exact, apply_R(apply_fan_diagonal(apply_R_star(dec.exact),
                                              [](double l, double x) { return cd(x + l * l); })));
  const ModelPtr m = dec.exact.model;
  check(dec.coclosed10, apply_bidegree_symbol(dec.coclosed10, [&](double l, int lev, int, int) {
          return cd(m->xi(l, lev) + l * l + l);
        }));
  check(dec.coclosed01, apply_bidegree_symbol(dec.coclosed01, [&](double l, int lev, int, int) {
          return cd(m->xi(l, lev) + l * l - l);
        }));
  const auto ident = [](double s) { return cd(s); };
  check(dec.v3plus,
        apply_Gamma(apply_S(SBranch::Plus,
                            apply_phi_calculus(+1, ident,
                                               apply_S_star(SBranch::Plus,
                                                            apply_Gamma_star(dec.v3plus))))));
  check(dec.v3minus,
        apply_Gamma(apply_S(SBranch::Minus,
                            apply_phi_calculus(-1, ident,
                                               apply_S_star(SBranch::Minus,
                                                            apply_Gamma_star(dec.v3minus))),
                            true)));
  return worst;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Suite batteries
// ---------------------------------------------------------------------------

inline std::vector<SuiteReport> run_exterior_suite(const RunConfig& cfg) {
  std::vector<SuiteReport> out;
  std::mt19937_64 rng(cfg.seed + 101);

  detail::CheckTimer t_wedge;
  double err_wedge = 0.0;
  for (int n = 1; n <= 4; ++n) {
    Form a = detail::random_bidegree_form(n, 1, 0, rng);
    Form b = detail::random_bidegree_form(n, 0, 1, rng);
    err_wedge = std::max(err_wedge, (wedge(a, b) + wedge(b, a)).norm() /
                                        std::max(a.norm() * b.norm(), 1e-300));
  }
  out.push_back(SuiteReport::make("exterior", "wedge-antisymmetry",
                                  "exterior.wedge-antisymmetry", err_wedge, 1e-12,
                                  t_wedge.ms()));

  detail::CheckTimer t_adj;
  double err_adj = 0.0;
  for (int n = 1; n <= 4; ++n) {
    for (int p = 0; p < n; ++p) {
      Form a = detail::random_bidegree_form(n, p, p, rng);
      Form b = detail::random_bidegree_form(n, p + 1, p + 1, rng);
      const cd lhs = hermitian_inner(e_dtheta(a), b);
      const cd rhs = hermitian_inner(a, i_dtheta(b));
      err_adj = std::max(err_adj, std::abs(lhs - rhs) /
                                      std::max(a.norm() * b.norm(), 1e-300));
    }
  }
  out.push_back(SuiteReport::make("exterior", "lowering-adjoint-to-raising",
                                  "exterior.ei-adjointness", err_adj, 1e-12, t_adj.ms()));

  detail::CheckTimer t_comm;
  double err_comm = 0.0;
  for (int n = 1; n <= 4; ++n) {
    for (int p = 0; p <= n; ++p) {
      for (int q = 0; q <= n; ++q) {
        Form a = detail::random_bidegree_form(n, p, q, rng);
        const int k = p + q;
        Form lhs = i_dtheta(e_dtheta(a)) - e_dtheta(i_dtheta(a));
        Form expected = a;
        expected *= cd(n - k);
        err_comm = std::max(err_comm,
                            detail::relative((lhs - expected).norm(), a.norm()));
      }
    }
  }
  out.push_back(SuiteReport::make("exterior", "raising-lowering-commutator",
                                  "exterior.ei-commutator", err_comm, 1e-12, t_comm.ms()));

  detail::CheckTimer t_lef;
  double err_rec = 0.0, err_prim = 0.0, err_orth = 0.0;
  for (int n = 1; n <= 4; ++n) {
    for (int p = 0; p <= n; ++p) {
      for (int q = 0; q <= n; ++q) {
        Form a = detail::random_bidegree_form(n, p, q, rng);
        const auto parts = lefschetz_decompose(a, p, q);
        Form sum(n);
        std::vector<Form> lifted;
        for (const auto& c : parts) {
          err_prim = std::max(err_prim, detail::relative(i_dtheta(c.form).norm(), a.norm()));
          lifted.push_back(detail::e_pow(c.form, c.j));
          sum += lifted.back();
        }
        err_rec = std::max(err_rec, detail::relative((sum - a).norm(), a.norm()));
        for (size_t x = 0; x < lifted.size(); ++x)
          for (size_t y = x + 1; y < lifted.size(); ++y)
            err_orth = std::max(err_orth,
                                std::abs(hermitian_inner(lifted[x], lifted[y])) /
                                    std::max(a.norm() * a.norm(), 1e-300));
      }
    }
  }
  const double ms_lef = t_lef.ms() / 3.0;
  out.push_back(SuiteReport::make("exterior", "lefschetz-orthogonality",
                                  "exterior.lefschetz-orthogonality", err_orth, 1e-12, ms_lef));
  out.push_back(SuiteReport::make("exterior", "lefschetz-primitivity",
                                  "exterior.lefschetz-primitivity", err_prim, 1e-12, ms_lef));
  out.push_back(SuiteReport::make("exterior", "lefschetz-reconstruction",
                                  "exterior.lefschetz-reconstruction", err_rec, 1e-12, ms_lef));
  return out;
}

inline std::vector<SuiteReport> run_operators_suite(const RunConfig& cfg) {
  std::vector<SuiteReport> out;
  std::mt19937_64 rng(cfg.seed + 202);
  ModelPtr model = build_model(cfg.model);
  const double tol = cfg.model.tol;

  detail::CheckTimer t_comm;
  double err_comm = 0.0;
  {
    ScalarField f = random_scalar_field(model, rng, model->M() - 1);
    for (int j = 1; j <= model->n(); ++j) {
      ScalarField lhs = apply_B(j, apply_Bbar(j, f)) - apply_Bbar(j, apply_B(j, f));
      ScalarField rhs = apply_T(f) * cd(0.0, 1.0);
      err_comm = std::max(err_comm, detail::relative(norm(lhs - rhs), norm(f)));
    }
  }
  out.push_back(SuiteReport::make("operators", "field-commutation",
                                  "model.commutation-relation", err_comm, tol, t_comm.ms()));

  detail::CheckTimer t_nilp;
  double err_nilp = 0.0;
  {
    ScalarField f = random_scalar_field(model, rng, model->M() - 2);
    err_nilp = std::max(err_nilp,
                        detail::relative(norm(apply_partial_b(apply_partial_b(
                                             scalar_as_form(f)))), norm(f)));
    err_nilp = std::max(err_nilp,
                        detail::relative(norm(apply_partial_b_bar(apply_partial_b_bar(
                                             scalar_as_form(f)))), norm(f)));
  }
  out.push_back(SuiteReport::make("operators", "cr-complex-nilpotency",
                                  "model.cr-nilpotency", err_nilp, tol, t_nilp.ms()));

  detail::CheckTimer t_kohn;
  double err_kohn = 0.0;
  {
    ScalarField f = random_scalar_field(model, rng, model->M() - 2);
    FormField sf = scalar_as_form(f);
    FormField lhs = apply_box_bar(sf);
    FormField rhs = apply_partial_b_bar_star(apply_partial_b_bar(sf));
    rhs += apply_partial_b_bar(apply_partial_b_bar_star(sf));
    err_kohn = detail::relative(norm(lhs - rhs), norm(f));
  }
  out.push_back(SuiteReport::make("operators", "kohn-vs-composition",
                                  "model.kohn-composition", err_kohn, tol, t_kohn.ms()));

  detail::CheckTimer t_d2;
  double err_d2 = 0.0;
  {
    ScalarField f = random_scalar_field(model, rng, model->M() - 2);
    err_d2 = detail::relative(norm(apply_d(apply_d(scalar_as_form(f)))), norm(f));
    FormField omega = random_safe_one_form(model, rng, 3);
    err_d2 = std::max(err_d2, detail::relative(norm(apply_d(apply_d(omega))), norm(omega)));
  }
  out.push_back(
      SuiteReport::make("operators", "d-squared", "model.d-squared", err_d2, tol, t_d2.ms()));

  detail::CheckTimer t_hodge;
  double err_hodge = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    FormField omega = random_safe_one_form(model, rng, 2);
    FormField lhs = apply_hodge(1, omega);
    FormField rhs = apply_d_star(apply_d(omega));
    rhs += apply_d(apply_d_star(omega));
    err_hodge = std::max(err_hodge, detail::relative(norm(lhs - rhs), norm(omega)));
  }
  out.push_back(SuiteReport::make("operators", "hodge-vs-composition",
                                  "model.hodge-composition", err_hodge, tol, t_hodge.ms()));

  detail::CheckTimer t_adj;
  double err_adj = 0.0;
  {
    ScalarField f = random_scalar_field(model, rng, model->M() - 2);
    FormField sigma = random_safe_one_form(model, rng, 2);
    const cd lhs = inner(apply_d(scalar_as_form(f)), sigma);
    const cd rhs = inner(scalar_as_form(f), apply_d_star(sigma));
    err_adj = std::abs(lhs - rhs) / std::max(norm(f) * norm(sigma), 1e-300);
  }
  out.push_back(SuiteReport::make("operators", "exterior-derivative-adjoint",
                                  "model.d-adjointness", err_adj, tol, t_adj.ms()));
  return out;
}

inline std::vector<SuiteReport> run_fan_suite(const RunConfig& cfg) {
  std::vector<SuiteReport> out;
  std::vector<double> lambdas =
      ModelConfig::geometric_lambda_grid(cfg.fan.lambda_pow_min, cfg.fan.lambda_pow_max);
  const auto grid = fan_grid(cfg.model.n, lambdas, cfg.fan.m_max);

  detail::CheckTimer t_all;
  double err_resid = 0.0, err_proj = 0.0, err_prod = 0.0;
  for (const FanPoint& pt : grid) {
    const FanEigensystem e = fan_eigensystem(pt);
    const CMatrix d = d1_at(pt);
    const double scale = std::max(1.0, std::abs(e.eig_plus));

    const auto resid = [&](const std::array<cd, 3>& v, double mu) {
      double acc = 0.0;
      for (int r = 0; r < 3; ++r) {
        cd s = -mu * v[r];
        for (int c = 0; c < 3; ++c) s += d(r, c) * v[c];
        acc += std::norm(s);
      }
      return std::sqrt(acc) / scale;
    };
    err_resid = std::max({err_resid, resid(e.v0, e.eig0), resid(e.v_plus, e.eig_plus),
                          resid(e.v_minus, e.eig_minus)});

    CMatrix sum = e.p0 + e.p_plus + e.p_minus;
    for (int r = 0; r < 3; ++r) sum(r, r) -= 1.0;
    err_proj = std::max(err_proj, sum.max_abs());

    const FanQuantities& q = e.q;
    const double a = q.a, xi = pt.xi, lam = pt.lambda;
    const int n = pt.n;
    const double s = std::max(1.0, a * a);
    err_prod = std::max(
        {err_prod, std::abs(q.qpp * q.qmm - (xi - n * lam)) / s,
         std::abs(q.qmp * q.qpm - (xi + n * lam)) / s,
         std::abs(q.qpp + q.qmm - 2 * a) / s, std::abs(q.qmp + q.qpm - 2 * a) / s,
         std::abs(q.qpp * q.qpm - ((a + lam) * (a + lam) - 0.25 * n * n)) / s,
         std::abs(q.qmp * q.qmm - ((a - lam) * (a - lam) - 0.25 * n * n)) / s,
         std::abs(q.qpp * q.qmp - ((a + 0.5 * n) * (a + 0.5 * n) - lam * lam)) / s,
         std::abs(q.qpm * q.qmm - ((a - 0.5 * n) * (a - 0.5 * n) - lam * lam)) / s});
  }
  const double ms = t_all.ms() / 3.0;
  out.push_back(SuiteReport::make("fan-eigen", "eigenpair-residuals",
                                  "fan.eigenpair-residual", err_resid, 1e-10, ms));
  out.push_back(SuiteReport::make("fan-eigen", "projection-partition",
                                  "fan.projection-sum", err_proj, 1e-12, ms));
  out.push_back(SuiteReport::make("fan-eigen", "quantity-product-identities",
                                  "fan.product-identities", err_prod, 1e-12, ms));

  detail::CheckTimer t_hand;
  double err_hand = 0.0;
  {
    const FanEigensystem e = fan_eigensystem(FanPoint::make(1, 1.0, 0));
    err_hand = std::max({std::abs(e.eig_minus - 1.0), std::abs(e.eig0 - 2.0),
                         std::abs(e.eig_plus - 4.0), std::abs(e.v_minus[0] - cd(0.0, 1.0)),
                         std::abs(e.v_minus[1]), std::abs(e.v_minus[2])});
  }
  out.push_back(SuiteReport::make("fan-eigen", "hand-verified-point", "fan.hand-point",
                                  err_hand, 1e-12, t_hand.ms()));
  return out;
}

inline std::vector<SuiteReport> run_decomposition_suite(const RunConfig& cfg) {
  std::vector<SuiteReport> out;
  std::mt19937_64 rng(cfg.seed + 303);
  ModelPtr model = build_model(cfg.model);
  const double tol = cfg.model.tol;

  detail::CheckTimer t_iso;
  double err_r = 0.0, err_script = 0.0, err_gamma = 0.0, err_s = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    ScalarField f = random_scalar_field(model, rng, model->M() - 2);
    err_r = std::max(err_r,
                     detail::relative(norm(apply_R_star(apply_R(f)) - f), norm(f)));

    ScalarField rr = apply_Ri_star(apply_Ri(f));
    ScalarField want = f - apply_ray_projection(RayKind::CBar, f);
    err_script = std::max(err_script, detail::relative(norm(rr - want), norm(f)));
    ScalarField rrb = apply_Ri_bar_star(apply_Ri_bar(f));
    ScalarField wantb = f - apply_ray_projection(RayKind::C, f);
    err_script = std::max(err_script, detail::relative(norm(rrb - wantb), norm(f)));

    WTriple w;
    w.u = random_scalar_field(model, rng, model->M() - 2);
    w.v = random_scalar_field(model, rng, model->M() - 2);
    w.h = random_scalar_field(model, rng, model->M() - 2);
    w = project_to_W(w);
    const FormField g = apply_Gamma(w);
    const WTriple back = apply_Gamma_star(g);
    err_gamma = std::max(err_gamma, detail::relative(norm(back - w), norm(w)));
    err_gamma = std::max(err_gamma,
                         std::abs(norm(g) - norm(w)) / std::max(norm(w), 1e-300));

    ScalarField h0 = f - apply_ray_projection(RayKind::C, f) -
                     apply_ray_projection(RayKind::CBar, f);
    for (SBranch br : {SBranch::Zero, SBranch::Plus, SBranch::Minus}) {
      const ScalarField& src = (br == SBranch::Minus) ? h0 : f;
      WTriple wt = apply_S(br, src);
      err_s = std::max(err_s,
                       detail::relative(norm(apply_S_star(br, wt) - src), norm(src)));
    }
  }
  const double ms_iso = t_iso.ms() / 4.0;
  out.push_back(SuiteReport::make("decomposition", "exact-branch-isometry",
                                  "decomposition.R-isometry", err_r, tol, ms_iso));
  out.push_back(SuiteReport::make("decomposition", "gamma-unitarity",
                                  "decomposition.Gamma-unitary", err_gamma, tol, ms_iso));
  out.push_back(SuiteReport::make("decomposition", "ray-reduced-isometries",
                                  "decomposition.script-R-isometry", err_script, tol, ms_iso));
  out.push_back(SuiteReport::make("decomposition", "s-branch-isometries",
                                  "decomposition.S-isometry", err_s, tol, ms_iso));

  detail::CheckTimer t_five;
  double err_resid = 0.0, err_cross = 0.0, err_symbol = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    FormField omega = random_safe_one_form(model, rng, 2);
    const DecompositionResult dec = decompose_1form(omega);
    err_resid = std::max(err_resid, dec.residual);
    err_cross = std::max(err_cross, dec.max_cross);
    err_symbol = std::max(err_symbol, detail::part_symbol_defect(dec, norm(omega)));
  }
  const double ms_five = t_five.ms() / 3.0;
  out.push_back(SuiteReport::make("decomposition", "five-way-residual",
                                  "decomposition.five-way-residual", err_resid, tol, ms_five));
  out.push_back(SuiteReport::make("decomposition", "pairwise-orthogonality",
                                  "decomposition.five-way-orthogonality", err_cross, tol,
                                  ms_five));
  out.push_back(SuiteReport::make("decomposition", "per-part-symbol-action",
                                  "decomposition.part-symbols", err_symbol, tol, ms_five));

  detail::CheckTimer t_int;
  double err_int = 0.0;
  {
    ScalarField f = random_scalar_field(model, rng, model->M() - 2);
    FormField lhs = apply_hodge(1, apply_R(f));
    FormField rhs = apply_R(apply_fan_diagonal(
        f, [](double l, double x) { return cd(x + l * l); }));
    err_int = detail::relative(norm(lhs - rhs), norm(f));

    for (SBranch br : {SBranch::Plus, SBranch::Minus}) {
      ScalarField src = f;
      if (br == SBranch::Minus)
        src = src - apply_ray_projection(RayKind::C, src) -
              apply_ray_projection(RayKind::CBar, src);
      const auto ident = [](double s) { return cd(s); };
      FormField a = apply_hodge(1, apply_Gamma(apply_S(br, src)));
      FormField b = apply_Gamma(apply_S(
          br, apply_phi_calculus(br == SBranch::Plus ? +1 : -1, ident, src)));
      err_int = std::max(err_int, detail::relative(norm(a - b), norm(src)));
    }
  }
  out.push_back(SuiteReport::make("decomposition", "intertwining-relations",
                                  "decomposition.intertwining", err_int, tol, t_int.ms()));

  detail::CheckTimer t_inj;
  const InjectivityReport inj = injectivity_audit(*model);
  const double err_inj =
      std::max(inj.max_identity_error, inj.min_positivity > 0.0 ? 0.0 : 1.0);
  out.push_back(SuiteReport::make("decomposition", "sigma-polynomial-injectivity",
                                  "decomposition.injectivity", err_inj, 1e-12, t_inj.ms()));
  return out;
}

inline std::vector<SuiteReport> run_multiplier_suite(const RunConfig& cfg) {
  std::vector<SuiteReport> out;
  std::mt19937_64 rng(cfg.seed + 404);
  ModelPtr model = build_model(cfg.model);

  detail::CheckTimer t_unit;
  double err_unit = 0.0;
  {
    FormField omega = random_safe_one_form(model, rng, 1);
    MultiplierSpec one{"one", [](double) { return cd(1.0); }, {}};
    err_unit = detail::relative(norm(m_delta1_via_decomposition(one, omega) - omega),
                                norm(omega));
  }
  out.push_back(SuiteReport::make("multiplier", "unit-multiplier-identity",
                                  "multiplier.unit", err_unit, cfg.model.tol, t_unit.ms()));

  const std::vector<std::pair<std::string, MultiplierSpec>> specs = {
      {"agreement-heat-fast", heat_multiplier(0.1)},
      {"agreement-heat-unit", heat_multiplier(1.0)},
      {"agreement-imaginary-power", imaginary_power_multiplier(1.0)}};
  for (const auto& [name, spec] : specs) {
    detail::CheckTimer t;
    double err = 0.0;
    for (int trial = 0; trial < 2; ++trial) {
      FormField omega = random_safe_one_form(model, rng, 1);
      FormField a = m_delta1_via_decomposition(spec, omega);
      FormField b = m_delta1_oracle(spec, omega);
      err = std::max(err, detail::relative(norm(a - b), norm(omega)));
    }
    out.push_back(SuiteReport::make("multiplier", name, "multiplier.path-vs-oracle", err,
                                    1e-8, t.ms()));
  }
  return out;
}

inline std::vector<SuiteReport> run_mh_norms_suite(const RunConfig& cfg) {
  std::vector<SuiteReport> out;
  const SlocParams& p = cfg.norms;

  detail::CheckTimer t_const;
  double err_const = 0.0;
  {
    std::vector<double> values;
    for (int e = -p.J; e <= p.J; ++e) {
      const double r = std::ldexp(1.0, e);
      const auto g = [r](double s) { return cd(1.0) * bump_phi(s); };
      (void)r;
      values.push_back(sobolev_norm_1d(sample_1d(g, 0.75, 2.25, p.resolution), p.tau));
    }
    for (double v : values) err_const = std::max(err_const, detail::relative(
                                                                std::abs(v - values[0]),
                                                                values[0]));
  }
  out.push_back(SuiteReport::make("mh-norms", "constant-scale-invariance",
                                  "mh.constant-invariance", err_const, 1e-12, t_const.ms()));

  detail::CheckTimer t_mono;
  double err_mono = 0.0;
  {
    const auto m = heat_multiplier(1.0);
    double prev = -1.0;
    for (double tau : {0.5, 1.0, 2.0}) {
      SlocParams q = p;
      q.tau = tau;
      const double v = mh_sloc_norm(m, q);
      if (prev >= 0.0) err_mono = std::max(err_mono, std::max(0.0, prev - v));
      prev = v;
    }
  }
  out.push_back(SuiteReport::make("mh-norms", "tau-monotonicity", "mh.tau-monotone",
                                  err_mono, 1e-12, t_mono.ms()));

  // Divergence detection for a discontinuous symbol. The declared expectation
  // is a growth factor of at least 10 under a fourfold resolution increase;
  // pass iff (required growth) / (measured growth) < 1.
  detail::CheckTimer t_jump;
  double jump_score = 0.0;
  {
    const auto jump = [](double s) { return s < 1.5 ? cd(1.0) : cd(0.0); };
    SlocParams q = p;
    q.tau = 1.0;
    const double base = mh_sloc_norm(jump, q);
    q.resolution = 4 * p.resolution;
    const double fine = mh_sloc_norm(jump, q);
    jump_score = 10.0 / (fine / base);
  }
  out.push_back(SuiteReport::make("mh-norms", "jump-divergence-detection",
                                  "mh.jump-divergence", jump_score, 1.0, t_jump.ms()));

  detail::CheckTimer t_fit;
  double fit_score = 0.0;
  {
    for (double u : {1.0, 2.0, 4.0}) {
      const auto m = imaginary_power_multiplier(u);
      SlocParams q8 = p;
      q8.J = 8;
      SlocParams q10 = p;
      q10.J = 10;
      const double c8 = mh_sloc_norm(m, q8) / std::pow(1.0 + u, p.tau);
      const double c10 = mh_sloc_norm(m, q10) / std::pow(1.0 + u, p.tau);
      if (!(std::isfinite(c8) && std::isfinite(c10)) || c8 <= 0 || c10 <= 0)
        fit_score = std::numeric_limits<double>::infinity();
      else
        fit_score = std::max(fit_score, std::max(c8 / c10, c10 / c8));
    }
  }
  out.push_back(SuiteReport::make("mh-norms", "imaginary-power-fit-stability",
                                  "mh.imaginary-power-fit", fit_score, 2.0, t_fit.ms()));

  detail::CheckTimer t_audit;
  double audit_score = 0.0;
  {
    SlocParams q = p;
    q.resolution = 256;
    q.J = 5;
    const auto m = heat_multiplier(1.0);
    std::vector<TransformAudit> audits = {audit_translate(m, 0.5, q),
                                          audit_compose_phi(m, +1, cfg.model.n, q),
                                          audit_compose_phi(m, -1, cfg.model.n, q),
                                          audit_bump_swap(m, q)};
    const auto mu = [](double lam, double xi) {
      return cd(std::exp(-0.1 * (lam * lam + xi * xi)));
    };
    audits.push_back(audit_square(mu, q, 24));
    audits.push_back(audit_shear(mu, 0.25, 0.5, cfg.model.n, q, 24));
    for (const auto& a : audits) {
      if (!a.finite) {
        audit_score = std::numeric_limits<double>::infinity();
        break;
      }
      const double lo = std::min(a.ratio, a.ratio_refined);
      const double hi = std::max(a.ratio, a.ratio_refined);
      audit_score = std::max(audit_score, hi / std::max(lo, 1e-300));
    }
  }
  out.push_back(SuiteReport::make("mh-norms", "transform-ratio-stability",
                                  "mh.transform-audits", audit_score, 2.0, t_audit.ms()));

  detail::CheckTimer t_fanext;
  double err_fanext = 0.0;
  {
    const int n = cfg.model.n;
    const double alpha = 0.25, delta = 0.25;
    const auto m = heat_multiplier(0.3);
    auto mu = build_fan_multiplier(m, alpha, delta, n);
    for (double lam : ModelConfig::geometric_lambda_grid(cfg.fan.lambda_pow_min,
                                                         cfg.fan.lambda_pow_max)) {
      for (int mm = 0; mm <= 8; ++mm) {
        const double xi = (n + 2 * mm) * std::abs(lam);
        const cd want = m(lam * lam + xi - alpha * lam);
        err_fanext = std::max(err_fanext, std::abs(mu(lam, xi) - want) /
                                              std::max(std::abs(want), 1e-300));
      }
    }
  }
  out.push_back(SuiteReport::make("mh-norms", "fan-extension-agreement",
                                  "mh.fan-extension", err_fanext, 1e-12, t_fanext.ms()));

  detail::CheckTimer t_nu;
  double nu_bound_score = 0.0, nu_stab_score = 0.0;
  {
    const NuAuditResult flat = nu_estimate_audit(NuKind::Zero, 1, 1, 1, 0, 0, 2.0);
    nu_bound_score = flat.sup / std::sqrt(3.0);
    for (NuKind kind : {NuKind::Zero, NuKind::Plus, NuKind::Minus}) {
      for (int i : {0, 1}) {
        for (int j : {0, 1, 2, 3}) {
          const NuAuditResult r =
              nu_estimate_audit(kind, cfg.model.n, 1, 1, i, j, cfg.model.n + 1.0, 1e-3, 1e6,
                                24, 8);
          if (!r.finite) {
            nu_stab_score = std::numeric_limits<double>::infinity();
          } else {
            const double lo = std::min(r.sup, r.sup_refined);
            const double hi = std::max(r.sup, r.sup_refined);
            nu_stab_score = std::max(nu_stab_score, hi / std::max(lo, 1e-12));
          }
        }
      }
    }
  }
  const double ms_nu = t_nu.ms() / 2.0;
  out.push_back(SuiteReport::make("mh-norms", "nu-envelope-bound", "mh.nu-envelope",
                                  nu_bound_score, 1.0 + 1e-12, ms_nu));
  out.push_back(SuiteReport::make("mh-norms", "nu-refinement-stability", "mh.nu-stability",
                                  nu_stab_score, 2.0, ms_nu));
  return out;
}

inline std::vector<SuiteReport> run_suite(const std::string& name, const RunConfig& cfg) {
  if (name == "exterior") return run_exterior_suite(cfg);
  if (name == "operators") return run_operators_suite(cfg);
  if (name == "fan-eigen") return run_fan_suite(cfg);
  if (name == "decomposition") return run_decomposition_suite(cfg);
  if (name == "multiplier") return run_multiplier_suite(cfg);
  if (name == "mh-norms") return run_mh_norms_suite(cfg);
  if (name == "all") {
    std::vector<SuiteReport> out;
    for (const char* s :
         {"exterior", "operators", "fan-eigen", "decomposition", "multiplier", "mh-norms"}) {
      auto part = run_suite(s, cfg);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw std::invalid_argument("run_suite: unknown suite " + name);
}

// ---------------------------------------------------------------------------
// Subcommand helpers
// ---------------------------------------------------------------------------

/// CSV table of the closed-form eigensystem over the configured grid:
/// one row per fan point with quantities, eigenvalues, and residuals.
inline std::string fan_table_csv(const RunConfig& cfg) {
  std::ostringstream out;
  out.precision(15);
  out << "lambda,m,xi,a,q_pp,q_pm,q_mp,q_mm,eig_minus,eig_zero,eig_plus,"
         "res_minus,res_zero,res_plus\n";
  const auto lambdas =
      ModelConfig::geometric_lambda_grid(cfg.fan.lambda_pow_min, cfg.fan.lambda_pow_max);
  for (const FanPoint& pt : fan_grid(cfg.model.n, lambdas, cfg.fan.m_max)) {
    const FanEigensystem e = fan_eigensystem(pt);
    const CMatrix d = d1_at(pt);
    const auto resid = [&](const std::array<cd, 3>& v, double mu) {
      double acc = 0.0;
      for (int r = 0; r < 3; ++r) {
        cd s = -mu * v[r];
        for (int c = 0; c < 3; ++c) s += d(r, c) * v[c];
        acc += std::norm(s);
      }
      return std::sqrt(acc);
    };
    out << pt.lambda << ',' << pt.m << ',' << pt.xi << ',' << e.q.a << ',' << e.q.qpp << ','
        << e.q.qpm << ',' << e.q.qmp << ',' << e.q.qmm << ',' << e.eig_minus << ','
        << e.eig0 << ',' << e.eig_plus << ',' << resid(e.v_minus, e.eig_minus) << ','
        << resid(e.v0, e.eig0) << ',' << resid(e.v_plus, e.eig_plus) << '\n';
  }
  return out.str();
}

}  // namespace hodgefan

#endif
