// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
#include <chrono>
#include <cstdio>
#include <map>
#include <random>

#include "hodgefan/suites.hpp"

using namespace hodgefan;

namespace {

struct Criterion {
  std::string name;
  bool pass = true;
  double max_error = 0.0;
  double limit = 0.0;
  double seconds = 0.0;
  std::string detail;
};

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

double rel(double err, double scale) { return err / std::max(scale, 1e-300); }

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Form random_bidegree_form(int n, int p, int q, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Form f(n);
  for (const auto& w : bidegree_basis(n, p, q)) f.add(w, cd(nd(rng), nd(rng)));
  return f;
}

ModelPtr acceptance_model(int n) {
  ModelConfig cfg = ModelConfig::defaults();
  cfg.n = n;
  cfg.M = 8;
  cfg.lambdas = ModelConfig::geometric_lambda_grid(-3, 4);  // 16 values
  return build_model(cfg);
}

// --------------------------------------------------------------------------
// 1. Lefschetz suite: reconstruction, eigenvalues, dimensions, n <= 4.
// --------------------------------------------------------------------------
Criterion criterion_lefschetz() {
  Criterion c{"lefschetz reconstruction/eigenvalues/dimensions (n <= 4)"};
  c.limit = 1e-12;
  const double t0 = now_s();
  std::mt19937_64 rng(1001);
  bool dims_ok = true;

  for (int n = 1; n <= 4; ++n) {
    for (int p = 0; p <= n; ++p) {
      for (int q = 0; q <= n; ++q) {
        const int k = p + q;
        Form omega = random_bidegree_form(n, p, q, rng);
        const auto comps = lefschetz_decompose(omega, p, q);
        Form recon(n);
        for (const auto& part : comps) {
          c.max_error = std::max(c.max_error, rel(i_dtheta(part.form).norm(), omega.norm()));
          Form lift = part.form;
          for (int t = 0; t < part.j; ++t) lift = e_dtheta(lift);
          recon += lift;
          const double ei_eval = static_cast<double>(part.j) * (part.j + 1 + n - k);
          c.max_error = std::max(
              c.max_error, rel((e_dtheta(i_dtheta(lift)) - lift * cd(ei_eval)).norm(),
                               std::max(1.0, lift.norm())));
        }
        c.max_error = std::max(c.max_error, rel((recon - omega).norm(), omega.norm()));

        const auto basis = bidegree_basis(n, p, q);
        if (static_cast<long>(basis.size()) != binom(n, p) * binom(n, q)) dims_ok = false;
        const CMatrix ei = operator_matrix(
            [](const Form& f) { return e_dtheta(i_dtheta(f)); }, basis, basis);
        const auto eig = hermitian_eig(ei);
        std::map<int, int> mult;
        for (double ev : eig.eigenvalues) {
          int found = -1;
          for (int j = std::max(0, k - n); j <= std::min(p, q); ++j)
            if (std::abs(ev - static_cast<double>(j) * (j + 1 + n - k)) < 1e-10) found = j;
          if (found < 0) dims_ok = false;
          else mult[found] += 1;
        }
        int total = 0;
        for (int j = std::max(0, k - n); j <= std::min(p, q); ++j) {
          if (!mult.count(j)) dims_ok = false;
          total += mult[j];
        }
        if (total != static_cast<int>(basis.size())) dims_ok = false;
      }
    }
  }
  c.seconds = now_s() - t0;
  c.pass = (c.max_error < c.limit) && dims_ok && (c.seconds < 10.0);
  if (!dims_ok) c.detail = "dimension counts failed";
  return c;
}

// --------------------------------------------------------------------------
// 2. Operator identities on weight-safe blocks, n in {1,2}, M=8, 16 lambdas.
// --------------------------------------------------------------------------
Criterion criterion_operators() {
  Criterion c{"operator identities (n in {1,2}, M=8, 16 lambda values)"};
  c.limit = 1e-10;
  const double t0 = now_s();
  std::mt19937_64 rng(2002);
  const cd I(0.0, 1.0);

  for (int n : {1, 2}) {
    ModelPtr m = acceptance_model(n);
    const auto track = [&](double err) { c.max_error = std::max(c.max_error, err); };

    ScalarField f = random_scalar_field(m, rng, m->M() - 1);
    for (int j = 1; j <= n; ++j) {
      ScalarField comm = apply_B(j, apply_Bbar(j, f)) - apply_Bbar(j, apply_B(j, f));
      track(rel(norm(comm - apply_T(f) * I), norm(f)));
    }

    FormField omega = random_safe_one_form(m, rng, 2);
    track(rel(norm(apply_partial_b(apply_partial_b(omega))), norm(omega)));
    track(rel(norm(apply_partial_b_bar(apply_partial_b_bar(omega))), norm(omega)));
    track(rel(norm(apply_partial_b(apply_partial_b_bar_star(omega)) +
                   apply_partial_b_bar_star(apply_partial_b(omega))),
              norm(omega)));
    track(rel(norm(apply_partial_b_bar(apply_partial_b_star(omega)) +
                   apply_partial_b_star(apply_partial_b_bar(omega))),
              norm(omega)));

    FormField sf = scalar_as_form(random_scalar_field(m, rng, m->M() - 2));
    track(rel(norm(apply_d_h(apply_d_h(sf)) + apply_e_dtheta(apply_T(sf))), norm(sf)));

    track(rel(norm(apply_box(omega) - apply_partial_b(apply_partial_b_star(omega)) -
                   apply_partial_b_star(apply_partial_b(omega))),
              norm(omega)));
    track(rel(norm(apply_box_bar(omega) - apply_partial_b_bar(apply_partial_b_bar_star(omega)) -
                   apply_partial_b_bar_star(apply_partial_b_bar(omega))),
              norm(omega)));
    track(rel(norm(apply_delta_h(omega) - apply_d_h(apply_d_h_star(omega)) -
                   apply_d_h_star(apply_d_h(omega))),
              norm(omega)));

    std::vector<BasisWord> deg2;
    for (int p = 0; p <= 2; ++p) {
      const int q = 2 - p;
      if (p > n || q > n) continue;
      for (const auto& w : bidegree_basis(n, p, q)) deg2.push_back(w);
    }
    FormField sigma = random_form_field(m, deg2, rng, m->M() - 2);
    track(rel(norm(apply_i_dtheta(apply_partial_b(sigma)) -
                   apply_partial_b(apply_i_dtheta(sigma)) +
                   apply_partial_b_bar_star(sigma) * I),
              norm(sigma)));
    track(rel(norm(apply_i_dtheta(apply_partial_b_bar(sigma)) -
                   apply_partial_b_bar(apply_i_dtheta(sigma)) -
                   apply_partial_b_star(sigma) * I),
              norm(sigma)));
    track(rel(norm(apply_partial_b_star(apply_e_dtheta(omega)) -
                   apply_e_dtheta(apply_partial_b_star(omega)) -
                   apply_partial_b_bar(omega) * I),
              norm(omega)));
    track(rel(norm(apply_partial_b_bar_star(apply_e_dtheta(omega)) -
                   apply_e_dtheta(apply_partial_b_bar_star(omega)) +
                   apply_partial_b(omega) * I),
              norm(omega)));

    const auto iT = [&I](const FormField& x) { return apply_T(x) * I; };
    track(rel(norm(apply_box(apply_partial_b_bar(omega)) -
                   apply_partial_b_bar(apply_box(omega)) + iT(apply_partial_b_bar(omega))),
              norm(omega)));
    track(rel(norm(apply_box_bar(apply_partial_b(omega)) -
                   apply_partial_b(apply_box_bar(omega)) - iT(apply_partial_b(omega))),
              norm(omega)));
    track(rel(norm(apply_box(apply_partial_b_bar_star(omega)) -
                   apply_partial_b_bar_star(apply_box(omega)) -
                   iT(apply_partial_b_bar_star(omega))),
              norm(omega)));
    track(rel(norm(apply_box_bar(apply_partial_b_star(omega)) -
                   apply_partial_b_star(apply_box_bar(omega)) +
                   iT(apply_partial_b_star(omega))),
              norm(omega)));

    ScalarField g = random_scalar_field(m, rng, m->M() - 2);
    track(rel(norm(apply_d(apply_d(scalar_as_form(g)))), norm(g)));
    FormField safe3 = random_safe_one_form(m, rng, 3);
    track(rel(norm(apply_d(apply_d(safe3))), norm(safe3)));
    track(rel(norm(apply_d_star(apply_d(scalar_as_form(g))) -
                   scalar_as_form(apply_invariant_scalar_op({ScalarOp::Delta0}, g))),
              norm(g)));

    for (int trial = 0; trial < 3; ++trial) {
      FormField w = random_safe_one_form(m, rng, 2);
      track(rel(norm(apply_hodge(1, w) - apply_d(apply_d_star(w)) -
                     apply_d_star(apply_d(w))),
                norm(w)));
    }
  }
  c.seconds = now_s() - t0;
  c.pass = (c.max_error < c.limit) && (c.seconds < 60.0);
  return c;
}

// --------------------------------------------------------------------------
// 3. Fan eigensystem over >= 10^4 points plus the hand-verified point.
// --------------------------------------------------------------------------
Criterion criterion_fan() {
  Criterion c{"fan eigensystem (>= 10^4 points, hand point)"};
  c.limit = 1e-10;
  const double t0 = now_s();

  std::vector<double> lambdas;
  for (int k = -12; k <= 12; ++k) {
    const double v = std::pow(2.0, k / 4.0);
    lambdas.push_back(v);
    lambdas.push_back(-v);
  }
  long count = 0;
  double err_resid = 0.0, err_proj = 0.0, err_ident = 0.0;
  for (int n : {1, 2, 3}) {
    for (const FanPoint& pt : fan_grid(n, lambdas, 70)) {
      ++count;
      const FanEigensystem e = fan_eigensystem(pt);
      const CMatrix d = d1_at(pt);
      const double scale = std::max(1.0, std::abs(e.eig_plus));
      const auto resid = [&](const std::array<cd, 3>& v, double mu) {
        double acc = 0.0;
        for (int r = 0; r < 3; ++r) {
          cd s = -mu * v[r];
          for (int col = 0; col < 3; ++col) s += d(r, col) * v[col];
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
      const double s = std::max(1.0, a * a);
      err_ident = std::max(
          {err_ident, std::abs(q.qpp * q.qmm - (xi - n * lam)) / s,
           std::abs(q.qmp * q.qpm - (xi + n * lam)) / s,
           std::abs(q.qpp + q.qmm - 2 * a) / s, std::abs(q.qmp + q.qpm - 2 * a) / s,
           std::abs(q.qpp * q.qpm - ((a + lam) * (a + lam) - 0.25 * n * n)) / s,
           std::abs(q.qmp * q.qmm - ((a - lam) * (a - lam) - 0.25 * n * n)) / s,
           std::abs(q.qpp * q.qmp - ((a + 0.5 * n) * (a + 0.5 * n) - lam * lam)) / s,
           std::abs(q.qpm * q.qmm - ((a - 0.5 * n) * (a - 0.5 * n) - lam * lam)) / s});
    }
  }
  const FanEigensystem hand = fan_eigensystem(FanPoint::make(1, 1.0, 0));
  const double err_hand =
      std::max({std::abs(hand.eig_minus - 1.0), std::abs(hand.eig0 - 2.0),
                std::abs(hand.eig_plus - 4.0), std::abs(hand.v_minus[0] - cd(0.0, 1.0)),
                std::abs(hand.v_minus[1]), std::abs(hand.v_minus[2])});

  c.pass = (count >= 10000) && (err_resid < 1e-10) && (err_proj < 1e-12) &&
           (err_ident < 1e-12) && (err_hand < 1e-12);
  c.max_error = std::max({err_resid, err_proj, err_ident, err_hand});
  c.seconds = now_s() - t0;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "points=%ld", count);
  c.detail = buf;
  return c;
}

// --------------------------------------------------------------------------
// 4. Isometry and unitarity relations on 10 random inputs per configuration.
// --------------------------------------------------------------------------
Criterion criterion_isometries() {
  Criterion c{"isometries and unitarity (10 random inputs)"};
  c.limit = 1e-10;
  const double t0 = now_s();
  std::mt19937_64 rng(4004);

  for (int n : {1, 2}) {
    ModelPtr m = acceptance_model(n);
    for (int trial = 0; trial < 10; ++trial) {
      ScalarField f = random_scalar_field(m, rng, m->M() - 2);
      c.max_error = std::max(c.max_error,
                             rel(norm(apply_R_star(apply_R(f)) - f), norm(f)));
      c.max_error = std::max(
          c.max_error, rel(norm(apply_Ri_star(apply_Ri(f)) -
                                apply_ray_complement(RayKind::CBar, f)),
                           norm(f)));
      c.max_error = std::max(
          c.max_error, rel(norm(apply_Ri_bar_star(apply_Ri_bar(f)) -
                                apply_ray_complement(RayKind::C, f)),
                           norm(f)));

      WTriple t(m);
      t.u = random_scalar_field(m, rng, m->M() - 2);
      t.v = random_scalar_field(m, rng, m->M() - 2);
      t.h = random_scalar_field(m, rng, m->M() - 2);
      t = project_to_W(t);
      c.max_error = std::max(
          c.max_error, rel(norm(apply_Gamma_star(apply_Gamma(t)) - t), norm(t)));

      ScalarField h0 = f - apply_ray_projection(RayKind::C, f) -
                       apply_ray_projection(RayKind::CBar, f);
      for (SBranch br : {SBranch::Zero, SBranch::Plus, SBranch::Minus}) {
        const ScalarField& src = (br == SBranch::Minus) ? h0 : f;
        c.max_error = std::max(
            c.max_error,
            rel(norm(apply_S_star(br, apply_S(br, src)) - src), norm(src)));
      }
    }
  }
  c.seconds = now_s() - t0;
  c.pass = c.max_error < c.limit;
  return c;
}

// --------------------------------------------------------------------------
// 5. Five-way decomposition with per-part symbol action and the co-closed case.
// --------------------------------------------------------------------------
Criterion criterion_decomposition() {
  Criterion c{"five-way decomposition and part symbols"};
  c.limit = 1e-10;
  const double t0 = now_s();
  std::mt19937_64 rng(5005);

  for (int n : {1, 2}) {
    ModelPtr m = acceptance_model(n);
    for (int trial = 0; trial < 3; ++trial) {
      FormField omega = random_safe_one_form(m, rng, 2);
      const DecompositionResult dec = decompose_1form(omega);
      c.max_error = std::max({c.max_error, dec.residual, dec.max_cross,
                              hodgefan::detail::part_symbol_defect(dec, norm(omega))});
    }
  }

  // n = 1 co-closed block: the Hodge Laplacian degenerates to -T^2 = lambda^2.
  {
    ModelConfig cfg = ModelConfig::defaults();
    cfg.lambdas = {-1.0};
    ModelPtr m = build_model(cfg);
    ScalarField f(m);
    f.slices[0].coeffs[0] = 1.0;  // vacuum at lambda = -1
    FormField omega(m);
    omega.add(beta_word(1, 1), f);
    c.max_error = std::max(c.max_error, rel(norm(apply_d_star(omega)), norm(omega)));
    c.max_error = std::max(
        c.max_error, rel(norm(apply_hodge(1, omega) - omega * cd(1.0)), norm(omega)));
    const DecompositionResult dec = decompose_1form(omega);
    c.max_error = std::max(c.max_error,
                           rel(norm(dec.coclosed10 - omega), norm(omega)));
  }
  c.seconds = now_s() - t0;
  c.pass = c.max_error < c.limit;
  return c;
}

// --------------------------------------------------------------------------
// 6. Multiplier agreement: five-term path against the dense block oracle.
// --------------------------------------------------------------------------
Criterion criterion_multiplier() {
  Criterion c{"multiplier path vs oracle (heat, imaginary power; 10 trials)"};
  c.limit = 1e-8;
  const double t0 = now_s();
  std::mt19937_64 rng(6006);
  const std::vector<MultiplierSpec> specs = {heat_multiplier(0.1), heat_multiplier(1.0),
                                             imaginary_power_multiplier(1.0)};
  for (int n : {1, 2}) {
    ModelPtr m = acceptance_model(n);
    for (int trial = 0; trial < 10; ++trial) {
      FormField omega = random_safe_one_form(m, rng, 1);
      for (const auto& spec : specs) {
        FormField a = m_delta1_via_decomposition(spec, omega);
        FormField b = m_delta1_oracle(spec, omega);
        c.max_error = std::max(c.max_error, rel(norm(a - b), norm(omega)));
      }
    }
  }
  c.seconds = now_s() - t0;
  c.pass = (c.max_error < c.limit) && (c.seconds < 120.0);
  return c;
}

// --------------------------------------------------------------------------
// 7. Intertwining relations.
// --------------------------------------------------------------------------
Criterion criterion_intertwining() {
  Criterion c{"intertwining of the Hodge Laplacian with R and Gamma S"};
  c.limit = 1e-10;
  const double t0 = now_s();
  std::mt19937_64 rng(7007);
  const auto ident = [](double s) { return cd(s); };

  for (int n : {1, 2}) {
    ModelPtr m = acceptance_model(n);
    ScalarField f = random_scalar_field(m, rng, m->M() - 2);
    FormField lhs = apply_hodge(1, apply_R(f));
    FormField rhs = apply_R(
        apply_fan_diagonal(f, [](double l, double x) { return cd(x + l * l); }));
    c.max_error = std::max(c.max_error, rel(norm(lhs - rhs), norm(f)));

    for (SBranch br : {SBranch::Plus, SBranch::Minus}) {
      ScalarField src = f;
      if (br == SBranch::Minus)
        src = src - apply_ray_projection(RayKind::C, src) -
              apply_ray_projection(RayKind::CBar, src);
      FormField a = apply_hodge(1, apply_Gamma(apply_S(br, src)));
      FormField b = apply_Gamma(
          apply_S(br, apply_phi_calculus(br == SBranch::Plus ? +1 : -1, ident, src)));
      c.max_error = std::max(c.max_error, rel(norm(a - b), norm(src)));
    }
  }
  c.seconds = now_s() - t0;
  c.pass = c.max_error < c.limit;
  return c;
}

// --------------------------------------------------------------------------
// 8. Scale-invariant local norm sanity.
// --------------------------------------------------------------------------
Criterion criterion_mh_sanity() {
  Criterion c{"local norm sanity (constants, jump divergence, imaginary powers)"};
  const double t0 = now_s();

  double err_const = 0.0;
  {
    std::vector<double> values;
    for (int e : {-8, -4, 0, 4, 8}) {
      (void)e;
      const auto g = [](double s) { return cd(bump_phi(s)); };
      values.push_back(sobolev_norm_1d(sample_1d(g, 0.75, 2.25, 512), 1.0));
    }
    for (double v : values)
      err_const = std::max(err_const, std::abs(v - values[0]) / values[0]);
  }

  const auto jump = [](double s) { return s < 1.5 ? cd(1.0) : cd(0.0); };
  SlocParams p;
  p.tau = 1.0;
  p.resolution = 512;
  const double base = mh_sloc_norm(jump, p);
  SlocParams p4 = p;
  p4.resolution = 4 * p.resolution;
  const double growth = mh_sloc_norm(jump, p4) / base;

  double fit_dev = 0.0;
  for (double u : {1.0, 2.0, 4.0}) {
    const auto m = imaginary_power_multiplier(u);
    SlocParams q8 = p;
    q8.J = 8;
    SlocParams q10 = p;
    q10.J = 10;
    const double c8 = mh_sloc_norm(m, q8) / (1.0 + u);
    const double c10 = mh_sloc_norm(m, q10) / (1.0 + u);
    fit_dev = std::max(fit_dev, std::max(c8 / c10, c10 / c8));
  }

  c.seconds = now_s() - t0;
  const bool jump_ok = growth >= 10.0;
  c.pass = (err_const < 1e-12) && jump_ok && (fit_dev <= 2.0);
  c.max_error = err_const;
  c.limit = 1e-12;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "constant_dev=%.3g jump_growth=%.3fx (need >= 10x) fit_dev=%.3f",
                err_const, growth, fit_dev);
  c.detail = buf;
  return c;
}

// --------------------------------------------------------------------------
// 9. Transform audits and the fan extension pipeline.
// --------------------------------------------------------------------------
Criterion criterion_transforms() {
  Criterion c{"transform audit stability and fan extension agreement"};
  c.limit = 2.0;
  const double t0 = now_s();

  SlocParams p;
  p.tau = 1.0;
  p.resolution = 256;
  p.J = 5;
  const auto m = heat_multiplier(1.0);
  std::vector<TransformAudit> audits = {audit_translate(m, 0.5, p),
                                        audit_compose_phi(m, +1, 1, p),
                                        audit_compose_phi(m, -1, 1, p),
                                        audit_bump_swap(m, p)};
  const auto mu = [](double lam, double xi) {
    return cd(std::exp(-0.1 * (lam * lam + xi * xi)));
  };
  audits.push_back(audit_square(mu, p, 24));
  audits.push_back(audit_shear(mu, 0.25, 0.5, 1, p, 24));
  double worst = 0.0;
  bool finite = true;
  for (const auto& a : audits) {
    finite = finite && a.finite;
    const double lo = std::min(a.ratio, a.ratio_refined);
    const double hi = std::max(a.ratio, a.ratio_refined);
    worst = std::max(worst, hi / std::max(lo, 1e-300));
  }

  double err_fanext = 0.0;
  for (int n : {1, 2}) {
    const double alpha = 0.25, delta = 0.25;
    const auto spec = heat_multiplier(0.3);
    auto mu3 = build_fan_multiplier(spec, alpha, delta, n);
    for (double lam : ModelConfig::geometric_lambda_grid(-3, 4)) {
      for (int mm = 0; mm <= 8; ++mm) {
        const double xi = (n + 2 * mm) * std::abs(lam);
        const cd want = spec(lam * lam + xi - alpha * lam);
        err_fanext = std::max(err_fanext,
                              std::abs(mu3(lam, xi) - want) /
                                  std::max(std::abs(want), 1e-300));
      }
    }
  }

  c.seconds = now_s() - t0;
  c.max_error = worst;
  c.pass = finite && (worst < 2.0) && (err_fanext < 1e-12);
  char buf[128];
  std::snprintf(buf, sizeof(buf), "stability=%.4f fan_extension_err=%.3g", worst,
                err_fanext);
  c.detail = buf;
  return c;
}

// --------------------------------------------------------------------------
// 10. Pointwise nu audits.
// --------------------------------------------------------------------------
Criterion criterion_nu() {
  Criterion c{"nu derivative audits (i <= 1, j <= 3) and envelope bound"};
  c.limit = 2.0;
  const double t0 = now_s();

  bool finite = true;
  double worst = 0.0;
  for (NuKind kind : {NuKind::Zero, NuKind::Plus, NuKind::Minus}) {
    for (int i : {0, 1}) {
      for (int j : {0, 1, 2, 3}) {
        const NuAuditResult r = nu_estimate_audit(kind, 1, 1, 1, i, j, 2.0, 1e-3, 1e6, 24, 8);
        finite = finite && r.finite;
        if (r.finite) {
          const double lo = std::min(r.sup, r.sup_refined);
          const double hi = std::max(r.sup, r.sup_refined);
          worst = std::max(worst, hi / std::max(lo, 1e-12));
        }
      }
    }
  }
  const NuAuditResult flat = nu_estimate_audit(NuKind::Zero, 1, 1, 1, 0, 0, 2.0);
  const bool bound_ok = flat.finite && flat.sup <= std::sqrt(3.0);

  c.seconds = now_s() - t0;
  c.max_error = worst;
  c.pass = finite && (worst < 2.0) && bound_ok;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "stability=%.4f nu0_sup=%.6f (bound %.6f)", worst,
                flat.sup, std::sqrt(3.0));
  c.detail = buf;
  return c;
}

}  // namespace

int main() {
  const Criterion results[] = {
      criterion_lefschetz(),    criterion_operators(),  criterion_fan(),
      criterion_isometries(),   criterion_decomposition(), criterion_multiplier(),
      criterion_intertwining(), criterion_mh_sanity(),  criterion_transforms(),
      criterion_nu()};
  int failures = 0;
  int idx = 0;
  for (const Criterion& c : results) {
    ++idx;
    std::printf("[%s] criterion %2d: %s  max_error=%.3g limit=%.3g (%.2f s)%s%s\n",
                c.pass ? "PASS" : "FAIL", idx, c.name.c_str(), c.max_error, c.limit,
                c.seconds, c.detail.empty() ? "" : "  ", c.detail.c_str());
    if (!c.pass) ++failures;
  }
  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
