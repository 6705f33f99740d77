#ifndef HODGEFAN_MH_NORMS_HPP
#define HODGEFAN_MH_NORMS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hodgefan/fft.hpp"
#include "hodgefan/multiplier.hpp"

namespace hodgefan {

// ---------------------------------------------------------------------------
// Sampled functions and fractional Sobolev norms
// ---------------------------------------------------------------------------

struct Sampled1D {
  double origin = 0.0;
  double step = 1.0;
  std::vector<cd> samples;
};

inline Sampled1D sample_1d(const std::function<cd(double)>& f, double a, double b, int count) {
  if (count < 16) throw std::invalid_argument("sample_1d: need at least 16 samples");
  Sampled1D s;
  s.origin = a;
  s.step = (b - a) / count;
  s.samples.resize(count);
  for (int i = 0; i < count; ++i) s.samples[i] = f(a + i * s.step);
  return s;
}

/// Discrete ||(1 + |zeta|)^tau f_hat||_{L^2} with the continuum Fourier
/// normalization, so tau = 0 recovers the plain L^2 norm of f.
inline double sobolev_norm_1d(const Sampled1D& f, double tau, int pad_factor = 4) {
  const size_t n = next_pow2(f.samples.size() * static_cast<size_t>(pad_factor));
  std::vector<cd> a(n, cd(0.0));
  std::copy(f.samples.begin(), f.samples.end(), a.begin());
  fft_inplace(a, false);

  const double dzeta = 2.0 * std::numbers::pi / (static_cast<double>(n) * f.step);
  double acc = 0.0;
  for (size_t k = 0; k < n; ++k) {
    const double kk = (k <= n / 2) ? static_cast<double>(k)
                                   : static_cast<double>(k) - static_cast<double>(n);
    const double zeta = kk * dzeta;
    const double w = std::pow(1.0 + std::abs(zeta), 2.0 * tau);
    acc += w * std::norm(f.step * a[k]);
  }
  return std::sqrt(acc * dzeta / (2.0 * std::numbers::pi));
}

struct Sampled2D {
  double origin_x = 0.0, step_x = 1.0;  // first axis (lambda)
  double origin_y = 0.0, step_y = 1.0;  // second axis (xi)
  int nx = 0, ny = 0;
  std::vector<cd> samples;  // row-major: index = ix * ny + iy

  cd& at(int ix, int iy) { return samples[static_cast<size_t>(ix) * ny + iy]; }
  const cd& at(int ix, int iy) const { return samples[static_cast<size_t>(ix) * ny + iy]; }
};

inline Sampled2D sample_2d(const std::function<cd(double, double)>& f, double ax, double bx,
                           int nx, double ay, double by, int ny) {
  Sampled2D s;
  s.origin_x = ax;
  s.step_x = (bx - ax) / nx;
  s.origin_y = ay;
  s.step_y = (by - ay) / ny;
  s.nx = nx;
  s.ny = ny;
  s.samples.resize(static_cast<size_t>(nx) * ny);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) s.at(i, j) = f(ax + i * s.step_x, ay + j * s.step_y);
  return s;
}

/// Mixed-weight Sobolev norm: weight (1+|zeta_y|)^{2 rho} (1+|zeta_x|+|zeta_y|)^{2 sigma}
/// on the 2-D transform (x = first variable, y = second variable).
inline double mixed_sobolev_norm(const Sampled2D& f, double rho, double sigma,
                                 int pad_factor = 2) {
  const size_t px = next_pow2(static_cast<size_t>(f.nx) * pad_factor);
  const size_t py = next_pow2(static_cast<size_t>(f.ny) * pad_factor);
  std::vector<std::vector<cd>> grid(px, std::vector<cd>(py, cd(0.0)));
  for (int i = 0; i < f.nx; ++i)
    for (int j = 0; j < f.ny; ++j) grid[i][j] = f.at(i, j);

  for (size_t i = 0; i < px; ++i) fft_inplace(grid[i], false);
  std::vector<cd> col(px);
  for (size_t j = 0; j < py; ++j) {
    for (size_t i = 0; i < px; ++i) col[i] = grid[i][j];
    fft_inplace(col, false);
    for (size_t i = 0; i < px; ++i) grid[i][j] = col[i];
  }

  const double dzx = 2.0 * std::numbers::pi / (static_cast<double>(px) * f.step_x);
  const double dzy = 2.0 * std::numbers::pi / (static_cast<double>(py) * f.step_y);
  const double cell = f.step_x * f.step_y;
  double acc = 0.0;
  for (size_t i = 0; i < px; ++i) {
    const double ki = (i <= px / 2) ? static_cast<double>(i)
                                    : static_cast<double>(i) - static_cast<double>(px);
    const double zx = std::abs(ki * dzx);
    for (size_t j = 0; j < py; ++j) {
      const double kj = (j <= py / 2) ? static_cast<double>(j)
                                      : static_cast<double>(j) - static_cast<double>(py);
      const double zy = std::abs(kj * dzy);
      const double w =
          std::pow(1.0 + zy, 2.0 * rho) * std::pow(1.0 + zx + zy, 2.0 * sigma);
      acc += w * std::norm(cell * grid[i][j]);
    }
  }
  return std::sqrt(acc * dzx * dzy / (4.0 * std::numbers::pi * std::numbers::pi));
}

// ---------------------------------------------------------------------------
// Scale-invariant local norms
// ---------------------------------------------------------------------------

/// The fixed window: exp(1 - 1/(1 - (2s-3)^2)) on (1, 2), zero outside.
inline double bump_phi(double s) {
  const double t = 2.0 * s - 3.0;
  if (t <= -1.0 || t >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

struct SlocParams {
  double tau = 1.0;
  double rho = 1.0, sigma = 1.0;
  int J = 8;           // dyadic scales 2^{-J} .. 2^{J}
  int resolution = 512;
};

/// sup over dyadic r of || m(r .) phi ||_{L^2_tau}.
inline double mh_sloc_norm(const std::function<cd(double)>& m, const SlocParams& p) {
  double sup = 0.0;
  for (int e = -p.J; e <= p.J; ++e) {
    const double r = std::ldexp(1.0, e);
    const auto g = [&](double s) { return m(r * s) * bump_phi(s); };
    const Sampled1D f = sample_1d(g, 0.75, 2.25, p.resolution);
    const double v = sobolev_norm_1d(f, p.tau);
    if (!std::isfinite(v)) throw std::runtime_error("mh_sloc_norm: norm diverged");
    sup = std::max(sup, v);
  }
  return sup;
}

inline double mh_sloc_norm(const MultiplierSpec& m, const SlocParams& p) {
  return mh_sloc_norm(m.eval, p);
}

/// sup over dyadic (r1, r2) of the mixed norm of mu(r1 ., r2 .) eta, with the
/// window eta(lambda, xi) = phi(lambda) phi(xi); both mu(lambda, xi) and
/// mu(-lambda, xi) are measured.
inline double mixed_sloc_norm(const std::function<cd(double, double)>& mu,
                              const SlocParams& p, int res2d = 48, int J2d = 4) {
  double sup = 0.0;
  for (int e1 = -J2d; e1 <= J2d; ++e1)
    for (int e2 = -J2d; e2 <= J2d; ++e2) {
      const double r1 = std::ldexp(1.0, e1), r2 = std::ldexp(1.0, e2);
      for (double sgn : {1.0, -1.0}) {
        const auto g = [&](double lam, double xi) {
          return mu(sgn * r1 * lam, r2 * xi) * bump_phi(lam) * bump_phi(xi);
        };
        const Sampled2D f = sample_2d(g, 0.75, 2.25, res2d, 0.75, 2.25, res2d);
        const double v = mixed_sobolev_norm(f, p.rho, p.sigma);
        if (!std::isfinite(v)) throw std::runtime_error("mixed_sloc_norm: norm diverged");
        sup = std::max(sup, v);
      }
    }
  return sup;
}

// ---------------------------------------------------------------------------
// Angle cutoff and the fan extension pipeline
// ---------------------------------------------------------------------------

/// Smooth, homogeneous of degree zero, supported where xi > (n - delta)|lambda|
/// and identically 1 on the closed cone xi >= n |lambda|.
inline std::function<double(double, double)> angle_cutoff(double delta, int n) {
  if (delta <= 0 || delta >= n) throw std::invalid_argument("angle_cutoff: need 0 < delta < n");
  return [delta, n](double lam, double xi) {
    if (xi <= 0) return 0.0;
    if (lam == 0.0) return 1.0;
    const double u = xi / std::abs(lam);
    return detail::smooth_step((u - (n - delta)) / delta);
  };
}

/// Extension of a half-line multiplier to the plane: m(lambda^2 + xi - alpha
/// lambda) localized to a cone slightly wider than the spectrum; on spectral
/// points it coincides with m at the symbol of the shifted scalar operator.
inline std::function<cd(double, double)> build_fan_multiplier(const MultiplierSpec& m,
                                                              double alpha, double delta,
                                                              int n) {
  if (std::abs(alpha) >= n)
    throw std::invalid_argument("build_fan_multiplier: need |alpha| < n");
  if (delta <= 0 || delta >= n - std::abs(alpha))
    throw std::invalid_argument("build_fan_multiplier: need 0 < delta < n - |alpha|");
  auto psi = angle_cutoff(delta, n);
  auto eval = m.eval;
  return [psi, eval, alpha](double lam, double xi) {
    const double s = psi(lam, xi);
    if (s == 0.0) return cd(0.0);
    return eval(lam * lam + xi - alpha * lam) * s;
  };
}

// ---------------------------------------------------------------------------
// Transform audits
// ---------------------------------------------------------------------------

struct TransformAudit {
  double before = 0.0;
  double after = 0.0;
  double ratio = 0.0;          // after / before at base resolution
  double ratio_refined = 0.0;  // same at doubled resolution
  bool finite = false;
  bool stable = false;         // ratios agree within a factor of two

  void finish() {
    finite = std::isfinite(ratio) && std::isfinite(ratio_refined) && before > 0.0;
    const double lo = std::min(ratio, ratio_refined), hi = std::max(ratio, ratio_refined);
    stable = finite && lo > 0.0 && hi / lo <= 2.0;
  }
};

enum class TransformKind { Square, Shear, Translate, ComposePhi, BumpSwap };

namespace detail {

inline double sloc_at(const std::function<cd(double)>& m, const SlocParams& p, int res) {
  SlocParams q = p;
  q.resolution = res;
  return mh_sloc_norm(m, q);
}

}  // namespace detail

/// Translation audit: m vs m(. + a) in the 1-D local norm.
inline TransformAudit audit_translate(const MultiplierSpec& m, double a,
                                      const SlocParams& p) {
  TransformAudit r;
  const auto shifted = [&m, a](double s) { return m(s + a); };
  r.before = detail::sloc_at(m.eval, p, p.resolution);
  r.after = detail::sloc_at(shifted, p, p.resolution);
  r.ratio = r.after / r.before;
  r.ratio_refined = detail::sloc_at(shifted, p, 2 * p.resolution) /
                    detail::sloc_at(m.eval, p, 2 * p.resolution);
  r.finish();
  return r;
}

/// Composition audit with the two curved spectral changes of variable
/// s -> s + n/2 +- sqrt(s + n^2/4).
inline TransformAudit audit_compose_phi(const MultiplierSpec& m, int sign, int n,
                                        const SlocParams& p) {
  TransformAudit r;
  const auto composed = [&m, sign, n](double s) {
    return m(s + 0.5 * n + sign * std::sqrt(s + 0.25 * n * n));
  };
  r.before = detail::sloc_at(m.eval, p, p.resolution);
  r.after = detail::sloc_at(composed, p, p.resolution);
  r.ratio = r.after / r.before;
  r.ratio_refined = detail::sloc_at(composed, p, 2 * p.resolution) /
                    detail::sloc_at(m.eval, p, 2 * p.resolution);
  r.finish();
  return r;
}

/// Window-choice audit: the canonical window against a plateau window built
/// from smooth steps; the local norms they induce are equivalent.
inline TransformAudit audit_bump_swap(const MultiplierSpec& m, const SlocParams& p) {
  const auto alt_bump = [](double s) {
    return detail::smooth_step((s - 1.0) / 0.25) * detail::smooth_step((2.0 - s) / 0.25);
  };
  const auto norm_with = [&](int res, bool alt) {
    double sup = 0.0;
    for (int e = -p.J; e <= p.J; ++e) {
      const double rr = std::ldexp(1.0, e);
      const auto g = [&](double s) {
        return m(rr * s) * (alt ? alt_bump(s) : bump_phi(s));
      };
      sup = std::max(sup, sobolev_norm_1d(sample_1d(g, 0.75, 2.25, res), p.tau));
    }
    return sup;
  };
  TransformAudit r;
  r.before = norm_with(p.resolution, false);
  r.after = norm_with(p.resolution, true);
  r.ratio = r.after / r.before;
  r.ratio_refined = norm_with(2 * p.resolution, true) / norm_with(2 * p.resolution, false);
  r.finish();
  return r;
}

/// Parabolic substitution audit: mu(lambda, xi) vs mu(lambda^2, xi) in the
/// mixed local norm.
inline TransformAudit audit_square(const std::function<cd(double, double)>& mu,
                                   const SlocParams& p, int res2d = 32) {
  TransformAudit r;
  const auto squared = [&mu](double lam, double xi) { return mu(lam * lam, xi); };
  r.before = mixed_sloc_norm(mu, p, res2d);
  r.after = mixed_sloc_norm(squared, p, res2d);
  r.ratio = r.after / r.before;
  r.ratio_refined =
      mixed_sloc_norm(squared, p, 2 * res2d) / mixed_sloc_norm(mu, p, 2 * res2d);
  r.finish();
  return r;
}

/// Shear audit: mu(lambda, xi) vs mu(lambda, xi - alpha lambda) restricted to
/// the widened cone.
inline TransformAudit audit_shear(const std::function<cd(double, double)>& mu, double alpha,
                                  double delta, int n, const SlocParams& p, int res2d = 32) {
  TransformAudit r;
  auto psi = angle_cutoff(delta, n);
  const auto sheared = [&mu, psi, alpha](double lam, double xi) {
    return mu(lam, xi - alpha * lam) * psi(lam, xi);
  };
  r.before = mixed_sloc_norm(mu, p, res2d);
  r.after = mixed_sloc_norm(sheared, p, res2d);
  r.ratio = r.after / r.before;
  r.ratio_refined =
      mixed_sloc_norm(sheared, p, 2 * res2d) / mixed_sloc_norm(mu, p, 2 * res2d);
  r.finish();
  return r;
}

// ---------------------------------------------------------------------------
// Pointwise estimates for the eigenvector-component multipliers
// ---------------------------------------------------------------------------

enum class NuKind { Zero, Plus, Minus };

/// The scalar factors nu built from a(lambda, xi) and the shifted quantities:
/// nu0 = sqrt(q/a), nu+ = sqrt(q/(a + n/2)), nu- = sqrt(q_delta^- /(a - n/2)).
inline double nu_value(NuKind kind, int n, int eps, int delta, double lam, double xi) {
  const double a = std::sqrt(xi + lam * lam + 0.25 * n * n);
  const int e = (kind == NuKind::Minus) ? -1 : eps;
  const double q = a + e * 0.5 * n + delta * lam;
  switch (kind) {
    case NuKind::Zero: return std::sqrt(q / a);
    case NuKind::Plus: return std::sqrt(q / (a + 0.5 * n));
    default: return std::sqrt(q / (a - 0.5 * n));
  }
}

/// Closed form of the lambda-derivative of nu0, used to cross-check the
/// finite-difference stencils.
inline double nu0_dlambda(int n, int eps, int delta, double lam, double xi) {
  const double a = std::sqrt(xi + lam * lam + 0.25 * n * n);
  const double q = a + eps * 0.5 * n + delta * lam;
  return 0.5 * (delta * (xi + 0.25 * n * n) - eps * 0.5 * n * lam) /
         (std::sqrt(q) * std::pow(a, 2.5));
}

namespace detail {

/// Central-difference stencils on 9 points for derivative orders 0..3.
inline double stencil_derivative(const std::function<double(double)>& f, double x, double h,
                                 int order) {
  static const double c1[9] = {1.0 / 280, -4.0 / 105, 1.0 / 5, -4.0 / 5, 0.0,
                               4.0 / 5,   -1.0 / 5,   4.0 / 105, -1.0 / 280};
  static const double c2[9] = {-1.0 / 560, 8.0 / 315, -1.0 / 5, 8.0 / 5, -205.0 / 72,
                               8.0 / 5,    -1.0 / 5,  8.0 / 315, -1.0 / 560};
  static const double c3[9] = {-7.0 / 240, 3.0 / 10,   -169.0 / 120, 61.0 / 30, 0.0,
                               -61.0 / 30, 169.0 / 120, -3.0 / 10,   7.0 / 240};
  if (order == 0) return f(x);
  const double* c = (order == 1) ? c1 : (order == 2) ? c2 : c3;
  double acc = 0.0;
  for (int k = -4; k <= 4; ++k) {
    const double w = c[k + 4];
    if (w != 0.0) acc += w * f(x + k * h);
  }
  return acc / std::pow(h, order);
}

}  // namespace detail

struct NuAuditResult {
  double sup = 0.0;            // sup of |d^i_lambda d^j_xi nu| |lambda|^i xi^j
  double sup_refined = 0.0;    // same on a twice-as-dense grid
  bool finite = false;
  bool stable = false;
};

/// Scaled sup of the mixed derivative of nu over a log-spaced grid in the
/// cone xi > c |lambda|; derivatives by high-order central differences.
inline NuAuditResult nu_estimate_audit(NuKind kind, int n, int eps, int delta, int i, int j,
                                       double c, double xi_min = 1e-3, double xi_max = 1e6,
                                       int xi_count = 40, int slope_count = 12) {
  if (c <= n) throw std::invalid_argument("nu_estimate_audit: need c > n");
  if (i < 0 || i > 1 || j < 0 || j > 3)
    throw std::invalid_argument("nu_estimate_audit: derivative order out of range");

  const auto sup_on = [&](int nxi, int nslope) {
    double sup = 0.0;
    for (int a = 0; a < nxi; ++a) {
      const double xi =
          xi_min * std::pow(xi_max / xi_min, static_cast<double>(a) / (nxi - 1));
      for (int b = 0; b < nslope; ++b) {
        // |lambda| = xi / u with u from just inside the cone out to near-vertical.
        const double u =
            1.10 * c * std::pow(1e4, static_cast<double>(b) / (nslope - 1));
        for (double sgn : {1.0, -1.0}) {
          const double lam = sgn * xi / u;
          const auto g_of_lambda = [&](double l) {
            const auto g_of_xi = [&](double x) {
              return nu_value(kind, n, eps, delta, l, x);
            };
            return detail::stencil_derivative(g_of_xi, xi, 1e-2 * xi, j);
          };
          const double d =
              detail::stencil_derivative(g_of_lambda, lam, 1e-3 * std::abs(lam), i);
          const double scaled = std::abs(d) * std::pow(std::abs(lam), i) * std::pow(xi, j);
          if (std::isfinite(scaled)) sup = std::max(sup, scaled);
          else return std::numeric_limits<double>::infinity();
        }
      }
    }
    return sup;
  };

  NuAuditResult r;
  r.sup = sup_on(xi_count, slope_count);
  r.sup_refined = sup_on(2 * xi_count, 2 * slope_count);
  r.finite = std::isfinite(r.sup) && std::isfinite(r.sup_refined);
  const double lo = std::min(r.sup, r.sup_refined), hi = std::max(r.sup, r.sup_refined);
  r.stable = r.finite && (hi <= 2.0 * std::max(lo, 1e-12));
  return r;
}

}  // namespace hodgefan

#endif
