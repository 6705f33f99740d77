#ifndef HODGEFAN_FAN_HPP
#define HODGEFAN_FAN_HPP

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hodgefan/complexmat.hpp"

namespace hodgefan {

/// A point (lambda, m) of the joint spectrum, with xi = (n + 2m)|lambda|.
struct FanPoint {
  int n = 1;
  double lambda = 0.0;
  int m = 0;
  double xi = 0.0;

  static FanPoint make(int n, double lambda, int m) {
    if (lambda == 0.0) throw std::invalid_argument("FanPoint: lambda must be nonzero");
    if (m < 0) throw std::invalid_argument("FanPoint: m must be nonnegative");
    return {n, lambda, m, (n + 2 * m) * std::abs(lambda)};
  }
};

inline std::vector<FanPoint> fan_grid(int n, const std::vector<double>& lambdas, int m_max) {
  if (lambdas.empty()) throw std::invalid_argument("fan_grid: empty lambda range");
  std::vector<FanPoint> pts;
  pts.reserve(lambdas.size() * (m_max + 1));
  for (double lam : lambdas)
    for (int m = 0; m <= m_max; ++m) pts.push_back(FanPoint::make(n, lam, m));
  return pts;
}

/// Square root with a clamp for rounding-level negative radicands; anything
/// materially negative is a hard error since it cannot occur on the fan.
inline double fan_sqrt(double x) {
  if (x < -1e-12) throw std::domain_error("fan_sqrt: negative radicand off the fan");
  return std::sqrt(std::max(x, 0.0));
}

/// a and the four shifted quantities q(delta, eps) = a + eps*n/2 + delta*lambda.
struct FanQuantities {
  double a = 0.0;
  double qpp = 0.0;  // delta=+, eps=+
  double qpm = 0.0;  // delta=+, eps=-
  double qmp = 0.0;  // delta=-, eps=+
  double qmm = 0.0;  // delta=-, eps=-

  double q(int delta, int eps) const {
    if (delta > 0) return eps > 0 ? qpp : qpm;
    return eps > 0 ? qmp : qmm;
  }
};

/// The naive differences a - n/2 - |lambda| lose all significant digits near
/// the rays xi = +-n*lambda, and the eigenvector formulas take square roots
/// of them, amplifying the loss to sqrt(eps). Each q is therefore assembled
/// from nonnegative summands, falling back on the product identities
/// q(+,+)q(-,-) = xi - n*lambda and q(-,+)q(+,-) = xi + n*lambda for the one
/// genuinely small factor per sign of lambda.
inline FanQuantities fan_quantities(const FanPoint& pt) {
  FanQuantities r;
  const double half_n = 0.5 * pt.n;
  const double lam = pt.lambda, xi = pt.xi;
  r.a = std::sqrt(xi + lam * lam + half_n * half_n);
  const double a_minus_halfn = (xi + lam * lam) / (r.a + half_n);
  const double a_minus_abslam = (xi + half_n * half_n) / (r.a + std::abs(lam));
  if (lam >= 0) {
    r.qpp = r.a + half_n + lam;
    r.qpm = a_minus_halfn + lam;
    r.qmp = a_minus_abslam + half_n;
    r.qmm = (xi - pt.n * lam) / r.qpp;
  } else {
    r.qmp = r.a + half_n - lam;
    r.qmm = a_minus_halfn - lam;
    r.qpp = a_minus_abslam + half_n;
    r.qpm = (xi + pt.n * lam) / r.qmp;
  }
  return r;
}

/// The 3x3 hermitian symbol of the Hodge Laplacian on the invariant frame
/// (ordering: (1,0) part, (0,1) part, theta part).
inline CMatrix d1_at(const FanPoint& pt) {
  const double n = pt.n, lam = pt.lambda, xi = pt.xi;
  const double off_p = fan_sqrt(0.5 * (xi - n * lam));
  const double off_m = fan_sqrt(0.5 * (xi + n * lam));
  const double base = xi + lam * lam;
  CMatrix d(3, 3);
  d(0, 0) = base - lam;
  d(1, 1) = base + lam;
  d(2, 2) = base + n;
  d(0, 2) = cd(0.0, -off_p);
  d(2, 0) = cd(0.0, off_p);
  d(1, 2) = cd(0.0, off_m);
  d(2, 1) = cd(0.0, -off_m);
  return d;
}

struct FanEigensystem {
  double eig0 = 0.0, eig_plus = 0.0, eig_minus = 0.0;
  std::array<cd, 3> v0{}, v_plus{}, v_minus{};
  CMatrix p0, p_plus, p_minus;
  FanQuantities q;
};

namespace detail {

inline CMatrix rank_one(const std::array<cd, 3>& v) {
  CMatrix p(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p(i, j) = v[i] * std::conj(v[j]);
  return p;
}

}  // namespace detail

/// Closed-form eigensystem of d1_at. Eigenvalues xi + lambda^2 and
/// xi + lambda^2 + n/2 +- a; eigenvectors in terms of the q quantities.
inline FanEigensystem fan_eigensystem(const FanPoint& pt) {
  FanEigensystem r;
  const double n = pt.n, lam = pt.lambda, xi = pt.xi;
  const double base = xi + lam * lam;
  r.q = fan_quantities(pt);
  const double a = r.q.a;
  r.eig0 = base;
  r.eig_plus = base + 0.5 * n + a;
  r.eig_minus = base + 0.5 * n - a;

  const cd I(0.0, 1.0);
  {
    const double norm0 = std::sqrt(base);
    r.v0 = {fan_sqrt(0.5 * (xi - n * lam)) / norm0, fan_sqrt(0.5 * (xi + n * lam)) / norm0,
            I * (lam / norm0)};
  }
  {
    const double normp = std::sqrt(2.0 * a * (a + 0.5 * n));
    r.v_plus = {-I * (fan_sqrt(0.5 * r.q.qmp * r.q.qmm) / normp),
                I * (fan_sqrt(0.5 * r.q.qpp * r.q.qpm) / normp),
                fan_sqrt(r.q.qpp * r.q.qmp) / normp};
  }
  {
    const double normm = std::sqrt(2.0 * a * (a - 0.5 * n));
    r.v_minus = {I * (fan_sqrt(0.5 * r.q.qpp * r.q.qpm) / normm),
                 -I * (fan_sqrt(0.5 * r.q.qmp * r.q.qmm) / normm),
                 fan_sqrt(r.q.qpm * r.q.qmm) / normm};
  }
  r.p0 = detail::rank_one(r.v0);
  r.p_plus = detail::rank_one(r.v_plus);
  r.p_minus = detail::rank_one(r.v_minus);
  return r;
}

/// m(d1) at a fan point through the spectral projections.
inline CMatrix synth_matrix_multiplier(const std::function<cd(double)>& m, const FanPoint& pt) {
  const FanEigensystem e = fan_eigensystem(pt);
  return e.p0 * m(e.eig0) + e.p_plus * m(e.eig_plus) + e.p_minus * m(e.eig_minus);
}

enum class RayKind { C, CBar };

/// Indicator of the two distinguished single-ray projections: C lives on
/// (m = 0, lambda < 0), CBar on (m = 0, lambda > 0).
inline int ray_projection_symbol(RayKind kind, const FanPoint& pt) {
  if (pt.m != 0) return 0;
  if (kind == RayKind::C) return pt.lambda < 0 ? 1 : 0;
  return pt.lambda > 0 ? 1 : 0;
}

enum class AuditSymbol {
  RatioSub,      // xi^r / (xi + lambda^2 - alpha*lambda)^r
  RatioVert,     // lambda^{2r} / (xi + lambda^2 - alpha*lambda)^r
  OffRayMinus,   // xi^r / (xi - n*lambda)^r, off the (m=0, lambda>0) ray
  OffRayPlus     // xi^r / (xi + n*lambda)^r, off the (m=0, lambda<0) ray
};

/// Sup of |symbol| over the given fan points. The two off-ray symbols skip
/// the ray where their denominator vanishes.
inline double symbol_sup_audit(AuditSymbol id, double alpha, double r,
                               const std::vector<FanPoint>& region) {
  if (region.empty()) throw std::invalid_argument("symbol_sup_audit: empty region");
  double sup = 0.0;
  for (const auto& pt : region) {
    const double n = pt.n, lam = pt.lambda, xi = pt.xi;
    double val = 0.0;
    switch (id) {
      case AuditSymbol::RatioSub:
      case AuditSymbol::RatioVert: {
        if (std::abs(alpha) >= n)
          throw std::invalid_argument("symbol_sup_audit: |alpha| must be < n");
        const double den = xi + lam * lam - alpha * lam;
        const double num = (id == AuditSymbol::RatioSub) ? std::pow(xi, r)
                                                         : std::pow(lam * lam, r);
        val = num / std::pow(den, r);
        break;
      }
      case AuditSymbol::OffRayMinus: {
        if (pt.m == 0 && lam > 0) continue;
        val = std::pow(xi, r) / std::pow(xi - n * lam, r);
        break;
      }
      case AuditSymbol::OffRayPlus: {
        if (pt.m == 0 && lam < 0) continue;
        val = std::pow(xi, r) / std::pow(xi + n * lam, r);
        break;
      }
    }
    sup = std::max(sup, std::abs(val));
  }
  return sup;
}

}  // namespace hodgefan

#endif
