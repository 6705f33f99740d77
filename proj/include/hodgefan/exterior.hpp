#ifndef HODGEFAN_EXTERIOR_HPP
#define HODGEFAN_EXTERIOR_HPP

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "hodgefan/complexmat.hpp"

namespace hodgefan {

inline constexpr double kPruneTol = 1e-12;

/// A basis word of the exterior algebra over the dual Lie algebra:
/// an optional theta prefix, then holomorphic generators ascending, then
/// antiholomorphic generators ascending. Index j is stored as bit j-1.
struct BasisWord {
  std::uint32_t holo = 0;
  std::uint32_t anti = 0;
  bool theta = false;
  int n = 1;

  int p() const { return std::popcount(holo); }
  int q() const { return std::popcount(anti); }
  int degree() const { return p() + q() + (theta ? 1 : 0); }

  bool operator<(const BasisWord& o) const {
    return std::tie(theta, holo, anti) < std::tie(o.theta, o.holo, o.anti);
  }
  bool operator==(const BasisWord& o) const {
    return theta == o.theta && holo == o.holo && anti == o.anti;
  }
};

inline std::uint32_t index_mask(const std::vector<int>& idx) {
  std::uint32_t m = 0;
  for (int j : idx) m |= (1u << (j - 1));
  return m;
}

inline std::vector<int> mask_indices(std::uint32_t m) {
  std::vector<int> out;
  for (int j = 1; m; ++j, m >>= 1)
    if (m & 1u) out.push_back(j);
  return out;
}

/// Single generators, ranked in canonical order: theta < beta_1 < ... <
/// beta_n < betabar_1 < ... < betabar_n.
struct Generator {
  enum Kind { Theta, Beta, BetaBar } kind;
  int index = 0;  // 1-based, unused for Theta
};

inline int generator_rank(const Generator& g, int n) {
  switch (g.kind) {
    case Generator::Theta: return 0;
    case Generator::Beta: return g.index;
    default: return n + g.index;
  }
}

namespace detail {

inline std::vector<int> word_ranks(const BasisWord& w) {
  std::vector<int> r;
  if (w.theta) r.push_back(0);
  for (int j : mask_indices(w.holo)) r.push_back(j);
  for (int j : mask_indices(w.anti)) r.push_back(w.n + j);
  return r;
}

inline BasisWord word_from_ranks(const std::vector<int>& ranks, int n) {
  BasisWord w;
  w.n = n;
  for (int r : ranks) {
    if (r == 0) w.theta = true;
    else if (r <= n) w.holo |= (1u << (r - 1));
    else w.anti |= (1u << (r - n - 1));
  }
  return w;
}

}  // namespace detail

/// Wedge of two basis words: zero on a repeated generator, otherwise the
/// canonical word with the sign of the merge permutation.
inline std::pair<BasisWord, int> wedge_words(const BasisWord& a, const BasisWord& b) {
  const auto ra = detail::word_ranks(a);
  const auto rb = detail::word_ranks(b);
  int inversions = 0;
  for (int y : rb) {
    int greater = 0;
    for (int x : ra) {
      if (x == y) return {BasisWord{}, 0};
      if (x > y) ++greater;
    }
    inversions += greater;
  }
  auto merged = ra;
  merged.insert(merged.end(), rb.begin(), rb.end());
  // rb is itself sorted, so only cross inversions matter.
  std::vector<int> sorted = merged;
  for (size_t i = 1; i < sorted.size(); ++i)
    for (size_t j = i; j > 0 && sorted[j - 1] > sorted[j]; --j) std::swap(sorted[j - 1], sorted[j]);
  return {detail::word_from_ranks(sorted, a.n), (inversions % 2 == 0) ? 1 : -1};
}

/// Interior product by a single generator (adjoint of left exterior
/// multiplication): removes the generator with the sign of its position.
inline std::pair<BasisWord, int> contract_word(const Generator& g, const BasisWord& w) {
  const int r = generator_rank(g, w.n);
  const auto ranks = detail::word_ranks(w);
  int pos = -1;
  for (size_t i = 0; i < ranks.size(); ++i)
    if (ranks[i] == r) { pos = static_cast<int>(i); break; }
  if (pos < 0) return {BasisWord{}, 0};
  std::vector<int> rest;
  for (size_t i = 0; i < ranks.size(); ++i)
    if (static_cast<int>(i) != pos) rest.push_back(ranks[i]);
  return {detail::word_from_ranks(rest, w.n), (pos % 2 == 0) ? 1 : -1};
}

/// Constant-coefficient exterior element: finite complex combination of
/// basis words sharing the same n.
struct Form {
  int n = 1;
  std::map<BasisWord, cd> coeffs;

  Form() = default;
  explicit Form(int n_) : n(n_) {}

  static Form scalar(int n, cd c) {
    Form f(n);
    if (c != cd(0.0)) {
      BasisWord w;
      w.n = n;
      f.coeffs[w] = c;
    }
    return f;
  }

  static Form word(const BasisWord& w, cd c = 1.0) {
    Form f(w.n);
    if (c != cd(0.0)) f.coeffs[w] = c;
    return f;
  }

  void add(const BasisWord& w, cd c) {
    if (c == cd(0.0)) return;
    auto it = coeffs.find(w);
    if (it == coeffs.end()) coeffs.emplace(w, c);
    else {
      it->second += c;
      if (it->second == cd(0.0)) coeffs.erase(it);
    }
  }

  Form& operator+=(const Form& o) {
    for (const auto& [w, c] : o.coeffs) add(w, c);
    return *this;
  }
  Form& operator-=(const Form& o) {
    for (const auto& [w, c] : o.coeffs) add(w, -c);
    return *this;
  }
  Form& operator*=(cd s) {
    if (s == cd(0.0)) { coeffs.clear(); return *this; }
    for (auto& [w, c] : coeffs) c *= s;
    return *this;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, cd s) { return a *= s; }
  friend Form operator*(cd s, Form a) { return a *= s; }

  void prune(double tol = kPruneTol) {
    for (auto it = coeffs.begin(); it != coeffs.end();)
      it = (std::abs(it->second) < tol) ? coeffs.erase(it) : std::next(it);
  }

  double norm() const {
    double r = 0.0;
    for (const auto& [w, c] : coeffs) r += std::norm(c);
    return std::sqrt(r);
  }
};

inline Form wedge(const Form& a, const Form& b) {
  if (a.n != b.n) throw std::invalid_argument("wedge: mismatched n");
  Form out(a.n);
  for (const auto& [wa, ca] : a.coeffs)
    for (const auto& [wb, cb] : b.coeffs) {
      auto [w, s] = wedge_words(wa, wb);
      if (s != 0) out.add(w, ca * cb * static_cast<double>(s));
    }
  return out;
}

inline Form contract(const Generator& g, const Form& a) {
  Form out(a.n);
  for (const auto& [w, c] : a.coeffs) {
    auto [wr, s] = contract_word(g, w);
    if (s != 0) out.add(wr, c * static_cast<double>(s));
  }
  return out;
}

/// Signature epsilon_{j,I}^J from the anticommutation bookkeeping:
/// zero unless j is outside I and {j} u I = J, else prod_{i in I} sgn(i-j).
inline int epsilon_sign(int j, std::uint32_t I, std::uint32_t J) {
  const std::uint32_t jm = 1u << (j - 1);
  if (I & jm) return 0;
  if ((I | jm) != J) return 0;
  int below = std::popcount(I & (jm - 1));
  return (below % 2 == 0) ? 1 : -1;
}

inline int epsilon_sign(int j, const std::vector<int>& I, const std::vector<int>& J) {
  return epsilon_sign(j, index_mask(I), index_mask(J));
}

/// (dtheta) ^ omega, with dtheta = -i sum_j beta_j ^ betabar_j.
inline Form e_dtheta(const Form& a) {
  Form out(a.n);
  for (int j = 1; j <= a.n; ++j) {
    BasisWord pair;
    pair.n = a.n;
    pair.holo = pair.anti = (1u << (j - 1));
    out += wedge(Form::word(pair, cd(0.0, -1.0)), a);
  }
  return out;
}

/// Interior multiplication by dtheta: i sum_j betabar_j _| (beta_j _| omega);
/// the adjoint of e_dtheta for the orthonormal word basis.
inline Form i_dtheta(const Form& a) {
  Form out(a.n);
  for (int j = 1; j <= a.n; ++j) {
    Form t = contract(Generator{Generator::Beta, j}, a);
    t = contract(Generator{Generator::BetaBar, j}, t);
    out += t * cd(0.0, 1.0);
  }
  return out;
}

/// Sesquilinear inner product (linear in the first slot) for which the
/// canonical words are orthonormal.
inline cd hermitian_inner(const Form& a, const Form& b) {
  if (a.n != b.n) throw std::invalid_argument("hermitian_inner: mismatched n");
  cd r = 0.0;
  for (const auto& [w, c] : a.coeffs) {
    auto it = b.coeffs.find(w);
    if (it != b.coeffs.end()) r += c * std::conj(it->second);
  }
  return r;
}

inline std::vector<BasisWord> bidegree_basis(int n, int p, int q) {
  std::vector<std::uint32_t> holos, antis;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    if (std::popcount(m) == p) holos.push_back(m);
    if (std::popcount(m) == q) antis.push_back(m);
  }
  std::vector<BasisWord> basis;
  for (auto h : holos)
    for (auto ab : antis) {
      BasisWord w;
      w.n = n;
      w.holo = h;
      w.anti = ab;
      basis.push_back(w);
    }
  return basis;
}

/// Matrix of a linear operator on the (p,q) word basis, rows indexed by the
/// image bidegree basis.
template <typename Op>
CMatrix operator_matrix(Op&& op, const std::vector<BasisWord>& domain,
                        const std::vector<BasisWord>& range) {
  CMatrix m(static_cast<int>(range.size()), static_cast<int>(domain.size()));
  for (size_t j = 0; j < domain.size(); ++j) {
    const Form img = op(Form::word(domain[j]));
    for (size_t i = 0; i < range.size(); ++i) {
      auto it = img.coeffs.find(range[i]);
      if (it != img.coeffs.end()) m(static_cast<int>(i), static_cast<int>(j)) = it->second;
    }
  }
  return m;
}

struct LefschetzComponent {
  int j = 0;
  Form form;  // primitive: i_dtheta(form) = 0, lives in bidegree (p-j, q-j)
};

/// Orthogonal splitting of a (p,q)-form as sum_j e(dtheta)^j omega_j with
/// primitive omega_j. Peels one power at a time, inverting i(dtheta)e(dtheta)
/// on the lower bidegree through its (pseudo-)inverse.
inline std::vector<LefschetzComponent> lefschetz_decompose(const Form& omega, int p, int q) {
  const int n = omega.n;
  for (const auto& [w, c] : omega.coeffs)
    if (w.theta || w.p() != p || w.q() != q)
      throw std::invalid_argument("lefschetz_decompose: input not of pure bidegree (p,q)");

  std::vector<LefschetzComponent> out;
  Form cur = omega;
  int j = 0;
  int cp = p, cq = q;
  while (cur.norm() > kPruneTol) {
    if (cp <= 0 || cq <= 0) {
      // Bottom bidegree: everything left is primitive.
      out.push_back({j, cur});
      break;
    }
    // Solve cur = omega0 + e(dtheta) alpha with i(dtheta) omega0 = 0:
    // alpha = (i e)^+ applied to i(dtheta) cur on bidegree (cp-1, cq-1).
    const auto lower = bidegree_basis(n, cp - 1, cq - 1);
    const CMatrix ie = operator_matrix([](const Form& f) { return i_dtheta(e_dtheta(f)); },
                                       lower, lower);
    const CMatrix pinv = hermitian_pinv(ie);
    const Form icur = i_dtheta(cur);
    std::vector<cd> rhs(lower.size());
    for (size_t i = 0; i < lower.size(); ++i) {
      auto it = icur.coeffs.find(lower[i]);
      rhs[i] = (it != icur.coeffs.end()) ? it->second : cd(0.0);
    }
    const auto sol = pinv.apply(rhs);
    Form alpha(n);
    for (size_t i = 0; i < lower.size(); ++i) alpha.add(lower[i], sol[i]);
    alpha.prune();
    Form omega0 = cur - e_dtheta(alpha);
    omega0.prune();
    if (omega0.norm() > kPruneTol) out.push_back({j, omega0});
    cur = alpha;
    ++j;
    --cp;
    --cq;
  }
  return out;
}

}  // namespace hodgefan

#endif
