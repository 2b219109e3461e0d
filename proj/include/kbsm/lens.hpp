#pragma once

// Reduction of solid-torus skein elements to the free basis x_0 .. x_{p/2} of
// the skein module of L(p,q).
//
// Every slide of a strand over the surgery curve gives a linear relation
// value(w) = value(SL(w)) among the x_m. Rules x_n -> (lower terms) are
// obtained by Gaussian elimination over a family of such relations, pivoting
// only on unit coefficients +-A^k so that everything stays in Z[A^{±1}].

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kbsm/diagram.hpp"
#include "kbsm/error.hpp"
#include "kbsm/moves.hpp"
#include "kbsm/poly.hpp"
#include "kbsm/skein.hpp"

namespace kbsm {

class LensContext {
public:
  LensContext(int p, int q) : p_(p), q_(q) {
    const bool sphere = p == 1 && q == 0;
    if (!sphere && (p < 1 || q < 0 || q >= p || std::gcd(p, q) != 1))
      throw std::invalid_argument("L(" + std::to_string(p) + "," + std::to_string(q) +
                                  "): need 0 <= q < p and gcd(p,q) = 1");
  }
  int p() const noexcept { return p_; }
  int q() const noexcept { return q_; }
  /// Largest basis index, floor(p/2).
  int top() const noexcept { return p_ / 2; }
  std::string name() const { return "L(" + std::to_string(p_) + "," + std::to_string(q_) + ")"; }

  friend bool operator==(const LensContext&, const LensContext&) = default;

private:
  int p_;
  int q_;
};

/// An element of the skein module of L(p,q) in the basis x_0 .. x_{p/2}.
class LensElement {
public:
  LensElement(LensContext ctx, SolidTorusElement value) : ctx_(ctx), value_(std::move(value)) {
    if (value_.max_index() > ctx_.top())
      throw std::invalid_argument("LensElement: index " + std::to_string(value_.max_index()) + " outside basis of " +
                                  ctx_.name());
  }
  const LensContext& context() const noexcept { return ctx_; }
  const SolidTorusElement& value() const noexcept { return value_; }

  std::string to_string() const { return ctx_.name() + "\n" + value_.to_string(); }

  friend bool operator==(const LensElement&, const LensElement&) = default;

private:
  LensContext ctx_;
  SolidTorusElement value_;
};

namespace detail {

// A circle bounding a disk slides to the surgery curve itself.
inline SolidTorusElement circle_relation(const LensContext& ctx) {
  return SolidTorusElement::basis(0) - resolve(surgery_curve(ctx.p(), ctx.q()));
}

// Noncrossing perfect matchings of 2m points on a circle, as mate arrays.
inline void noncrossing_matchings(std::vector<int>& mate, int lo, int hi, std::vector<std::vector<int>>& out,
                                  std::vector<std::pair<int, int>>& pending) {
  if (lo > hi) {
    if (pending.empty()) {
      out.push_back(mate);
      return;
    }
    auto [l2, h2] = pending.back();
    pending.pop_back();
    noncrossing_matchings(mate, l2, h2, out, pending);
    pending.emplace_back(l2, h2);
    return;
  }
  for (int k = lo + 1; k <= hi; k += 2) {
    mate[static_cast<std::size_t>(lo)] = k;
    mate[static_cast<std::size_t>(k)] = lo;
    pending.emplace_back(k + 1, hi);
    noncrossing_matchings(mate, lo + 1, k - 1, out, pending);
    pending.pop_back();
  }
}

// Crossingless (t,t) tangles in the band: the Temperley-Lieb basis on the
// top min(t, 4) strands, identity below. Returned as sweep states of width
// `width` with the block starting at slot `offset`.
inline std::vector<MatchingState> band_basis_states(int t, int width, int offset) {
  const int m = std::min(t, 4);
  std::vector<std::vector<int>> matchings;
  std::vector<int> mate(static_cast<std::size_t>(2 * m), -1);
  std::vector<std::pair<int, int>> pending;
  noncrossing_matchings(mate, 0, 2 * m - 1, matchings, pending);
  // Around the rectangle: left side top-down, then right side bottom-up.
  auto point = [&](int c) { return c < m ? offset + c : width + offset + (2 * m - 1 - c); };
  std::vector<MatchingState> out;
  for (const auto& mt : matchings) {
    MatchingState k = identity_state(width);
    for (int c = 0; c < 2 * m; ++c)
      k[static_cast<std::size_t>(point(c))] = point(mt[static_cast<std::size_t>(c)]);
    out.push_back(std::move(k));
  }
  return out;
}

// value(b) - value(SL(b)) for every band basis element b on t strands; each
// vanishes in the skein module of the lens space.
inline std::vector<SolidTorusElement> slide_relations(int t, const LensContext& ctx) {
  const auto slid = slide(AnnularWord(t, {}), ctx.p(), ctx.q());
  const int offset = rotation_braid(ctx.p(), ctx.q(), t).outer_count;
  auto before = resolve_from_states(t, band_basis_states(t, t, 0), {});
  auto after = resolve_composed(slid.t(), band_basis_states(t, slid.t(), offset), slid.events());
  for (std::size_t i = 0; i < before.size(); ++i) before[i] -= after[i];
  return before;
}

inline std::size_t term_count(const SolidTorusElement& e) {
  std::size_t n = 0;
  for (const auto& [m, c] : e.terms()) n += c.size();
  return n;
}

// Divides out the integer content, which keeps
// fraction-free elimination small. Rows are relations, so scaling is harmless.
inline void remove_content(SolidTorusElement& e) {
  Coeff g = 0;
  for (const auto& [m, c] : e.terms())
    for (const auto& [k, v] : c.terms()) g = gcd(g, v);
  if (g == 0 || g == 1) return;
  SolidTorusElement r;
  for (const auto& [m, c] : e.terms()) {
    LaurentPoly d;
    for (const auto& [k, v] : c.terms()) d.add_term(k, Coeff(v / g));
    r.add(m, d);
  }
  e = std::move(r);
}

// A -> A^-1 on every coefficient. Mirroring the solid torus fixes each x_n.
inline SolidTorusElement mirrored(const SolidTorusElement& e) {
  SolidTorusElement r;
  for (const auto& [m, c] : e.terms()) r.add(m, c.mirrored());
  return r;
}

// One full meridional twist of the solid torus, `turns` = +-1. In the
// skein algebra x_n = x_1^n for n >= 1, while x_0 is a trivial circle,
// delta times the empty link. The twist acts on the Chebyshev elements
// S_0 = 1, S_1 = x_1, S_{n+1} = x_1 S_n - S_{n-1} as the framing change
// of an n-coloured strand, (-1)^n A^{n^2+2n} per turn. The result is
// returned multiplied by delta so that the empty link becomes x_0 again;
// that is harmless for relations.
inline SolidTorusElement twisted(const SolidTorusElement& e, int turns) {
  const int top = e.max_index();
  if (top < 0) return e;
  // x_1^n in the S basis: x_1 S_k = S_{k+1} + S_{k-1}.
  std::vector<LaurentPoly> in_s(static_cast<std::size_t>(top) + 1);
  in_s[0] += e.coeff(0) * delta();
  std::vector<LaurentPoly> power{LaurentPoly(1)};
  for (int n = 1; n <= top; ++n) {
    std::vector<LaurentPoly> next(power.size() + 1);
    for (std::size_t k = 0; k < power.size(); ++k) {
      next[k + 1] += power[k];
      if (k > 0) next[k - 1] += power[k];
    }
    power = std::move(next);
    const LaurentPoly c = e.coeff(n);
    if (!c.is_zero())
      for (std::size_t k = 0; k < power.size(); ++k) in_s[k] += c * power[k];
  }
  // Back to powers of x_1.
  std::vector<LaurentPoly> in_x(static_cast<std::size_t>(top) + 1);
  std::vector<LaurentPoly> prev, cur{LaurentPoly(1)};  // S_{k-1}, S_k in powers of x_1
  for (int k = 0; k <= top; ++k) {
    const LaurentPoly& c = in_s[static_cast<std::size_t>(k)];
    if (!c.is_zero()) {
      const int sign = (k * turns) % 2 == 0 ? 1 : -1;
      const LaurentPoly scaled = c * LaurentPoly::monomial(Coeff(sign), turns * (k * k + 2 * k));
      for (std::size_t j = 0; j < cur.size(); ++j) in_x[j] += scaled * cur[j];
    }
    std::vector<LaurentPoly> next(cur.size() + 1);
    for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] += cur[j];
    for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  SolidTorusElement out;
  out.add(0, in_x[0]);
  for (int j = 1; j <= top; ++j) out.add(j, in_x[static_cast<std::size_t>(j)] * delta());
  return out;
}

// Replaces x_n by `rule` wherever it occurs.
inline void substitute(SolidTorusElement& e, int n, const SolidTorusElement& rule) {
  LaurentPoly c = e.coeff(n);
  if (c.is_zero()) return;
  e.erase(n);
  e += c * rule;
}

}  // namespace detail

/// Grow-only cache of rewrite rules x_n -> sum_{j <= p/2} c_j x_j for one
/// lens space. Safe for concurrent use.
class ReductionTable;
ReductionTable& reduction_table(const LensContext& ctx);

class ReductionTable {
public:
  explicit ReductionTable(LensContext ctx) : ctx_(ctx) {}

  const LensContext& context() const noexcept { return ctx_; }

  /// Rule for x_n, n > p/2, fully reduced into the basis.
  SolidTorusElement rule(int n) {
    if (n <= ctx_.top())
      throw std::invalid_argument("derive_rule: x_" + std::to_string(n) + " already lies in the basis of " +
                                  ctx_.name());
    std::lock_guard lock(mutex_);
    ensure_locked(n);
    return rules_.at(n);
  }

  /// Highest n with a cached rule (p/2 if none yet).
  int max_n() {
    std::lock_guard lock(mutex_);
    return max_n_;
  }

private:
  void ensure_locked(int n) {
    if (n <= max_n_) return;
    const int base = ctx_.top();
    if (2 * ctx_.q() > ctx_.p()) {
      derive_from_mirror(n);
      return;
    }
    // Too few relations near the truncation point leave columns without a
    // pivot; widening the family fixes that.
    const int first_limit = std::max({n, ctx_.p() - 1, 1});
    for (int limit = first_limit; limit <= first_limit + ctx_.p() + 4; ++limit) {
      auto derived = eliminate(relations_up_to(limit));
      bool complete = true;
      for (int k = base + 1; k <= n; ++k) complete = complete && derived.count(k) > 0;
      if (!complete) continue;
      rules_ = std::move(derived);
      max_n_ = base;
      while (rules_.count(max_n_ + 1)) ++max_n_;
      return;
    }
    throw ComputationError(ComputationError::Kind::NonUnitLeading,
                           "derive_rule: the slide relations do not determine x_" +
                               std::to_string(n) + " in " + ctx_.name());
  }

  // L(p,q) is the mirror image of L(p,p-q) up to one meridional twist of
  // the solid torus, which carries the rules of one onto relations of the
  // other. Sliding over the shorter surgery curve is much cheaper.
  void derive_from_mirror(int n) {
    const LensContext other(ctx_.p(), ctx_.p() - ctx_.q());
    std::vector<SolidTorusElement> rows;
    for (int k = ctx_.top() + 1; k <= n; ++k)
      rows.push_back(detail::twisted(
          detail::mirrored(SolidTorusElement::basis(k) - reduction_table(other).rule(k)), 1));
    auto derived = eliminate(std::move(rows));
    for (int k = ctx_.top() + 1; k <= n; ++k)
      if (!derived.count(k))
        throw ComputationError(ComputationError::Kind::NonUnitLeading,
                               "derive_rule: the mirrored relations do not determine x_" + std::to_string(k) +
                                   " in " + ctx_.name());
    rules_ = std::move(derived);
    max_n_ = n;
  }

  // Relations whose top index is at most `limit`; sliding a word on t strands
  // reaches index t + p - 2 at most. Computed relations are kept.
  std::vector<SolidTorusElement> relations_up_to(int limit) {
    if (relations_.empty()) relations_.push_back({detail::circle_relation(ctx_)});
    for (int t = static_cast<int>(relations_.size()); t <= limit - ctx_.p() + 2; ++t)
      relations_.push_back(detail::slide_relations(t, ctx_));
    std::vector<SolidTorusElement> out;
    for (const auto& batch : relations_)
      for (const auto& r : batch)
        if (r.max_index() <= limit) out.push_back(r);
    return out;
  }

  // Gaussian elimination over the fraction field Q(A), top column first,
  // kept fraction-free. Unit pivots are preferred; the back-substitution
  // divides exactly, which succeeds because the true rules are integral.
  // Columns without a pivot leave their rule (and rules depending on it)
  // undetermined.
  std::map<int, SolidTorusElement> eliminate(std::vector<SolidTorusElement> rows) const {
    const int base = ctx_.top();
    std::map<int, SolidTorusElement> echelon;
    int top = -1;
    for (const auto& r : rows) top = std::max(top, r.max_index());
    for (int col = top; col > base; --col) {
      std::size_t piv = rows.size();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].coeff(col).is_zero()) continue;
        if (piv == rows.size()) {
          piv = i;
          continue;
        }
        const bool unit_i = rows[i].coeff(col).is_unit(), unit_p = rows[piv].coeff(col).is_unit();
        if (unit_i != unit_p ? unit_i : detail::term_count(rows[i]) < detail::term_count(rows[piv])) piv = i;
      }
      if (piv == rows.size()) continue;
      SolidTorusElement pivot = std::move(rows[piv]);
      rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(piv));
      const LaurentPoly a = pivot.coeff(col);
      for (auto& r : rows) {
        const LaurentPoly c = r.coeff(col);
        if (c.is_zero()) continue;
        if (a.is_unit()) {
          r -= (c * a.unit_inverse()) * pivot;
        } else {
          r = a * r - c * pivot;
          detail::remove_content(r);
        }
      }
      std::erase_if(rows, [](const SolidTorusElement& r) { return r.is_zero(); });
      echelon.emplace(col, std::move(pivot));
    }
    for (const auto& r : rows) {
      throw ComputationError(ComputationError::Kind::Inconsistent,
                             "relations in " + ctx_.name() + " leave a nonzero combination of basis elements: " +
                                 r.to_string());
    }
    std::map<int, SolidTorusElement> rules;
    for (auto& [col, row] : echelon) {
      const LaurentPoly a = row.coeff(col);
      row.erase(col);
      bool known = true;
      for (int j = row.max_index(); j > base && known; j = row.max_index()) {
        auto it = rules.find(j);
        if (it == rules.end()) {
          known = false;
        } else {
          detail::substitute(row, j, it->second);
        }
      }
      if (!known) continue;
      SolidTorusElement rule;
      for (const auto& [m, c] : row.terms()) {
        auto quotient = divide_exact(-c, a);
        if (!quotient)
          throw ComputationError(ComputationError::Kind::NonUnitLeading,
                                 "derive_rule: leading coefficient " + a.to_string() + " of x_" + std::to_string(col) +
                                     " does not divide its relation in " + ctx_.name());
        rule.add(m, *quotient);
      }
      rules.emplace(col, std::move(rule));
    }
    return rules;
  }

  LensContext ctx_;
  std::mutex mutex_;
  std::map<int, SolidTorusElement> rules_;
  std::vector<std::vector<SolidTorusElement>> relations_;  // [0] the circle, [t] words on t strands
  int max_n_ = ctx_.top();
};

/// Process-wide table for (p,q), created on first use.
inline ReductionTable& reduction_table(const LensContext& ctx) {
  static std::mutex registry_mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<ReductionTable>> registry;
  std::lock_guard lock(registry_mutex);
  auto& slot = registry[{ctx.p(), ctx.q()}];
  if (!slot) slot = std::make_unique<ReductionTable>(ctx);
  return *slot;
}

inline SolidTorusElement derive_rule(const LensContext& ctx, int n) { return reduction_table(ctx).rule(n); }

inline LensElement reduce(const SolidTorusElement& e, const LensContext& ctx) {
  SolidTorusElement out = e;
  for (int top = out.max_index(); top > ctx.top(); top = out.max_index())
    detail::substitute(out, top, derive_rule(ctx, top));
  return LensElement(ctx, std::move(out));
}

inline LensElement kbsm_lens(const AnnularWord& w, const LensContext& ctx) {
  if (w.closure() != Closure::Annular) throw std::invalid_argument("kbsm_lens: expected an annular word");
  return reduce(resolve(w), ctx);
}

}  // namespace kbsm
