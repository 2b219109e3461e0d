#pragma once

// Ideals of Z[A^{+-1}] via strong Groebner bases over the integers, and the
// check  <B>^p = <closure of B^p Delta_t^{2q}>  modulo the ideal I(p,q,t).
//
// A Laurent polynomial lives in Z[a,b]/(ab - 1) with a = A, b = A^-1; the
// relation ab - 1 is always part of the basis, so Laurent membership is
// ordinary polynomial membership.

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "kbsm/diagram.hpp"
#include "kbsm/lens.hpp"
#include "kbsm/lift.hpp"
#include "kbsm/poly.hpp"
#include "kbsm/skein.hpp"

namespace kbsm {

/// Exponents (i, j) of a^i b^j.
using BivarMonomial = std::pair<int, int>;

/// Degree first, then the power of a.
struct DegLex {
  bool operator()(const BivarMonomial& x, const BivarMonomial& y) const {
    return std::make_tuple(x.first + x.second, x.first) < std::make_tuple(y.first + y.second, y.first);
  }
};

inline bool divides(const BivarMonomial& d, const BivarMonomial& m) {
  return d.first <= m.first && d.second <= m.second;
}

class BivarIntPoly {
public:
  using Terms = std::map<BivarMonomial, Coeff, DegLex>;

  BivarIntPoly() = default;
  explicit BivarIntPoly(const Coeff& c) { add_term({0, 0}, c); }

  static BivarIntPoly from_laurent(const LaurentPoly& f) {
    BivarIntPoly r;
    for (const auto& [e, c] : f.terms()) r.add_term(e >= 0 ? BivarMonomial{e, 0} : BivarMonomial{0, -e}, c);
    return r;
  }
  LaurentPoly to_laurent() const {
    LaurentPoly r;
    for (const auto& [m, c] : terms_) r.add_term(m.first - m.second, c);
    return r;
  }

  /// ab - 1, which makes a invertible.
  static BivarIntPoly unit_relation() {
    BivarIntPoly r;
    r.add_term({1, 1}, 1);
    r.add_term({0, 0}, -1);
    return r;
  }

  bool is_zero() const noexcept { return terms_.empty(); }
  const Terms& terms() const noexcept { return terms_; }
  const BivarMonomial& lead_monomial() const { return terms_.rbegin()->first; }
  const Coeff& lead_coeff() const { return terms_.rbegin()->second; }

  void add_term(const BivarMonomial& m, const Coeff& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// this += c * a^i b^j * g
  void add_multiple(const Coeff& c, const BivarMonomial& shift, const BivarIntPoly& g) {
    for (const auto& [m, v] : g.terms_) add_term({m.first + shift.first, m.second + shift.second}, c * v);
  }

  BivarIntPoly& operator+=(const BivarIntPoly& o) {
    add_multiple(1, {0, 0}, o);
    return *this;
  }
  BivarIntPoly& operator-=(const BivarIntPoly& o) {
    add_multiple(-1, {0, 0}, o);
    return *this;
  }

  void negate() {
    for (auto& [m, c] : terms_) c = -c;
  }

  friend bool operator==(const BivarIntPoly& x, const BivarIntPoly& y) { return x.terms_ == y.terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      Coeff mag = abs(c);
      if (out.empty()) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      std::string mono;
      if (m.first > 0) mono += m.first == 1 ? "a" : "a^" + std::to_string(m.first);
      if (m.second > 0) {
        if (!mono.empty()) mono += "*";
        mono += m.second == 1 ? "b" : "b^" + std::to_string(m.second);
      }
      if (mono.empty()) {
        out += mag.get_str();
      } else if (mag == 1) {
        out += mono;
      } else {
        out += mag.get_str() + "*" + mono;
      }
    }
    return out;
  }

private:
  Terms terms_;
};

namespace detail {

inline BivarMonomial monomial_lcm(const BivarMonomial& x, const BivarMonomial& y) {
  return {std::max(x.first, y.first), std::max(x.second, y.second)};
}
inline BivarMonomial monomial_quot(const BivarMonomial& m, const BivarMonomial& d) {
  return {m.first - d.first, m.second - d.second};
}

// Strong top reduction: cancel the leading term while some basis element's
// leading term divides it, coefficient included.
inline BivarIntPoly top_reduce(BivarIntPoly f, const std::vector<BivarIntPoly>& g) {
  while (!f.is_zero()) {
    bool reduced = false;
    for (const auto& h : g) {
      if (!divides(h.lead_monomial(), f.lead_monomial())) continue;
      if (!mpz_divisible_p(f.lead_coeff().get_mpz_t(), h.lead_coeff().get_mpz_t())) continue;
      const Coeff q = f.lead_coeff() / h.lead_coeff();
      f.add_multiple(-q, monomial_quot(f.lead_monomial(), h.lead_monomial()), h);
      reduced = true;
      break;
    }
    if (!reduced) break;
  }
  return f;
}

// Brings each non-leading coefficient into [0, |lc(h)|) for the first basis
// element h whose leading monomial divides that term, largest terms first.
// Reducing a term only creates smaller ones.
inline BivarIntPoly tail_reduce(BivarIntPoly f, const std::vector<BivarIntPoly>& g) {
  if (f.is_zero()) return f;
  BivarMonomial bound = f.lead_monomial();
  for (;;) {
    auto it = f.terms().lower_bound(bound);
    if (it == f.terms().begin()) break;
    --it;
    const BivarMonomial m = it->first;
    const Coeff c = it->second;
    bound = m;
    for (const auto& h : g) {
      if (!divides(h.lead_monomial(), m)) continue;
      const Coeff lc = abs(h.lead_coeff());
      Coeff r = c % lc;
      if (r < 0) r += lc;
      const Coeff q = (c - r) / h.lead_coeff();
      if (q != 0) f.add_multiple(-q, monomial_quot(m, h.lead_monomial()), h);
      break;
    }
  }
  return f;
}

inline void normalize_sign(BivarIntPoly& f) {
  if (!f.is_zero() && f.lead_coeff() < 0) f.negate();
}

}  // namespace detail

/// Reduced strong Groebner basis over Z of the ideal generated by `gens`
/// and ab - 1, under DegLex.
inline std::vector<BivarIntPoly> groebner(const std::vector<BivarIntPoly>& gens) {
  std::vector<BivarIntPoly> g;
  auto insert = [&](BivarIntPoly f) {
    f = detail::top_reduce(std::move(f), g);
    if (f.is_zero()) return false;
    detail::normalize_sign(f);
    g.push_back(std::move(f));
    return true;
  };
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  auto add_pairs = [&] {
    const std::size_t k = g.size() - 1;
    for (std::size_t i = 0; i < k; ++i) pairs.emplace_back(i, k);
  };
  if (insert(BivarIntPoly::unit_relation())) add_pairs();
  for (const auto& f : gens)
    if (insert(f)) add_pairs();

  while (!pairs.empty()) {
    // Smallest lcm first keeps the intermediate basis small.
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const auto& x, const auto& y) {
      return DegLex{}(detail::monomial_lcm(g[x.first].lead_monomial(), g[x.second].lead_monomial()),
                      detail::monomial_lcm(g[y.first].lead_monomial(), g[y.second].lead_monomial()));
    });
    const auto [i, j] = *best;
    pairs.erase(best);
    const BivarIntPoly f = g[i], h = g[j];
    const BivarMonomial l = detail::monomial_lcm(f.lead_monomial(), h.lead_monomial());
    const BivarMonomial uf = detail::monomial_quot(l, f.lead_monomial());
    const BivarMonomial uh = detail::monomial_quot(l, h.lead_monomial());
    const Coeff cf = f.lead_coeff(), ch = h.lead_coeff();
    Coeff d, s, t;
    mpz_gcdext(d.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), cf.get_mpz_t(), ch.get_mpz_t());
    const Coeff m = cf / d * ch;  // lcm up to sign
    // S-polynomial: the leading terms cancel.
    BivarIntPoly sp;
    sp.add_multiple(m / cf, uf, f);
    sp.add_multiple(-(m / ch), uh, h);
    // G-polynomial: leading coefficient gcd(cf, ch). Needed only when
    // neither coefficient divides the other.
    const bool need_g = abs(d) != abs(cf) && abs(d) != abs(ch);
    if (insert(std::move(sp))) add_pairs();
    if (need_g) {
      BivarIntPoly gp;
      gp.add_multiple(s, uf, f);
      gp.add_multiple(t, uh, h);
      if (insert(std::move(gp))) add_pairs();
    }
  }

  // Minimalize: drop elements whose leading term another one divides.
  std::vector<BivarIntPoly> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      if (!divides(g[j].lead_monomial(), g[i].lead_monomial())) continue;
      if (!mpz_divisible_p(g[i].lead_coeff().get_mpz_t(), g[j].lead_coeff().get_mpz_t())) continue;
      // Equal leading terms: keep the earlier one.
      const bool same = g[j].lead_monomial() == g[i].lead_monomial() && abs(g[j].lead_coeff()) == abs(g[i].lead_coeff());
      redundant = !same || j < i;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  std::vector<BivarIntPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<BivarIntPoly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    BivarIntPoly f = detail::tail_reduce(minimal[i], others);
    detail::normalize_sign(f);
    reduced.push_back(std::move(f));
  }
  std::sort(reduced.begin(), reduced.end(), [](const BivarIntPoly& x, const BivarIntPoly& y) {
    if (x.lead_monomial() != y.lead_monomial()) return DegLex{}(x.lead_monomial(), y.lead_monomial());
    return x.lead_coeff() < y.lead_coeff();
  });
  return reduced;
}

namespace detail {

// Scales by +-A^k so that the exponents sit symmetrically around 0 (the
// higher one wins a tie) and the top coefficient is positive.
inline LaurentPoly unit_normalized(const LaurentPoly& f) {
  if (f.is_zero()) return f;
  const int shift = -((f.max_exponent() + f.min_exponent()) >> 1);
  LaurentPoly r = f.shifted(shift);
  if (r.coeff(r.max_exponent()) < 0) r = -r;
  return r;
}

// Replaces coefficients larger than p/2 in absolute value by their residue
// of least absolute value, which is legitimate once p is in the ideal.
inline LaurentPoly small_residues(const LaurentPoly& f, int p) {
  if (p <= 1) return f;
  LaurentPoly r;
  const Coeff m = p;
  for (const auto& [e, c] : f.terms()) {
    Coeff v = c;
    if (2 * abs(v) > m) {
      v = c % m;
      if (v < 0) v += m;
      if (2 * v > m) v -= m;
    }
    r.add_term(e, v);
  }
  return r;
}

inline bool member_of(const LaurentPoly& f, const std::vector<BivarIntPoly>& basis) {
  return top_reduce(BivarIntPoly::from_laurent(f), basis).is_zero();
}

}  // namespace detail

struct IdealBasis {
  std::vector<LaurentPoly> generators;
  std::vector<BivarIntPoly> groebner;  // includes ab - 1
  std::string order = "deglex(a>b)";

  /// The basis back in Laurent form: images up to units, with elements that
  /// the others already generate left out.
  std::vector<LaurentPoly> laurent_basis() const {
    std::vector<LaurentPoly> cand;
    for (const auto& g : groebner) {
      LaurentPoly f = detail::unit_normalized(g.to_laurent());
      if (f.is_zero() || std::find(cand.begin(), cand.end(), f) != cand.end()) continue;
      cand.push_back(std::move(f));
    }
    std::stable_sort(cand.begin(), cand.end(), [](const LaurentPoly& x, const LaurentPoly& y) {
      const int sx = x.max_exponent() - x.min_exponent(), sy = y.max_exponent() - y.min_exponent();
      return sx != sy ? sx < sy : x.size() < y.size();
    });
    std::vector<LaurentPoly> kept;
    std::vector<BivarIntPoly> basis{BivarIntPoly::unit_relation()};
    for (const auto& f : cand) {
      if (detail::member_of(f, basis)) continue;
      kept.push_back(f);
      std::vector<BivarIntPoly> gens;
      for (const auto& k : kept) gens.push_back(BivarIntPoly::from_laurent(k));
      basis = kbsm::groebner(gens);
    }
    return kept;
  }

  std::string basis_string() const {
    std::string out = "{";
    bool first = true;
    for (const auto& f : laurent_basis()) {
      if (!first) out += ", ";
      out += f.to_string();
      first = false;
    }
    return out + "}";
  }
};

inline std::vector<BivarIntPoly> groebner(const std::vector<LaurentPoly>& gens) {
  std::vector<BivarIntPoly> b;
  for (const auto& f : gens) b.push_back(BivarIntPoly::from_laurent(f));
  return groebner(b);
}

/// Generators p, delta^{p-1} - 1 and delta^{p(t-2i-1)} - <closure of
/// Delta_{t-2i}^{2q}> for i = 0 .. (t-1)/2. Zero generators are dropped.
inline IdealBasis build_ideal(const LensContext& ctx, int t) {
  if (t < 0) throw std::invalid_argument("build_ideal: t must be >= 0");
  const int p = ctx.p(), q = ctx.q();
  IdealBasis I;
  auto push = [&](LaurentPoly f) {
    if (!f.is_zero()) I.generators.push_back(std::move(f));
  };
  push(LaurentPoly(p));
  push(detail::small_residues(delta_pow(static_cast<unsigned>(p - 1)) - LaurentPoly(1), p));
  for (int i = 0; i <= (t - 1) / 2 && t >= 1; ++i) {
    const int k = t - 2 * i;
    const AnnularWord twist(k, repeat(garside(k), 2 * q), Closure::Planar);
    push(delta_pow(static_cast<unsigned>(p * (k - 1))) - bracket_s3(twist));
  }
  I.groebner = groebner(I.generators);
  return I;
}

inline bool member(const LaurentPoly& f, const IdealBasis& I) { return detail::member_of(f, I.groebner); }

/// Ideals are reused across calls; keyed by (p, q, t).
inline const IdealBasis& cached_ideal(const LensContext& ctx, int t) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, IdealBasis> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_tuple(ctx.p(), ctx.q(), t);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_ideal(ctx, t)).first;
  return it->second;
}

struct CongruenceReport {
  LaurentPoly lhs;
  LaurentPoly rhs;
  LaurentPoly difference;
  std::vector<LaurentPoly> groebner_basis;
  bool holds = false;

  std::string to_string() const {
    std::string g = "{";
    for (std::size_t i = 0; i < groebner_basis.size(); ++i) {
      if (i) g += ", ";
      g += groebner_basis[i].to_string();
    }
    g += "}";
    return "lhs: " + lhs.to_string() + "\nrhs: " + rhs.to_string() + "\ndifference: " + difference.to_string() +
           "\ngroebner: " + g + "\ncongruent: " + (holds ? "yes" : "no") + "\n";
  }
};

inline CongruenceReport verify(const AnnularWord& b, const LensContext& ctx) {
  CongruenceReport r;
  r.lhs = pow(bracket_s3(b), static_cast<unsigned>(ctx.p()));
  r.rhs = bracket_of_lift(b, ctx);
  r.difference = r.lhs - r.rhs;
  const IdealBasis& I = cached_ideal(ctx, b.t());
  r.groebner_basis = I.laurent_basis();
  r.holds = member(r.difference, I);
  return r;
}

}  // namespace kbsm
