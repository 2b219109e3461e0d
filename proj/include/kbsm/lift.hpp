#pragma once

// Lift of a link in L(p,q) to the 3-sphere: p copies of the band word closed
// up by the braid Delta_t^{2q}, read as an ordinary planar diagram.

#include <optional>
#include <stdexcept>

#include "kbsm/diagram.hpp"
#include "kbsm/lens.hpp"
#include "kbsm/skein.hpp"

namespace kbsm {

struct LiftDiagram {
  AnnularWord word;    // planar closure
  AnnularWord source;  // the band word it came from
  LensContext context;
};

inline LiftDiagram build_lift(const AnnularWord& b, const LensContext& ctx) {
  if (b.closure() != Closure::Annular) throw std::invalid_argument("build_lift: expected an annular word");
  if (b.is_empty_link()) throw std::invalid_argument("build_lift: empty diagram");
  EventList ev = repeat(b.events(), ctx.p());
  if (b.t() > 0) ev = concat(std::move(ev), repeat(garside(b.t()), 2 * ctx.q()));
  return LiftDiagram{AnnularWord(b.t(), std::move(ev), Closure::Planar), b, ctx};
}

inline LaurentPoly bracket_of_lift(const AnnularWord& b, const LensContext& ctx) {
  return bracket_s3(build_lift(b, ctx).word);
}

/// Bracket with the framing contribution of the diagram's writhe removed,
/// (-A^3)^-w <D>.
inline LaurentPoly writhe_normalized(const LaurentPoly& bracket, int w) { return framing_factor(-w) * bracket; }

/// If f = u * g for a framing unit u = (-A^3)^k, returns k.
inline std::optional<int> framing_ratio(const LaurentPoly& f, const LaurentPoly& g) {
  if (f.is_zero() || g.is_zero()) return std::nullopt;
  const int diff = f.max_exponent() - g.max_exponent();
  if (diff % 3 != 0) return std::nullopt;
  const int k = diff / 3;
  if (framing_factor(k) * g != f) return std::nullopt;
  return k;
}

}  // namespace kbsm
