#pragma once

// Reidemeister moves R1-R3 and the slide move SL over the surgery curve.

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "kbsm/diagram.hpp"

namespace kbsm {

class MoveError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Inserts a curl on the strand in slot `pos` before event index `at`.
/// A positive curl adds one full right-handed framing twist, so the bracket
/// picks up a factor -A^3; a negative one gives -A^-3.
struct R1 {
  std::size_t at = 0;
  int pos = 1;
  Sign sign = Sign::Positive;
};

/// Inserts the cancelling pair `x pos +`, `x pos -` before event index `at`.
struct R2 {
  std::size_t at = 0;
  int pos = 1;
};

/// Rewrites the three crossings starting at event index `at` between the two
/// sides of the braid relation  s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}
/// (all three of the same sign). `pos` is the smaller slot i.
struct R3 {
  std::size_t at = 0;
  int pos = 1;
};

/// Slides the outermost wall strand over the p/q surgery curve.
struct SL {
  int p = 2;
  int q = 1;
};

using Move = std::variant<R1, R2, R3, SL>;

namespace detail {

inline void check_insert_point(const AnnularWord& w, std::size_t at, int needed_width, const char* what) {
  if (at > w.events().size()) throw MoveError(std::string(what) + ": insertion point past end of word");
  const int width = w.widths()[at];
  if (width < needed_width)
    throw MoveError(std::string(what) + ": width " + std::to_string(width) + " too small at event " +
                    std::to_string(at));
}

inline AnnularWord insert_events(const AnnularWord& w, std::size_t at, const EventList& block) {
  EventList ev = w.events();
  ev.insert(ev.begin() + static_cast<std::ptrdiff_t>(at), block.begin(), block.end());
  return AnnularWord(w.t(), std::move(ev), w.closure());
}

inline EventList curl(int pos, Sign framing) {
  // A curl whose crossing is `x pos -` evaluates to -A^3 times the strand.
  const Sign crossing_sign = framing == Sign::Positive ? Sign::Negative : Sign::Positive;
  return {Event::cup(pos + 1), Event::crossing(pos, crossing_sign), Event::cap(pos + 1)};
}

// Exact combinatorics of p points rotating on a circle around the bundle of
// link strands. Angles are measured in units of 1/(4p) of a turn; point j
// starts at angle 4j, displaced by a small positive epsilon. A point on the
// upper half of the circle lies above every link strand, one on the lower
// half below. The bundle sits marginally outside the circle's centre line,
// so a point passes through it just before (upper half) or after (lower half)
// reaching a quarter turn; this ordering is carried by `phase` below.
struct RotationBraid {
  int outer_count = 0;  // points above the bundle at the start
  EventList events;
};

inline RotationBraid rotation_braid(int p, int q, int bundle) {
  const int turn = 4 * p;
  auto mod = [turn](int x) { return ((x % turn) + turn) % turn; };

  // Radial order at the start: outer points by increasing distance from the
  // outermost angle, then the bundle, then the inner points likewise.
  struct Key {
    int dist;
    int eps;
    int j;
  };
  std::vector<Key> outer, inner;
  for (int j = 0; j < p; ++j) {
    const int a = 4 * j;
    Key k = a < 2 * p ? Key{a, +1, j} : Key{turn - a, -1, j};
    const bool is_outer = a < p || turn - a <= p;
    (is_outer ? outer : inner).push_back(k);
  }
  auto by_radius = [](const Key& x, const Key& y) { return x.dist != y.dist ? x.dist < y.dist : x.eps < y.eps; };
  std::sort(outer.begin(), outer.end(), by_radius);
  std::sort(inner.begin(), inner.end(), by_radius);

  constexpr int kBundle = -1;
  std::vector<int> order;  // slot -> point index, or kBundle for each link strand
  for (const auto& k : outer) order.push_back(k.j);
  for (int s = 0; s < bundle; ++s) order.push_back(kBundle);
  for (const auto& k : inner) order.push_back(k.j);
  const std::vector<int> initial_kinds = [&] {
    std::vector<int> kinds;
    for (int v : order) kinds.push_back(v == kBundle ? 0 : 1);
    return kinds;
  }();

  RotationBraid out;
  out.outer_count = static_cast<int>(outer.size());
  auto slot_of = [&](int j) {
    return static_cast<int>(std::find(order.begin(), order.end(), j) - order.begin());
  };
  auto swap_down = [&](int slot) {  // exchange slots slot, slot+1 (0-based)
    if (slot < 0 || slot + 1 >= static_cast<int>(order.size()))
      throw std::logic_error("rotation braid: swap outside the diagram");
    std::swap(order[static_cast<std::size_t>(slot)], order[static_cast<std::size_t>(slot) + 1]);
    // Every crossing here has the strand moving outwards passing under.
    out.events.push_back(Event::crossing(slot + 1, Sign::Negative));
  };
  for (int tau = 1; tau <= 4 * q; ++tau) {
    // phase 0: points reaching the bundle from above (moving inwards, over).
    for (int j = 0; j < p; ++j) {
      if (mod(4 * j + tau) != p) continue;
      const int s = slot_of(j);
      for (int k = 0; k < bundle; ++k) {
        if (order[static_cast<std::size_t>(s + k + 1)] != kBundle)
          throw std::logic_error("rotation braid: bundle not adjacent");
        swap_down(s + k);
      }
    }
    // phase 1: pairs of points at equal radius exchange places.
    for (int a = 0; a < p; ++a) {
      for (int b = a + 1; b < p; ++b) {
        if (mod(4 * a + 4 * b + 2 * tau) != 0) continue;
        const int sa = slot_of(a), sb = slot_of(b);
        if (std::abs(sa - sb) != 1) throw std::logic_error("rotation braid: swapping points not adjacent");
        swap_down(std::min(sa, sb));
      }
    }
    // phase 2: points reaching the bundle from below (moving outwards, under).
    for (int j = 0; j < p; ++j) {
      if (mod(4 * j + tau) != 3 * p) continue;
      const int s = slot_of(j);
      for (int k = 0; k < bundle; ++k) {
        if (order[static_cast<std::size_t>(s - k - 1)] != kBundle)
          throw std::logic_error("rotation braid: bundle not adjacent");
        swap_down(s - k - 1);
      }
    }
  }
  std::vector<int> final_kinds;
  for (int v : order) final_kinds.push_back(v == kBundle ? 0 : 1);
  if (final_kinds != initial_kinds) throw std::logic_error("rotation braid: configuration does not close up");
  return out;
}

inline void check_lens_parameters(int p, int q) {
  if (p < 1 || q < 0 || q >= std::max(p, 1) || std::gcd(p, q) != 1)
    throw MoveError("SL: need p >= 1, 0 <= q < p, gcd(p,q) = 1");
}

}  // namespace detail

/// The surgery curve of L(p,q) pushed into the solid torus: a (p,q) curve on
/// the boundary torus, framed by that torus. This is what a null-homotopic
/// circle becomes after sliding over the surgery disk.
inline AnnularWord surgery_curve(int p, int q) {
  detail::check_lens_parameters(p, q);
  auto rot = detail::rotation_braid(p, q, 0);
  EventList ev;
  for (int k = 0; k < q; ++k) {
    auto c = detail::curl(1, Sign::Positive);
    ev.insert(ev.end(), c.begin(), c.end());
  }
  ev.insert(ev.end(), rot.events.begin(), rot.events.end());
  return AnnularWord(p, std::move(ev));
}

/// Band-sums the outermost strand at the right end of the word with a
/// torus-framed copy of the surgery curve. The copy winds p times around the
/// core, encircling all t wall strands q times on the way; the band reverses
/// its orientation, so the slid strand's winding drops by p. The boundary
/// torus framing differs from the blackboard framing by q, which the q
/// positive curls restore.
inline AnnularWord slide(const AnnularWord& w, int p, int q) {
  detail::check_lens_parameters(p, q);
  if (w.closure() != Closure::Annular) throw MoveError("SL: expected an annular word");
  if (w.t() < 1) throw MoveError("SL: no strand crosses the wall");
  auto rot = detail::rotation_braid(p, q, w.t());
  const int shift = rot.outer_count;
  EventList ev;
  for (Event e : w.events()) {
    e.pos += shift;
    ev.push_back(e);
  }
  ev.push_back(Event::cap(shift));
  ev.push_back(Event::cup(shift));
  for (int k = 0; k < q; ++k) {
    auto c = detail::curl(shift, Sign::Positive);
    ev.insert(ev.end(), c.begin(), c.end());
  }
  ev.insert(ev.end(), rot.events.begin(), rot.events.end());
  return AnnularWord(w.t() + p, std::move(ev));
}

inline AnnularWord apply_move(const AnnularWord& w, const Move& move) {
  return std::visit(
      [&](const auto& m) -> AnnularWord {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, R1>) {
          detail::check_insert_point(w, m.at, m.pos, "R1");
          if (m.pos < 1) throw MoveError("R1: position must be >= 1");
          return detail::insert_events(w, m.at, detail::curl(m.pos, m.sign));
        } else if constexpr (std::is_same_v<M, R2>) {
          detail::check_insert_point(w, m.at, m.pos + 1, "R2");
          if (m.pos < 1) throw MoveError("R2: position must be >= 1");
          return detail::insert_events(
              w, m.at, {Event::crossing(m.pos, Sign::Positive), Event::crossing(m.pos, Sign::Negative)});
        } else if constexpr (std::is_same_v<M, R3>) {
          const auto& ev = w.events();
          if (m.at + 3 > ev.size()) throw MoveError("R3: fewer than three events at position");
          const Event& a = ev[m.at];
          const Event& b = ev[m.at + 1];
          const Event& c = ev[m.at + 2];
          const bool crossings = a.is_crossing() && b.is_crossing() && c.is_crossing();
          if (!crossings || a.sign != b.sign || b.sign != c.sign || a.pos != c.pos)
            throw MoveError("R3: pattern s_i s_j s_i with equal signs required");
          int lo = std::min(a.pos, b.pos), hi = std::max(a.pos, b.pos);
          if (hi != lo + 1 || lo != m.pos) throw MoveError("R3: crossings must involve slots pos..pos+2");
          EventList ev2 = ev;
          ev2[m.at] = Event::crossing(b.pos, a.sign);
          ev2[m.at + 1] = Event::crossing(a.pos, a.sign);
          ev2[m.at + 2] = Event::crossing(b.pos, a.sign);
          return AnnularWord(w.t(), std::move(ev2), w.closure());
        } else {
          return slide(w, m.p, m.q);
        }
      },
      move);
}

}  // namespace kbsm
