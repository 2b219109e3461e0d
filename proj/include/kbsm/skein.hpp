#pragma once

// Kauffman bracket state sums for annular words: values in the skein module of
// the solid torus (free on x_0, x_1, ...) or, for planar closure, in Z[A^{±1}].

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <limits>
#include <type_traits>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "kbsm/diagram.hpp"
#include "kbsm/error.hpp"
#include "kbsm/poly.hpp"

namespace kbsm {

/// Finite combination sum c_m x_m; x_m is m parallel copies of the core and
/// x_0 the local unknot.
class SolidTorusElement {
public:
  using Terms = std::map<int, LaurentPoly>;

  SolidTorusElement() = default;
  static SolidTorusElement basis(int m, LaurentPoly c = 1) {
    SolidTorusElement e;
    e.add(m, c);
    return e;
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Largest index with nonzero coefficient; -1 for the zero element.
  int max_index() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
  LaurentPoly coeff(int m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? LaurentPoly() : it->second;
  }

  void add(int m, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  void erase(int m) { terms_.erase(m); }

  SolidTorusElement& operator+=(const SolidTorusElement& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  SolidTorusElement& operator-=(const SolidTorusElement& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  friend SolidTorusElement operator+(SolidTorusElement a, const SolidTorusElement& b) { return a += b; }
  friend SolidTorusElement operator-(SolidTorusElement a, const SolidTorusElement& b) { return a -= b; }
  friend SolidTorusElement operator*(const LaurentPoly& s, const SolidTorusElement& e) {
    SolidTorusElement r;
    for (const auto& [m, c] : e.terms_) r.add(m, s * c);
    return r;
  }

  friend bool operator==(const SolidTorusElement&, const SolidTorusElement&) = default;

  /// `(P)*x<m>` terms joined by ` + `, highest index first; `0` when empty.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      out += "(" + it->second.to_string() + ")*x" + std::to_string(it->first);
    }
    return out;
  }

  static SolidTorusElement parse(std::string_view text);

private:
  Terms terms_;
};

inline SolidTorusElement SolidTorusElement::parse(std::string_view text) {
  SolidTorusElement out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& what) -> void {
    throw ParseError(what + " in element '" + std::string(text) + "'", 1, i + 1);
  };
  skip();
  if (i == text.size()) fail("empty input");
  if (text.substr(i) == "0") return out;
  bool first = true;
  while (true) {
    skip();
    if (i == text.size()) break;
    if (!first) {
      if (text[i] != '+') fail("expected '+'");
      ++i;
      skip();
    }
    first = false;
    if (i == text.size() || text[i] != '(') fail("expected '('");
    int depth = 0;
    std::size_t start = i + 1, close = std::string_view::npos;
    for (std::size_t k = i; k < text.size(); ++k) {
      if (text[k] == '(') ++depth;
      if (text[k] == ')' && --depth == 0) {
        close = k;
        break;
      }
    }
    if (close == std::string_view::npos) fail("unbalanced parenthesis");
    LaurentPoly c = LaurentPoly::parse(text.substr(start, close - start));
    i = close + 1;
    skip();
    if (text.substr(i, 2) != "*x") fail("expected '*x'");
    i += 2;
    std::size_t d0 = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (d0 == i) fail("expected basis index");
    out.add(std::stoi(std::string(text.substr(d0, i - d0))), c);
  }
  return out;
}

namespace detail {

inline void require_nonempty(const AnnularWord& w) {
  if (w.is_empty_link()) throw std::invalid_argument("empty diagram");
}

// Weight and shape of the two smoothings of a crossing: the A-smoothing of
// `x i +` (and the B-smoothing of `x i -`) is the cap/cup pair.
struct Smoothing {
  bool joins;  // cap+cup instead of two horizontal arcs
  int a_power;
};
inline Smoothing smoothing(Sign s, bool a_state) {
  const bool joins = (s == Sign::Positive) == a_state;
  return {joins, a_state ? 1 : -1};
}

// Final assembly of one crossingless state: `triv` null-homotopic and `ess`
// essential closed loops.
inline void add_state(SolidTorusElement& acc, const LaurentPoly& weight, unsigned triv, unsigned ess) {
  if (ess > 0) {
    acc.add(static_cast<int>(ess), weight * delta_pow(triv));
  } else {
    acc.add(0, weight * delta_pow(triv - 1));
  }
}

}  // namespace detail

namespace detail {

struct CoefficientOverflow {};

// Dense Laurent polynomial used inside the transfer-matrix sweep. With
// T = int64_t every operation is overflow-checked and throws
// CoefficientOverflow, upon which the sweep is redone with T = mpz_class.
template <class T>
class DensePoly {
public:
  DensePoly() = default;
  explicit DensePoly(int exponent) : lo_(exponent), c_{T(1)} {}

  bool is_zero() const { return c_.empty(); }
  void shift(int k) { lo_ += k; }

  void add(const DensePoly& o) {
    if (o.c_.empty()) return;
    if (c_.empty()) {
      *this = o;
      return;
    }
    const int lo = std::min(lo_, o.lo_);
    const int hi = std::max(lo_ + static_cast<int>(c_.size()), o.lo_ + static_cast<int>(o.c_.size()));
    if (lo < lo_) c_.insert(c_.begin(), static_cast<std::size_t>(lo_ - lo), T(0));
    lo_ = lo;
    if (static_cast<int>(c_.size()) < hi - lo) c_.resize(static_cast<std::size_t>(hi - lo), T(0));
    const std::size_t off = static_cast<std::size_t>(o.lo_ - lo_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[off + i] = checked_add(c_[off + i], o.c_[i]);
    trim();
  }

  // Multiply by -A^2 - A^-2.
  void mul_delta() {
    if (c_.empty()) return;
    std::vector<T> r(c_.size() + 4, T(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      r[i] = checked_add(r[i], negate(c_[i]));
      r[i + 4] = checked_add(r[i + 4], negate(c_[i]));
    }
    c_ = std::move(r);
    lo_ -= 2;
    trim();
  }

  LaurentPoly to_laurent() const {
    LaurentPoly out;
    for (std::size_t i = 0; i < c_.size(); ++i) out.add_term(lo_ + static_cast<int>(i), Coeff(c_[i]));
    return out;
  }

private:
  static T checked_add(const T& a, const T& b) {
    if constexpr (std::is_same_v<T, std::int64_t>) {
      std::int64_t r;
      if (__builtin_add_overflow(a, b, &r)) throw CoefficientOverflow{};
      return r;
    } else {
      return a + b;
    }
  }
  static T negate(const T& a) {
    if constexpr (std::is_same_v<T, std::int64_t>) {
      if (a == std::numeric_limits<std::int64_t>::min()) throw CoefficientOverflow{};
    }
    return T(-a);
  }
  void trim() {
    std::size_t b = 0;
    while (b < c_.size() && c_[b] == 0) ++b;
    if (b == c_.size()) {
      c_.clear();
      lo_ = 0;
      return;
    }
    std::size_t e = c_.size();
    while (c_[e - 1] == 0) --e;
    c_.erase(c_.begin() + static_cast<std::ptrdiff_t>(e), c_.end());
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(b));
    lo_ += static_cast<int>(b);
  }

  int lo_ = 0;
  std::vector<T> c_;
};

// A vector of polynomials indexed by the initial state a sweep started from;
// lets one sweep evaluate many words sharing the same tail.
template <class T>
class MultiPoly {
public:
  MultiPoly() = default;
  explicit MultiPoly(std::uint32_t index) { parts_.emplace_back(index, DensePoly<T>(0)); }

  bool is_zero() const { return parts_.empty(); }
  void shift(int k) {
    for (auto& [i, f] : parts_) f.shift(k);
  }
  void mul_delta() {
    for (auto& [i, f] : parts_) f.mul_delta();
  }
  void add(const MultiPoly& o) {
    std::vector<std::pair<std::uint32_t, DensePoly<T>>> r;
    r.reserve(parts_.size() + o.parts_.size());
    auto a = parts_.begin();
    auto b = o.parts_.begin();
    while (a != parts_.end() || b != o.parts_.end()) {
      if (b == o.parts_.end() || (a != parts_.end() && a->first < b->first)) {
        r.push_back(std::move(*a++));
      } else if (a == parts_.end() || b->first < a->first) {
        r.push_back(*b++);
      } else {
        a->second.add(b->second);
        if (!a->second.is_zero()) r.push_back(std::move(*a));
        ++a;
        ++b;
      }
    }
    parts_ = std::move(r);
  }
  const auto& parts() const { return parts_; }

private:
  std::vector<std::pair<std::uint32_t, DensePoly<T>>> parts_;
};

// Crossingless remainder of a sweep: a perfect matching on the t left wall
// points (0..t-1) and the points of the current slice (t..), top-down. Byte 0
// holds the loop flag, byte 1 + a the mate of point a.
template <std::size_t N>
class SweepKey {
public:
  SweepKey() = default;
  SweepKey(std::size_t n, std::uint8_t fill) : len_(static_cast<std::uint16_t>(n)) { b_.fill(fill); }

  std::size_t size() const { return len_; }
  std::uint8_t operator[](std::size_t i) const { return b_[i]; }
  std::uint8_t& operator[](std::size_t i) { return b_[i]; }
  void push_back(std::uint8_t x) { b_[len_++] = x; }

  friend bool operator==(const SweepKey& x, const SweepKey& y) {
    return x.len_ == y.len_ && std::memcmp(x.b_.data(), y.b_.data(), x.len_) == 0;
  }
  template <class H>
  friend H AbslHashValue(H h, const SweepKey& k) {
    return H::combine_contiguous(std::move(h), k.b_.data(), k.len_);
  }

private:
  std::uint16_t len_ = 0;
  std::array<std::uint8_t, N> b_{};
};

template <class Key>
int key_mate(const Key& k, int a) {
  return k[static_cast<std::size_t>(1 + a)];
}
template <class Key>
void key_set(Key& k, int a, int b) {
  k[static_cast<std::size_t>(1 + a)] = static_cast<std::uint8_t>(b);
}

/// Start state of a sweep as a plain mate array over wall and slice points.
using MatchingState = std::vector<int>;

/// The empty word on t strands: wall point j joined to slice point j.
inline MatchingState identity_state(int t) {
  MatchingState m(static_cast<std::size_t>(2 * t));
  for (int j = 0; j < t; ++j) {
    m[static_cast<std::size_t>(j)] = t + j;
    m[static_cast<std::size_t>(t + j)] = j;
  }
  return m;
}

template <class Key>
Key to_key(const MatchingState& m) {
  Key k(1 + m.size(), 0);
  for (std::size_t a = 0; a < m.size(); ++a) key_set(k, static_cast<int>(a), m[a]);
  return k;
}

template <class Key, class V>
using StateMap = absl::flat_hash_map<Key, V>;

template <class Key, class V>
StateMap<Key, V> sweep(StateMap<Key, V> states, int t, const EventList& events) {
  StateMap<Key, V> next;
  auto put = [&](Key&& k, V&& v) {
    if (v.is_zero()) return;
    auto [it, inserted] = next.try_emplace(std::move(k), std::move(v));
    if (!inserted) {
      it->second.add(v);
      if (it->second.is_zero()) next.erase(it);
    }
  };
  // Joins points a and a+1 with an arc; true if that closes a loop.
  auto join = [](Key& k, int a) {
    const int x = key_mate(k, a), y = key_mate(k, a + 1);
    if (x == a + 1) return true;
    key_set(k, x, y);
    key_set(k, y, x);
    return false;
  };
  auto drop_pair = [](const Key& k, int a) {
    Key r;
    r.push_back(k[0]);
    const int n = static_cast<int>(k.size()) - 1;
    for (int j = 0; j < n; ++j) {
      if (j == a || j == a + 1) continue;
      const int m = key_mate(k, j);
      r.push_back(static_cast<std::uint8_t>(m < a ? m : m - 2));
    }
    return r;
  };
  auto close_loop = [](Key& k, V& v) {
    if (k[0] != 0) {
      v.mul_delta();
    } else {
      k[0] = 1;
    }
  };

  for (const Event& e : events) {
    next = StateMap<Key, V>();
    next.reserve(states.size() * 2);
    const int a = t + e.pos - 1;
    for (auto& [key, val] : states) {
      switch (e.kind) {
        case EventKind::Crossing: {
          for (bool a_state : {true, false}) {
            const auto sm = smoothing(e.sign, a_state);
            Key k = key;
            V v = val;
            v.shift(sm.a_power);
            if (sm.joins) {
              if (join(k, a)) close_loop(k, v);
              key_set(k, a, a + 1);
              key_set(k, a + 1, a);
            }
            put(std::move(k), std::move(v));
          }
          break;
        }
        case EventKind::Cup: {
          const int n = static_cast<int>(key.size()) - 1;
          Key k;
          k.push_back(key[0]);
          for (int j = 0; j <= n; ++j) {
            if (j == a) {
              k.push_back(static_cast<std::uint8_t>(a + 1));
              k.push_back(static_cast<std::uint8_t>(a));
            }
            if (j == n) break;
            const int m = key_mate(key, j);
            k.push_back(static_cast<std::uint8_t>(m < a ? m : m + 2));
          }
          put(std::move(k), V(val));
          break;
        }
        case EventKind::Cap: {
          Key k = key;
          V v = val;
          if (join(k, a)) close_loop(k, v);
          put(drop_pair(k, a), std::move(v));
          break;
        }
      }
    }
    std::swap(states, next);
  }
  return states;
}

// Loop counts of a final state once slice point t+j is glued to wall point
// j: (essential, null-homotopic, closed-inside flag).
struct Closing {
  unsigned ess = 0;
  unsigned triv = 0;
  bool inner = false;
  friend bool operator<(const Closing& x, const Closing& y) {
    return std::tie(x.ess, x.triv, x.inner) < std::tie(y.ess, y.triv, y.inner);
  }
};

template <class Key>
Closing closing_of(const Key& key, int t, bool annular) {
  std::vector<bool> seen(static_cast<std::size_t>(2 * t), false);
  Closing c;
  c.inner = key[0] != 0;
  for (int s0 = 0; s0 < 2 * t; ++s0) {
    if (seen[static_cast<std::size_t>(s0)]) continue;
    int cur = s0, wind = 0;
    do {
      seen[static_cast<std::size_t>(cur)] = true;
      const int nx = key_mate(key, cur);
      seen[static_cast<std::size_t>(nx)] = true;
      if (nx >= t) {
        cur = nx - t;
        ++wind;
      } else {
        cur = nx + t;
        --wind;
      }
    } while (cur != s0);
    (annular && wind != 0 ? c.ess : c.triv) += 1;
  }
  return c;
}

inline void add_closed(SolidTorusElement& acc, const Closing& c, LaurentPoly v) {
  if (c.ess == 0 && c.triv == 0) {
    acc.add(0, v);  // every loop closed inside; the first one carries no delta
    return;
  }
  // Restore the delta withheld from the first inner loop.
  if (c.inner) v *= delta();
  add_state(acc, v, c.triv, c.ess);
}

template <class Key, class T>
std::vector<SolidTorusElement> sweep_and_close(int t, const std::vector<MatchingState>& initial,
                                               const EventList& events, bool annular) {
  StateMap<Key, MultiPoly<T>> init;
  for (std::size_t i = 0; i < initial.size(); ++i) {
    MultiPoly<T> v(static_cast<std::uint32_t>(i));
    auto [it, inserted] = init.try_emplace(to_key<Key>(initial[i]), v);
    if (!inserted) it->second.add(v);
  }
  // Many final states share their loop counts; sum their weights first.
  std::vector<std::map<Closing, DensePoly<T>>> buckets(initial.size());
  for (const auto& [key, val] : sweep(std::move(init), t, events)) {
    const Closing c = closing_of(key, t, annular);
    for (const auto& [i, f] : val.parts()) buckets[i][c].add(f);
  }
  std::vector<SolidTorusElement> out(initial.size());
  for (std::size_t i = 0; i < initial.size(); ++i)
    for (const auto& [c, f] : buckets[i]) add_closed(out[i], c, f.to_laurent());
  return out;
}

template <class Key>
std::vector<SolidTorusElement> sweep_exact(int t, const std::vector<MatchingState>& initial, const EventList& events,
                                           bool annular) {
  try {
    return sweep_and_close<Key, std::int64_t>(t, initial, events, annular);
  } catch (const CoefficientOverflow&) {
    return sweep_and_close<Key, Coeff>(t, initial, events, annular);
  }
}

// Like sweep_and_close, but sweeps the events once from the identity and
// puts each tangle in front only when closing up. Worth it when the event
// list is long and there are many tangles.
template <class Key, class T>
std::vector<SolidTorusElement> sweep_then_compose(int t, const std::vector<MatchingState>& tangles,
                                                  const EventList& events, bool annular) {
  StateMap<Key, MultiPoly<T>> init;
  init.try_emplace(to_key<Key>(identity_state(t)), MultiPoly<T>(0));
  const auto finals = sweep(std::move(init), t, events);

  const std::size_t n = static_cast<std::size_t>(2 * t);
  std::vector<std::map<std::pair<Closing, int>, DensePoly<T>>> buckets(tangles.size());
  std::vector<bool> seen(n);
  for (const auto& [key, val] : finals) {
    const auto& parts = val.parts();
    if (parts.empty()) continue;
    const DensePoly<T>& f = parts.front().second;
    for (std::size_t i = 0; i < tangles.size(); ++i) {
      const MatchingState& b = tangles[i];
      // Points 0..t-1 are the tangle's wall, t..2t-1 the final slice. An
      // endpoint alternates between the tangle and the sweep through the t
      // interface points; loops confined to the interface are closed.
      Key out(1 + n, 0);
      std::fill(seen.begin(), seen.end(), false);
      auto follow_from_tangle = [&](int x) {  // x: tangle point reached
        for (;;) {
          const int y = b[static_cast<std::size_t>(x)];
          if (y < t) return y;
          const int z = key_mate(key, y - t);
          seen[static_cast<std::size_t>(y - t)] = true;
          if (z >= t) return z;
          seen[static_cast<std::size_t>(z)] = true;
          x = z + t;
        }
      };
      auto follow_from_sweep = [&](int x) {  // x: sweep point reached
        for (;;) {
          const int y = key_mate(key, x);
          if (y >= t) return y;
          seen[static_cast<std::size_t>(y)] = true;
          const int z = b[static_cast<std::size_t>(y + t)];
          if (z < t) return z;
          seen[static_cast<std::size_t>(z - t)] = true;
          x = z - t;
        }
      };
      for (int x = 0; x < t; ++x) key_set(out, x, follow_from_tangle(x));
      for (int x = t; x < 2 * t; ++x) key_set(out, x, follow_from_sweep(x));
      int loops = 0;
      for (int x = 0; x < t; ++x) {
        if (seen[static_cast<std::size_t>(x)]) continue;
        ++loops;
        int cur = x;
        do {
          seen[static_cast<std::size_t>(cur)] = true;
          const int y = key_mate(key, cur);  // stays in the interface
          seen[static_cast<std::size_t>(y)] = true;
          cur = b[static_cast<std::size_t>(y + t)] - t;
        } while (cur != x);
      }
      int extra = 0;
      if (key[0] != 0) {
        extra = loops;
        out[0] = 1;
      } else if (loops > 0) {
        extra = loops - 1;
        out[0] = 1;
      }
      buckets[i][{closing_of(out, t, annular), extra}].add(f);
    }
  }
  std::vector<SolidTorusElement> result(tangles.size());
  for (std::size_t i = 0; i < tangles.size(); ++i)
    for (const auto& [ce, f] : buckets[i]) add_closed(result[i], ce.first, f.to_laurent() * delta_pow(static_cast<unsigned>(ce.second)));
  return result;
}

/// Values of the closed words "tangles[i] followed by events", where each
/// tangle is a matching on t wall and t slice points.
inline std::vector<SolidTorusElement> resolve_composed(int t, const std::vector<MatchingState>& tangles,
                                                       const EventList& events, bool annular = true) {
  const auto widths = replay_widths(t, events);
  const int points = t + *std::max_element(widths.begin(), widths.end());
  auto run = [&]<class Key>() {
    try {
      return sweep_then_compose<Key, std::int64_t>(t, tangles, events, annular);
    } catch (const CoefficientOverflow&) {
      return sweep_then_compose<Key, Coeff>(t, tangles, events, annular);
    }
  };
  if (points < 64) return run.template operator()<SweepKey<64>>();
  if (points < 256) return run.template operator()<SweepKey<256>>();
  throw ComputationError(ComputationError::Kind::TooLarge, "diagram too wide for the state sum");
}

/// Values of the words "initial[i] followed by events", where every start
/// state is a matching on t wall and t slice points. One sweep serves all.
inline std::vector<SolidTorusElement> resolve_from_states(int t, const std::vector<MatchingState>& initial,
                                                          const EventList& events, bool annular = true) {
  const auto widths = replay_widths(t, events);
  const int points = t + *std::max_element(widths.begin(), widths.end());
  if (points < 64) return sweep_exact<SweepKey<64>>(t, initial, events, annular);
  if (points < 256) return sweep_exact<SweepKey<256>>(t, initial, events, annular);
  throw ComputationError(ComputationError::Kind::TooLarge, "diagram too wide for the state sum");
}

}  // namespace detail

/// State sum by transfer matrices. The state after each event is a perfect
/// matching on the t left wall points plus the points of the current slice,
/// together with a flag recording whether a closed loop has been completed
/// already; loops closed inside the word are all null-homotopic and each
/// contributes delta except the first, whose factor is settled at the wall.
inline SolidTorusElement resolve(const AnnularWord& w) {
  detail::require_nonempty(w);
  return detail::resolve_from_states(w.t(), {detail::identity_state(w.t())}, w.events(),
                                     w.closure() == Closure::Annular)[0];
}

namespace detail {

// Closed loops of a crossingless state, found by walking an explicit graph on
// the points (event index, slot). Returns the signed wall count of each loop.
inline std::vector<int> naive_loops(int t, const EventList& ev, const std::vector<bool>& joins_at,
                                    bool annular) {
  const auto widths = replay_widths(t, ev);
  struct Edge {
    int a, b, d;
  };
  std::vector<Edge> edges;
  std::map<std::pair<int, int>, int> id;
  auto vid = [&](int k, int j) {
    auto [it, ins] = id.try_emplace({k, j}, static_cast<int>(id.size()));
    return it->second;
  };
  for (std::size_t k = 0; k < ev.size(); ++k) {
    const int kk = static_cast<int>(k);
    const int i = ev[k].pos;
    const int wk = widths[k];
    switch (ev[k].kind) {
      case EventKind::Crossing:
        for (int j = 1; j <= wk; ++j) {
          if (joins_at[k] && (j == i || j == i + 1)) continue;
          edges.push_back({vid(kk, j), vid(kk + 1, j), 0});
        }
        if (joins_at[k]) {
          edges.push_back({vid(kk, i), vid(kk, i + 1), 0});
          edges.push_back({vid(kk + 1, i), vid(kk + 1, i + 1), 0});
        }
        break;
      case EventKind::Cup:
        for (int j = 1; j <= wk; ++j) edges.push_back({vid(kk, j), vid(kk + 1, j < i ? j : j + 2), 0});
        edges.push_back({vid(kk + 1, i), vid(kk + 1, i + 1), 0});
        break;
      case EventKind::Cap:
        for (int j = 1; j <= wk; ++j) {
          if (j == i || j == i + 1) continue;
          edges.push_back({vid(kk, j), vid(kk + 1, j < i ? j : j - 2), 0});
        }
        edges.push_back({vid(kk, i), vid(kk, i + 1), 0});
        break;
    }
  }
  const int E = static_cast<int>(ev.size());
  for (int j = 1; j <= t; ++j) edges.push_back({vid(E, j), vid(0, j), annular ? 1 : 0});

  std::vector<std::vector<int>> adj(id.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adj[static_cast<std::size_t>(edges[e].a)].push_back(static_cast<int>(e));
    adj[static_cast<std::size_t>(edges[e].b)].push_back(static_cast<int>(e));
  }
  std::vector<bool> used(edges.size(), false);
  std::vector<int> loops;
  for (std::size_t s = 0; s < edges.size(); ++s) {
    if (used[s]) continue;
    used[s] = true;
    int wind = edges[s].d;
    int cur = edges[s].b;
    const int start = edges[s].a;
    while (cur != start) {
      int nx = -1;
      for (int e : adj[static_cast<std::size_t>(cur)])
        if (!used[static_cast<std::size_t>(e)]) {
          nx = e;
          break;
        }
      used[static_cast<std::size_t>(nx)] = true;
      const Edge& ed = edges[static_cast<std::size_t>(nx)];
      if (ed.a == cur) {
        wind += ed.d;
        cur = ed.b;
      } else {
        wind -= ed.d;
        cur = ed.a;
      }
    }
    loops.push_back(wind);
  }
  return loops;
}

}  // namespace detail

/// Direct enumeration of all 2^c Kauffman states. Test oracle for resolve.
inline SolidTorusElement resolve_naive(const AnnularWord& w) {
  detail::require_nonempty(w);
  const auto& ev = w.events();
  std::vector<std::size_t> crossings;
  for (std::size_t k = 0; k < ev.size(); ++k)
    if (ev[k].is_crossing()) crossings.push_back(k);
  if (crossings.size() > 20)
    throw ComputationError(ComputationError::Kind::TooLarge, "resolve_naive: more than 20 crossings");
  const bool annular = w.closure() == Closure::Annular;
  SolidTorusElement result;
  const std::uint64_t n_states = std::uint64_t{1} << crossings.size();
  for (std::uint64_t bits = 0; bits < n_states; ++bits) {
    std::vector<bool> joins(ev.size(), false);
    int power = 0;
    for (std::size_t c = 0; c < crossings.size(); ++c) {
      const bool a_state = ((bits >> c) & 1U) == 0;
      auto sm = detail::smoothing(ev[crossings[c]].sign, a_state);
      joins[crossings[c]] = sm.joins;
      power += sm.a_power;
    }
    unsigned ess = 0, triv = 0;
    for (int wind : detail::naive_loops(w.t(), ev, joins, annular)) (wind != 0 ? ess : triv) += 1;
    detail::add_state(result, LaurentPoly::A(power), triv, ess);
  }
  return result;
}

/// x_0 -> 1, x_m -> delta^{m-1}: the image in the skein module of S^3.
inline LaurentPoly substitute_delta(const SolidTorusElement& e) {
  LaurentPoly out;
  for (const auto& [m, c] : e.terms()) out += c * delta_pow(static_cast<unsigned>(m > 0 ? m - 1 : 0));
  return out;
}

/// Kauffman bracket of the word read as a diagram in S^3, unknot = 1.
inline LaurentPoly bracket_s3(const AnnularWord& w) {
  return resolve(w.with_closure(Closure::Planar)).coeff(0);
}

}  // namespace kbsm
