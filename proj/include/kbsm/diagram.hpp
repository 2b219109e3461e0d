#pragma once

// Link diagrams in the solid torus as annular tangle words.
//
// A band diagram is a rectangle whose left and right sides are identified.
// Reading it left to right gives a word of elementary events acting on the
// strands that currently cross a vertical line; strand slots are numbered
// from 1 at the top (the outer boundary of the annulus) downwards. The same
// word also describes the punctured disk diagram obtained by gluing the two
// sides back into an annulus around the puncture.
//
// Crossing convention: in `x i +` the strand entering slot i+1 from the left
// (bottom-left) passes over and leaves in slot i (top-right). Its A-smoothing
// joins slots i and i+1 on each side (a cap followed by a cup); its
// B-smoothing keeps the strands horizontal. `x i -` is the mirror image.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kbsm/error.hpp"

namespace kbsm {

enum class EventKind { Crossing, Cup, Cap };
enum class Sign { Positive, Negative };

inline Sign opposite(Sign s) { return s == Sign::Positive ? Sign::Negative : Sign::Positive; }

struct Event {
  EventKind kind = EventKind::Crossing;
  int pos = 1;  // 1-based slot
  Sign sign = Sign::Positive;  // crossings only

  static Event crossing(int pos, Sign sign) { return {EventKind::Crossing, pos, sign}; }
  static Event cup(int pos) { return {EventKind::Cup, pos, Sign::Positive}; }
  static Event cap(int pos) { return {EventKind::Cap, pos, Sign::Positive}; }

  bool is_crossing() const { return kind == EventKind::Crossing; }

  std::string to_string() const {
    switch (kind) {
      case EventKind::Crossing:
        return "x " + std::to_string(pos) + (sign == Sign::Positive ? " +" : " -");
      case EventKind::Cup:
        return "cup " + std::to_string(pos);
      case EventKind::Cap:
        return "cap " + std::to_string(pos);
    }
    return {};
  }

  friend bool operator==(const Event&, const Event&) = default;
};

using EventList = std::vector<Event>;

/// Strand counts before and after every event; throws WidthError on the first
/// event whose position does not fit.
inline std::vector<int> replay_widths(int t, const EventList& events) {
  if (t < 0) throw WidthError("negative strand count", 0);
  std::vector<int> widths;
  widths.reserve(events.size() + 1);
  widths.push_back(t);
  int w = t;
  for (std::size_t k = 0; k < events.size(); ++k) {
    const Event& e = events[k];
    switch (e.kind) {
      case EventKind::Crossing:
        if (e.pos < 1 || w < e.pos + 1)
          throw WidthError("crossing at " + std::to_string(e.pos) + " needs width >= " +
                               std::to_string(e.pos + 1) + ", have " + std::to_string(w),
                           k);
        break;
      case EventKind::Cup:
        if (e.pos < 1 || e.pos > w + 1)
          throw WidthError("cup at " + std::to_string(e.pos) + " outside 1.." + std::to_string(w + 1), k);
        w += 2;
        break;
      case EventKind::Cap:
        if (e.pos < 1 || w < e.pos + 1)
          throw WidthError("cap at " + std::to_string(e.pos) + " needs width >= " +
                               std::to_string(e.pos + 1) + ", have " + std::to_string(w),
                           k);
        w -= 2;
        break;
    }
    widths.push_back(w);
  }
  return widths;
}

enum class Closure { Annular, Planar };

/// A band diagram (annular closure) or a diagram in S^3 (planar closure).
class AnnularWord {
public:
  AnnularWord() = default;
  AnnularWord(int t, EventList events, Closure closure = Closure::Annular)
      : t_(t), events_(std::move(events)), closure_(closure) {
    auto widths = replay_widths(t_, events_);
    if (widths.back() != t_)
      throw WidthError("word ends with width " + std::to_string(widths.back()) + ", expected " +
                           std::to_string(t_),
                       events_.size() == 0 ? 0 : events_.size() - 1);
  }

  int t() const noexcept { return t_; }
  const EventList& events() const noexcept { return events_; }
  Closure closure() const noexcept { return closure_; }
  bool is_empty_link() const noexcept { return t_ == 0 && events_.empty(); }

  std::size_t crossing_count() const {
    return static_cast<std::size_t>(
        std::count_if(events_.begin(), events_.end(), [](const Event& e) { return e.is_crossing(); }));
  }
  std::vector<int> widths() const { return replay_widths(t_, events_); }

  AnnularWord with_closure(Closure c) const {
    AnnularWord w = *this;
    w.closure_ = c;
    return w;
  }

  friend bool operator==(const AnnularWord&, const AnnularWord&) = default;

private:
  int t_ = 0;
  EventList events_;
  Closure closure_ = Closure::Annular;
};

/// A standard disk diagram: boundary points +1..+t on the left side of the
/// cut rectangle, -1..-t on the right.
class DiskWord {
public:
  DiskWord() = default;
  DiskWord(int t, EventList events) : t_(t), events_(std::move(events)) {
    auto widths = replay_widths(t_, events_);
    if (widths.back() != t_)
      throw WidthError("disk word ends with width " + std::to_string(widths.back()) +
                           ", expected " + std::to_string(t_),
                       events_.empty() ? 0 : events_.size() - 1);
  }

  int t() const noexcept { return t_; }
  const EventList& events() const noexcept { return events_; }

  friend bool operator==(const DiskWord&, const DiskWord&) = default;

private:
  int t_ = 0;
  EventList events_;
};

using Diagram = std::variant<AnnularWord, DiskWord>;

// ---------------------------------------------------------------------------
// File format

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline int parse_int(const std::string& tok, std::size_t line, std::size_t col) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError("expected a nonnegative integer, got '" + tok + "'", line, col);
  try {
    return std::stoi(tok);
  } catch (const std::out_of_range&) {
    throw ParseError("integer out of range: '" + tok + "'", line, col);
  }
}

inline std::size_t column_of(std::string_view line, const std::string& tok, std::size_t from = 0) {
  auto p = line.find(tok, from);
  return p == std::string_view::npos ? 1 : p + 1;
}

}  // namespace detail

/// Parses `annular t=T`, `planar t=T` or `disk t=T` followed by one event per
/// line. `#` starts a comment; blank lines are ignored.
inline Diagram parse_diagram(std::string_view text) {
  enum class Header { None, Annular, Planar, Disk } header = Header::None;
  int t = 0;
  EventList events;
  std::vector<std::size_t> event_lines;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    std::string_view line = raw.substr(0, raw.find('#'));
    auto toks = detail::split_ws(line);
    if (toks.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (header == Header::None) {
      if (toks.size() != 2 || toks[1].rfind("t=", 0) != 0)
        throw ParseError("expected header '<annular|planar|disk> t=<T>'", line_no, 1);
      if (toks[0] == "annular")
        header = Header::Annular;
      else if (toks[0] == "planar")
        header = Header::Planar;
      else if (toks[0] == "disk")
        header = Header::Disk;
      else
        throw ParseError("unknown diagram kind '" + toks[0] + "'", line_no, 1);
      t = detail::parse_int(toks[1].substr(2), line_no, detail::column_of(line, toks[1]) + 2);
    } else if (toks[0] == "x") {
      if (toks.size() != 3)
        throw ParseError("crossing needs 'x <i> <+|->'", line_no, detail::column_of(line, toks[0]));
      int pos = detail::parse_int(toks[1], line_no, detail::column_of(line, toks[1], 1));
      Sign s;
      if (toks[2] == "+")
        s = Sign::Positive;
      else if (toks[2] == "-")
        s = Sign::Negative;
      else
        throw ParseError("crossing sign must be '+' or '-'", line_no, detail::column_of(line, toks[2], 2));
      events.push_back(Event::crossing(pos, s));
      event_lines.push_back(line_no);
    } else if (toks[0] == "cup" || toks[0] == "cap") {
      if (toks.size() != 2)
        throw ParseError(toks[0] + " needs exactly one position", line_no, detail::column_of(line, toks[0]));
      int pos = detail::parse_int(toks[1], line_no, detail::column_of(line, toks[1], 3));
      events.push_back(toks[0] == "cup" ? Event::cup(pos) : Event::cap(pos));
      event_lines.push_back(line_no);
    } else {
      throw ParseError("unknown event '" + toks[0] + "'", line_no, detail::column_of(line, toks[0]));
    }
    if (end == text.size()) break;
  }
  if (header == Header::None) throw ParseError("missing header", line_no == 0 ? 1 : line_no, 1);
  if (header == Header::Disk) return DiskWord(t, std::move(events));
  return AnnularWord(t, std::move(events), header == Header::Planar ? Closure::Planar : Closure::Annular);
}

inline std::string serialize_events(const EventList& events) {
  std::string out;
  for (const auto& e : events) out += e.to_string() + "\n";
  return out;
}

inline std::string serialize(const AnnularWord& w) {
  return std::string(w.closure() == Closure::Planar ? "planar" : "annular") + " t=" + std::to_string(w.t()) +
         "\n" + serialize_events(w.events());
}

inline std::string serialize(const DiskWord& d) {
  return "disk t=" + std::to_string(d.t()) + "\n" + serialize_events(d.events());
}

// ---------------------------------------------------------------------------
// Garside half-twist and the band/disk conversions

/// Delta_t = (s_{t-1} ... s_1)(s_{t-1} ... s_2) ... (s_{t-1}), all positive.
inline EventList garside(int t) {
  if (t < 1) throw std::invalid_argument("garside: t must be >= 1");
  EventList out;
  for (int low = 1; low < t; ++low)
    for (int i = t - 1; i >= low; --i) out.push_back(Event::crossing(i, Sign::Positive));
  return out;
}

/// Delta_t^-1 written in the same letter order with inverted generators.
inline EventList garside_inv(int t) {
  EventList out = garside(t);
  for (auto& e : out) e.sign = Sign::Negative;
  return out;
}

inline EventList repeat(const EventList& word, int times) {
  EventList out;
  out.reserve(word.size() * static_cast<std::size_t>(std::max(times, 0)));
  for (int k = 0; k < times; ++k) out.insert(out.end(), word.begin(), word.end());
  return out;
}

inline EventList concat(EventList a, const EventList& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline DiskWord band_to_disk(const AnnularWord& band) {
  if (band.closure() != Closure::Annular) throw std::invalid_argument("band_to_disk: expected an annular word");
  if (band.t() == 0) return DiskWord(0, band.events());
  return DiskWord(band.t(), concat(band.events(), garside(band.t())));
}

inline AnnularWord disk_to_band(const DiskWord& disk) {
  if (disk.t() == 0) return AnnularWord(0, disk.events());
  return AnnularWord(disk.t(), concat(disk.events(), garside_inv(disk.t())));
}

// ---------------------------------------------------------------------------
// Components, winding and writhe

namespace detail {

/// Walks the strands of the diagram itself (crossings act as transpositions of
/// slots). Calls visit(component, event_index, slot_entering, rightwards) for
/// every crossing passage and returns per-component wall counts.
struct StrandTrace {
  struct Passage {
    int component;
    bool rightwards;
  };
  // For each crossing event index: passages of the strand that enters at the
  // lower slot (i+1) and at the upper slot (i), from the left.
  std::vector<Passage> from_lower, from_upper;
  std::vector<int> wall_sum;  // signed wall crossings per component
};

inline StrandTrace trace_strands(const AnnularWord& w) {
  const auto widths = w.widths();
  const auto& ev = w.events();
  const std::size_t E = ev.size();
  // Node (k, j): slot j (0-based) on the cut just after event k-1.
  std::vector<std::size_t> offset(E + 2, 0);
  for (std::size_t k = 0; k <= E; ++k) offset[k + 1] = offset[k] + static_cast<std::size_t>(widths[k]);
  const std::size_t n_nodes = offset[E + 1];
  auto node = [&](std::size_t k, int j) { return offset[k] + static_cast<std::size_t>(j); };

  // Each node has a left link and a right link. Links store (other node, side
  // of the other node, wall delta, crossing index or -1, whether traversal
  // left-to-right enters from the lower slot).
  struct Link {
    std::size_t to = 0;
    int to_side = 0;  // 0 = left side of target node, 1 = right side
    int wall = 0;
    long crossing = -1;
    bool lower_entry = false;
  };
  std::vector<Link> left(n_nodes), right(n_nodes);
  auto connect = [&](std::size_t a, int a_side, std::size_t b, int b_side, int wall, long crossing,
                     bool lower_from_a) {
    Link la{b, b_side, wall, crossing, lower_from_a};
    Link lb{a, a_side, -wall, crossing, !lower_from_a};
    (a_side == 0 ? left[a] : right[a]) = la;
    (b_side == 0 ? left[b] : right[b]) = lb;
  };
  for (std::size_t k = 0; k < E; ++k) {
    const Event& e = ev[k];
    const int i = e.pos - 1;
    const int wk = widths[k];
    switch (e.kind) {
      case EventKind::Crossing:
        for (int j = 0; j < wk; ++j) {
          if (j == i || j == i + 1) continue;
          connect(node(k, j), 1, node(k + 1, j), 0, 0, -1, false);
        }
        connect(node(k, i + 1), 1, node(k + 1, i), 0, 0, static_cast<long>(k), true);
        connect(node(k, i), 1, node(k + 1, i + 1), 0, 0, static_cast<long>(k), false);
        break;
      case EventKind::Cup:
        for (int j = 0; j < wk; ++j) connect(node(k, j), 1, node(k + 1, j < i ? j : j + 2), 0, 0, -1, false);
        connect(node(k + 1, i), 0, node(k + 1, i + 1), 0, 0, -1, false);
        break;
      case EventKind::Cap:
        for (int j = 0; j < wk; ++j) {
          if (j == i || j == i + 1) continue;
          connect(node(k, j), 1, node(k + 1, j < i ? j : j - 2), 0, 0, -1, false);
        }
        connect(node(k, i), 1, node(k, i + 1), 1, 0, -1, false);
        break;
    }
  }
  const int wall = w.closure() == Closure::Annular ? 1 : 0;
  for (int j = 0; j < w.t(); ++j) connect(node(E, j), 1, node(0, j), 0, wall, -1, false);

  StrandTrace out;
  out.from_lower.assign(E, {-1, true});
  out.from_upper.assign(E, {-1, true});
  std::vector<bool> seen(n_nodes, false);
  // Visit order: wall slots first so that components are numbered top-down.
  std::vector<std::size_t> order;
  for (int j = 0; j < w.t(); ++j) order.push_back(node(0, j));
  for (std::size_t v = 0; v < n_nodes; ++v) order.push_back(v);
  for (std::size_t start : order) {
    if (seen[start]) continue;
    const int comp = static_cast<int>(out.wall_sum.size());
    out.wall_sum.push_back(0);
    // Leave through the right side first.
    std::size_t cur = start;
    int side = 1;
    do {
      seen[cur] = true;
      const Link& l = side == 1 ? right[cur] : left[cur];
      out.wall_sum[static_cast<std::size_t>(comp)] += l.wall;
      if (l.crossing >= 0) {
        const bool rightwards = side == 1;
        auto& slot = l.lower_entry == rightwards ? out.from_lower : out.from_upper;
        slot[static_cast<std::size_t>(l.crossing)] = {comp, rightwards};
      }
      cur = l.to;
      side = 1 - l.to_side;  // continue out of the opposite side
    } while (!(cur == start && side == 1));
  }
  return out;
}

}  // namespace detail

/// |signed wall crossings| for each component, components numbered in the
/// order their first wall slot (top-down) or first event is met.
inline std::vector<int> winding(const AnnularWord& w) {
  if (w.closure() != Closure::Annular) throw std::invalid_argument("winding: expected an annular word");
  auto tr = detail::trace_strands(w);
  std::vector<int> out;
  for (int s : tr.wall_sum) out.push_back(s < 0 ? -s : s);
  return out;
}

inline std::size_t component_count(const AnnularWord& w) { return detail::trace_strands(w).wall_sum.size(); }

/// Writhe under the orientation obtained by traversing every component from
/// its first node. With both strands running left to right, `x i +` is a
/// negative crossing in the right-hand rule.
inline int writhe(const AnnularWord& w) {
  auto tr = detail::trace_strands(w);
  int total = 0;
  for (std::size_t k = 0; k < w.events().size(); ++k) {
    const Event& e = w.events()[k];
    if (!e.is_crossing()) continue;
    const auto& lower = tr.from_lower[k];  // the strand through bottom-left and top-right
    const auto& upper = tr.from_upper[k];
    const int over_dir = (e.sign == Sign::Positive ? lower : upper).rightwards ? 1 : -1;
    const int under_dir = (e.sign == Sign::Positive ? upper : lower).rightwards ? 1 : -1;
    // Over strand along (1, +1) or (1, -1) depending on which diagonal it occupies.
    const int over_diag = e.sign == Sign::Positive ? 1 : -1;
    // Cross product z-component of over x under, both taken rightwards, is -2*over_diag.
    total += -over_diag * over_dir * under_dir;
  }
  return total;
}

}  // namespace kbsm
