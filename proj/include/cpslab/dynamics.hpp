#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpslab/lattice.hpp"
#include "cpslab/rng.hpp"

namespace cpslab {

/// Direction of a clock on edge e: Plus is the clock of the ordered pair
/// (site e, site e+1), i.e. the left site pushing right; Minus the mirror.
enum class Direction : std::uint8_t { Plus = 0, Minus = 1 };

inline char direction_char(Direction d) { return d == Direction::Plus ? '+' : '-'; }

inline Direction direction_from_char(char c) {
  if (c == '+') return Direction::Plus;
  if (c == '-') return Direction::Minus;
  throw std::invalid_argument("direction_from_char: expected + or -");
}

enum class EventKind : std::uint8_t {
  Move = 0,
  Annihilate = 1,
  Flip = 2,
  BlockadeCreate = 3,
  Reflect = 4,
  NoOp = 5,
};

inline const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::Move: return "Move";
    case EventKind::Annihilate: return "Annihilate";
    case EventKind::Flip: return "Flip";
    case EventKind::BlockadeCreate: return "BlockadeCreate";
    case EventKind::Reflect: return "Reflect";
    case EventKind::NoOp: return "NoOp";
  }
  throw std::logic_error("event_kind_name: bad kind");
}

inline EventKind event_kind_from_name(const std::string& s) {
  if (s == "Move") return EventKind::Move;
  if (s == "Annihilate") return EventKind::Annihilate;
  if (s == "Flip") return EventKind::Flip;
  if (s == "BlockadeCreate") return EventKind::BlockadeCreate;
  if (s == "Reflect") return EventKind::Reflect;
  if (s == "NoOp") return EventKind::NoOp;
  throw std::invalid_argument("event_kind_from_name: unknown kind '" + s + "'");
}

/// One clock firing. `edge` and `direction` identify the clock; `kind` is
/// the classified effect. NoOp (a firing that did not change the state)
/// is only ever emitted by the Naive scheduler.
struct EventRecord {
  double time = 0.0;
  std::int64_t edge = 0;
  Direction direction = Direction::Plus;
  EventKind kind = EventKind::NoOp;
};

inline bool operator==(const EventRecord& a, const EventRecord& b) {
  return a.time == b.time && a.edge == b.edge && a.direction == b.direction && a.kind == b.kind;
}

enum class Engine : std::uint8_t { Vertex = 0, Edge = 1 };
enum class Scheduler : std::uint8_t { Naive = 0, RejectionFree = 1 };

struct SimConfig {
  int kappa = 3;
  std::int64_t n_sites = 0;
  std::uint64_t seed = 0;
  double t_max = 0.0;
  std::vector<double> snapshot_times;
  Engine engine = Engine::Edge;
  Scheduler scheduler = Scheduler::RejectionFree;
  bool log_events = false;
};

struct Snapshot {
  double time = 0.0;
  Coloring coloring;
  std::optional<EdgeConfig> edges;  // present iff kappa in {3,4}
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  std::vector<EventRecord> events;
  double final_time = 0.0;
};

/// Classification of a firing given the kind on the firing edge and the
/// kind on the edge ahead (edge+1 for Plus, edge-1 for Minus).
inline EventKind classify_kinds(Direction d, EdgeKind at, EdgeKind ahead, int kappa) {
  const EdgeKind mover = d == Direction::Plus ? EdgeKind::R : EdgeKind::L;
  if (at != mover) return EventKind::NoOp;
  const EdgeKind opposing = d == Direction::Plus ? EdgeKind::L : EdgeKind::R;
  if (ahead == EdgeKind::Vacant) return EventKind::Move;
  if (ahead == opposing) return EventKind::Annihilate;
  if (ahead == mover) return kappa == 3 ? EventKind::Flip : EventKind::BlockadeCreate;
  return EventKind::Reflect;  // ahead == B, kappa == 4
}

/// Collision/move classification of the clock (edge, direction) against
/// the current edge configuration.
inline EventKind classify_event(const EdgeConfig& e, std::int64_t edge, Direction d) {
  const std::int64_t n = e.size();
  if (edge < 0 || edge >= n) throw std::out_of_range("classify_event: edge index");
  const std::int64_t ahead = d == Direction::Plus ? (edge + 1) % n : (edge - 1 + n) % n;
  return classify_kinds(d, e.edges[static_cast<std::size_t>(edge)],
                        e.edges[static_cast<std::size_t>(ahead)], e.kappa);
}

/// One vertex-level update: the target site adopts the source color iff
/// target = source - 1 (mod kappa). Plus orients source = site edge,
/// target = site edge+1; Minus the reverse. Any kappa >= 2.
inline Coloring vertex_step(Coloring x, std::int64_t edge, Direction d) {
  const std::int64_t n = x.size();
  if (edge < 0 || edge >= n) throw std::out_of_range("vertex_step: edge index");
  const std::int64_t src = d == Direction::Plus ? edge : (edge + 1) % n;
  const std::int64_t tgt = d == Direction::Plus ? (edge + 1) % n : edge;
  const int s = x.sites[static_cast<std::size_t>(src)];
  const int t = x.sites[static_cast<std::size_t>(tgt)];
  if (t == (s - 1 + x.kappa) % x.kappa) x.sites[static_cast<std::size_t>(tgt)] = static_cast<std::uint8_t>(s);
  return x;
}

namespace detail {

/// In-place edge rewriting for the classified event. Returns the kind.
inline EventKind apply_edge_event(EdgeConfig& e, std::int64_t edge, Direction d) {
  const std::int64_t n = e.size();
  const std::int64_t ahead = d == Direction::Plus ? (edge + 1) % n : (edge - 1 + n) % n;
  auto& at_k = e.edges[static_cast<std::size_t>(edge)];
  auto& ahead_k = e.edges[static_cast<std::size_t>(ahead)];
  const EventKind kind = classify_kinds(d, at_k, ahead_k, e.kappa);
  const EdgeKind mover = d == Direction::Plus ? EdgeKind::R : EdgeKind::L;
  const EdgeKind opposing = d == Direction::Plus ? EdgeKind::L : EdgeKind::R;
  switch (kind) {
    case EventKind::NoOp:
      break;
    case EventKind::Move:
      at_k = EdgeKind::Vacant;
      ahead_k = mover;
      break;
    case EventKind::Annihilate:
      at_k = EdgeKind::Vacant;
      ahead_k = EdgeKind::Vacant;
      break;
    case EventKind::Flip:
    case EventKind::Reflect:
      // The moving particle lands on the edge ahead with flipped direction;
      // whatever sat there (same-type particle or blockade) is removed.
      at_k = EdgeKind::Vacant;
      ahead_k = opposing;
      break;
    case EventKind::BlockadeCreate:
      at_k = EdgeKind::Vacant;
      ahead_k = EdgeKind::B;
      break;
  }
  return kind;
}

}  // namespace detail

/// Edge-level update for the clock (edge, direction). Commutes with the
/// vertex update through embed/reconstruct.
inline EdgeConfig edge_step(EdgeConfig e, std::int64_t edge, Direction d) {
  if (edge < 0 || edge >= e.size()) throw std::out_of_range("edge_step: edge index");
  detail::apply_edge_event(e, edge, d);
  return e;
}

namespace detail {

/// Set of active directed clocks with O(1) insert, remove and uniform
/// sampling. Clock id = 2*edge + (direction == Minus). This is the hot
/// structure of the rejection-free scheduler.
class IndexedClockSet {
 public:
  void reset(std::int64_t n_clocks) {
    pos_.assign(static_cast<std::size_t>(n_clocks), -1);
    items_.clear();
  }

  std::int64_t size() const { return static_cast<std::int64_t>(items_.size()); }
  std::int64_t at(std::int64_t i) const { return items_[static_cast<std::size_t>(i)]; }

  void set(std::int64_t id, bool active) {
    auto& p = pos_[static_cast<std::size_t>(id)];
    if (active) {
      if (p >= 0) return;
      p = static_cast<std::int64_t>(items_.size());
      items_.push_back(id);
    } else {
      if (p < 0) return;
      const std::int64_t last = items_.back();
      items_[static_cast<std::size_t>(p)] = last;
      pos_[static_cast<std::size_t>(last)] = p;
      items_.pop_back();
      p = -1;
    }
  }

 private:
  std::vector<std::int64_t> items_;
  std::vector<std::int64_t> pos_;
};

/// Engine over the vertex representation: the state is the coloring and
/// events reassign site colors. Works for any kappa >= 2.
class VertexEngineState {
 public:
  explicit VertexEngineState(Coloring x0) : x_(std::move(x0)), n_(x_.size()), kappa_(x_.kappa) {}

  std::int64_t n_edges() const { return n_; }

  unsigned clock_mask(std::int64_t e) const {
    const int diff = this->diff(e);
    unsigned m = 0;
    if (diff == kappa_ - 1) m |= 1u;  // Plus clock: right site is one below left
    if (diff == 1) m |= 2u;           // Minus clock: left site is one below right
    return m;
  }

  EventKind apply(std::int64_t e, Direction d) {
    const std::int64_t src = d == Direction::Plus ? e : (e + 1) % n_;
    const std::int64_t tgt = d == Direction::Plus ? (e + 1) % n_ : e;
    const int s = x_.sites[static_cast<std::size_t>(src)];
    const int t = x_.sites[static_cast<std::size_t>(tgt)];
    const bool effective = t == (s - 1 + kappa_) % kappa_;
    EventKind kind;
    if (kappa_ == 3 || kappa_ == 4) {
      const std::int64_t ahead = d == Direction::Plus ? (e + 1) % n_ : (e - 1 + n_) % n_;
      kind = classify_kinds(d, kind_of_difference(diff(e), kappa_),
                            kind_of_difference(diff(ahead), kappa_), kappa_);
    } else {
      kind = effective ? EventKind::Move : EventKind::NoOp;
    }
    if (effective) x_.sites[static_cast<std::size_t>(tgt)] = static_cast<std::uint8_t>(s);
    return kind;
  }

  Snapshot snapshot(double time) const {
    Snapshot s;
    s.time = time;
    s.coloring = x_;
    if (kappa_ == 3 || kappa_ == 4) s.edges = embed(x_);
    return s;
  }

 private:
  int diff(std::int64_t e) const {
    return (x_.sites[static_cast<std::size_t>((e + 1) % n_)] -
            x_.sites[static_cast<std::size_t>(e)] + kappa_) % kappa_;
  }

  Coloring x_;
  std::int64_t n_;
  int kappa_;
};

/// Engine over the embedded edge-particle representation. The coloring is
/// recoverable because every effective event advances its target site's
/// color by exactly one, so tracking the color at site 0 suffices.
class EdgeEngineState {
 public:
  explicit EdgeEngineState(const Coloring& x0)
      : xi_(embed(x0)), base_color_(x0.sites[0]), n_(xi_.size()), kappa_(xi_.kappa) {}

  std::int64_t n_edges() const { return n_; }

  unsigned clock_mask(std::int64_t e) const {
    switch (xi_.edges[static_cast<std::size_t>(e)]) {
      case EdgeKind::R: return 1u;
      case EdgeKind::L: return 2u;
      default: return 0u;
    }
  }

  EventKind apply(std::int64_t e, Direction d) {
    const EventKind kind = apply_edge_event(xi_, e, d);
    if (kind != EventKind::NoOp) {
      const std::int64_t tgt = d == Direction::Plus ? (e + 1) % n_ : e;
      if (tgt == 0) base_color_ = (base_color_ + 1) % kappa_;
    }
    return kind;
  }

  Snapshot snapshot(double time) const {
    Snapshot s;
    s.time = time;
    s.coloring = reconstruct(base_color_, xi_);
    s.edges = xi_;
    return s;
  }

 private:
  EdgeConfig xi_;
  int base_color_;
  std::int64_t n_;
  int kappa_;
};

template <class State>
Trajectory run_cps_loop(const SimConfig& cfg, State st) {
  Trajectory traj;
  traj.final_time = cfg.t_max;
  const std::int64_t n = st.n_edges();
  const auto& times = cfg.snapshot_times;
  std::size_t snap_i = 0;

  RngStream rng(cfg.seed);
  IndexedClockSet active;
  const bool rejection_free = cfg.scheduler == Scheduler::RejectionFree;
  if (rejection_free) {
    active.reset(2 * n);
    for (std::int64_t e = 0; e < n; ++e) {
      const unsigned m = st.clock_mask(e);
      active.set(2 * e, (m & 1u) != 0);
      active.set(2 * e + 1, (m & 2u) != 0);
    }
  }

  auto sync_edge = [&](std::int64_t e) {
    const unsigned m = st.clock_mask(e);
    active.set(2 * e, (m & 1u) != 0);
    active.set(2 * e + 1, (m & 2u) != 0);
  };

  double t = 0.0;
  while (true) {
    if (rejection_free) {
      const std::int64_t m = active.size();
      if (m == 0) break;  // absorbing: only blockades and vacancies remain
      const double dt = rng.next_exponential(static_cast<double>(m));
      const double t_next = t + dt;
      if (t_next > cfg.t_max) break;
      const std::int64_t clock_id =
          active.at(static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(m))));
      if (!(t_next > t)) throw std::runtime_error("run_cps: simultaneous event times (RNG misuse)");
      while (snap_i < times.size() && times[snap_i] < t_next)
        traj.snapshots.push_back(st.snapshot(times[snap_i++]));
      const std::int64_t e = clock_id >> 1;
      const Direction d = (clock_id & 1) != 0 ? Direction::Minus : Direction::Plus;
      const EventKind kind = st.apply(e, d);
      assert(kind != EventKind::NoOp);
      if (cfg.log_events) traj.events.push_back({t_next, e, d, kind});
      sync_edge(e);
      sync_edge(d == Direction::Plus ? (e + 1) % n : (e - 1 + n) % n);
      t = t_next;
    } else {
      const double dt = rng.next_exponential(static_cast<double>(2 * n));
      const double t_next = t + dt;
      if (t_next > cfg.t_max) break;
      const std::int64_t clock_id =
          static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(2 * n)));
      if (!(t_next > t)) throw std::runtime_error("run_cps: simultaneous event times (RNG misuse)");
      while (snap_i < times.size() && times[snap_i] < t_next)
        traj.snapshots.push_back(st.snapshot(times[snap_i++]));
      const std::int64_t e = clock_id >> 1;
      const Direction d = (clock_id & 1) != 0 ? Direction::Minus : Direction::Plus;
      const EventKind kind = st.apply(e, d);
      if (cfg.log_events) traj.events.push_back({t_next, e, d, kind});
      t = t_next;
    }
  }
  while (snap_i < times.size()) traj.snapshots.push_back(st.snapshot(times[snap_i++]));
  return traj;
}

}  // namespace detail

inline void validate_sim_config(const SimConfig& cfg) {
  if (cfg.n_sites < 2) throw std::invalid_argument("SimConfig: n_sites must be >= 2");
  if (cfg.kappa < 2 || cfg.kappa > 255) throw std::invalid_argument("SimConfig: kappa must be in [2,255]");
  if (!(cfg.t_max >= 0.0)) throw std::invalid_argument("SimConfig: t_max must be >= 0");
  double prev = 0.0;
  for (double s : cfg.snapshot_times) {
    if (!(s >= 0.0) || s > cfg.t_max)
      throw std::invalid_argument("SimConfig: snapshot times must lie in [0, t_max]");
    if (s < prev) throw std::invalid_argument("SimConfig: snapshot times must be sorted");
    prev = s;
  }
  if (cfg.engine == Engine::Edge && cfg.kappa != 3 && cfg.kappa != 4)
    throw std::invalid_argument("SimConfig: the Edge engine requires kappa in {3,4}");
  if (cfg.log_events && cfg.kappa != 3 && cfg.kappa != 4)
    throw std::invalid_argument("SimConfig: event classification requires kappa in {3,4}");
}

/// Exact continuous-time simulation of the kappa-color cyclic particle
/// system on the ring.
///
/// Naive scheduler: Exp(2N) waits, uniformly chosen directed edge per
/// event; a literal realization of the 2N independent rate-1 clocks.
/// RejectionFree scheduler: Exp(k) waits with k = number of directed
/// particles, uniformly chosen directed particle; exact because only a
/// directed particle's own forward clock can change the state (blockades
/// and vacant edges are inert).
inline Trajectory run_cps(const SimConfig& cfg, const Coloring& x0) {
  validate_sim_config(cfg);
  x0.validate();
  if (x0.kappa != cfg.kappa) throw std::invalid_argument("run_cps: kappa mismatch");
  if (x0.size() != cfg.n_sites) throw std::invalid_argument("run_cps: n_sites mismatch");
  if (cfg.engine == Engine::Edge)
    return detail::run_cps_loop(cfg, detail::EdgeEngineState(x0));
  return detail::run_cps_loop(cfg, detail::VertexEngineState(x0));
}

/// Time for a virtual r/l pair `gap` edge units apart to meet: the gap
/// closes by one unit at combined rate 2, so the result is a sum of `gap`
/// i.i.d. Exponential(2) draws. Consumes exactly `gap` draws.
inline double simulate_virtual_pair(std::int64_t gap, RngStream& rng) {
  if (gap < 0) throw std::invalid_argument("simulate_virtual_pair: gap must be >= 0");
  double total = 0.0;
  for (std::int64_t i = 0; i < gap; ++i) total += rng.next_exponential(2.0);
  return total;
}

}  // namespace cpslab
