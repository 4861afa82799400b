#pragma once

#include <array>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

#include "cpslab/rng.hpp"

namespace cpslab {

/// Particle on the real line with velocity in {-1, 0, +1}. Velocity 0 is
/// the ballistic analogue of a blockade.
struct BallisticParticle {
  double position = 0.0;
  int velocity = 0;
  bool alive = true;
};

struct BallisticState {
  std::vector<BallisticParticle> particles;
};

struct BaCollision {
  double time = 0.0;
  double position = 0.0;
  std::int64_t left = 0;   // index into the initial particle array
  std::int64_t right = 0;
};

struct BaResult {
  BallisticState state;  // survivors advanced to final_time
  std::vector<BaCollision> collisions;
  double final_time = 0.0;
};

/// Ballistic annihilation: particles move at constant velocity and every
/// collision removes exactly the two colliding particles, blockades
/// included. Collisions are processed in chronological order; a three-way
/// tie is broken by taking the leftmost pair first (ties have measure
/// zero under continuous initial positions).
inline BaResult run_ba(BallisticState init, double t_max) {
  if (!(t_max >= 0.0)) throw std::invalid_argument("run_ba: t_max must be >= 0");
  const std::int64_t n = static_cast<std::int64_t>(init.particles.size());
  for (std::int64_t i = 0; i + 1 < n; ++i) {
    if (init.particles[static_cast<std::size_t>(i)].alive &&
        init.particles[static_cast<std::size_t>(i + 1)].alive &&
        !(init.particles[static_cast<std::size_t>(i)].position <
          init.particles[static_cast<std::size_t>(i + 1)].position))
      throw std::invalid_argument("run_ba: alive positions must be strictly increasing");
  }
  for (const auto& p : init.particles)
    if (p.velocity < -1 || p.velocity > 1)
      throw std::invalid_argument("run_ba: velocity must be in {-1,0,+1}");

  std::vector<std::int64_t> next(static_cast<std::size_t>(n));
  std::vector<std::int64_t> prev(static_cast<std::size_t>(n));
  std::int64_t head = -1, tail = -1;
  for (std::int64_t i = 0; i < n; ++i) {
    if (!init.particles[static_cast<std::size_t>(i)].alive) continue;
    prev[static_cast<std::size_t>(i)] = tail;
    next[static_cast<std::size_t>(i)] = -1;
    if (tail >= 0) next[static_cast<std::size_t>(tail)] = i;
    else head = i;
    tail = i;
  }

  struct Candidate {
    double time;
    std::int64_t left, right;
    bool operator>(const Candidate& o) const {
      if (time != o.time) return time > o.time;
      return left > o.left;  // leftmost pair first on a tie
    }
  };
  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<Candidate>> queue;

  auto collision_time = [&](std::int64_t i, std::int64_t j) -> double {
    const auto& a = init.particles[static_cast<std::size_t>(i)];
    const auto& b = init.particles[static_cast<std::size_t>(j)];
    if (a.velocity <= b.velocity) return -1.0;  // not approaching
    return (b.position - a.position) / static_cast<double>(a.velocity - b.velocity);
  };
  auto push_candidate = [&](std::int64_t i, std::int64_t j) {
    if (i < 0 || j < 0) return;
    const double tc = collision_time(i, j);
    if (tc >= 0.0 && tc <= t_max) queue.push({tc, i, j});
  };

  for (std::int64_t i = head; i >= 0; i = next[static_cast<std::size_t>(i)])
    push_candidate(i, next[static_cast<std::size_t>(i)]);

  BaResult result;
  result.final_time = t_max;
  while (!queue.empty()) {
    const Candidate c = queue.top();
    queue.pop();
    auto& a = init.particles[static_cast<std::size_t>(c.left)];
    auto& b = init.particles[static_cast<std::size_t>(c.right)];
    if (!a.alive || !b.alive) continue;                           // stale
    if (next[static_cast<std::size_t>(c.left)] != c.right) continue;  // no longer adjacent
    a.alive = false;
    b.alive = false;
    result.collisions.push_back(
        {c.time, a.position + a.velocity * c.time, c.left, c.right});
    const std::int64_t lo = prev[static_cast<std::size_t>(c.left)];
    const std::int64_t hi = next[static_cast<std::size_t>(c.right)];
    if (lo >= 0) next[static_cast<std::size_t>(lo)] = hi;
    else head = hi;
    if (hi >= 0) prev[static_cast<std::size_t>(hi)] = lo;
    push_candidate(lo, hi);
  }

  for (auto& p : init.particles)
    if (p.alive) p.position += p.velocity * t_max;
  result.state = std::move(init);
  return result;
}

/// Initial condition of the three-speed BA experiments: positions from a
/// Poisson process of the given intensity (cumulative Exp gaps starting
/// at 0), velocities i.i.d. from weights (w_minus, w_zero, w_plus).
/// Consumes 2n draws (n gaps, n velocities).
inline BallisticState poisson_ballistic_state(std::int64_t n, double intensity,
                                              std::array<double, 3> velocity_weights,
                                              RngStream& rng) {
  if (n < 1) throw std::invalid_argument("poisson_ballistic_state: n must be >= 1");
  if (!(intensity > 0.0)) throw std::invalid_argument("poisson_ballistic_state: intensity must be > 0");
  const double total = velocity_weights[0] + velocity_weights[1] + velocity_weights[2];
  if (!(total > 0.0) || velocity_weights[0] < 0 || velocity_weights[1] < 0 || velocity_weights[2] < 0)
    throw std::invalid_argument("poisson_ballistic_state: bad velocity weights");
  BallisticState st;
  st.particles.resize(static_cast<std::size_t>(n));
  double x = 0.0;
  for (auto& p : st.particles) {
    x += rng.next_exponential(intensity);
    p.position = x;
    const double u = rng.next_unit() * total;
    p.velocity = u < velocity_weights[0] ? -1 : (u < velocity_weights[0] + velocity_weights[1] ? 0 : 1);
    p.alive = true;
  }
  return st;
}

}  // namespace cpslab
