#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cpslab/lattice.hpp"

namespace cpslab {

/// One synchronous cyclic-cellular-automaton step on the ring: a site
/// advances its color by one iff some neighbour already holds the
/// successor color.
inline Coloring cca_step(const Coloring& y) {
  const std::int64_t n = y.size();
  const int kappa = y.kappa;
  Coloring out;
  out.kappa = kappa;
  out.sites.resize(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const int c = y.sites[static_cast<std::size_t>(i)];
    const int succ = (c + 1) % kappa;
    const int left = y.sites[static_cast<std::size_t>((i - 1 + n) % n)];
    const int right = y.sites[static_cast<std::size_t>((i + 1) % n)];
    out.sites[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>((left == succ || right == succ) ? succ : c);
  }
  return out;
}

/// Streams rows y_0, y_1, ..., y_steps to `on_row(t, row)` without
/// retaining them; memory stays O(N) for long or wide runs.
template <class F>
void run_cca_stream(const Coloring& y0, std::int64_t steps, F&& on_row) {
  if (steps < 0) throw std::invalid_argument("run_cca_stream: steps must be >= 0");
  y0.validate();
  Coloring y = y0;
  on_row(std::int64_t{0}, static_cast<const Coloring&>(y));
  for (std::int64_t t = 1; t <= steps; ++t) {
    y = cca_step(y);
    on_row(t, static_cast<const Coloring&>(y));
  }
}

/// Full synchronous trajectory, steps+1 rows including y0.
inline std::vector<Coloring> run_cca(const Coloring& y0, std::int64_t steps) {
  std::vector<Coloring> rows;
  rows.reserve(static_cast<std::size_t>(steps) + 1);
  run_cca_stream(y0, steps, [&](std::int64_t, const Coloring& row) { rows.push_back(row); });
  return rows;
}

}  // namespace cpslab
