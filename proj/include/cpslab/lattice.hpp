#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "cpslab/rng.hpp"

namespace cpslab {

/// Kind of the particle sitting on an edge of the ring. R and L are the
/// directed particles (color difference -1 and +1 across the edge), B is
/// the immobile blockade (difference 2, four colors only), Vacant is no
/// particle.
enum class EdgeKind : std::uint8_t { Vacant = 0, R = 1, L = 2, B = 3 };

inline char edge_kind_char(EdgeKind k) {
  switch (k) {
    case EdgeKind::Vacant: return '.';
    case EdgeKind::R: return 'R';
    case EdgeKind::L: return 'L';
    case EdgeKind::B: return 'B';
  }
  throw std::logic_error("edge_kind_char: bad kind");
}

inline EdgeKind edge_kind_from_char(char c) {
  switch (c) {
    case '.': return EdgeKind::Vacant;
    case 'R': return EdgeKind::R;
    case 'L': return EdgeKind::L;
    case 'B': return EdgeKind::B;
  }
  throw std::invalid_argument("edge_kind_from_char: expected one of R L B .");
}

/// Signed unit carried by an edge kind: R = -1, L = +1, B = +2, Vacant = 0.
/// Telescoping around the ring forces the total to be 0 mod kappa.
inline int signed_unit(EdgeKind k) {
  switch (k) {
    case EdgeKind::Vacant: return 0;
    case EdgeKind::R: return -1;
    case EdgeKind::L: return +1;
    case EdgeKind::B: return +2;
  }
  throw std::logic_error("signed_unit: bad kind");
}

inline bool is_directed(EdgeKind k) { return k == EdgeKind::R || k == EdgeKind::L; }

/// A kappa-coloring of the N-site ring. Site i is adjacent to sites
/// (i-1) mod N and (i+1) mod N.
struct Coloring {
  int kappa = 0;
  std::vector<std::uint8_t> sites;

  std::int64_t size() const { return static_cast<std::int64_t>(sites.size()); }

  void validate() const {
    if (kappa < 2 || kappa > 255) throw std::invalid_argument("Coloring: kappa must be in [2,255]");
    if (sites.size() < 2) throw std::invalid_argument("Coloring: need at least 2 sites");
    for (auto c : sites)
      if (c >= kappa) throw std::invalid_argument("Coloring: site color out of range");
  }
};

inline bool operator==(const Coloring& a, const Coloring& b) {
  return a.kappa == b.kappa && a.sites == b.sites;
}

/// Edge-particle configuration on the ring: edge i sits between sites i
/// and (i+1) mod N.
struct EdgeConfig {
  int kappa = 0;
  std::vector<EdgeKind> edges;

  std::int64_t size() const { return static_cast<std::int64_t>(edges.size()); }
};

inline bool operator==(const EdgeConfig& a, const EdgeConfig& b) {
  return a.kappa == b.kappa && a.edges == b.edges;
}

inline long long signed_edge_sum(std::span<const EdgeKind> edges) {
  long long s = 0;
  for (EdgeKind k : edges) s += signed_unit(k);
  return s;
}

inline long long signed_edge_sum(const EdgeConfig& e) {
  return signed_edge_sum(std::span<const EdgeKind>(e.edges));
}

/// Edge kind of a color difference (target - source mod kappa), kappa in {3,4}.
inline EdgeKind kind_of_difference(int diff, int kappa) {
  if (diff == 0) return EdgeKind::Vacant;
  if (diff == 1) return EdgeKind::L;
  if (diff == kappa - 1) return EdgeKind::R;
  if (kappa == 4 && diff == 2) return EdgeKind::B;
  throw std::logic_error("kind_of_difference: unreachable");
}

/// Color increment when crossing an edge left to right, as a residue:
/// Vacant 0, L +1, B +2, R kappa-1 (that is, -1).
inline int color_delta(EdgeKind k, int kappa) {
  switch (k) {
    case EdgeKind::Vacant: return 0;
    case EdgeKind::L: return 1;
    case EdgeKind::B: return 2;
    case EdgeKind::R: return kappa - 1;
  }
  throw std::logic_error("color_delta: bad kind");
}

/// Coloring with i.i.d. uniform colors. Consumes exactly n draws.
inline Coloring uniform_coloring(std::int64_t n, int kappa, RngStream& rng) {
  if (n < 2) throw std::invalid_argument("uniform_coloring: need at least 2 sites");
  if (kappa < 2) throw std::invalid_argument("uniform_coloring: kappa must be >= 2");
  if (kappa > 255) throw std::invalid_argument("uniform_coloring: kappa must be <= 255");
  Coloring x;
  x.kappa = kappa;
  x.sites.resize(static_cast<std::size_t>(n));
  for (auto& c : x.sites) c = static_cast<std::uint8_t>(rng.next_below(static_cast<std::uint64_t>(kappa)));
  return x;
}

/// Edge configuration induced by a coloring: edge i carries the kind of
/// (sites[i+1] - sites[i]) mod kappa. Defined for kappa in {3,4}.
inline EdgeConfig embed(const Coloring& x) {
  if (x.kappa != 3 && x.kappa != 4)
    throw std::invalid_argument("embed: defined for kappa in {3,4}");
  const std::int64_t n = x.size();
  if (n < 2) throw std::invalid_argument("embed: need at least 2 sites");
  EdgeConfig e;
  e.kappa = x.kappa;
  e.edges.resize(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const int diff = (x.sites[static_cast<std::size_t>((i + 1) % n)] -
                      x.sites[static_cast<std::size_t>(i)] + x.kappa) % x.kappa;
    e.edges[static_cast<std::size_t>(i)] = kind_of_difference(diff, x.kappa);
  }
  return e;
}

/// Inverse of embed given the color at site 0. Rejects configurations
/// whose signed sum is not 0 mod kappa (not realizable on a ring).
inline Coloring reconstruct(int base_color, const EdgeConfig& e) {
  if (e.kappa != 3 && e.kappa != 4)
    throw std::invalid_argument("reconstruct: defined for kappa in {3,4}");
  const std::int64_t n = e.size();
  if (n < 2) throw std::invalid_argument("reconstruct: need at least 2 edges");
  if (base_color < 0 || base_color >= e.kappa)
    throw std::invalid_argument("reconstruct: base color out of range");
  for (EdgeKind k : e.edges)
    if (k == EdgeKind::B && e.kappa != 4)
      throw std::invalid_argument("reconstruct: blockade in a 3-color configuration");
  const long long sum = signed_edge_sum(e);
  if (((sum % e.kappa) + e.kappa) % e.kappa != 0)
    throw std::invalid_argument("reconstruct: signed edge sum is not 0 mod kappa");
  Coloring x;
  x.kappa = e.kappa;
  x.sites.resize(static_cast<std::size_t>(n));
  int c = base_color;
  for (std::int64_t i = 0; i < n; ++i) {
    x.sites[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(c);
    c = (c + color_delta(e.edges[static_cast<std::size_t>(i)], e.kappa)) % e.kappa;
  }
  return x;
}

}  // namespace cpslab
