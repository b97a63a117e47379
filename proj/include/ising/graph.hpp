#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ising {

enum class Topology { circular_chain, lattice2d_free, lattice2d_torus };

// Neighborhood orders for 2-D lattices: first = 4 nearest, second adds the
// diagonals (8), fifth is the full 5x5 window minus the center (24).
enum class NeighborhoodOrder { first, second, fifth };

struct GraphSpec {
  Topology topology = Topology::lattice2d_free;
  int rows = 0;
  int cols = 1;
  NeighborhoodOrder order = NeighborhoodOrder::first;

  int nominal_degree() const;
  long n() const { return static_cast<long>(rows) * cols; }
  void validate() const;  // throws std::invalid_argument
};

Topology topology_from_string(const std::string& s);
NeighborhoodOrder order_from_string(const std::string& s);
std::string to_string(Topology t);
std::string to_string(NeighborhoodOrder o);

// Immutable after construction; adjacency stored CSR-style with sorted
// neighbor lists, plus an explicit i<j edge list for samplers.
struct Graph {
  int n = 0;
  int k_nominal = 0;
  std::int64_t m = 0;  // actual edge count
  std::vector<int> degrees;
  std::vector<std::int64_t> adj_offsets;  // size n+1
  std::vector<int> adj;                   // size 2m
  std::vector<std::pair<int, int>> edges;

  std::span<const int> neighbors(int i) const {
    return {adj.data() + adj_offsets[i],
            static_cast<std::size_t>(adj_offsets[i + 1] - adj_offsets[i])};
  }
  std::int64_t m_nominal() const {
    return static_cast<std::int64_t>(n) * k_nominal / 2;
  }

  // For tests and degenerate cases; validates symmetry / no self-loops /
  // no duplicates.
  static Graph from_adjacency(const std::vector<std::vector<int>>& lists,
                              int k_nominal);
};

Graph build(const GraphSpec& spec);

// Circulant graph on n vertices with neighbors at offsets +-1..+-(k/2);
// the regular-graph test bed for the subgraph-statistics oracles.
Graph build_circulant(int n, int k);

struct MatchStats {
  std::int64_t active = 0;
  std::int64_t matches = 0;
  std::int64_t nonmatches = 0;
  std::int64_t spin = 0;  // sum over edges of x_i * x_j
};

MatchStats match_statistics(const Graph& g, std::span<const std::uint8_t> x);

}  // namespace ising
