#include "ising/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ising {

int GraphSpec::nominal_degree() const {
  if (topology == Topology::circular_chain) return 2;
  switch (order) {
    case NeighborhoodOrder::first: return 4;
    case NeighborhoodOrder::second: return 8;
    case NeighborhoodOrder::fifth: return 24;
  }
  throw std::invalid_argument("unknown neighborhood order");
}

void GraphSpec::validate() const {
  if (topology == Topology::circular_chain) {
    if (cols != 1) throw std::invalid_argument("chain requires cols == 1");
    if (rows < 3) throw std::invalid_argument("chain requires n >= 3");
    return;
  }
  if (rows < 2 || cols < 2)
    throw std::invalid_argument("lattice requires rows, cols >= 2");
}

Topology topology_from_string(const std::string& s) {
  if (s == "circular-chain" || s == "chain") return Topology::circular_chain;
  if (s == "lattice2d-free" || s == "free") return Topology::lattice2d_free;
  if (s == "lattice2d-torus" || s == "torus") return Topology::lattice2d_torus;
  throw std::invalid_argument("unknown topology: " + s);
}

NeighborhoodOrder order_from_string(const std::string& s) {
  if (s == "first" || s == "1") return NeighborhoodOrder::first;
  if (s == "second" || s == "2") return NeighborhoodOrder::second;
  if (s == "fifth" || s == "5") return NeighborhoodOrder::fifth;
  throw std::invalid_argument("unknown neighborhood order: " + s);
}

std::string to_string(Topology t) {
  switch (t) {
    case Topology::circular_chain: return "circular-chain";
    case Topology::lattice2d_free: return "lattice2d-free";
    case Topology::lattice2d_torus: return "lattice2d-torus";
  }
  return "?";
}

std::string to_string(NeighborhoodOrder o) {
  switch (o) {
    case NeighborhoodOrder::first: return "first";
    case NeighborhoodOrder::second: return "second";
    case NeighborhoodOrder::fifth: return "fifth";
  }
  return "?";
}

namespace {

std::vector<std::pair<int, int>> lattice_offsets(NeighborhoodOrder order) {
  std::vector<std::pair<int, int>> offs;
  for (int di = -2; di <= 2; ++di) {
    for (int dj = -2; dj <= 2; ++dj) {
      if (di == 0 && dj == 0) continue;
      const int d2 = di * di + dj * dj;
      switch (order) {
        case NeighborhoodOrder::first:
          if (d2 == 1) offs.emplace_back(di, dj);
          break;
        case NeighborhoodOrder::second:
          if (d2 <= 2) offs.emplace_back(di, dj);
          break;
        case NeighborhoodOrder::fifth:
          offs.emplace_back(di, dj);
          break;
      }
    }
  }
  return offs;
}

Graph finalize(std::vector<std::vector<int>> lists, int k_nominal) {
  Graph g;
  g.n = static_cast<int>(lists.size());
  g.k_nominal = k_nominal;
  g.degrees.resize(g.n);
  g.adj_offsets.assign(g.n + 1, 0);
  std::int64_t total = 0;
  for (int i = 0; i < g.n; ++i) {
    std::sort(lists[i].begin(), lists[i].end());
    g.degrees[i] = static_cast<int>(lists[i].size());
    total += g.degrees[i];
    g.adj_offsets[i + 1] = total;
  }
  g.adj.reserve(total);
  for (int i = 0; i < g.n; ++i) {
    for (int j : lists[i]) {
      g.adj.push_back(j);
      if (j > i) g.edges.emplace_back(i, j);
    }
  }
  g.m = total / 2;
  return g;
}

}  // namespace

Graph Graph::from_adjacency(const std::vector<std::vector<int>>& lists,
                            int k_nominal) {
  const int n = static_cast<int>(lists.size());
  for (int i = 0; i < n; ++i) {
    std::set<int> seen;
    for (int j : lists[i]) {
      if (j < 0 || j >= n) throw std::invalid_argument("neighbor out of range");
      if (j == i) throw std::invalid_argument("self-loop");
      if (!seen.insert(j).second) throw std::invalid_argument("duplicate edge");
      const auto& back = lists[j];
      if (std::find(back.begin(), back.end(), i) == back.end())
        throw std::invalid_argument("adjacency not symmetric");
    }
  }
  return finalize(lists, k_nominal);
}

Graph build(const GraphSpec& spec) {
  spec.validate();
  const int n = static_cast<int>(spec.n());

  if (spec.topology == Topology::circular_chain) {
    std::vector<std::vector<int>> lists(n);
    for (int i = 0; i < n; ++i) {
      lists[i] = {(i + 1) % n, (i + n - 1) % n};
    }
    return finalize(std::move(lists), 2);
  }

  const int rows = spec.rows, cols = spec.cols;
  const auto offs = lattice_offsets(spec.order);
  const int k = spec.nominal_degree();
  const bool wrap = spec.topology == Topology::lattice2d_torus;
  std::vector<std::vector<int>> lists(n);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      std::set<int> nbrs;
      for (const auto& [dr, dc] : offs) {
        int rr = r + dr, cc = c + dc;
        if (wrap) {
          rr = ((rr % rows) + rows) % rows;
          cc = ((cc % cols) + cols) % cols;
        } else if (rr < 0 || rr >= rows || cc < 0 || cc >= cols) {
          continue;
        }
        const int u = rr * cols + cc;
        if (u == v) {
          throw std::invalid_argument(
              "torus dimensions too small for neighborhood order");
        }
        nbrs.insert(u);
      }
      if (wrap && static_cast<int>(nbrs.size()) != k) {
        throw std::invalid_argument(
            "torus dimensions too small for neighborhood order");
      }
      lists[v].assign(nbrs.begin(), nbrs.end());
    }
  }
  return finalize(std::move(lists), k);
}

Graph build_circulant(int n, int k) {
  if (k % 2 != 0 || k <= 0 || k >= n)
    throw std::invalid_argument("circulant needs even k in (0, n)");
  std::vector<std::vector<int>> lists(n);
  for (int i = 0; i < n; ++i) {
    for (int d = 1; d <= k / 2; ++d) {
      lists[i].push_back((i + d) % n);
      lists[i].push_back((i + n - d) % n);
    }
  }
  return finalize(std::move(lists), k);
}

MatchStats match_statistics(const Graph& g, std::span<const std::uint8_t> x) {
  if (static_cast<int>(x.size()) != g.n)
    throw std::invalid_argument("state length does not match graph order");
  MatchStats s;
  for (int i = 0; i < g.n; ++i) s.active += x[i];
  for (const auto& [i, j] : g.edges) {
    s.spin += static_cast<std::int64_t>(x[i]) * x[j];
    s.matches += (x[i] == x[j]);
  }
  s.nonmatches = g.m - s.matches;
  return s;
}

}  // namespace ising
