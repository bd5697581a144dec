// Exhaustive vertex enumeration of the transport polytope. Shares nothing
// with the network simplex beyond the Measure type.

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "thicken/errors.hpp"
#include "thicken/transport.hpp"

namespace thicken {

namespace {

// Flow on a spanning tree of cells; false if the cells contain a cycle or
// leave the bipartite graph disconnected.
bool tree_flow(std::size_t m, std::size_t n, const std::vector<std::size_t>& cells, const std::vector<double>& a,
               const std::vector<double>& b, std::vector<double>& flow) {
  std::vector<std::size_t> parent(m + n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t c : cells) {
    const std::size_t r = find(c / n);
    const std::size_t s = find(m + c % n);
    if (r == s) return false;
    parent[r] = s;
  }

  // Leaf elimination: a node of degree one fixes the flow of its cell.
  std::vector<double> rest(m + n);
  for (std::size_t i = 0; i < m; ++i) rest[i] = a[i];
  for (std::size_t j = 0; j < n; ++j) rest[m + j] = b[j];
  std::vector<bool> done(cells.size(), false);
  std::vector<std::size_t> degree(m + n, 0);
  for (std::size_t c : cells) {
    ++degree[c / n];
    ++degree[m + c % n];
  }
  flow.assign(m * n, 0.0);
  for (std::size_t round = 0; round < cells.size(); ++round) {
    bool progressed = false;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (done[k]) continue;
      const std::size_t row = cells[k] / n;
      const std::size_t col = m + cells[k] % n;
      std::size_t leaf;
      if (degree[row] == 1) {
        leaf = row;
      } else if (degree[col] == 1) {
        leaf = col;
      } else {
        continue;
      }
      const double q = rest[leaf];
      flow[cells[k]] = q;
      rest[row] -= q;
      rest[col] -= q;
      --degree[row];
      --degree[col];
      done[k] = true;
      progressed = true;
      break;
    }
    if (!progressed) return false;
  }
  return true;
}

}  // namespace

double oracle_wasserstein1(const Measure& mu, const Measure& nu) {
  const std::size_t m = mu.size();
  const std::size_t n = nu.size();
  if (m * n > 16) throw SizeLimitExceeded("oracle_wasserstein1: |mu| * |nu| must be <= 16");
  if (mu.ambient_dim() != nu.ambient_dim()) throw DimensionMismatch("oracle_wasserstein1: dimension mismatch");

  std::vector<double> cost(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < mu.ambient_dim(); ++k) {
        const double d = mu.support()[i][k] - nu.support()[j][k];
        s += d * d;
      }
      cost[i * n + j] = std::sqrt(s);
    }
  }

  const std::size_t basis = m + n - 1;
  const std::size_t cells = m * n;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> flow;
  std::vector<std::size_t> chosen;
  for (unsigned mask = 0; mask < (1u << cells); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != basis) continue;
    chosen.clear();
    for (std::size_t c = 0; c < cells; ++c) {
      if (mask & (1u << c)) chosen.push_back(c);
    }
    if (!tree_flow(m, n, chosen, mu.weights(), nu.weights(), flow)) continue;
    bool feasible = true;
    double value = 0.0;
    for (std::size_t c : chosen) {
      if (flow[c] < -1e-12) {
        feasible = false;
        break;
      }
      value += std::max(flow[c], 0.0) * cost[c];
    }
    if (feasible && value < best) best = value;
  }
  if (!std::isfinite(best)) throw Error("oracle_wasserstein1: no feasible basis");
  return best;
}

}  // namespace thicken
