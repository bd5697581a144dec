#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "thicken/euclid.hpp"

namespace thicken {

// Finitely supported probability measure. Support points pairwise distinct,
// weights > 0 summing to one.
class Measure {
 public:
  // Weights below 1e-14 are dropped and the rest renormalized. The input sum
  // may deviate from one by at most 1e-10; weights below -1e-12 are errors.
  // Coincident support points are an error.
  Measure(std::vector<Point> support, std::vector<double> weights);

  // As above, but coincident atoms (to 1e-12) are merged first.
  static Measure merged(std::vector<Point> support, std::vector<double> weights);

  static Measure dirac(Point x);

  const std::vector<Point>& support() const noexcept { return support_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return support_.size(); }
  std::size_t ambient_dim() const noexcept { return support_.front().dim(); }

  // Same atoms moved by v.
  Measure translated(const Point& v) const;

 private:
  Measure() = default;
  void normalize_and_check();

  std::vector<Point> support_;
  std::vector<double> weights_;
};

// Coupling matrix, row i for atom i of mu, column j for atom j of nu.
class TransportPlan {
 public:
  TransportPlan(std::size_t rows, std::size_t cols);
  TransportPlan(std::size_t rows, std::size_t cols, std::vector<double> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  // Throws InvalidArgument unless entries are nonnegative and the marginals
  // match mu and nu within 1e-10.
  void check_marginals(const Measure& mu, const Measure& nu) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
};

// Sum of p[i][j] * d(x_i, y_j) for a plan with matching marginals.
double plan_cost(const TransportPlan& plan, const Measure& mu, const Measure& nu);

struct TransportResult {
  double value = 0.0;
  TransportPlan plan{0, 0};
};

// Exact 1-Wasserstein distance by the network simplex method on the
// complete bipartite graph.
TransportResult wasserstein1(const Measure& mu, const Measure& nu);

// Minimum of the cost over all vertices of the transport polytope by
// exhaustive enumeration of spanning-tree bases. |mu| * |nu| <= 16.
double oracle_wasserstein1(const Measure& mu, const Measure& nu);

// One atom per line: weight followed by coordinates. Blank lines and lines
// starting with '#' are ignored.
Measure read_measure(std::istream& in);
void write_measure(std::ostream& out, const Measure& mu);

// CSV with header kind,i,j,value: one `total` row, then one `plan` row per
// nonzero entry.
void write_transport_csv(std::ostream& out, const TransportResult& result);

}  // namespace thicken
