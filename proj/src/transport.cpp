#include "thicken/transport.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "thicken/errors.hpp"
#include "thicken/text.hpp"

namespace thicken {

namespace {

constexpr double kClampWeight = 1e-14;
constexpr double kSumDrift = 1e-10;
constexpr double kMarginalTol = 1e-10;

}  // namespace

Measure::Measure(std::vector<Point> support, std::vector<double> weights)
    : support_(std::move(support)), weights_(std::move(weights)) {
  normalize_and_check();
  for (std::size_t i = 0; i < support_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (!distinct(support_[i], support_[j])) {
        throw InvalidArgument("measure support points must be distinct: " + support_[i].str());
      }
    }
  }
}

Measure Measure::merged(std::vector<Point> support, std::vector<double> weights) {
  if (support.size() != weights.size()) throw InvalidArgument("measure: support and weights differ in length");
  Measure m;
  for (std::size_t i = 0; i < support.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < m.support_.size(); ++j) {
      if (!distinct(support[i], m.support_[j])) {
        m.weights_[j] += weights[i];
        found = true;
        break;
      }
    }
    if (!found) {
      m.support_.push_back(std::move(support[i]));
      m.weights_.push_back(weights[i]);
    }
  }
  m.normalize_and_check();
  return m;
}

Measure Measure::dirac(Point x) { return Measure({std::move(x)}, {1.0}); }

void Measure::normalize_and_check() {
  if (support_.size() != weights_.size()) throw InvalidArgument("measure: support and weights differ in length");
  if (support_.empty()) throw InvalidArgument("measure: empty support");
  for (const Point& p : support_) require_same_dim(support_.front(), p);
  double total = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < -1e-12) throw InvalidArgument("measure: negative or non-finite weight");
    total += w;
  }
  if (std::abs(total - 1.0) > kSumDrift) {
    throw InvalidArgument("measure: weights sum to " + format_real(total) + ", not 1");
  }
  std::size_t keep = 0;
  double kept = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] < kClampWeight) continue;
    if (keep != i) {
      support_[keep] = std::move(support_[i]);
      weights_[keep] = weights_[i];
    }
    kept += weights_[i];
    ++keep;
  }
  if (keep == 0) throw InvalidArgument("measure: no atom of positive weight");
  support_.resize(keep);
  weights_.resize(keep);
  for (double& w : weights_) w /= kept;
}

Measure Measure::translated(const Point& v) const {
  Measure m = *this;
  for (Point& p : m.support_) p += v;
  return m;
}

TransportPlan::TransportPlan(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}

TransportPlan::TransportPlan(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) throw InvalidArgument("transport plan: wrong number of entries");
}

void TransportPlan::check_marginals(const Measure& mu, const Measure& nu) const {
  if (rows_ != mu.size() || cols_ != nu.size()) throw DimensionMismatch("transport plan shape does not match measures");
  for (double e : entries_) {
    if (!(e >= -kMarginalTol)) throw InvalidArgument("transport plan has a negative entry");
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j);
    if (std::abs(s - mu.weights()[i]) > kMarginalTol) throw InvalidArgument("transport plan row marginal mismatch");
  }
  for (std::size_t j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, j);
    if (std::abs(s - nu.weights()[j]) > kMarginalTol) throw InvalidArgument("transport plan column marginal mismatch");
  }
}

double plan_cost(const TransportPlan& plan, const Measure& mu, const Measure& nu) {
  require_same_dim(mu.support().front(), nu.support().front());
  plan.check_marginals(mu, nu);
  double cost = 0.0;
  for (std::size_t i = 0; i < plan.rows(); ++i) {
    for (std::size_t j = 0; j < plan.cols(); ++j) cost += plan(i, j) * distance(mu.support()[i], nu.support()[j]);
  }
  return cost;
}

namespace {

// Transportation simplex on a spanning tree of basic cells. Pivots follow
// Bland's rule (first improving cell in index order, lowest-index leaving
// cell among ties), which rules out cycling on degenerate bases.
class NetworkSimplex {
 public:
  NetworkSimplex(const std::vector<double>& supply, const std::vector<double>& demand, std::vector<double> cost)
      : m_(supply.size()), n_(demand.size()), cost_(std::move(cost)), flow_(m_ * n_, 0.0), basic_(m_ * n_, false) {
    // Northwest corner: m + n - 1 basic cells, some possibly at zero flow.
    std::vector<double> a = supply;
    std::vector<double> b = demand;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < m_ && j < n_) {
      const double q = std::min(a[i], b[j]);
      flow_[i * n_ + j] = q;
      basic_[i * n_ + j] = true;
      a[i] -= q;
      b[j] -= q;
      if (i + 1 == m_) {
        ++j;
      } else if (j + 1 == n_) {
        ++i;
      } else if (a[i] <= b[j]) {
        ++i;
      } else {
        ++j;
      }
    }
    double cmax = 0.0;
    for (double c : cost_) cmax = std::max(cmax, c);
    eps_ = 1e-12 * std::max(cmax, 1e-300);
  }

  void run() {
    const std::size_t cap = 100000 + 100 * m_ * n_;
    for (std::size_t iter = 0; iter < cap; ++iter) {
      potentials();
      std::size_t enter = npos;
      for (std::size_t c = 0; c < m_ * n_; ++c) {
        if (basic_[c]) continue;
        if (cost_[c] - u_[c / n_] - v_[c % n_] < -eps_) {
          enter = c;
          break;
        }
      }
      if (enter == npos) return;
      pivot(enter);
    }
    throw Error("network simplex: iteration cap reached");
  }

  const std::vector<double>& flow() const { return flow_; }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  // Tree nodes: rows 0..m-1, columns m..m+n-1.
  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(m_ + n_);
    for (std::size_t c = 0; c < m_ * n_; ++c) {
      if (!basic_[c]) continue;
      adj[c / n_].push_back(c);
      adj[m_ + c % n_].push_back(c);
    }
    return adj;
  }

  static std::size_t other_end(std::size_t node, std::size_t cell, std::size_t m, std::size_t n) {
    return node < m ? m + cell % n : cell / n;
  }

  void potentials() {
    u_.assign(m_, 0.0);
    v_.assign(n_, 0.0);
    const auto adj = adjacency();
    std::vector<bool> seen(m_ + n_, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const std::size_t node = stack.back();
      stack.pop_back();
      for (std::size_t c : adj[node]) {
        const std::size_t next = other_end(node, c, m_, n_);
        if (seen[next]) continue;
        seen[next] = true;
        if (next >= m_) {
          v_[next - m_] = cost_[c] - u_[c / n_];
        } else {
          u_[next] = cost_[c] - v_[c % n_];
        }
        stack.push_back(next);
      }
    }
  }

  void pivot(std::size_t enter) {
    const auto adj = adjacency();
    const std::size_t start = enter / n_;
    const std::size_t goal = m_ + enter % n_;
    // Tree path start -> goal.
    std::vector<std::size_t> via(m_ + n_, npos);
    std::vector<bool> seen(m_ + n_, false);
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      const std::size_t node = stack.back();
      stack.pop_back();
      if (node == goal) break;
      for (std::size_t c : adj[node]) {
        const std::size_t next = other_end(node, c, m_, n_);
        if (seen[next]) continue;
        seen[next] = true;
        via[next] = c;
        stack.push_back(next);
      }
    }
    std::vector<std::size_t> path;
    for (std::size_t node = goal; node != start;) {
      const std::size_t c = via[node];
      path.push_back(c);
      node = other_end(node, c, m_, n_);
    }
    std::reverse(path.begin(), path.end());
    // Cells alternate -, +, -, ... starting next to the entering row.
    std::size_t leave = npos;
    double theta = 0.0;
    for (std::size_t k = 0; k < path.size(); k += 2) {
      const std::size_t c = path[k];
      if (leave == npos || flow_[c] < theta || (flow_[c] == theta && c < leave)) {
        leave = c;
        theta = flow_[c];
      }
    }
    theta = std::max(theta, 0.0);
    flow_[enter] = theta;
    for (std::size_t k = 0; k < path.size(); ++k) {
      double& f = flow_[path[k]];
      f += (k % 2 == 0) ? -theta : theta;
      if (f < 0.0) f = 0.0;
    }
    flow_[leave] = 0.0;
    basic_[enter] = true;
    basic_[leave] = false;
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<double> cost_;
  std::vector<double> flow_;
  std::vector<bool> basic_;
  std::vector<double> u_;
  std::vector<double> v_;
  double eps_ = 0.0;
};

}  // namespace

TransportResult wasserstein1(const Measure& mu, const Measure& nu) {
  require_same_dim(mu.support().front(), nu.support().front());
  const std::size_t m = mu.size();
  const std::size_t n = nu.size();
  std::vector<double> cost(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[i * n + j] = distance(mu.support()[i], nu.support()[j]);
  }
  NetworkSimplex solver(mu.weights(), nu.weights(), cost);
  solver.run();
  TransportResult result;
  result.plan = TransportPlan(m, n, solver.flow());
  for (std::size_t c = 0; c < m * n; ++c) result.value += solver.flow()[c] * cost[c];
  return result;
}

Measure read_measure(std::istream& in) {
  std::vector<Point> support;
  std::vector<double> weights;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() < 2) throw InvalidArgument("measure line " + std::to_string(lineno) + ": need weight and coordinates");
    weights.push_back(parse_real(tokens[0], "weight"));
    std::vector<double> coords;
    for (std::size_t k = 1; k < tokens.size(); ++k) coords.push_back(parse_real(tokens[k], "coordinate"));
    support.emplace_back(std::move(coords));
  }
  return Measure(std::move(support), std::move(weights));
}

void write_measure(std::ostream& out, const Measure& mu) {
  for (std::size_t i = 0; i < mu.size(); ++i) {
    out << format_real(mu.weights()[i]);
    for (double c : mu.support()[i].coords()) out << ' ' << format_real(c);
    out << '\n';
  }
}

void write_transport_csv(std::ostream& out, const TransportResult& result) {
  out << "kind,i,j,value\n";
  out << "total,,," << format_real(result.value) << '\n';
  for (std::size_t i = 0; i < result.plan.rows(); ++i) {
    for (std::size_t j = 0; j < result.plan.cols(); ++j) {
      if (result.plan(i, j) > 0.0) out << "plan," << i << ',' << j << ',' << format_real(result.plan(i, j)) << '\n';
    }
  }
}

}  // namespace thicken
