// Grid-scan estimate of the reach, independent of the closed-form reach and
// projection code. The shape is replaced by a dense parametric sample S and
// the medial axis of X by the points where the nearest sample of S jumps
// between two far-apart samples. Two candidate sources are combined:
//
//  * grid edges whose endpoints have far-apart nearest samples are bisected
//    down to the exact switch point (catches codimension-one medial sheets,
//    including the ends of an ellipse's medial segment);
//  * grid points are pushed uphill on d(., S) until the distance stops
//    increasing; a local maximum of the distance lies on the medial axis
//    (catches isolated points and codimension-two pieces such as the core
//    circle of a torus). Ascents that leave the box are discarded.
//
// The estimate is the smallest distance from a candidate to S. Since S is a
// subset of X, every distance is an upper bound of the distance to X.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <variant>

#include "kdtree.hpp"
#include "thicken/errors.hpp"
#include "thicken/shapes.hpp"

namespace thicken {

namespace {

using Vec = std::array<double, 3>;

std::size_t intrinsic_dim(const Shape& shape) {
  const auto& kind = shape.kind();
  if (std::holds_alternative<Circle>(kind) || std::holds_alternative<Ellipse>(kind)) return 1;
  if (const auto* s = std::get_if<Sphere>(&kind)) return s->dim - 1;
  if (std::holds_alternative<Torus>(kind)) return 2;
  return 0;
}

struct Scan {
  const detail::KdTree& tree;
  std::size_t dim;

  std::span<const double> view(const Vec& v) const { return {v.data(), dim}; }

  detail::KdTree::Hit nearest(const Vec& v) const { return tree.nearest(view(v)); }

  double sample_gap(std::size_t i, std::size_t j) const {
    const double* a = tree.coords(i);
    const double* b = tree.coords(j);
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(s);
  }

  double dist_to_sample(const Vec& v, std::size_t i) const {
    const double* a = tree.coords(i);
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) s += (v[k] - a[k]) * (v[k] - a[k]);
    return std::sqrt(s);
  }
};

Vec lerp(const Vec& a, const Vec& b, double t) {
  Vec out{};
  for (std::size_t k = 0; k < 3; ++k) out[k] = a[k] + t * (b[k] - a[k]);
  return out;
}

// Point of segment [a, b] equidistant from samples i and j.
Vec bisector_crossing(const Scan& scan, const Vec& a, const Vec& b, std::size_t i, std::size_t j) {
  const double* si = scan.tree.coords(i);
  const double* sj = scan.tree.coords(j);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < scan.dim; ++k) {
    const double diff = sj[k] - si[k];
    num += (sj[k] * sj[k] - si[k] * si[k]) - 2.0 * a[k] * diff;
    den += 2.0 * (b[k] - a[k]) * diff;
  }
  const double t = den != 0.0 ? std::clamp(num / den, 0.0, 1.0) : 0.5;
  return lerp(a, b, t);
}

}  // namespace

double estimate_reach(const Shape& shape, std::size_t grid_density) {
  const std::size_t dim = shape.ambient_dim();
  if (dim > 3) throw InvalidArgument("estimate_reach: ambient dimension must be <= 3");
  if (grid_density < 2) throw InvalidArgument("estimate_reach: grid density must be >= 2");

  const std::size_t idim = intrinsic_dim(shape);
  const std::size_t resolution = idim <= 1 ? 40 * grid_density : 8 * grid_density;
  const std::vector<Point> samples = shape.parametric_samples(resolution);
  const detail::KdTree tree(samples);
  const Scan scan{tree, dim};

  Vec lo{}, hi{};
  for (std::size_t k = 0; k < dim; ++k) {
    lo[k] = std::numeric_limits<double>::infinity();
    hi[k] = -std::numeric_limits<double>::infinity();
  }
  for (const Point& p : samples) {
    for (std::size_t k = 0; k < dim; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  double extent = 0.0;
  for (std::size_t k = 0; k < dim; ++k) extent = std::max(extent, hi[k] - lo[k]);
  const double margin = 0.1 * extent;

  // Samples closer than `sep` are treated as neighbours on X, not as two
  // distinct nearest points.
  double sep = 0.0;
  double spacing = 0.0;
  if (idim == 0) {
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      min_gap = std::min(min_gap, std::sqrt(tree.nearest(samples[i].coords(), i).dist2));
    }
    sep = 0.5 * min_gap;
  } else {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      spacing = std::max(spacing, std::sqrt(tree.nearest(samples[i].coords(), i).dist2));
    }
    sep = std::max(6.0 * spacing, 0.0125 * extent);
  }

  std::array<std::size_t, 3> counts{1, 1, 1};
  Vec step{};
  Vec origin{};
  double h_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < dim; ++k) {
    counts[k] = grid_density;
    origin[k] = lo[k] - margin;
    step[k] = (hi[k] - lo[k] + 2.0 * margin) / static_cast<double>(grid_density - 1);
    h_min = std::min(h_min, step[k]);
  }
  auto grid_point = [&](std::size_t gi, std::size_t gj, std::size_t gk) {
    Vec v{};
    const std::array<std::size_t, 3> idx{gi, gj, gk};
    for (std::size_t k = 0; k < dim; ++k) v[k] = origin[k] + step[k] * static_cast<double>(idx[k]);
    return v;
  };
  auto inside_box = [&](const Vec& v) {
    for (std::size_t k = 0; k < dim; ++k) {
      if (v[k] < origin[k] - 1e-12 || v[k] > origin[k] + step[k] * static_cast<double>(counts[k] - 1) + 1e-12) {
        return false;
      }
    }
    return true;
  };

  const std::size_t total = counts[0] * counts[1] * counts[2];
  std::vector<std::size_t> nearest(total);
  std::vector<double> nearest_d(total);
  auto flat = [&](std::size_t gi, std::size_t gj, std::size_t gk) {
    return (gi * counts[1] + gj) * counts[2] + gk;
  };
  for (std::size_t gi = 0; gi < counts[0]; ++gi) {
    for (std::size_t gj = 0; gj < counts[1]; ++gj) {
      for (std::size_t gk = 0; gk < counts[2]; ++gk) {
        const auto hit = scan.nearest(grid_point(gi, gj, gk));
        nearest[flat(gi, gj, gk)] = hit.index;
        nearest_d[flat(gi, gj, gk)] = std::sqrt(hit.dist2);
      }
    }
  }

  double best = std::numeric_limits<double>::infinity();
  const double tie_tol = 1e-9 * std::max(1.0, extent);

  // Edge bisection.
  for (std::size_t gi = 0; gi < counts[0]; ++gi) {
    for (std::size_t gj = 0; gj < counts[1]; ++gj) {
      for (std::size_t gk = 0; gk < counts[2]; ++gk) {
        const std::array<std::size_t, 3> here{gi, gj, gk};
        for (std::size_t axis = 0; axis < dim; ++axis) {
          if (here[axis] + 1 >= counts[axis]) continue;
          auto there = here;
          ++there[axis];
          std::size_t ia = nearest[flat(here[0], here[1], here[2])];
          std::size_t ib = nearest[flat(there[0], there[1], there[2])];
          if (ia == ib || scan.sample_gap(ia, ib) < sep) continue;
          Vec pa = grid_point(here[0], here[1], here[2]);
          Vec pb = grid_point(there[0], there[1], there[2]);
          bool ok = true;
          for (int iter = 0; iter < 64; ++iter) {
            const Vec mid = lerp(pa, pb, 0.5);
            const std::size_t im = scan.nearest(mid).index;
            if (im == ia) {
              pa = mid;
            } else if (im == ib) {
              pb = mid;
            } else if (scan.sample_gap(im, ia) >= sep) {
              pb = mid;
              ib = im;
            } else if (scan.sample_gap(im, ib) >= sep) {
              pa = mid;
              ia = im;
            } else {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          const Vec z = bisector_crossing(scan, pa, pb, ia, ib);
          const double dz = std::sqrt(scan.nearest(z).dist2);
          if (scan.dist_to_sample(z, ia) - dz <= tie_tol && scan.dist_to_sample(z, ib) - dz <= tie_tol) {
            best = std::min(best, dz);
          }
        }
      }
    }
  }

  // Ascent. Within a few sample spacings of S the nearest sample no
  // longer resolves the normal direction, so those grid points are skipped.
  const double floor_d = 2.0 * spacing;
  for (std::size_t gi = 0; gi < counts[0]; ++gi) {
    for (std::size_t gj = 0; gj < counts[1]; ++gj) {
      for (std::size_t gk = 0; gk < counts[2]; ++gk) {
        const Vec y = grid_point(gi, gj, gk);
        const std::size_t s1 = nearest[flat(gi, gj, gk)];
        const double d1 = nearest_d[flat(gi, gj, gk)];
        if (d1 <= floor_d || d1 >= best) continue;

        Vec z = y;
        double dz = d1;
        std::size_t sz = s1;
        double eta = h_min;
        bool discard = false;
        for (int iter = 0; iter < 2000 && eta > 1e-7 * extent; ++iter) {
          const double* cz = tree.coords(sz);
          Vec trial = z;
          for (std::size_t k = 0; k < dim; ++k) trial[k] += eta * (z[k] - cz[k]) / dz;
          if (!inside_box(trial)) {
            discard = true;
            break;
          }
          const auto hit = scan.nearest(trial);
          const double dt = std::sqrt(hit.dist2);
          if (dt > dz) {
            // Cannot lower the estimate by more than a relative 1e-4.
            if (dt >= best * (1.0 - 1e-4)) {
              discard = true;
              break;
            }
            z = trial;
            dz = dt;
            sz = hit.index;
            eta *= 1.5;
          } else {
            eta *= 0.5;
          }
        }
        if (!discard) best = std::min(best, dz);
      }
    }
  }

  if (!std::isfinite(best)) throw Error("estimate_reach: no medial-axis candidates found");
  return best;
}

}  // namespace thicken
