#include "thicken/complexes.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "thicken/errors.hpp"
#include "thicken/text.hpp"

namespace thicken {

std::string_view flavor_name(Flavor flavor) {
  switch (flavor) {
    case Flavor::VietorisRips:
      return "vr";
    case Flavor::CechAmbient:
      return "cech-ambient";
    case Flavor::CechIntrinsic:
      return "cech-intrinsic";
  }
  return "unknown";
}

Flavor parse_flavor(std::string_view text) {
  if (text == "vr" || text == "vietoris-rips") return Flavor::VietorisRips;
  if (text == "cech-ambient" || text == "cech") return Flavor::CechAmbient;
  if (text == "cech-intrinsic") return Flavor::CechIntrinsic;
  throw InvalidArgument("unknown flavor '" + std::string(text) + "'");
}

Simplex::Simplex(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw InvalidArgument("simplex must have at least one vertex");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    require_same_dim(vertices_[0], vertices_[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (!distinct(vertices_[i], vertices_[j])) {
        throw InvalidArgument("simplex vertices must be pairwise distinct: " + vertices_[i].str());
      }
    }
  }
}

ComplexSpec::ComplexSpec(Flavor flavor_, double scale_, bool strict_, std::shared_ptr<const Shape> shape_,
                         std::shared_ptr<const std::vector<Point>> witnesses_, Tolerances tol_)
    : flavor(flavor_),
      scale(scale_),
      strict(strict_),
      shape(std::move(shape_)),
      witnesses(std::move(witnesses_)),
      tol(tol_) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InvalidArgument("complex scale must be positive");
  if (flavor == Flavor::CechIntrinsic && !shape) {
    throw InvalidArgument("intrinsic Cech complex requires a shape");
  }
}

ComplexSpec ComplexSpec::at_scale(double r) const {
  return ComplexSpec(flavor, r, strict, shape, witnesses, tol);
}

bool ComplexSpec::compatible(const ComplexSpec& other) const {
  return flavor == other.flavor && scale == other.scale && strict == other.strict && shape == other.shape;
}

std::string ComplexSpec::str() const {
  std::string out(flavor_name(flavor));
  out += strict ? "<" : "<=";
  out += " r=" + format_real(scale);
  if (shape) out += " on " + shape->name();
  return out;
}

bool banded_compare(double value, double threshold, bool strict, double rel_tol, std::string_view what) {
  const double band = rel_tol * threshold;
  if (strict) {
    if (value < threshold - band) return true;
    if (value >= threshold) return false;
  } else {
    if (value <= threshold) return true;
    if (value > threshold + band) return false;
  }
  throw AmbiguousPredicate(std::string(what) + " " + format_real(value) + " within tolerance of threshold " +
                           format_real(threshold));
}

bool is_vr_simplex(const Simplex& s, const ComplexSpec& spec) {
  if (spec.flavor != Flavor::VietorisRips) throw InvalidArgument("is_vr_simplex: spec flavor is not vr");
  return banded_compare(diameter(s.vertices()), spec.scale, spec.strict, spec.tol.geo, "diameter");
}

bool is_cech_simplex_ambient(const Simplex& s, const ComplexSpec& spec) {
  if (spec.flavor != Flavor::CechAmbient) throw InvalidArgument("is_cech_simplex_ambient: spec flavor is not cech-ambient");
  const MinBallResult ball = min_enclosing_ball(s.vertices());
  return banded_compare(ball.radius, 0.5 * spec.scale, spec.strict, spec.tol.geo, "enclosing radius");
}

bool is_cech_simplex_intrinsic(const Simplex& s, const ComplexSpec& spec, std::span<const Point> witnesses) {
  if (spec.flavor != Flavor::CechIntrinsic) {
    throw InvalidArgument("is_cech_simplex_intrinsic: spec flavor is not cech-intrinsic");
  }
  const double half = 0.5 * spec.scale;
  const auto& verts = s.vertices();
  bool ambiguous = false;
  std::string ambiguous_what;
  // Definitively true for one candidate wins; an undecided candidate only
  // matters when no candidate succeeds.
  auto try_center = [&](const Point& c) {
    if (c.dim() != s.ambient_dim()) throw DimensionMismatch("witness dimension does not match simplex");
    double reach_out = 0.0;
    for (const Point& v : verts) reach_out = std::max(reach_out, distance(v, c));
    try {
      return banded_compare(reach_out, half, spec.strict, spec.tol.geo, "witness radius");
    } catch (const AmbiguousPredicate& e) {
      ambiguous = true;
      ambiguous_what = e.what();
      return false;
    }
  };

  for (const Point& v : verts) {
    if (try_center(v)) return true;
  }
  for (const Point& w : witnesses) {
    if (try_center(w)) return true;
  }
  const MinBallResult ball = min_enclosing_ball(verts);
  try {
    if (try_center(spec.shape->project(ball.center, spec.tol))) return true;
  } catch (const MedialAxisProximity&) {
    // Candidate unavailable.
  }
  if (ambiguous) throw AmbiguousPredicate(ambiguous_what);
  return false;
}

bool is_simplex(const Simplex& s, const ComplexSpec& spec) {
  switch (spec.flavor) {
    case Flavor::VietorisRips:
      return is_vr_simplex(s, spec);
    case Flavor::CechAmbient:
      return is_cech_simplex_ambient(s, spec);
    case Flavor::CechIntrinsic: {
      static const std::vector<Point> none;
      return is_cech_simplex_intrinsic(s, spec, spec.witnesses ? *spec.witnesses : none);
    }
  }
  return false;
}

namespace {

Simplex gather(const std::vector<Point>& points, const IndexSimplex& idx) {
  std::vector<Point> verts;
  verts.reserve(idx.size());
  for (std::size_t i : idx) verts.push_back(points[i]);
  return Simplex(std::move(verts));
}

}  // namespace

std::vector<IndexSimplex> enumerate_skeleton(const std::vector<Point>& points, const ComplexSpec& spec,
                                             std::size_t max_dim) {
  if (max_dim > kMaxSkeletonDim) throw SizeLimitExceeded("skeleton dimension above 6");
  const bool vr = spec.flavor == Flavor::VietorisRips;
  const std::size_t limit = vr ? kMaxVrPoints : kMaxCechPoints;
  if (points.size() > limit) throw SizeLimitExceeded("too many points for skeleton enumeration");
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_same_dim(points[0], points[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (!distinct(points[i], points[j])) throw InvalidArgument("skeleton points must be distinct");
    }
  }

  const std::size_t n = points.size();
  // 1-skeleton. For Cech flavors this is the enclosing VR graph (pairs with
  // d <= r up to the band), which every Cech simplex's edges lie in.
  std::vector<std::vector<std::size_t>> up(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance(points[i], points[j]);
      const bool edge = vr ? banded_compare(d, spec.scale, spec.strict, spec.tol.geo, "edge length")
                           : d <= spec.scale * (1.0 + spec.tol.geo);
      if (edge) up[i].push_back(j);
    }
  }

  std::vector<std::vector<IndexSimplex>> by_dim(max_dim + 1);
  IndexSimplex current;
  // Extends `current` by vertices of `cand`, all adjacent to every vertex of
  // `current` and larger than its last vertex.
  auto expand = [&](auto&& self, const std::vector<std::size_t>& cand) -> void {
    by_dim[current.size() - 1].push_back(current);
    if (current.size() == max_dim + 1) return;
    for (std::size_t a = 0; a < cand.size(); ++a) {
      const std::size_t v = cand[a];
      current.push_back(v);
      const bool ok = vr || current.size() <= 1 || is_simplex(gather(points, current), spec);
      if (ok) {
        std::vector<std::size_t> next;
        for (std::size_t b = a + 1; b < cand.size(); ++b) {
          if (std::binary_search(up[v].begin(), up[v].end(), cand[b])) next.push_back(cand[b]);
        }
        self(self, next);
      }
      current.pop_back();
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    current.assign(1, v);
    expand(expand, up[v]);
  }

  std::vector<IndexSimplex> out;
  for (auto& layer : by_dim) {
    std::sort(layer.begin(), layer.end());
    for (auto& s : layer) out.push_back(std::move(s));
  }
  return out;
}

void write_skeleton(std::ostream& out, const std::vector<IndexSimplex>& simplices, const ComplexSpec& spec,
                    std::size_t max_dim) {
  out << "dim " << max_dim << " scale " << format_real(spec.scale) << " flavor " << flavor_name(spec.flavor)
      << " strict " << (spec.strict ? 1 : 0) << '\n';
  for (const IndexSimplex& s : simplices) {
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
    out << '\n';
  }
}

std::vector<Point> read_points(std::istream& in) {
  std::vector<Point> points;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    std::vector<double> coords;
    for (const auto& t : tokens) coords.push_back(parse_real(t, "coordinate"));
    if (!points.empty() && coords.size() != points.front().dim()) {
      throw DimensionMismatch("points line " + std::to_string(lineno) + ": expected " +
                              std::to_string(points.front().dim()) + " coordinates");
    }
    points.emplace_back(std::move(coords));
  }
  return points;
}

}  // namespace thicken
