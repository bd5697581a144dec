#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thicken/euclid.hpp"
#include "thicken/shapes.hpp"

namespace thicken {

enum class Flavor { VietorisRips, CechAmbient, CechIntrinsic };

// "vr", "cech-ambient", "cech-intrinsic".
std::string_view flavor_name(Flavor flavor);
Flavor parse_flavor(std::string_view text);

// A nonempty set of pairwise distinct points of one dimension, kept in the
// order given.
class Simplex {
 public:
  explicit Simplex(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  std::size_t dim() const noexcept { return vertices_.size() - 1; }
  std::size_t ambient_dim() const noexcept { return vertices_.front().dim(); }

 private:
  std::vector<Point> vertices_;
};

// Predicate context: flavor, scale r > 0, strict (<) or non-strict (<=).
// The shape is required for the intrinsic flavor; `witnesses`, when set,
// are the candidate centres on the shape used by intrinsic checks that are
// not handed an explicit witness list.
struct ComplexSpec {
  Flavor flavor = Flavor::VietorisRips;
  double scale = 1.0;
  bool strict = false;
  std::shared_ptr<const Shape> shape;
  std::shared_ptr<const std::vector<Point>> witnesses;
  Tolerances tol;

  ComplexSpec() = default;
  ComplexSpec(Flavor flavor, double scale, bool strict, std::shared_ptr<const Shape> shape = nullptr,
              std::shared_ptr<const std::vector<Point>> witnesses = nullptr, Tolerances tol = {});

  // Same context at another scale.
  ComplexSpec at_scale(double r) const;
  // Equal flavor, scale, strictness and shape identity.
  bool compatible(const ComplexSpec& other) const;
  std::string str() const;
};

struct MinBallResult {
  Point center;
  double radius = 0.0;
};

// Three-valued threshold test with the tolerance band: `value <= threshold`
// (or `<` when strict). Raises AmbiguousPredicate inside the band of width
// rel_tol * threshold on the undecided side.
bool banded_compare(double value, double threshold, bool strict, double rel_tol, std::string_view what);

bool is_vr_simplex(const Simplex& s, const ComplexSpec& spec);

// Smallest enclosing ball; ambient dimension at most 10.
MinBallResult min_enclosing_ball(std::span<const Point> points);

bool is_cech_simplex_ambient(const Simplex& s, const ComplexSpec& spec);

// Some candidate centre on the shape (each witness, the projection of the
// enclosing-ball centre when defined, each vertex) has every vertex within
// r/2.
bool is_cech_simplex_intrinsic(const Simplex& s, const ComplexSpec& spec, std::span<const Point> witnesses);

// Dispatches on spec.flavor; the intrinsic flavor uses spec.witnesses.
bool is_simplex(const Simplex& s, const ComplexSpec& spec);

// Simplex as sorted vertex indices into the enumerated point list.
using IndexSimplex = std::vector<std::size_t>;

inline constexpr std::size_t kMaxSkeletonDim = 6;
inline constexpr std::size_t kMaxVrPoints = 2000;
inline constexpr std::size_t kMaxCechPoints = 300;

// All simplices of dimension <= max_dim, ordered by dimension and then
// lexicographically by index.
std::vector<IndexSimplex> enumerate_skeleton(const std::vector<Point>& points, const ComplexSpec& spec,
                                             std::size_t max_dim);

// Header `dim <max_dim> scale <r> flavor <flavor> strict <0|1>` followed by
// one simplex per line as space-separated indices.
void write_skeleton(std::ostream& out, const std::vector<IndexSimplex>& simplices, const ComplexSpec& spec,
                    std::size_t max_dim);

// One point per line as whitespace-separated coordinates; '#' starts a
// comment. All points must share a dimension.
std::vector<Point> read_points(std::istream& in);

}  // namespace thicken
