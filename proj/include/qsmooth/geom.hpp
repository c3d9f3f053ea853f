#pragma once
// Global checks for hypersurfaces in projective spaces, products of them and
// weighted projective spaces: singular loci, fixed points of diagonal cyclic
// actions, smoothing families and the Reid-Tai test for cyclic quotients.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsmooth/equiv.hpp"

namespace qsmooth::geom {

using equiv::CyclicAction;
using gb::GbOptions;
using poly::Polynomial;
using poly::Rational;

class AmbientSpace {
 public:
  enum class Kind { Projective, Product, Weighted };

  static AmbientSpace projective(std::size_t n);
  // At least two factors P^{n_k}.
  static AmbientSpace product(std::vector<std::size_t> dims);
  // P(w_0, ..., w_n), all weights positive.
  static AmbientSpace weighted(std::vector<long> weights);

  Kind kind() const { return kind_; }
  std::size_t coordinates() const { return weights_.size(); }
  std::size_t factors() const { return begins_.size(); }
  // Coordinate indices [first, second) of factor k.
  std::pair<std::size_t, std::size_t> factor_range(std::size_t k) const;
  std::size_t factor_of(std::size_t coordinate) const;
  long weight(std::size_t coordinate) const { return weights_.at(coordinate); }
  std::size_t dimension() const { return coordinates() - factors(); }
  std::string to_string() const;

 private:
  AmbientSpace(Kind kind, std::vector<std::size_t> begins, std::vector<long> weights)
      : kind_(kind), begins_(std::move(begins)), weights_(std::move(weights)) {}
  Kind kind_;
  std::vector<std::size_t> begins_;
  std::vector<long> weights_;
};

// Per-factor weighted degree; empty if F is zero or not (multi-)homogeneous.
std::optional<std::vector<long>> multidegree(const AmbientSpace& ambient, const Polynomial& f);

class HomogeneityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class HypersurfaceScheme {
 public:
  // Throws HomogeneityError unless F is (multi-)homogeneous, and
  // std::invalid_argument on arity mismatch.
  HypersurfaceScheme(AmbientSpace ambient, Polynomial f, std::vector<std::string> names = {});

  const AmbientSpace& ambient() const { return ambient_; }
  const Polynomial& F() const { return f_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<long>& degree() const { return degree_; }

 private:
  AmbientSpace ambient_;
  Polynomial f_;
  std::vector<std::string> names_;
  std::vector<long> degree_;
};

// Homogeneous coordinates, factors concatenated.
using Point = std::vector<Rational>;

// Whether every factor has exactly one nonzero entry.
bool is_coordinate_point(const AmbientSpace& ambient, const Point& p);
std::string point_label(const AmbientSpace& ambient, const Point& p);

// One coordinate per factor set to 1; the rest are affine coordinates.
struct Chart {
  std::vector<std::size_t> at;           // one per factor
  std::vector<std::size_t> coordinates;  // the others, ascending
  std::string label(const std::vector<std::string>& names) const;
};

std::vector<Chart> charts(const AmbientSpace& ambient);
// The chart containing p: first nonzero coordinate of each factor.
Chart chart_of(const AmbientSpace& ambient, const Point& p);
// F with the chart coordinates set to 1, in chart.coordinates.size() variables.
Polynomial dehomogenize(const Polynomial& f, const Chart& chart);
// Lower-cased names of the affine coordinates.
std::vector<std::string> chart_names(const std::vector<std::string>& names, const Chart& chart);
// Induced weights a_j - w_j a_{b} on the affine coordinates (b the chart
// coordinate of j's factor), as an action of the same order.
CyclicAction chart_action(const AmbientSpace& ambient, const CyclicAction& action, const Chart& chart);
// Character of the dehomogenized F under chart_action.
long chart_character(const HypersurfaceScheme& scheme, const CyclicAction& action, const Chart& chart);

struct ChartCertificate {
  std::string chart;
  std::size_t basis_size = 0;
  // Distinct singular points in the chart; empty if not zero-dimensional.
  std::optional<std::size_t> points;
  std::size_t claimed = 0;
  bool ok = false;
};

struct SingularLocusVerdict {
  bool verified = false;
  std::vector<ChartCertificate> charts;
  std::vector<std::string> problems;
};

// Verifies that the singular points of the scheme are exactly the claimed
// coordinate points: each claimed point is singular, and in every chart the
// singular ideal is zero-dimensional with as many distinct points as claims.
// Throws std::invalid_argument if a claim is not a coordinate point or not on
// the scheme.
SingularLocusVerdict singular_locus_check(const HypersurfaceScheme& scheme, const std::vector<Point>& claimed,
                                          const GbOptions& options = {});

struct FixedSubspace {
  // Twist per factor: the lift scales factor k by eta^{lift[k]}, eta a
  // primitive (r L_k)-th root of unity, L_k the lcm of the factor's weights.
  std::vector<long> lift;
  // Coordinates allowed to be nonzero.
  std::vector<std::size_t> coordinates;
  std::size_t dimension(const AmbientSpace& ambient) const;
  std::string label(const std::vector<std::string>& names) const;
};

// Coordinate subspaces fixed pointwise by the generator, one per combination
// of per-factor twisted-weight classes, deduplicated.
std::vector<FixedSubspace> fixed_locus(const AmbientSpace& ambient, const CyclicAction& action);

struct FixedPoints {
  FixedSubspace subspace;
  // Points of the scheme on the subspace; empty when positive-dimensional
  // or not decided.
  std::optional<std::size_t> points;
  std::size_t singular = 0;
  // Weights of the tangent action at the smooth points, when decided.
  std::optional<std::vector<long>> tangent_weights;
  std::string detail;
};

// Intersects each fixed subspace of the action with the scheme.
std::vector<FixedPoints> fixed_points(const HypersurfaceScheme& scheme, const CyclicAction& action);

// Terminality of 1/r(a, b, c): sum_i frac(j a_i / r) > 1 for j = 1..r-1.
// Throws std::invalid_argument unless r >= 2, there are three weights and
// none is divisible by r.
bool reid_tai_terminal(long r, const std::vector<long>& weights);

class SmoothingFamily {
 public:
  // Throws HomogeneityError unless the perturbation has F's degree.
  SmoothingFamily(HypersurfaceScheme scheme, Polynomial perturbation);
  const HypersurfaceScheme& scheme() const { return scheme_; }
  const Polynomial& perturbation() const { return perturbation_; }
  // F + s0 P.
  HypersurfaceScheme fiber(const Rational& s0) const;

 private:
  HypersurfaceScheme scheme_;
  Polynomial perturbation_;
};

struct ChartFamilyCertificate {
  std::string chart;
  // Generator of the eliminant of the singular ideal in Q[s], s-power
  // removed; "0" when the generic fiber is singular in this chart.
  std::string eliminant;
  bool generic_smooth = false;
};

struct FamilySmoothingVerdict {
  std::vector<ChartFamilyCertificate> charts;
  // Over Q(s): no chart has singular points for generic s.
  bool generic_fiber_smooth = false;
  // P(p) != 0 at each given singular point p of the central fiber.
  bool total_space_smooth = false;
  // Perturbation character equals F's (only with an action).
  std::optional<bool> perturbation_semi_invariant;
  // Fiber sampled for fixed-point data: least positive integer s0 off all
  // eliminants.
  std::optional<Rational> sample;
  std::vector<FixedPoints> sample_fixed_points;
  // Reid-Tai at each stratum of smooth fixed points on the sample fiber.
  std::vector<bool> sample_terminal;

  bool passed() const;
};

// Throws std::invalid_argument if an action is supplied and the
// perturbation is not semi-invariant of F's character.
FamilySmoothingVerdict family_smoothing_verify(const SmoothingFamily& family,
                                               const std::optional<CyclicAction>& action,
                                               const std::vector<Point>& singular_points,
                                               const GbOptions& options = {});

// Germ of the scheme at a rational point in the chart of that point,
// translated to the origin and minimalized, with the chart action restricted
// to the surviving variables when p is a coordinate point.
struct ChartGerm {
  Chart chart;
  std::vector<std::string> names;
  Polynomial local;  // dehomogenized and translated
  t1::GermPresentation germ;
  std::optional<CyclicAction> action;
};

// Throws std::invalid_argument if p is not on the scheme or its chart
// coordinate has weight > 1.
ChartGerm chart_germ(const HypersurfaceScheme& scheme, const Point& p, const std::optional<CyclicAction>& action);

// Dehomogenizes g in the chart of p and translates p to the origin. Throws
// std::invalid_argument if the chart coordinate has weight > 1.
Polynomial localize(const AmbientSpace& ambient, const Polynomial& g, const Point& p);

}  // namespace qsmooth::geom
