#include "qsmooth/geom.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "qsmooth/linalg.hpp"

namespace qsmooth::geom {
namespace {

namespace uni = linalg::uni;

long mod(long a, long r) { return ((a % r) + r) % r; }

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("X" + std::to_string(i));
  return out;
}

// Coefficients of g in variable v; g must involve no other variable.
uni::Poly to_univariate(const Polynomial& g, std::size_t v) {
  uni::Poly out;
  for (const auto& t : g.terms()) {
    const unsigned e = t.monomial[v];
    if (t.monomial.degree() != e) throw std::logic_error("to_univariate: stray variable");
    if (out.size() <= e) out.resize(e + 1, 0);
    out[e] += t.coefficient;
  }
  uni::trim(out);
  return out;
}

bool uni_zero(const uni::Poly& p) { return p.empty(); }

std::size_t distinct_roots(const uni::Poly& p) { return uni_zero(p) ? 0 : uni::degree(uni::squarefree_part(p)); }

Polynomial singular_generator(const Polynomial& f, std::size_t i) { return poly::partial_derivative(f, i); }

std::vector<Polynomial> affine_singular_ideal(const Polynomial& f) {
  std::vector<Polynomial> out{f};
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    Polynomial d = singular_generator(f, i);
    if (!d.is_zero()) out.push_back(std::move(d));
  }
  return out;
}

long semi_invariant_character(const Polynomial& f, const CyclicAction& action, const char* what) {
  const auto c = equiv::character_of(f, action);
  if (!c) throw std::domain_error(std::string(what) + " is not semi-invariant under " + action.to_string());
  return c->value;
}

}  // namespace

AmbientSpace AmbientSpace::projective(std::size_t n) {
  if (n == 0) throw std::invalid_argument("projective space of dimension 0");
  return AmbientSpace(Kind::Projective, {0}, std::vector<long>(n + 1, 1));
}

AmbientSpace AmbientSpace::product(std::vector<std::size_t> dims) {
  if (dims.size() < 2) throw std::invalid_argument("product needs at least two factors");
  std::vector<std::size_t> begins;
  std::size_t total = 0;
  for (auto d : dims) {
    if (d == 0) throw std::invalid_argument("product factor of dimension 0");
    begins.push_back(total);
    total += d + 1;
  }
  return AmbientSpace(Kind::Product, std::move(begins), std::vector<long>(total, 1));
}

AmbientSpace AmbientSpace::weighted(std::vector<long> weights) {
  if (weights.size() < 2) throw std::invalid_argument("weighted projective space needs two coordinates");
  for (auto w : weights)
    if (w <= 0) throw std::invalid_argument("weighted projective space: weights must be positive");
  return AmbientSpace(Kind::Weighted, {0}, std::move(weights));
}

std::pair<std::size_t, std::size_t> AmbientSpace::factor_range(std::size_t k) const {
  return {begins_.at(k), k + 1 < begins_.size() ? begins_[k + 1] : coordinates()};
}

std::size_t AmbientSpace::factor_of(std::size_t coordinate) const {
  if (coordinate >= coordinates()) throw std::out_of_range("coordinate index");
  std::size_t k = 0;
  while (k + 1 < begins_.size() && begins_[k + 1] <= coordinate) ++k;
  return k;
}

std::string AmbientSpace::to_string() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Projective: os << "P^" << dimension(); break;
    case Kind::Product:
      for (std::size_t k = 0; k < factors(); ++k) {
        const auto [b, e] = factor_range(k);
        os << (k ? " x " : "") << "P^" << (e - b - 1);
      }
      break;
    case Kind::Weighted:
      os << "P(";
      for (std::size_t i = 0; i < coordinates(); ++i) os << (i ? "," : "") << weights_[i];
      os << ")";
      break;
  }
  return os.str();
}

std::optional<std::vector<long>> multidegree(const AmbientSpace& ambient, const Polynomial& f) {
  if (f.nvars() != ambient.coordinates()) throw std::invalid_argument("multidegree: arity mismatch");
  if (f.is_zero()) return std::nullopt;
  std::optional<std::vector<long>> deg;
  for (const auto& t : f.terms()) {
    std::vector<long> d(ambient.factors(), 0);
    for (std::size_t i = 0; i < ambient.coordinates(); ++i)
      d[ambient.factor_of(i)] += ambient.weight(i) * static_cast<long>(t.monomial[i]);
    if (deg && *deg != d) return std::nullopt;
    deg = std::move(d);
  }
  return deg;
}

HypersurfaceScheme::HypersurfaceScheme(AmbientSpace ambient, Polynomial f, std::vector<std::string> names)
    : ambient_(std::move(ambient)), f_(std::move(f)), names_(std::move(names)) {
  if (f_.nvars() != ambient_.coordinates())
    throw std::invalid_argument("hypersurface: equation has " + std::to_string(f_.nvars()) + " variables, " +
                                ambient_.to_string() + " has " + std::to_string(ambient_.coordinates()) +
                                " coordinates");
  if (names_.empty()) names_ = default_names(f_.nvars());
  if (names_.size() != f_.nvars()) throw std::invalid_argument("hypersurface: name count mismatch");
  auto deg = multidegree(ambient_, f_);
  if (!deg) throw HomogeneityError("equation is not homogeneous on " + ambient_.to_string());
  degree_ = std::move(*deg);
}

bool is_coordinate_point(const AmbientSpace& ambient, const Point& p) {
  if (p.size() != ambient.coordinates()) return false;
  for (std::size_t k = 0; k < ambient.factors(); ++k) {
    const auto [b, e] = ambient.factor_range(k);
    if (std::count_if(p.begin() + static_cast<std::ptrdiff_t>(b), p.begin() + static_cast<std::ptrdiff_t>(e),
                      [](const Rational& x) { return x != 0; }) != 1)
      return false;
  }
  return true;
}

std::string point_label(const AmbientSpace& ambient, const Point& p) {
  std::ostringstream os;
  for (std::size_t k = 0; k < ambient.factors(); ++k) {
    const auto [b, e] = ambient.factor_range(k);
    os << (k ? "x" : "") << "(";
    for (std::size_t i = b; i < e; ++i) os << (i > b ? ":" : "") << p.at(i).get_str();
    os << ")";
  }
  return os.str();
}

std::string Chart::label(const std::vector<std::string>& names) const {
  std::string out;
  for (std::size_t k = 0; k < at.size(); ++k) out += (k ? "," : "") + names.at(at[k]) + "=1";
  return out;
}

std::vector<Chart> charts(const AmbientSpace& ambient) {
  std::vector<Chart> out{Chart{}};
  for (std::size_t k = 0; k < ambient.factors(); ++k) {
    const auto [b, e] = ambient.factor_range(k);
    std::vector<Chart> next;
    for (const auto& c : out)
      for (std::size_t i = b; i < e; ++i) {
        Chart n = c;
        n.at.push_back(i);
        next.push_back(std::move(n));
      }
    out = std::move(next);
  }
  for (auto& c : out)
    for (std::size_t i = 0; i < ambient.coordinates(); ++i)
      if (std::find(c.at.begin(), c.at.end(), i) == c.at.end()) c.coordinates.push_back(i);
  return out;
}

Chart chart_of(const AmbientSpace& ambient, const Point& p) {
  if (p.size() != ambient.coordinates()) throw std::invalid_argument("point has the wrong number of coordinates");
  Chart c;
  for (std::size_t k = 0; k < ambient.factors(); ++k) {
    const auto [b, e] = ambient.factor_range(k);
    std::size_t i = b;
    while (i < e && p[i] == 0) ++i;
    if (i == e) throw std::invalid_argument("point has a factor with all coordinates zero");
    c.at.push_back(i);
  }
  for (std::size_t i = 0; i < ambient.coordinates(); ++i)
    if (std::find(c.at.begin(), c.at.end(), i) == c.at.end()) c.coordinates.push_back(i);
  return c;
}

Polynomial dehomogenize(const Polynomial& f, const Chart& chart) {
  const std::size_t m = chart.coordinates.size();
  std::vector<Polynomial> assignment(f.nvars(), Polynomial::constant(m, 1));
  for (std::size_t j = 0; j < m; ++j) assignment.at(chart.coordinates[j]) = Polynomial::variable(m, j);
  return poly::substitute(f, assignment, m);
}

std::vector<std::string> chart_names(const std::vector<std::string>& names, const Chart& chart) {
  std::vector<std::string> out;
  for (auto i : chart.coordinates) {
    std::string n = names.at(i);
    std::transform(n.begin(), n.end(), n.begin(), [](unsigned char ch) { return std::tolower(ch); });
    out.push_back(std::move(n));
  }
  return out;
}

CyclicAction chart_action(const AmbientSpace& ambient, const CyclicAction& action, const Chart& chart) {
  if (action.nvars() != ambient.coordinates()) throw std::invalid_argument("action arity does not match ambient");
  std::vector<long> w;
  for (auto j : chart.coordinates) {
    const std::size_t b = chart.at[ambient.factor_of(j)];
    if (ambient.weight(b) != 1) throw std::invalid_argument("chart action needs a chart coordinate of weight 1");
    w.push_back(action.weights()[j] - ambient.weight(j) * action.weights()[b]);
  }
  return CyclicAction(action.order(), std::move(w));
}

long chart_character(const HypersurfaceScheme& scheme, const CyclicAction& action, const Chart& chart) {
  const auto& ambient = scheme.ambient();
  long c = semi_invariant_character(scheme.F(), action, "equation");
  for (std::size_t k = 0; k < ambient.factors(); ++k) {
    if (ambient.weight(chart.at[k]) != 1) throw std::invalid_argument("chart character needs weight-1 charts");
    c -= scheme.degree()[k] * action.weights()[chart.at[k]];
  }
  return mod(c, action.order());
}

SingularLocusVerdict singular_locus_check(const HypersurfaceScheme& scheme, const std::vector<Point>& claimed,
                                          const GbOptions& options) {
  const auto& ambient = scheme.ambient();
  for (const auto& p : claimed) {
    if (!is_coordinate_point(ambient, p))
      throw std::invalid_argument("claimed point " + point_label(ambient, p) + " is not a coordinate point");
    if (scheme.F().evaluate(p) != 0)
      throw std::invalid_argument("claimed point " + point_label(ambient, p) + " is not on the hypersurface");
  }
  SingularLocusVerdict out;
  out.verified = true;
  const auto grevlex = poly::MonomialOrder::grevlex();
  for (const auto& chart : charts(ambient)) {
    ChartCertificate cert;
    cert.chart = chart.label(scheme.names());
    const Polynomial f = dehomogenize(scheme.F(), chart);
    const auto sing = gb::buchberger(affine_singular_ideal(f), grevlex, options);
    cert.basis_size = sing.size();
    for (const auto& p : claimed) {
      if (chart_of(ambient, p).at != chart.at) continue;
      ++cert.claimed;
      // A claimed point sits at the origin of its chart.
      const auto origin = std::vector<Rational>(chart.coordinates.size(), 0);
      bool singular = true;
      for (const auto& g : sing.polynomials()) singular = singular && g.evaluate(origin) == 0;
      if (!singular) out.problems.push_back(point_label(ambient, p) + " is a smooth point");
    }
    if (sing.is_unit()) {
      cert.points = 0;
    } else if (gb::quotient_dimension(sing).finite()) {
      cert.points = gb::count_points(sing, options);
    }
    cert.ok = cert.points && *cert.points == cert.claimed;
    if (!cert.points) {
      out.problems.push_back("positive-dimensional singular locus in chart " + cert.chart);
    } else if (*cert.points != cert.claimed) {
      out.problems.push_back(std::to_string(*cert.points) + " singular points in chart " + cert.chart + ", " +
                             std::to_string(cert.claimed) + " claimed");
    }
    out.verified = out.verified && cert.ok;
    out.charts.push_back(std::move(cert));
  }
  out.verified = out.verified && out.problems.empty();
  return out;
}

std::size_t FixedSubspace::dimension(const AmbientSpace& ambient) const {
  std::vector<std::size_t> per(ambient.factors(), 0);
  for (auto i : coordinates) ++per[ambient.factor_of(i)];
  std::size_t d = 0;
  for (auto n : per) d += n - 1;
  return d;
}

std::string FixedSubspace::label(const std::vector<std::string>& names) const {
  std::string out = "<";
  for (std::size_t j = 0; j < coordinates.size(); ++j) out += (j ? "," : "") + names.at(coordinates[j]);
  return out + ">";
}

std::vector<FixedSubspace> fixed_locus(const AmbientSpace& ambient, const CyclicAction& action) {
  if (action.nvars() != ambient.coordinates()) throw std::invalid_argument("action arity does not match ambient");
  const long r = action.order();
  // Per factor: twist c -> coordinates i with L a_i == c w_i (mod r L).
  std::vector<std::vector<std::pair<long, std::vector<std::size_t>>>> classes(ambient.factors());
  for (std::size_t k = 0; k < ambient.factors(); ++k) {
    const auto [b, e] = ambient.factor_range(k);
    long L = 1;
    for (std::size_t i = b; i < e; ++i) L = std::lcm(L, ambient.weight(i));
    for (long c = 0; c < r * L; ++c) {
      std::vector<std::size_t> coords;
      for (std::size_t i = b; i < e; ++i)
        if (mod(L * action.weights()[i] - c * ambient.weight(i), r * L) == 0) coords.push_back(i);
      if (!coords.empty()) classes[k].emplace_back(c, std::move(coords));
    }
  }
  std::vector<FixedSubspace> out{FixedSubspace{}};
  for (const auto& factor : classes) {
    std::vector<FixedSubspace> next;
    for (const auto& partial : out)
      for (const auto& [c, coords] : factor) {
        FixedSubspace s = partial;
        s.lift.push_back(c);
        s.coordinates.insert(s.coordinates.end(), coords.begin(), coords.end());
        next.push_back(std::move(s));
      }
    out = std::move(next);
  }
  std::vector<FixedSubspace> unique;
  std::set<std::vector<std::size_t>> seen;
  for (auto& s : out)
    if (seen.insert(s.coordinates).second) unique.push_back(std::move(s));
  return unique;
}

namespace {

// Count of points on a line <u, v> in chart u = 1, from the roots of the
// restriction in t = X_v; nonzero roots come in orbits of w_u / gcd(w_u, w_v).
std::size_t line_orbits(const uni::Poly& p, long wu, long wv) {
  const std::size_t n = distinct_roots(p);
  if (n == 0) return 0;
  const std::size_t zero = uni::evaluate(p, 0) == 0 ? 1 : 0;
  const long orbit = wu / std::gcd(wu, wv);
  return zero + (n - zero) / static_cast<std::size_t>(orbit);
}

std::vector<long> remove_one(std::vector<long> weights, long w) {
  const auto it = std::find(weights.begin(), weights.end(), w);
  if (it == weights.end()) throw std::logic_error("no coordinate carries the normal weight");
  weights.erase(it);
  return weights;
}

}  // namespace

std::vector<FixedPoints> fixed_points(const HypersurfaceScheme& scheme, const CyclicAction& action) {
  const auto& ambient = scheme.ambient();
  const std::size_t n = ambient.coordinates();
  const Polynomial& F = scheme.F();
  std::vector<Polynomial> partials;
  for (std::size_t i = 0; i < n; ++i) partials.push_back(poly::partial_derivative(F, i));

  std::vector<FixedPoints> out;
  for (const auto& sub : fixed_locus(ambient, action)) {
    FixedPoints fp;
    fp.subspace = sub;
    const std::size_t dim = sub.dimension(ambient);
    std::vector<bool> free(n, false);
    for (auto i : sub.coordinates) free[i] = true;

    // The factor carrying the line, when dim == 1.
    std::optional<std::size_t> u, v;
    if (dim == 1)
      for (std::size_t k = 0; k < ambient.factors(); ++k) {
        std::vector<std::size_t> in;
        for (auto i : sub.coordinates)
          if (ambient.factor_of(i) == k) in.push_back(i);
        if (in.size() == 2) u = in[0], v = in[1];
      }

    // Restriction with singleton coordinates set to 1 and X_u = a, X_v = t.
    auto restrict = [&](const Polynomial& g, const Rational& a) {
      std::vector<Polynomial> assign(n, Polynomial(1));
      for (std::size_t i = 0; i < n; ++i) {
        if (!free[i]) continue;
        if (v && i == *v) {
          assign[i] = Polynomial::variable(1, 0);
        } else if (u && i == *u) {
          assign[i] = Polynomial::constant(1, a);
        } else {
          assign[i] = Polynomial::constant(1, 1);
        }
      }
      return to_univariate(poly::substitute(g, assign, 1), 0);
    };

    std::size_t smooth_points = 0;
    if (dim == 0) {
      const auto f0 = restrict(F, 1);
      if (uni_zero(f0)) {
        fp.points = 1;
        bool singular = true;
        for (const auto& d : partials) singular = singular && uni_zero(restrict(d, 1));
        fp.singular = singular ? 1 : 0;
      } else {
        fp.points = 0;
      }
    } else if (dim == 1) {
      const auto f1 = restrict(F, 1);
      if (uni_zero(f1)) {
        fp.detail = "line contained in the hypersurface";
      } else {
        uni::Poly g = f1;
        for (const auto& d : partials) g = uni::gcd(g, restrict(d, 1));
        const long wu = ambient.weight(*u), wv = ambient.weight(*v);
        std::size_t pts = line_orbits(f1, wu, wv);
        std::size_t sing = line_orbits(g, wu, wv);
        // The point X_u = 0 of the line.
        if (uni::evaluate(restrict(F, 0), 1) == 0) {
          ++pts;
          bool singular = true;
          for (const auto& d : partials) singular = singular && uni::evaluate(restrict(d, 0), 1) == 0;
          if (singular) ++sing;
        }
        fp.points = pts;
        fp.singular = sing;
      }
    } else {
      fp.detail = "fixed subspace of dimension " + std::to_string(dim) + " meets the hypersurface in positive dimension";
    }

    if (fp.points) smooth_points = *fp.points - fp.singular;
    if (smooth_points > 0) {
      // Chart at weight-1 coordinates of the subspace.
      Chart chart;
      bool ok = true;
      for (std::size_t k = 0; k < ambient.factors() && ok; ++k) {
        std::optional<std::size_t> pick;
        for (auto i : sub.coordinates)
          if (ambient.factor_of(i) == k && ambient.weight(i) == 1 && !pick) pick = i;
        ok = pick.has_value();
        if (pick) chart.at.push_back(*pick);
      }
      if (ok) {
        for (std::size_t i = 0; i < n; ++i)
          if (std::find(chart.at.begin(), chart.at.end(), i) == chart.at.end()) chart.coordinates.push_back(i);
        const auto local = chart_action(ambient, action, chart);
        fp.tangent_weights = remove_one(local.weights(), chart_character(scheme, action, chart));
      } else {
        fp.detail = "tangent weights need a weight-1 chart";
      }
    }
    out.push_back(std::move(fp));
  }
  return out;
}

bool reid_tai_terminal(long r, const std::vector<long>& weights) {
  if (r < 2) throw std::invalid_argument("Reid-Tai: group order must be at least 2");
  if (weights.size() != 3) throw std::invalid_argument("Reid-Tai: expected three weights");
  for (auto a : weights)
    if (mod(a, r) == 0) throw std::invalid_argument("Reid-Tai: weight divisible by the order (not isolated)");
  for (long j = 1; j < r; ++j) {
    Rational sum = 0;
    for (auto a : weights) sum += Rational(mod(j * a, r), r);
    if (sum <= 1) return false;
  }
  return true;
}

SmoothingFamily::SmoothingFamily(HypersurfaceScheme scheme, Polynomial perturbation)
    : scheme_(std::move(scheme)), perturbation_(std::move(perturbation)) {
  if (perturbation_.nvars() != scheme_.ambient().coordinates())
    throw std::invalid_argument("perturbation arity mismatch");
  if (!perturbation_.is_zero()) {
    const auto deg = multidegree(scheme_.ambient(), perturbation_);
    if (!deg || *deg != scheme_.degree()) throw HomogeneityError("perturbation degree differs from the equation's");
  }
}

HypersurfaceScheme SmoothingFamily::fiber(const Rational& s0) const {
  return HypersurfaceScheme(scheme_.ambient(), scheme_.F() + perturbation_ * s0, scheme_.names());
}

bool FamilySmoothingVerdict::passed() const {
  if (!generic_fiber_smooth || !total_space_smooth) return false;
  if (perturbation_semi_invariant && !*perturbation_semi_invariant) return false;
  for (const auto& fp : sample_fixed_points)
    if (!fp.points || fp.singular != 0) return false;
  return true;
}

FamilySmoothingVerdict family_smoothing_verify(const SmoothingFamily& family,
                                               const std::optional<CyclicAction>& action,
                                               const std::vector<Point>& singular_points,
                                               const GbOptions& options) {
  const auto& scheme = family.scheme();
  const auto& ambient = scheme.ambient();
  FamilySmoothingVerdict out;
  if (action) {
    const long cf = semi_invariant_character(scheme.F(), *action, "equation");
    if (family.perturbation().is_zero()) {
      out.perturbation_semi_invariant = true;
    } else {
      const auto cp = equiv::character_of(family.perturbation(), *action);
      if (!cp || cp->value != cf)
        throw std::invalid_argument("perturbation is not semi-invariant of the equation's character");
      out.perturbation_semi_invariant = true;
    }
  }

  out.generic_fiber_smooth = true;
  std::vector<uni::Poly> eliminants;
  for (const auto& chart : charts(ambient)) {
    const std::size_t m = chart.coordinates.size();
    const Polynomial s = Polynomial::variable(m + 1, m);
    const Polynomial fs = dehomogenize(scheme.F(), chart).extend(m + 1) +
                          s * dehomogenize(family.perturbation(), chart).extend(m + 1);
    std::vector<Polynomial> gens{fs};
    for (std::size_t i = 0; i < m; ++i) gens.push_back(poly::partial_derivative(fs, i));
    ChartFamilyCertificate cert;
    cert.chart = chart.label(scheme.names());
    uni::Poly e;
    const auto basis = gb::buchberger(gens, poly::MonomialOrder::grevlex(), options);
    if (gb::quotient_dimension(basis).finite()) {
      e = gb::univariate_eliminant(basis, m);
    } else {
      for (const auto& g : gb::eliminate(gens, m, options)) e = uni::gcd(e, to_univariate(g, m));
    }
    // Drop the factor s^k: the central fiber is allowed to be singular.
    while (!e.empty() && e.front() == 0) e.erase(e.begin());
    cert.generic_smooth = !e.empty();
    {
      std::vector<poly::Term> terms;
      for (std::size_t k = 0; k < e.size(); ++k)
        if (e[k] != 0) terms.push_back({poly::Monomial::variable(0, static_cast<unsigned>(k)), e[k]});
      const std::vector<std::string> sname{"s"};
      cert.eliminant = Polynomial::from_terms(1, std::move(terms)).to_string(sname);
    }
    out.generic_fiber_smooth = out.generic_fiber_smooth && cert.generic_smooth;
    if (cert.generic_smooth) eliminants.push_back(std::move(e));
    out.charts.push_back(std::move(cert));
  }

  out.total_space_smooth = true;
  for (const auto& p : singular_points) {
    if (p.size() != ambient.coordinates()) throw std::invalid_argument("singular point arity mismatch");
    out.total_space_smooth = out.total_space_smooth && family.perturbation().evaluate(p) != 0;
  }

  if (out.generic_fiber_smooth) {
    Rational s0 = 1;
    auto bad = [&](const Rational& t) {
      return std::any_of(eliminants.begin(), eliminants.end(), [&](const uni::Poly& e) { return uni::evaluate(e, t) == 0; });
    };
    while (bad(s0)) s0 += 1;
    out.sample = s0;
    if (action) {
      out.sample_fixed_points = fixed_points(family.fiber(s0), *action);
      for (const auto& fp : out.sample_fixed_points) {
        if (!fp.tangent_weights) continue;
        try {
          out.sample_terminal.push_back(reid_tai_terminal(action->order(), *fp.tangent_weights));
        } catch (const std::invalid_argument&) {
          out.sample_terminal.push_back(false);
        }
      }
    }
  }
  return out;
}

Polynomial localize(const AmbientSpace& ambient, const Polynomial& g, const Point& p) {
  if (p.size() != ambient.coordinates() || g.nvars() != p.size())
    throw std::invalid_argument("localize: point arity mismatch");
  const Chart chart = chart_of(ambient, p);
  for (auto b : chart.at)
    if (ambient.weight(b) != 1) throw std::invalid_argument("localization needs a chart coordinate of weight 1");
  const std::size_t m = chart.coordinates.size();
  // Affine coordinates of p: p_j / p_b^{w_j}.
  std::vector<Polynomial> assignment(ambient.coordinates(), Polynomial::constant(m, 1));
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t i = chart.coordinates[j];
    const std::size_t b = chart.at[ambient.factor_of(i)];
    Rational denom = 1;
    for (long e = 0; e < ambient.weight(i); ++e) denom *= p[b];
    assignment[i] = Polynomial::variable(m, j) + Polynomial::constant(m, p[i] / denom);
  }
  return poly::substitute(g, assignment, m);
}

ChartGerm chart_germ(const HypersurfaceScheme& scheme, const Point& p, const std::optional<CyclicAction>& action) {
  const auto& ambient = scheme.ambient();
  if (scheme.F().evaluate(p) != 0)
    throw std::invalid_argument(point_label(ambient, p) + " is not on the hypersurface");
  const Chart chart = chart_of(ambient, p);
  ChartGerm out{chart, chart_names(scheme.names(), chart), localize(ambient, scheme.F(), p),
                t1::GermPresentation(0, {}), std::nullopt};
  out.germ = t1::minimalize({out.local}, out.names);
  if (action && is_coordinate_point(ambient, p))
    out.action = chart_action(ambient, *action, chart).restricted(out.germ.kept);
  return out;
}

}  // namespace qsmooth::geom
