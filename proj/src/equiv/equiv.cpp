#include "qsmooth/equiv.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qsmooth::equiv {
namespace {

long mod(long a, long r) { return ((a % r) + r) % r; }

void require_arity(const CyclicAction& action, std::size_t e, const char* what) {
  if (action.nvars() != e)
    throw std::invalid_argument(std::string(what) + ": action has " + std::to_string(action.nvars()) +
                                " weights for " + std::to_string(e) + " variables");
}

Polynomial determinant(std::vector<std::vector<Polynomial>> m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Polynomial acc(m[0][0].nvars());
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    const Polynomial term = m[0][j] * determinant(std::move(minor));
    if (j % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

// Equations plus all maximal minors of the Jacobian: the singular locus of a
// complete intersection.
std::vector<Polynomial> singular_ideal(const std::vector<Polynomial>& f, std::size_t e) {
  const std::size_t d = f.size();
  std::vector<Polynomial> out = f;
  if (d == 0 || d > e) return out;
  std::vector<bool> pick(e, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(d), true);
  do {
    std::vector<std::vector<Polynomial>> m(d);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < e; ++i)
        if (pick[i]) m[k].push_back(partial_derivative(f[k], i));
    Polynomial det = determinant(std::move(m));
    if (!det.is_zero()) out.push_back(std::move(det));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

std::vector<long> divisors_below(long r) {
  std::vector<long> out;
  for (long m = 1; m < r; ++m)
    if (r % m == 0) out.push_back(m);
  return out;
}

}  // namespace

CyclicAction::CyclicAction(long r, std::vector<long> weights) : r_(r), weights_(std::move(weights)) {
  if (r < 1) throw std::invalid_argument("cyclic action: order must be positive");
  for (auto& a : weights_) a = mod(a, r_);
}

long CyclicAction::character(const Monomial& m) const {
  long acc = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i) acc = mod(acc + weights_[i] * static_cast<long>(m[i]), r_);
  // Exponents on variables beyond the weight vector would be a ring mismatch.
  return acc;
}

CyclicAction CyclicAction::extended(long weight) const {
  auto w = weights_;
  w.push_back(weight);
  return CyclicAction(r_, std::move(w));
}

CyclicAction CyclicAction::restricted(const std::vector<std::size_t>& variables) const {
  std::vector<long> w;
  for (auto v : variables) w.push_back(weights_.at(v));
  return CyclicAction(r_, std::move(w));
}

CyclicAction CyclicAction::subgroup(long m) const {
  if (m < 1 || r_ % m != 0) throw std::invalid_argument("cyclic action: subgroup index must divide the order");
  // g^m acts by (xi^m)^{a_i}, and xi^m is a primitive (r/m)-th root.
  return CyclicAction(r_ / m, weights_);
}

std::string CyclicAction::to_string() const {
  std::ostringstream os;
  os << "Z/" << r_ << " (";
  for (std::size_t i = 0; i < weights_.size(); ++i) os << (i ? "," : "") << weights_[i];
  os << ")";
  return os.str();
}

std::optional<Character> character_of(const Polynomial& f, const CyclicAction& action) {
  if (f.is_zero()) throw std::invalid_argument("character of the zero polynomial");
  require_arity(action, f.nvars(), "character_of");
  std::optional<long> c;
  for (const auto& t : f.terms()) {
    const long ct = action.character(t.monomial);
    if (c && *c != ct) return std::nullopt;
    c = ct;
  }
  return Character{*c};
}

bool is_ordinary(const GermPresentation& germ, const CyclicAction& action) {
  require_arity(action, germ.e(), "is_ordinary");
  return std::all_of(germ.f().begin(), germ.f().end(), [&](const Polynomial& f) {
    const auto c = character_of(f, action);
    return c && c->value == 0;
  });
}

std::vector<long> component_shifts(const GermPresentation& germ, const CyclicAction& action) {
  require_arity(action, germ.e(), "component_shifts");
  std::vector<long> out;
  for (const auto& f : germ.f()) {
    const auto c = character_of(f, action);
    if (!c) throw std::domain_error("equation is not semi-invariant: " + f.to_string(germ.names()));
    out.push_back(mod(-c->value, action.order()));
  }
  return out;
}

std::optional<Character> character_of(const gb::VectorPolynomial& v, const CyclicAction& action,
                                      const std::vector<long>& shifts) {
  require_arity(action, v.nvars(), "character_of");
  if (shifts.size() != v.rank()) throw std::invalid_argument("character_of: one shift per component needed");
  std::optional<long> c;
  for (std::size_t k = 0; k < v.rank(); ++k)
    for (const auto& t : v[k].terms()) {
      const long ct = mod(action.character(t.monomial) + shifts[k], action.order());
      if (c && *c != ct) return std::nullopt;
      c = ct;
    }
  return Character{c.value_or(0)};
}

std::optional<Character> class_character(const T1Presentation& t1, const T1Class& c, const CyclicAction& action) {
  return character_of(c.canonical(), action, component_shifts(t1.germ, action));
}

std::map<long, std::size_t> t1_character_dimensions(const T1Presentation& t1, const CyclicAction& action) {
  if (!t1.quotient.finite()) throw std::domain_error("T1 is not finite dimensional");
  const auto shifts = component_shifts(t1.germ, action);
  std::map<long, std::size_t> out;
  for (const auto& t : t1.quotient.basis)
    ++out[mod(action.character(t.monomial) + shifts[t.component], action.order())];
  return out;
}

T1Class invariant_good_direction(const T1Presentation& t1, const CyclicAction& action,
                                 const t1::ProperSubmodule& m) {
  if (!is_ordinary(t1.germ, action)) throw NotOrdinary();
  for (const auto& g : m.generators())
    if (!class_character(t1, g, action))
      throw std::invalid_argument("submodule generator is not semi-invariant");
  T1Class c = t1::good_direction_for_submodule(t1, m);
  const auto ch = class_character(t1, c, action);
  if (!ch || ch->value != 0) throw std::logic_error("unit class of an ordinary germ is not invariant");
  return c;
}

bool FamilyVerdict::invariant() const {
  return std::all_of(equation_invariant.begin(), equation_invariant.end(), [](bool b) { return b; });
}

bool FamilyVerdict::ordinary_preserved() const {
  if (!germ_ordinary || !invariant()) return false;
  return std::all_of(samples.begin(), samples.end(), [](const FiberSample& s) {
    return s.status == FiberSample::Status::Smooth || s.status == FiberSample::Status::NoFixedSingularPoints ||
           s.status == FiberSample::Status::Ordinary;
  });
}

std::string to_string(FiberSample::Status s) {
  switch (s) {
    case FiberSample::Status::Smooth: return "smooth";
    case FiberSample::Status::NoFixedSingularPoints: return "no fixed singular points";
    case FiberSample::Status::Ordinary: return "ordinary at fixed singular points";
    case FiberSample::Status::NotOrdinary: return "not ordinary";
    case FiberSample::Status::Unresolved: return "unresolved";
  }
  return "?";
}

namespace {

FiberSample inspect_fiber(const std::vector<Polynomial>& fiber, std::size_t e, const CyclicAction& action,
                          const gb::GbOptions& options) {
  FiberSample out;
  const auto grevlex = poly::MonomialOrder::grevlex();
  const auto sing = singular_ideal(fiber, e);
  const auto sing_gb = gb::buchberger(sing, grevlex, options);
  if (sing_gb.is_unit()) {
    out.status = FiberSample::Status::Smooth;
    return out;
  }
  bool any_fixed = false, unresolved = false, bad = false;
  std::ostringstream detail;
  for (const long m : divisors_below(action.order())) {
    const CyclicAction h = action.subgroup(m);
    std::vector<Polynomial> gens = sing_gb.polynomials();
    for (std::size_t i = 0; i < e; ++i)
      if (h.weights()[i] != 0) gens.push_back(Polynomial::variable(e, i));
    const auto fixed = gb::buchberger(gens, grevlex, options);
    if (fixed.is_unit()) continue;
    any_fixed = true;
    if (!gb::quotient_dimension(fixed).finite()) {
      unresolved = true;
      detail << "Z/" << h.order() << ": positive-dimensional fixed singular locus; ";
      continue;
    }
    out.fixed_singular_points[h.order()] = gb::count_points(fixed, options);
    const auto pts = gb::rational_points(fixed, options);
    for (const auto& p : pts.points) {
      std::vector<Polynomial> shift;
      for (std::size_t i = 0; i < e; ++i) shift.push_back(Polynomial::variable(e, i) + Polynomial::constant(e, p[i]));
      std::vector<Polynomial> local;
      for (const auto& g : fiber) local.push_back(poly::substitute(g, shift, e));
      const auto germ = t1::minimalize(local);
      if (!is_ordinary(germ, h.restricted(germ.kept))) {
        bad = true;
        detail << "Z/" << h.order() << ": point not ordinary; ";
      }
    }
    if (!pts.complete) {
      unresolved = true;
      detail << "Z/" << h.order() << ": irrational fixed singular points; ";
    }
  }
  out.detail = detail.str();
  if (bad) {
    out.status = FiberSample::Status::NotOrdinary;
  } else if (unresolved) {
    out.status = FiberSample::Status::Unresolved;
  } else {
    out.status = any_fixed ? FiberSample::Status::Ordinary : FiberSample::Status::NoFixedSingularPoints;
  }
  return out;
}

}  // namespace

FamilyVerdict equivariant_family_check(const GermPresentation& germ, const CyclicAction& action,
                                       const std::vector<Polynomial>& h, const std::vector<Rational>& samples,
                                       const gb::GbOptions& options) {
  const std::size_t e = germ.e(), d = germ.d();
  require_arity(action, e, "equivariant_family_check");
  if (h.size() != d) throw std::invalid_argument("family: one perturbation per equation needed");
  for (const auto& hk : h) {
    if (hk.nvars() != e + 1) throw std::invalid_argument("family: perturbations must live in e + 1 variables");
    for (const auto& t : hk.terms())
      if (t.monomial[e] == 0) throw std::invalid_argument("family: perturbation not divisible by s");
  }
  FamilyVerdict out;
  out.germ_ordinary = is_ordinary(germ, action);
  const CyclicAction ext = action.extended(0);
  std::vector<Polynomial> family;
  for (std::size_t k = 0; k < d; ++k) {
    Polynomial F = germ.f()[k].extend(e + 1) + h[k];
    const auto c = character_of(F, ext);
    out.equation_invariant.push_back(c && c->value == 0);
    family.push_back(std::move(F));
  }
  for (const auto& s0 : samples) {
    std::vector<Polynomial> at;
    for (std::size_t i = 0; i < e; ++i) at.push_back(Polynomial::variable(e, i));
    at.push_back(Polynomial::constant(e, s0));
    std::vector<Polynomial> fiber;
    for (const auto& F : family) fiber.push_back(poly::substitute(F, at, e));
    FiberSample fs = inspect_fiber(fiber, e, action, options);
    fs.s0 = s0;
    out.samples.push_back(std::move(fs));
  }
  return out;
}

}  // namespace qsmooth::equiv
