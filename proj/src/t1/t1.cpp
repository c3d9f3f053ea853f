#include "qsmooth/t1.hpp"

#include <algorithm>
#include <sstream>

namespace qsmooth::t1 {

using poly::Monomial;
using poly::partial_derivative;
using poly::substitute;

namespace {

bool in_m_squared(const Polynomial& f) {
  return std::all_of(f.terms().begin(), f.terms().end(),
                     [](const poly::Term& t) { return t.monomial.degree() >= 2; });
}

// x_j occurs in f only in its linear term.
bool only_linear_in(const Polynomial& f, std::size_t j) {
  const Monomial xj = Monomial::variable(j);
  for (const auto& t : f.terms())
    if (t.monomial[j] > 0 && !(t.monomial == xj)) return false;
  return true;
}

// Ring map dropping variable j: x_l -> x_l (l < j), x_l -> x_{l-1} (l > j),
// x_j -> image.
std::vector<Polynomial> drop_variable(std::size_t e, std::size_t j, const Polynomial& image) {
  std::vector<Polynomial> out;
  out.reserve(e);
  for (std::size_t l = 0; l < e; ++l) {
    if (l == j) out.push_back(image);
    else out.push_back(Polynomial::variable(e - 1, l < j ? l : l - 1));
  }
  return out;
}

}  // namespace

GermPresentation::GermPresentation(std::size_t e, std::vector<Polynomial> f, std::vector<std::string> names)
    : e_(e), f_(std::move(f)), names_(std::move(names)) {
  if (names_.empty()) names_ = poly::default_names(e_);
  if (names_.size() != e_) throw std::invalid_argument("germ: variable names do not match e");
  for (const auto& g : f_) {
    if (g.nvars() != e_) throw std::invalid_argument("germ: equation lives in the wrong ring");
    if (g.is_zero()) throw std::invalid_argument("germ: zero equation");
    if (!in_m_squared(g)) throw std::invalid_argument("germ: equation has a constant or linear part");
  }
  kept.resize(e_);
  for (std::size_t i = 0; i < e_; ++i) kept[i] = i;
}

std::string GermPresentation::to_string() const {
  std::ostringstream os;
  os << "e=" << e_ << " d=" << d() << " (";
  for (std::size_t i = 0; i < e_; ++i) os << (i ? "," : "") << names_[i];
  os << "): ";
  for (std::size_t k = 0; k < d(); ++k) os << (k ? "; " : "") << f_[k].to_string(names_);
  return os.str();
}

GermPresentation minimalize(const std::vector<Polynomial>& f, std::vector<std::string> names,
                            const MinimalizeOptions& options) {
  std::size_t e = f.empty() ? names.size() : f.front().nvars();
  if (names.empty()) names = poly::default_names(e);
  if (names.size() != e) throw std::invalid_argument("minimalize: names do not match variable count");
  std::vector<Polynomial> eqs;
  for (const auto& g : f) {
    if (g.nvars() != e) throw std::invalid_argument("minimalize: equations in different rings");
    if (g.constant_term() != 0)
      throw InconsistentSystem("minimalize: equation does not vanish at the origin: " + g.to_string(names));
    if (!g.is_zero()) eqs.push_back(g);
  }
  std::vector<std::size_t> alive(e);
  for (std::size_t i = 0; i < e; ++i) alive[i] = i;
  std::optional<unsigned> truncated;

  for (;;) {
    // First equation with a linear part; prefer a variable that occurs
    // only linearly so the substitution is exact.
    std::size_t eq = eqs.size(), var = e;
    for (std::size_t i = 0; i < eqs.size() && eq == eqs.size(); ++i) {
      std::size_t first = e;
      for (std::size_t j = 0; j < e; ++j) {
        if (eqs[i].linear_coefficient(j) == 0) continue;
        if (first == e) first = j;
        if (only_linear_in(eqs[i], j)) {
          var = j;
          break;
        }
      }
      if (first != e) {
        eq = i;
        if (var == e) var = first;
      }
    }
    if (eq == eqs.size()) break;

    const Polynomial g = eqs[eq];
    const Rational c = g.linear_coefficient(var);
    const Polynomial rest = g - Polynomial::monomial(e, Monomial::variable(var), c);
    Polynomial solution(e);  // x_var = solution, in the current ring
    if (only_linear_in(g, var)) {
      solution = rest * Rational(-1 / c);
    } else {
      // Fixed-point iteration gains one order per step.
      const unsigned N = options.series_degree;
      std::vector<Polynomial> at(e);
      for (std::size_t l = 0; l < e; ++l) at[l] = Polynomial::variable(e, l);
      for (unsigned it = 0; it <= N; ++it) {
        at[var] = solution;
        solution = (substitute(rest, at, e) * Rational(-1 / c)).truncate(N);
      }
      truncated = truncated ? std::min(*truncated, N) : N;
    }
    const auto map = drop_variable(e, var, substitute(solution, drop_variable(e, var, Polynomial(e - 1)), e - 1));
    std::vector<Polynomial> next;
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      if (i == eq) continue;
      Polynomial h = substitute(eqs[i], map, e - 1);
      if (truncated) h = h.truncate(*truncated);
      if (h.is_zero()) continue;
      if (h.is_constant()) throw InconsistentSystem("minimalize: equation reduces to a nonzero constant");
      next.push_back(std::move(h));
    }
    eqs = std::move(next);
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(var));
    names.erase(names.begin() + static_cast<std::ptrdiff_t>(var));
    --e;
  }

  GermPresentation out(e, std::move(eqs), std::move(names));
  out.kept = std::move(alive);
  out.truncated_at = truncated;
  return out;
}

std::vector<VectorPolynomial> jtilde_generators(const GermPresentation& germ) {
  const std::size_t e = germ.e(), d = germ.d();
  std::vector<VectorPolynomial> out;
  for (std::size_t i = 0; i < e; ++i) {
    std::vector<Polynomial> col;
    for (std::size_t k = 0; k < d; ++k) col.push_back(partial_derivative(germ.f()[k], i));
    out.emplace_back(std::move(col));
  }
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<Polynomial> v(d, Polynomial(e));
      v[j] = germ.f()[k];
      out.emplace_back(std::move(v));
    }
  }
  return out;
}

T1Presentation t1_module(const GermPresentation& germ, const T1Options& options) {
  T1Presentation out{germ, std::nullopt, {}, std::nullopt, std::nullopt};
  if (germ.smooth()) {
    out.quotient.dimension = 0;
    out.local_length = 0;
    return out;
  }
  // Global bases of J~ can be badly conditioned and carry other singular
  // points of the chart, so work with J~ + m^N throughout. By Nakayama,
  // dim(N) == dim(N + 1) means m^N lies in J~ after localising, and then
  // P^d / (J~ + m^N) is the local module itself.
  const auto gens = jtilde_generators(germ);
  const auto grevlex = poly::MonomialOrder::grevlex();
  try {
    GroebnerBasis prev = gb::truncated_basis(gens, 1, grevlex, options.max_columns);
    std::size_t prev_dim = *gb::quotient_dimension(prev).dimension;
    for (unsigned N = 2; N <= options.max_truncation + 1; ++N) {
      GroebnerBasis cur = gb::truncated_basis(gens, N, grevlex, options.max_columns);
      const std::size_t cur_dim = *gb::quotient_dimension(cur).dimension;
      if (cur_dim == prev_dim) {
        out.quotient = gb::quotient_dimension(prev);
        out.gb = std::move(prev);
        out.local_length = prev_dim;
        out.truncation_degree = N - 1;
        return out;
      }
      prev = std::move(cur);
      prev_dim = cur_dim;
    }
  } catch (const std::length_error&) {
    // Out of room before stabilising; reported like a non-isolated point.
  }
  return out;
}

T1Class::T1Class(const T1Presentation& t1, VectorPolynomial representative) : rep_(std::move(representative)) {
  if (!t1.gb) throw std::domain_error("T1 class over a smooth or non-isolated germ");
  if (rep_.rank() != t1.rank() || rep_.nvars() != t1.germ.e())
    throw std::invalid_argument("T1 class representative has the wrong shape");
  basis_ = t1.gb;
  canonical_ = basis_->normal_form(rep_);
}

T1Class operator+(const T1Class& a, const T1Class& b) {
  T1Class out = a;
  out.rep_ += b.rep_;
  out.canonical_ = out.basis_->normal_form(out.rep_);
  return out;
}

T1Class unit_class(const T1Presentation& t1, std::size_t i) {
  if (i >= t1.rank()) throw std::out_of_range("unit_class: index out of range");
  return T1Class(t1, VectorPolynomial::unit(t1.rank(), t1.germ.e(), i));
}

linalg::Vector const_part(const T1Class& c) {
  linalg::Vector out;
  for (const auto& p : c.representative().components()) out.push_back(p.constant_term());
  return out;
}

bool is_good_direction(const T1Class& c) {
  const auto v = const_part(c);
  return std::any_of(v.begin(), v.end(), [](const Rational& a) { return a != 0; });
}

ProperSubmodule::ProperSubmodule(std::size_t rank, std::vector<T1Class> generators)
    : generators_(std::move(generators)), span_(rank) {
  for (const auto& g : generators_) {
    if (g.rank() != rank) throw std::invalid_argument("submodule generator has the wrong rank");
    span_.insert(const_part(g));
  }
}

T1Class good_direction_for_submodule(const T1Presentation& t1, const ProperSubmodule& m) {
  if (t1.germ.smooth()) throw std::domain_error("good direction requested for a smooth germ");
  const std::size_t d = t1.rank();
  if (m.constant_span().dim() != d) throw std::invalid_argument("submodule rank mismatch");
  if (m.constant_span().full()) throw NotProper();
  for (std::size_t i = 0; i < d; ++i) {
    linalg::Vector unit(d, 0);
    unit[i] = 1;
    if (!m.constant_span().contains(unit)) return unit_class(t1, i);
  }
  throw std::logic_error("good_direction_for_submodule: span neither full nor missing a unit vector");
}

BertiniCheck bertini_details(const GermPresentation& germ, const T1Class& c) {
  const std::size_t e = germ.e(), d = germ.d();
  const Polynomial s = Polynomial::variable(e + 1, e);
  linalg::Matrix jac(d, linalg::Vector(e + 1, 0));
  for (std::size_t k = 0; k < d; ++k) {
    const Polynomial F = germ.f()[k].extend(e + 1) + s * c.representative()[k].extend(e + 1);
    for (std::size_t i = 0; i <= e; ++i) jac[k][i] = partial_derivative(F, i).constant_term();
  }
  BertiniCheck out;
  out.jacobian_rank = linalg::rank(jac);
  out.total_space_embedding_dimension = e + 1 - out.jacobian_rank;
  out.passed = out.jacobian_rank >= 1;
  return out;
}

bool verify_good_direction_bertini(const GermPresentation& germ, const T1Class& c) {
  return bertini_details(germ, c).passed;
}

FiberDrop fiber_embedding_drop(const GermPresentation& germ, const T1Class& c, const Rational& s0,
                               const GbOptions& options) {
  const std::size_t e = germ.e();
  std::vector<Polynomial> gens;
  for (std::size_t k = 0; k < germ.d(); ++k) {
    const Polynomial F = germ.f()[k] + c.representative()[k] * s0;
    gens.push_back(F);
    for (std::size_t i = 0; i < e; ++i) gens.push_back(partial_derivative(F, i));
  }
  FiberDrop out;
  if (gens.empty()) {
    out.passed = true;
    return out;
  }
  const auto b = gb::buchberger(gens, poly::MonomialOrder::grevlex(), options);
  out.passed = b.is_unit();
  out.basis_size = b.size();
  return out;
}

DegenerationCheck monotone_degeneration(const GermPresentation& germ, const T1Class& c,
                                        const GbOptions& options) {
  DegenerationCheck out;
  const std::size_t e = germ.e();
  if (germ.smooth()) {
    out.passed = out.globally_clean = true;
    return out;
  }
  const Polynomial s = Polynomial::variable(e + 1, e);
  std::vector<Polynomial> gens;
  for (std::size_t k = 0; k < germ.d(); ++k) {
    const Polynomial F = germ.f()[k].extend(e + 1) + s * c.representative()[k].extend(e + 1);
    gens.push_back(F);
    for (std::size_t i = 0; i < e; ++i) gens.push_back(partial_derivative(F, i));
  }
  const auto b = gb::buchberger(gens, poly::MonomialOrder::grevlex(), options);
  const auto sat = gb::ideal_quotient_saturation(b, s, options);
  out.globally_clean = sat.is_unit();
  // The origin lies on V(sat) iff every generator vanishes there.
  const auto& ps = sat.polynomials();
  out.passed = std::any_of(ps.begin(), ps.end(), [](const Polynomial& p) { return p.constant_term() != 0; });
  return out;
}

}  // namespace qsmooth::t1
