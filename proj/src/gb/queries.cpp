#include <algorithm>
#include <map>
#include <stdexcept>

#include "qsmooth/gb.hpp"
#include "qsmooth/linalg.hpp"

namespace qsmooth::gb {

QuotientBasis quotient_dimension(const GroebnerBasis& basis, std::size_t limit) {
  const std::size_t n = basis.nvars();
  const std::size_t rank = basis.rank();
  std::vector<std::vector<Monomial>> leads(rank);
  for (const auto& t : basis.leading_terms()) leads[t.component].push_back(t.monomial);

  QuotientBasis out;
  // Finite iff every variable has a pure power among the leads of every
  // component.
  for (std::size_t c = 0; c < rank; ++c) {
    if (std::any_of(leads[c].begin(), leads[c].end(), [](const Monomial& m) { return m.is_one(); })) continue;
    for (std::size_t v = 0; v < n; ++v) {
      const bool has_pure_power = std::any_of(leads[c].begin(), leads[c].end(), [&](const Monomial& m) {
        return m[v] > 0 && m.degree() == m[v];
      });
      if (!has_pure_power) return out;
    }
  }

  for (std::size_t c = 0; c < rank; ++c) {
    const auto& lc = leads[c];
    auto divisible = [&](const Monomial& m) {
      return std::any_of(lc.begin(), lc.end(), [&](const Monomial& l) { return l.divides(m); });
    };
    // Each monomial is reached once via a non-decreasing variable sequence.
    std::vector<std::pair<Monomial, std::size_t>> stack{{Monomial{}, 0}};
    while (!stack.empty()) {
      auto [m, start] = stack.back();
      stack.pop_back();
      if (divisible(m)) continue;
      out.basis.push_back(ModuleTerm{m, c});
      if (out.basis.size() > limit) throw std::length_error("quotient basis exceeds enumeration limit");
      for (std::size_t v = start; v < n; ++v) stack.emplace_back(m * Monomial::variable(v), v);
    }
  }
  std::sort(out.basis.begin(), out.basis.end(),
            [&](const ModuleTerm& a, const ModuleTerm& b) { return basis.compare(a, b) < 0; });
  out.dimension = out.basis.size();
  return out;
}

namespace {

void require_ideal(const GroebnerBasis& b, const char* what) {
  if (b.rank() != 1) throw std::invalid_argument(std::string(what) + ": basis is not an ideal basis");
  if (b.nvars() + 1 > poly::kMaxVars)
    throw std::invalid_argument(std::string(what) + ": no room for a tag variable");
}

// Generators of I in the ring with a tag variable prepended at index 0.
std::vector<Polynomial> shifted(const GroebnerBasis& ideal) {
  std::vector<Polynomial> out;
  for (const auto& g : ideal.polynomials()) out.push_back(g.extend(ideal.nvars() + 1, 1));
  return out;
}

Polynomial one_minus_tag_times(const Polynomial& f, std::size_t n) {
  const Polynomial t = Polynomial::variable(n + 1, 0);
  return Polynomial::constant(n + 1, 1) - t * f.extend(n + 1, 1);
}

}  // namespace

GroebnerBasis ideal_quotient_saturation(const GroebnerBasis& ideal, const Polynomial& g,
                                        const GbOptions& options) {
  require_ideal(ideal, "saturation");
  if (g.is_zero()) throw std::invalid_argument("saturation by the zero polynomial");
  if (g.nvars() != ideal.nvars()) throw std::invalid_argument("saturation: ring mismatch");
  const std::size_t n = ideal.nvars();
  auto gens = shifted(ideal);
  gens.push_back(one_minus_tag_times(g, n));
  const GroebnerBasis big = buchberger(gens, MonomialOrder::elimination(1), options);

  // Drop the tag variable from the tag-free elements.
  std::vector<Polynomial> assignment;
  assignment.push_back(Polynomial(n));
  for (std::size_t i = 0; i < n; ++i) assignment.push_back(Polynomial::variable(n, i));
  std::vector<Polynomial> kept;
  for (const auto& p : big.polynomials())
    if (p.degree_in(0) == 0) kept.push_back(substitute(p, assignment, n));
  if (kept.empty()) kept.push_back(Polynomial(n));
  return buchberger(kept, ideal.order(), options);
}

bool radical_membership(const Polynomial& f, const GroebnerBasis& ideal, const GbOptions& options) {
  require_ideal(ideal, "radical membership");
  if (f.nvars() != ideal.nvars()) throw std::invalid_argument("radical membership: ring mismatch");
  if (f.is_zero()) return true;
  auto gens = shifted(ideal);
  gens.push_back(one_minus_tag_times(f, ideal.nvars()));
  return buchberger(gens, MonomialOrder::grevlex(), options).is_unit();
}

std::vector<Polynomial> eliminate(std::span<const Polynomial> generators, std::size_t k,
                                  const GbOptions& options) {
  const GroebnerBasis b = buchberger(generators, MonomialOrder::elimination(k), options);
  std::vector<Polynomial> out;
  for (const auto& p : b.polynomials()) {
    bool free = true;
    for (std::size_t v = 0; v < k && free; ++v) free = p.degree_in(v) == 0;
    if (free && !p.is_zero()) out.push_back(p);
  }
  return out;
}

namespace {

// Monic minimal polynomial of x_v on the quotient, from the first linear
// dependency among its powers.
linalg::uni::Poly minimal_polynomial(const GroebnerBasis& ideal, const QuotientBasis& q, std::size_t v) {
  const std::size_t n = ideal.nvars();
  const std::size_t dim = *q.dimension;
  std::map<std::vector<unsigned>, std::size_t> index;
  for (std::size_t i = 0; i < dim; ++i) index[q.basis[i].monomial.exponents(n)] = i;
  auto coords = [&](const Polynomial& nf) {
    linalg::Vector c(dim, 0);
    for (const auto& t : nf.terms()) c[index.at(t.monomial.exponents(n))] = t.coefficient;
    return c;
  };
  const Polynomial x = Polynomial::variable(n, v);
  std::vector<linalg::Vector> powers;
  Polynomial current = Polynomial::constant(n, 1);
  linalg::RowSpace space(dim);
  for (;;) {
    const linalg::Vector c = coords(ideal.normal_form(current));
    powers.push_back(c);
    if (!space.insert(c)) break;
    current = ideal.normal_form(current * x);
  }
  // Dependency among powers 0..k: columns are the power vectors.
  const std::size_t k = powers.size();
  linalg::Matrix m(dim, linalg::Vector(k, 0));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < dim; ++i) m[i][j] = powers[j][i];
  const auto null = linalg::nullspace(m, k);
  if (null.empty()) throw std::logic_error("no minimal polynomial found");
  linalg::uni::Poly minpoly = null.front();
  linalg::uni::trim(minpoly);
  return minpoly;
}

Polynomial univariate(std::size_t n, std::size_t v, const linalg::uni::Poly& p) {
  std::vector<poly::Term> terms;
  for (std::size_t e = 0; e < p.size(); ++e)
    if (p[e] != 0) terms.push_back(poly::Term{Monomial::variable(v, static_cast<unsigned>(e)), p[e]});
  return Polynomial::from_terms(n, std::move(terms));
}

QuotientBasis zero_dimensional_quotient(const GroebnerBasis& ideal, const char* what) {
  if (ideal.rank() != 1) throw std::invalid_argument(std::string(what) + ": basis is not an ideal basis");
  QuotientBasis q = quotient_dimension(ideal);
  if (!q.finite()) throw std::domain_error(std::string(what) + ": ideal is not zero-dimensional");
  return q;
}

}  // namespace

std::size_t count_points(const GroebnerBasis& ideal, const GbOptions& options) {
  const QuotientBasis q = zero_dimensional_quotient(ideal, "count_points");
  if (*q.dimension == 0) return 0;
  const std::size_t n = ideal.nvars();
  // Seidenberg: in characteristic zero, I + (squarefree minimal polynomial
  // of each variable) is the radical of a zero-dimensional I.
  std::vector<Polynomial> gens = ideal.polynomials();
  for (std::size_t v = 0; v < n; ++v)
    gens.push_back(univariate(n, v, linalg::uni::squarefree_part(minimal_polynomial(ideal, q, v))));
  const GroebnerBasis radical = buchberger(gens, ideal.order(), options);
  return *quotient_dimension(radical).dimension;
}

linalg::uni::Poly univariate_eliminant(const GroebnerBasis& ideal, std::size_t v) {
  if (v >= ideal.nvars()) throw std::out_of_range("univariate_eliminant: variable index");
  const QuotientBasis q = zero_dimensional_quotient(ideal, "univariate_eliminant");
  if (*q.dimension == 0) return {1};
  return minimal_polynomial(ideal, q, v);
}

RationalPoints rational_points(const GroebnerBasis& ideal, const GbOptions& options) {
  const QuotientBasis q = zero_dimensional_quotient(ideal, "rational_points");
  RationalPoints out;
  if (*q.dimension == 0) {
    out.complete = true;
    return out;
  }
  const std::size_t n = ideal.nvars();
  bool decided = true;
  std::vector<Rational> point(n);
  // Fix x_0, x_1, ... in turn to each rational root of its eliminant.
  auto rec = [&](auto&& self, const GroebnerBasis& current, std::size_t v) -> void {
    if (v == n) {
      out.points.push_back(point);
      return;
    }
    const QuotientBasis cq = quotient_dimension(current);
    const auto roots = linalg::uni::rational_roots(minimal_polynomial(current, cq, v));
    if (!roots) {
      decided = false;
      return;
    }
    for (const auto& r : *roots) {
      std::vector<Polynomial> gens = current.polynomials();
      gens.push_back(Polynomial::variable(n, v) - Polynomial::constant(n, r));
      const GroebnerBasis next = buchberger(gens, ideal.order(), options);
      if (next.is_unit()) continue;
      point[v] = r;
      self(self, next, v + 1);
    }
  };
  rec(rec, ideal, 0);
  out.complete = decided && out.points.size() == count_points(ideal, options);
  return out;
}

}  // namespace qsmooth::gb
