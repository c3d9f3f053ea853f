#include <ostream>
#include "qsmooth/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace qsmooth::poly {
namespace {

bool term_greater(const Term& a, const Term& b) {
  return grevlex_compare(a.monomial, b.monomial) > 0;
}

// Merges two descending term lists, adding coefficients (b scaled by sign).
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) {
      c = -1;
    } else if (j == b.size()) {
      c = 1;
    } else {
      c = grevlex_compare(a[i].monomial, b[j].monomial);
    }
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j]);
      if (sign < 0) out.back().coefficient = -out.back().coefficient;
      ++j;
    } else {
      Rational s = sign > 0 ? Rational(a[i].coefficient + b[j].coefficient)
                            : Rational(a[i].coefficient - b[j].coefficient);
      if (s != 0) out.push_back(Term{a[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

std::string rational_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace

Polynomial::Polynomial(std::size_t nvars) : nvars_(nvars) {
  if (nvars > kMaxVars)
    throw std::invalid_argument("at most " + std::to_string(kMaxVars) + " variables supported");
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  if (c != 0) p.terms_.push_back(Term{Monomial{}, c});
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::out_of_range("variable index out of range");
  return monomial(nvars, Monomial::variable(index));
}

Polynomial Polynomial::monomial(std::size_t nvars, const Monomial& m, const Rational& c) {
  Polynomial p(nvars);
  if (m.support_end() > nvars) throw std::out_of_range("monomial uses undeclared variable");
  if (c != 0) p.terms_.push_back(Term{m, c});
  return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, std::vector<Term> terms) {
  Polynomial p(nvars);
  std::sort(terms.begin(), terms.end(), term_greater);
  for (auto& t : terms) {
    if (t.monomial.support_end() > nvars)
      throw std::out_of_range("monomial uses undeclared variable");
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coefficient += t.coefficient;
    } else {
      p.terms_.push_back(std::move(t));
    }
  }
  std::erase_if(p.terms_, [](const Term& t) { return t.coefficient == 0; });
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

long Polynomial::total_degree() const {
  // Graded order: the first term has maximal degree.
  return terms_.empty() ? -1 : static_cast<long>(terms_.front().monomial.degree());
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coefficient;
  return 0;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& x) {
    return grevlex_compare(t.monomial, x) > 0;
  });
  if (it != terms_.end() && it->monomial == m) return it->coefficient;
  return 0;
}

Rational Polynomial::linear_coefficient(std::size_t i) const {
  return coefficient(Monomial::variable(i));
}

unsigned Polynomial::degree_in(std::size_t i) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial[i]);
  return d;
}

void Polynomial::check_compatible(const Polynomial& other) const {
  if (other.nvars_ != nvars_)
    throw std::invalid_argument("polynomials live in rings with different variable counts");
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_compatible(other);
  terms_ = merge(terms_, other.terms_, 1);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_compatible(other);
  terms_ = merge(terms_, other.terms_, -1);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coefficient *= c;
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.nvars_);
  if (b.size() == 1) return a.mul_monomial(b.terms_[0].monomial, b.terms_[0].coefficient);
  if (a.size() == 1) return b.mul_monomial(a.terms_[0].monomial, a.terms_[0].coefficient);
  // Sum of monomial multiples; each row is already sorted.
  std::vector<Term> acc;
  for (const auto& t : a.terms_) {
    auto row = b.mul_monomial(t.monomial, t.coefficient);
    acc = merge(acc, row.terms_, 1);
  }
  Polynomial out(a.nvars_);
  out.terms_ = std::move(acc);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& t : out.terms_) t.coefficient = -t.coefficient;
  return out;
}

Polynomial Polynomial::mul_monomial(const Monomial& m, const Rational& c) const {
  Polynomial out(nvars_);
  if (c == 0) return out;
  out.terms_.reserve(terms_.size());
  // Multiplication by a monomial preserves any monomial order.
  for (const auto& t : terms_) out.terms_.push_back(Term{t.monomial * m, t.coefficient * c});
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (exponent) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent) base *= base;
  }
  return result;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong arity");
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coefficient;
    for (std::size_t i = 0; i < nvars_ && v != 0; ++i) {
      for (unsigned k = 0; k < t.monomial[i]; ++k) v *= point[i];
    }
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::extend(std::size_t new_nvars, std::size_t offset) const {
  if (nvars_ + offset > new_nvars) throw std::invalid_argument("extension too small");
  if (offset == 0) {
    Polynomial out = *this;
    out.nvars_ = new_nvars;
    return out;
  }
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (std::size_t i = 0; i < nvars_; ++i) m.set(i + offset, t.monomial[i]);
    terms.push_back(Term{m, t.coefficient});
  }
  return from_terms(new_nvars, std::move(terms));
}

Polynomial Polynomial::truncate(unsigned max_degree) const {
  Polynomial out(nvars_);
  for (const auto& t : terms_)
    if (t.monomial.degree() <= max_degree) out.terms_.push_back(t);
  return out;
}

Polynomial Polynomial::drop_terms_with(std::size_t begin, std::size_t end) const {
  Polynomial out(nvars_);
  for (const auto& t : terms_) {
    bool keep = true;
    for (std::size_t i = begin; i < end && keep; ++i) keep = t.monomial[i] == 0;
    if (keep) out.terms_.push_back(t);
  }
  return out;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (names.size() < nvars_) throw std::invalid_argument("not enough variable names");
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coefficient;
    if (first) {
      if (c < 0) {
        os << '-';
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    bool wrote = false;
    if (c != 1 || t.monomial.is_one()) {
      os << rational_string(c);
      wrote = true;
    }
    for (std::size_t i = 0; i < nvars_; ++i) {
      const unsigned e = t.monomial[i];
      if (e == 0) continue;
      if (wrote) os << '*';
      os << names[i];
      if (e > 1) os << '^' << e;
      wrote = true;
    }
  }
  return os.str();
}

std::string Polynomial::to_string() const { return to_string(default_names(nvars_)); }

std::vector<std::string> default_names(std::size_t nvars) {
  std::vector<std::string> names;
  names.reserve(nvars);
  for (std::size_t i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

Polynomial partial_derivative(const Polynomial& f, std::size_t index) {
  if (index >= f.nvars()) throw std::out_of_range("partial derivative: variable index out of range");
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    const unsigned e = t.monomial[index];
    if (e == 0) continue;
    Monomial m = t.monomial;
    m.set(index, e - 1);
    terms.push_back(Term{m, t.coefficient * e});
  }
  return Polynomial::from_terms(f.nvars(), std::move(terms));
}

Polynomial substitute(const Polynomial& f, std::span<const Polynomial> assignment,
                      std::size_t result_nvars) {
  if (assignment.size() != f.nvars())
    throw std::invalid_argument("substitution: expected " + std::to_string(f.nvars()) +
                                " images, got " + std::to_string(assignment.size()));
  for (const auto& a : assignment)
    if (a.nvars() != result_nvars)
      throw std::invalid_argument("substitution: image lives in the wrong ring");
  // Cache powers of each image; exponents are small in practice.
  std::vector<std::vector<Polynomial>> powers(f.nvars());
  auto power = [&](std::size_t i, unsigned e) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(result_nvars, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * assignment[i]);
    return cache[e];
  };
  Polynomial out(result_nvars);
  for (const auto& t : f.terms()) {
    Polynomial term = Polynomial::constant(result_nvars, t.coefficient);
    for (std::size_t i = 0; i < f.nvars() && !term.is_zero(); ++i)
      if (t.monomial[i] != 0) term *= power(i, t.monomial[i]);
    out += term;
  }
  return out;
}

QuasiHomogeneity is_quasi_homogeneous(const Polynomial& f, std::span<const long> weights) {
  if (weights.size() != f.nvars())
    throw std::invalid_argument("weight vector length does not match variable count");
  QuasiHomogeneity out;
  if (f.is_zero()) {
    out.homogeneous = true;
    return out;
  }
  out.homogeneous = true;
  for (const auto& t : f.terms()) {
    long d = 0;
    for (std::size_t i = 0; i < f.nvars(); ++i) d += weights[i] * static_cast<long>(t.monomial[i]);
    if (!out.degree) {
      out.degree = d;
    } else if (*out.degree != d) {
      out.homogeneous = false;
      out.degree.reset();
      return out;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& f) { return os << f.to_string(); }

}  // namespace qsmooth::poly
