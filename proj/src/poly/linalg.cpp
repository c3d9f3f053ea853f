#include "qsmooth/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace qsmooth::linalg {

Vector RowSpace::reduce(Vector v) const {
  if (v.size() != dim_) throw std::invalid_argument("row has wrong length");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Rational c = v[pivots_[r]];
    if (c == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      if (rows_[r][j] != 0) v[j] -= c * rows_[r][j];
  }
  return v;
}

bool RowSpace::contains(const Vector& v) const {
  const Vector r = reduce(v);
  for (const auto& x : r)
    if (x != 0) return false;
  return true;
}

bool RowSpace::insert(Vector v) {
  v = reduce(std::move(v));
  std::size_t pivot = dim_;
  for (std::size_t j = 0; j < dim_; ++j) {
    if (v[j] != 0) {
      pivot = j;
      break;
    }
  }
  if (pivot == dim_) return false;
  const Rational inv = 1 / v[pivot];
  for (auto& x : v) x *= inv;
  // Keep the basis fully reduced.
  for (auto& row : rows_) {
    const Rational c = row[pivot];
    if (c == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      if (v[j] != 0) row[j] -= c * v[j];
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(pivot);
  return true;
}

std::size_t rank(const Matrix& m) {
  if (m.empty()) return 0;
  RowSpace space(m.front().size());
  for (const auto& row : m) space.insert(row);
  return space.rank();
}

Matrix nullspace(const Matrix& m, std::size_t cols) {
  // Reduced row echelon form, then read off free columns.
  Matrix a = m;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    const Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace uni {

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

std::size_t degree(const Poly& p) { return p.empty() ? 0 : p.size() - 1; }

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<unsigned long>(k));
  trim(d);
  return d;
}

void divide(const Poly& a, const Poly& b, Poly& quotient, Poly& remainder) {
  if (b.empty()) throw std::invalid_argument("division by the zero polynomial");
  remainder = a;
  trim(remainder);
  quotient.assign(remainder.size() >= b.size() ? remainder.size() - b.size() + 1 : 0, 0);
  while (!remainder.empty() && remainder.size() >= b.size()) {
    const std::size_t shift = remainder.size() - b.size();
    const Rational c = remainder.back() / b.back();
    quotient[shift] = c;
    for (std::size_t k = 0; k < b.size(); ++k) remainder[k + shift] -= c * b[k];
    trim(remainder);
  }
  trim(quotient);
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly q, r;
    divide(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

Poly squarefree_part(const Poly& p) {
  Poly q, r;
  const Poly g = gcd(p, derivative(p));
  if (g.empty()) return p;
  divide(p, g, q, r);
  const Rational lead = q.back();
  for (auto& c : q) c /= lead;
  return q;
}

Rational evaluate(const Poly& p, const Rational& t) {
  Rational acc = 0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * t + p[k];
  return acc;
}

namespace {

// Positive divisors of |n| > 0 by trial division; empty optional past the cap.
std::optional<std::vector<poly::Integer>> divisors(poly::Integer n, unsigned long max_trials) {
  n = abs(n);
  std::vector<std::pair<poly::Integer, unsigned>> factors;
  unsigned long trials = 0;
  for (poly::Integer q = 2; q * q <= n; ++q) {
    if (++trials > max_trials) return std::nullopt;
    unsigned k = 0;
    while (n % q == 0) {
      n /= q;
      ++k;
    }
    if (k) factors.emplace_back(q, k);
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<poly::Integer> out{1};
  for (const auto& [q, k] : factors) {
    const std::size_t base = out.size();
    poly::Integer pw = 1;
    for (unsigned i = 1; i <= k; ++i) {
      pw *= q;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pw);
    }
  }
  return out;
}

}  // namespace

std::optional<std::vector<Rational>> rational_roots(const Poly& p_in, unsigned long max_trials) {
  Poly p = p_in;
  trim(p);
  if (p.empty()) throw std::invalid_argument("rational_roots of the zero polynomial");
  std::vector<Rational> roots;
  std::size_t low = 0;
  while (p[low] == 0) ++low;
  if (low > 0) roots.push_back(0);
  // Integer coefficients of p / t^low.
  poly::Integer den = 1;
  for (std::size_t k = low; k < p.size(); ++k) den = lcm(den, poly::Integer(p[k].get_den()));
  std::vector<poly::Integer> c;
  for (std::size_t k = low; k < p.size(); ++k) c.push_back(poly::Integer(p[k] * den));
  const auto num_divs = divisors(c.front(), max_trials);
  const auto lead_divs = divisors(c.back(), max_trials);
  if (!num_divs || !lead_divs) return std::nullopt;
  Poly q(p.begin() + static_cast<std::ptrdiff_t>(low), p.end());
  for (const auto& u : *num_divs)
    for (const auto& v : *lead_divs) {
      if (gcd(u, v) != 1) continue;
      for (int sign : {1, -1}) {
        Rational tc(sign * u, v);
        tc.canonicalize();
        if (evaluate(q, tc) == 0) roots.push_back(tc);
      }
    }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace uni
}  // namespace qsmooth::linalg
