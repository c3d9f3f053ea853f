#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <span>
#include <unordered_map>

namespace qsmooth::testing {
namespace {

using poly::Monomial;
using poly::Rational;

void enumerate(std::size_t nvars, unsigned max_degree, std::vector<Monomial>& out) {
  std::vector<unsigned> e(nvars, 0);
  // All exponent vectors of total degree <= max_degree.
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t v, unsigned left) {
    if (v == nvars) {
      out.emplace_back(std::span<const unsigned>(e));
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[v] = k;
      rec(v + 1, left - k);
    }
    e[v] = 0;
  };
  rec(0, max_degree);
}

// Sparse row echelon form over Q; pivot = smallest column index.
class Echelon {
 public:
  using Row = std::vector<std::pair<std::size_t, Rational>>;

  void insert(Row row) {
    while (!row.empty()) {
      auto it = pivots_.find(row.front().first);
      if (it == pivots_.end()) {
        const Rational inv = 1 / row.front().second;
        for (auto& [c, v] : row) v *= inv;
        pivots_.emplace(row.front().first, std::move(row));
        return;
      }
      row = subtract(row, row.front().second, it->second);
    }
  }

  std::size_t rank() const { return pivots_.size(); }

 private:
  static Row subtract(const Row& a, const Rational& f, const Row& b) {
    Row out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.emplace_back(b[j].first, -f * b[j].second);
        ++j;
      } else {
        Rational v = a[i].second - f * b[j].second;
        if (v != 0) out.emplace_back(a[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  }

  std::map<std::size_t, Row> pivots_;
};

struct Columns {
  std::vector<Monomial> monomials;  // sorted by degree
  std::unordered_map<Monomial, std::size_t, poly::MonomialHash> index;

  Columns(std::size_t nvars, unsigned max_degree) {
    std::vector<Monomial> all;
    enumerate(nvars, max_degree, all);
    std::stable_sort(all.begin(), all.end(),
                     [](const Monomial& a, const Monomial& b) { return a.degree() < b.degree(); });
    monomials = std::move(all);
    for (std::size_t i = 0; i < monomials.size(); ++i) index.emplace(monomials[i], i);
  }
};

long generator_degree(const Generator& g) {
  long d = -1;
  for (const auto& p : g) d = std::max(d, p.total_degree());
  return d;
}

// Rank of the span of m * g, truncated to degree <= bound when `truncate`,
// otherwise only products that fit entirely.
std::size_t span_rank(const std::vector<Generator>& gens, std::size_t nvars, unsigned bound,
                      bool truncate, std::size_t& ncols) {
  const Columns cols(nvars, bound);
  const std::size_t rank_d = gens.empty() ? 1 : gens.front().size();
  const std::size_t per = cols.monomials.size();
  ncols = per * rank_d;
  Echelon ech;
  for (const auto& g : gens) {
    const long gd = generator_degree(g);
    if (gd < 0) continue;
    for (const auto& m : cols.monomials) {
      if (!truncate && m.degree() + static_cast<unsigned>(gd) > bound) continue;
      if (truncate && m.degree() > bound) continue;
      std::vector<std::pair<std::size_t, Rational>> row;
      for (std::size_t k = 0; k < g.size(); ++k) {
        for (const auto& t : g[k].terms()) {
          const Monomial prod = t.monomial * m;
          if (prod.degree() > bound) continue;
          row.emplace_back(cols.index.at(prod) * rank_d + k, t.coefficient);
        }
      }
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      if (!row.empty()) ech.insert(std::move(row));
    }
  }
  return ech.rank();
}

}  // namespace

std::size_t macaulay_deficiency(const std::vector<Generator>& gens, std::size_t nvars,
                                unsigned degree_bound) {
  std::size_t ncols = 0;
  const std::size_t r = span_rank(gens, nvars, degree_bound, false, ncols);
  return ncols - r;
}

std::size_t local_colength(const std::vector<Generator>& gens, std::size_t nvars, unsigned n) {
  if (n == 0) return 0;
  std::size_t ncols = 0;
  // Monomials of degree < n span P / m^n.
  const std::size_t r = span_rank(gens, nvars, n - 1, true, ncols);
  return ncols - r;
}

LocalColength local_colength_stable(const std::vector<Generator>& gens, std::size_t nvars,
                                    unsigned start, unsigned max_degree) {
  LocalColength out;
  std::size_t prev = local_colength(gens, nvars, start);
  for (unsigned n = start + 1; n <= max_degree; ++n) {
    const std::size_t cur = local_colength(gens, nvars, n);
    if (cur == prev) {
      out.dimension = cur;
      out.degree = n - 1;
      out.stable = true;
      return out;
    }
    prev = cur;
  }
  out.dimension = prev;
  out.degree = max_degree;
  return out;
}

std::map<long, std::size_t> local_colength_by_character(const std::vector<Generator>& gens, std::size_t nvars,
                                                        unsigned n, long r, const std::vector<long>& weights,
                                                        const std::vector<long>& shifts) {
  std::map<long, std::size_t> out;
  if (n == 0) return out;
  const Columns cols(nvars, n - 1);
  const std::size_t rank_d = shifts.size();
  auto character = [&](const Monomial& m, std::size_t k) {
    long c = shifts[k];
    for (std::size_t i = 0; i < nvars; ++i) c += weights[i] * static_cast<long>(m[i]);
    return ((c % r) + r) % r;
  };
  std::map<long, Echelon> ech;
  std::map<long, std::size_t> ncols;
  for (const auto& m : cols.monomials)
    for (std::size_t k = 0; k < rank_d; ++k) ++ncols[character(m, k)];
  for (const auto& g : gens) {
    for (const auto& m : cols.monomials) {
      std::map<long, std::vector<std::pair<std::size_t, Rational>>> rows;
      for (std::size_t k = 0; k < g.size(); ++k)
        for (const auto& t : g[k].terms()) {
          const Monomial prod = t.monomial * m;
          if (prod.degree() >= n) continue;
          rows[character(prod, k)].emplace_back(cols.index.at(prod) * rank_d + k, t.coefficient);
        }
      for (auto& [c, row] : rows) {
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        ech[c].insert(std::move(row));
      }
    }
  }
  for (const auto& [c, total] : ncols) {
    const std::size_t rk = ech.count(c) ? ech.at(c).rank() : 0;
    if (total > rk) out[c] = total - rk;
  }
  return out;
}

bool terminal_by_enumeration(unsigned r, unsigned a, unsigned b, unsigned c) {
  // age(g^j) * r = sum of (j*w mod r); terminal iff > r for all j != 0.
  for (unsigned j = 1; j < r; ++j) {
    const unsigned s = (j * a) % r + (j * b) % r + (j * c) % r;
    if (s <= r) return false;
  }
  return true;
}

}  // namespace qsmooth::testing
