#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "internal.hpp"
#include "qsmooth/gb.hpp"

namespace qsmooth::gb {
namespace {

using Row = std::vector<std::pair<std::uint32_t, Rational>>;
constexpr std::uint32_t kNone = ~std::uint32_t{0};

// a - f * b over sorted sparse rows.
Row axpy(const Row& a, const Rational& f, const Row& b) {
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

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

GroebnerBasis truncated_basis(std::span<const VectorPolynomial> generators, unsigned N,
                              const MonomialOrder& order, std::size_t max_columns) {
  if (generators.empty()) throw std::invalid_argument("truncated_basis: empty generator list");
  if (order.kind() != MonomialOrder::Kind::GradedReverseLex)
    throw std::invalid_argument("truncated_basis: order must be degree compatible");
  const std::size_t n = generators[0].nvars(), rank = generators[0].rank();
  for (const auto& g : generators)
    if (g.rank() != rank || g.nvars() != n)
      throw std::invalid_argument("truncated_basis: generators of different shape");
  if (N == 0) {
    std::vector<VectorPolynomial> units;
    for (std::size_t k = 0; k < rank; ++k) units.push_back(VectorPolynomial::unit(rank, n, k));
    return detail::adopt_reduced(n, rank, order, std::move(units));
  }
  if (n > 0 && binomial(n + N - 1, n) * rank > max_columns)
    throw std::length_error("truncated_basis: too many terms below degree " + std::to_string(N));

  // Columns: terms of degree < N, largest first.
  std::vector<Monomial> monos;
  std::vector<unsigned> e(n, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t v, unsigned left) {
    if (v == n) {
      monos.emplace_back(std::span<const unsigned>(e));
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[v] = k;
      rec(v + 1, left - k);
    }
    e[v] = 0;
  };
  rec(0, N - 1);
  const detail::TermOrder ord{order};
  std::vector<ModuleTerm> cols;
  for (const auto& m : monos)
    for (std::size_t k = 0; k < rank; ++k) cols.push_back(ModuleTerm{m, k});
  std::sort(cols.begin(), cols.end(), [&](const ModuleTerm& a, const ModuleTerm& b) {
    return ord.compare(a.monomial, static_cast<std::uint32_t>(a.component), b.monomial,
                       static_cast<std::uint32_t>(b.component)) > 0;
  });
  std::vector<std::unordered_map<Monomial, std::uint32_t, poly::MonomialHash>> index(rank);
  for (std::uint32_t c = 0; c < cols.size(); ++c) index[cols[c].component].emplace(cols[c].monomial, c);
  // shift[c * n + v]: column of x_v * cols[c], or kNone at degree N.
  std::vector<std::uint32_t> shift(cols.size() * n, kNone);
  for (std::uint32_t c = 0; c < cols.size(); ++c)
    for (std::size_t v = 0; v < n; ++v) {
      const auto& map = index[cols[c].component];
      auto it = map.find(cols[c].monomial * Monomial::variable(v));
      if (it != map.end()) shift[c * n + v] = it->second;
    }

  // The span of the generators' truncations, closed under multiplication by
  // the variables: every stored pivot row is fed back times each x_v.
  std::vector<Row> pivot(cols.size());
  std::vector<bool> has(cols.size(), false);
  std::vector<Row> queue;
  for (const auto& g : generators) {
    Row r;
    for (std::size_t k = 0; k < rank; ++k)
      for (const auto& t : g[k].terms())
        if (t.monomial.degree() < N) r.emplace_back(index[k].at(t.monomial), t.coefficient);
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    queue.push_back(std::move(r));
  }
  while (!queue.empty()) {
    Row r = std::move(queue.back());
    queue.pop_back();
    while (!r.empty() && has[r.front().first]) r = axpy(r, r.front().second, pivot[r.front().first]);
    if (r.empty()) continue;
    const Rational inv = 1 / r.front().second;
    for (auto& [c, v] : r) v *= inv;
    for (std::size_t v = 0; v < n; ++v) {
      Row s;
      for (const auto& [c, x] : r)
        if (shift[c * n + v] != kNone) s.emplace_back(shift[c * n + v], x);
      // Multiplication by x_v is order preserving, so s stays sorted.
      if (!s.empty()) queue.push_back(std::move(s));
    }
    const std::uint32_t p = r.front().first;
    has[p] = true;
    pivot[p] = std::move(r);
  }

  // Gauss-Jordan: smallest pivots first, so each tail is cleared in one pass.
  for (std::uint32_t p = static_cast<std::uint32_t>(cols.size()); p-- > 0;) {
    if (!has[p]) continue;
    Row& r = pivot[p];
    Row out{r.front()};
    Row tail(r.begin() + 1, r.end());
    while (!tail.empty()) {
      const auto c = tail.front().first;
      if (has[c]) {
        tail = axpy(tail, tail.front().second, pivot[c]);
      } else {
        out.push_back(std::move(tail.front()));
        tail.erase(tail.begin());
      }
    }
    r = std::move(out);
  }

  // Minimal leads: pivots and degree-N terms not divisible by a pivot.
  std::vector<std::vector<Monomial>> leads(rank);
  for (std::uint32_t p = 0; p < cols.size(); ++p)
    if (has[p]) leads[cols[p].component].push_back(cols[p].monomial);
  auto divisible = [&](const Monomial& m, std::size_t k, const Monomial* self) {
    return std::any_of(leads[k].begin(), leads[k].end(),
                       [&](const Monomial& l) { return (self == nullptr || !(l == *self)) && l.divides(m); });
  };
  auto to_vector = [&](const Row& r) {
    std::vector<std::vector<poly::Term>> terms(rank);
    for (const auto& [c, v] : r) terms[cols[c].component].push_back(poly::Term{cols[c].monomial, v});
    std::vector<Polynomial> comps;
    for (auto& t : terms) comps.push_back(Polynomial::from_terms(n, std::move(t)));
    return VectorPolynomial(std::move(comps));
  };
  std::vector<VectorPolynomial> out;
  for (std::uint32_t p = 0; p < cols.size(); ++p)
    if (has[p] && !divisible(cols[p].monomial, cols[p].component, &cols[p].monomial)) out.push_back(to_vector(pivot[p]));
  std::vector<Monomial> top;
  e.assign(n, 0);
  std::function<void(std::size_t, unsigned)> rec_top = [&](std::size_t v, unsigned left) {
    if (v + 1 >= n) {
      if (n > 0) e[v] = left;
      top.emplace_back(std::span<const unsigned>(e));
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[v] = k;
      rec_top(v + 1, left - k);
    }
    e[v] = 0;
  };
  if (n > 0) rec_top(0, N);
  for (std::size_t k = 0; k < rank; ++k)
    for (const auto& m : top)
      if (!divisible(m, k, nullptr)) {
        std::vector<Polynomial> comps(rank, Polynomial(n));
        comps[k] = Polynomial::monomial(n, m);
        out.emplace_back(std::move(comps));
      }
  return detail::adopt_reduced(n, rank, order, std::move(out));
}

}  // namespace qsmooth::gb
