#include "internal.hpp"

#include <algorithm>

namespace qsmooth::gb::detail {

void ReducerSet::add(const IVec* p) {
  const auto comp = p->front().comp;
  leads_[comp].push_back(p->front().m.raw());
  polys_[comp].push_back(p);
}

const IVec* ReducerSet::find(const ITerm& t) const {
  const auto& leads = leads_[t.comp];
  const auto k = kernels::active().find_divisor(leads.data(), leads.size(), t.m.raw());
  return k < 0 ? nullptr : polys_[t.comp][static_cast<std::size_t>(k)];
}

void ReducerSet::clear() {
  for (auto& l : leads_) l.clear();
  for (auto& p : polys_) p.clear();
}

IVec to_integer(const VectorPolynomial& v, const TermOrder& ord, Rational* scale) {
  IVec out;
  Integer den = 1;
  for (std::size_t k = 0; k < v.rank(); ++k)
    for (const auto& t : v[k].terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coefficient.get_den_mpz_t());
  for (std::size_t k = 0; k < v.rank(); ++k) {
    for (const auto& t : v[k].terms()) {
      Integer c = t.coefficient.get_num() * (den / t.coefficient.get_den());
      out.push_back(ITerm{t.monomial, static_cast<std::uint32_t>(k), std::move(c)});
    }
  }
  std::sort(out.begin(), out.end(), [&](const ITerm& a, const ITerm& b) { return ord.compare(a, b) > 0; });
  Rational s(den);
  const Integer g = make_primitive(out);
  if (g != 0) s /= Rational(g);
  if (scale) *scale = s;
  return out;
}

VectorPolynomial to_rational(const IVec& p, std::size_t rank, std::size_t nvars,
                             const Rational& divisor) {
  std::vector<std::vector<poly::Term>> comps(rank);
  for (const auto& t : p) comps[t.comp].push_back(poly::Term{t.m, Rational(t.c) / divisor});
  std::vector<Polynomial> out;
  out.reserve(rank);
  for (auto& c : comps) out.push_back(Polynomial::from_terms(nvars, std::move(c)));
  return VectorPolynomial(std::move(out));
}

Integer make_primitive(IVec& p) {
  if (p.empty()) return 0;
  Integer g = 0;
  for (const auto& t : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (g == 1) break;
  }
  if (p.front().c < 0) g = -g;
  if (g != 1) {
    for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
  }
  return g;
}

namespace {

// out = a * p[from..] - b * u * g[1..], merged in descending order.
IVec combine(const IVec& p, std::size_t from, const Integer& a, const IVec& g, const Monomial& u,
             const Integer& b, const TermOrder& ord) {
  IVec out;
  out.reserve((p.size() - from) + g.size());
  std::size_t i = from, j = 1;
  const auto& k = kernels::active();
  ITerm gt;
  bool have_gt = false;
  auto load_g = [&] {
    if (j < g.size()) {
      kernels::ExpVec m;
      k.add(g[j].m.raw(), u.raw(), m);
      gt.m = Monomial(m);
      gt.comp = g[j].comp;
      have_gt = true;
    } else {
      have_gt = false;
    }
  };
  load_g();
  while (i < p.size() || have_gt) {
    int c;
    if (i == p.size()) {
      c = -1;
    } else if (!have_gt) {
      c = 1;
    } else {
      c = ord.compare(p[i].m, p[i].comp, gt.m, gt.comp);
    }
    if (c > 0) {
      out.push_back(ITerm{p[i].m, p[i].comp, p[i].c * a});
      ++i;
    } else if (c < 0) {
      out.push_back(ITerm{gt.m, gt.comp, -(g[j].c * b)});
      ++j;
      load_g();
    } else {
      Integer s = p[i].c * a - g[j].c * b;
      if (s != 0) out.push_back(ITerm{p[i].m, p[i].comp, std::move(s)});
      ++i;
      ++j;
      load_g();
    }
  }
  return out;
}

}  // namespace

void reduce(IVec& p, const ReducerSet& reducers, const TermOrder& ord, bool full, Rational* scale) {
  IVec done;
  std::size_t steps = 0;
  Integer g, a, b;
  while (!p.empty()) {
    const IVec* r = reducers.find(p.front());
    if (r == nullptr) {
      if (!full) break;
      // Move the irreducible head to `done`; find the next reducible term.
      std::size_t head = 0;
      while (head < p.size() && reducers.find(p[head]) == nullptr) ++head;
      for (std::size_t t = 0; t < head; ++t) done.push_back(std::move(p[t]));
      p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(head));
      continue;
    }
    const ITerm& lead = p.front();
    mpz_gcd(g.get_mpz_t(), r->front().c.get_mpz_t(), lead.c.get_mpz_t());
    mpz_divexact(a.get_mpz_t(), r->front().c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), lead.c.get_mpz_t(), g.get_mpz_t());
    if (a < 0) {
      a = -a;
      b = -b;
    }
    const Monomial u = lead.m / r->front().m;
    p = combine(p, 1, a, *r, u, b, ord);
    if (a != 1) {
      for (auto& t : done) t.c *= a;
      if (scale) *scale *= Rational(a);
    }
    if (++steps % 16 == 0 && a != 1) {
      // Periodic content removal keeps coefficients bounded.
      Integer cg = 0;
      for (const auto& t : done) mpz_gcd(cg.get_mpz_t(), cg.get_mpz_t(), t.c.get_mpz_t());
      for (const auto& t : p) {
        if (cg == 1) break;
        mpz_gcd(cg.get_mpz_t(), cg.get_mpz_t(), t.c.get_mpz_t());
      }
      if (cg > 1) {
        for (auto& t : done) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), cg.get_mpz_t());
        for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), cg.get_mpz_t());
        if (scale) *scale /= Rational(cg);
      }
    }
  }
  if (!done.empty()) {
    done.insert(done.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    p = std::move(done);
  }
}

IVec s_vector(const IVec& f, const IVec& g, const TermOrder& ord) {
  const Monomial l = lcm(f.front().m, g.front().m);
  const Monomial uf = l / f.front().m;
  const Monomial ug = l / g.front().m;
  Integer gg;
  mpz_gcd(gg.get_mpz_t(), f.front().c.get_mpz_t(), g.front().c.get_mpz_t());
  const Integer a = g.front().c / gg;  // multiplies f
  const Integer b = f.front().c / gg;  // multiplies g
  // a*uf*f - b*ug*g; build uf*f then combine with g.
  IVec fu;
  fu.reserve(f.size());
  for (std::size_t i = 1; i < f.size(); ++i) fu.push_back(ITerm{f[i].m * uf, f[i].comp, f[i].c});
  return combine(fu, 0, a, g, ug, b, ord);
}

}  // namespace qsmooth::gb::detail
