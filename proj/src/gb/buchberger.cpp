#include <algorithm>
#include <deque>
#include <sstream>

#include "internal.hpp"
#include "qsmooth/gb.hpp"

namespace qsmooth::gb {

using detail::IVec;
using detail::ITerm;
using detail::TermOrder;

// ---------------------------------------------------------------------------
// VectorPolynomial

VectorPolynomial::VectorPolynomial(std::vector<Polynomial> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("vector polynomial needs a component");
  for (const auto& c : components_)
    if (c.nvars() != components_[0].nvars())
      throw std::invalid_argument("vector polynomial components differ in variable count");
}

VectorPolynomial VectorPolynomial::zero(std::size_t rank, std::size_t nvars) {
  return VectorPolynomial(std::vector<Polynomial>(rank, Polynomial(nvars)));
}

VectorPolynomial VectorPolynomial::unit(std::size_t rank, std::size_t nvars, std::size_t k) {
  std::vector<Polynomial> c(rank, Polynomial(nvars));
  c.at(k) = Polynomial::constant(nvars, 1);
  return VectorPolynomial(std::move(c));
}

bool VectorPolynomial::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

void VectorPolynomial::check_compatible(const VectorPolynomial& other) const {
  if (other.rank() != rank() || other.nvars() != nvars())
    throw std::invalid_argument("vector polynomials of different shape");
}

VectorPolynomial& VectorPolynomial::operator+=(const VectorPolynomial& other) {
  check_compatible(other);
  for (std::size_t k = 0; k < rank(); ++k) components_[k] += other.components_[k];
  return *this;
}

VectorPolynomial& VectorPolynomial::operator-=(const VectorPolynomial& other) {
  check_compatible(other);
  for (std::size_t k = 0; k < rank(); ++k) components_[k] -= other.components_[k];
  return *this;
}

VectorPolynomial operator*(const Polynomial& f, const VectorPolynomial& v) {
  std::vector<Polynomial> c;
  c.reserve(v.rank());
  for (const auto& p : v.components_) c.push_back(f * p);
  return VectorPolynomial(std::move(c));
}

std::string VectorPolynomial::to_string(std::span<const std::string> names) const {
  std::string out;
  for (std::size_t k = 0; k < rank(); ++k) {
    if (k) out += " | ";
    out += components_[k].to_string(names);
  }
  return out;
}

std::string VectorPolynomial::to_string() const { return to_string(poly::default_names(nvars())); }

// ---------------------------------------------------------------------------
// Basis state

struct GbImpl {
  std::size_t nvars = 0;
  std::size_t rank = 1;
  TermOrder ord;
  std::vector<VectorPolynomial> gens;
  std::deque<IVec> igens;  // deque keeps element addresses stable
  detail::ReducerSet reducers{1};
};

GroebnerBasis make_basis(std::shared_ptr<const GbImpl> impl) { return GroebnerBasis(std::move(impl)); }

namespace {

std::shared_ptr<GbImpl> finish(std::size_t nvars, std::size_t rank, const TermOrder& ord,
                               std::vector<VectorPolynomial> monic) {
  auto impl = std::make_shared<GbImpl>();
  impl->nvars = nvars;
  impl->rank = rank;
  impl->ord = ord;
  impl->reducers = detail::ReducerSet(rank);
  // Sort by ascending leading term.
  std::vector<std::pair<IVec, VectorPolynomial>> items;
  for (auto& g : monic) items.emplace_back(detail::to_integer(g, ord), std::move(g));
  std::sort(items.begin(), items.end(), [&](const auto& a, const auto& b) {
    return ord.compare(a.first.front(), b.first.front()) < 0;
  });
  for (auto& [iv, rv] : items) {
    impl->igens.push_back(std::move(iv));
    impl->gens.push_back(std::move(rv));
  }
  for (const auto& iv : impl->igens) impl->reducers.add(&iv);
  return impl;
}

VectorPolynomial make_monic(const VectorPolynomial& v, const TermOrder& ord) {
  // Leading coefficient under the module order.
  const IVec iv = detail::to_integer(v, ord);
  Rational lead = 0;
  const auto& t = iv.front();
  lead = v[t.comp].coefficient(t.m);
  std::vector<Polynomial> c;
  for (const auto& p : v.components()) c.push_back(p * Rational(1 / lead));
  return VectorPolynomial(std::move(c));
}

unsigned ivec_degree(const IVec& p) {
  unsigned d = 0;
  for (const auto& t : p) d = std::max<unsigned>(d, t.m.degree());
  return d;
}

struct Pair {
  std::uint32_t i, j;
  Monomial lcm;
  std::uint32_t degree;
  std::uint32_t sugar;
};

// Normal strategy: smallest lcm first. For graded orders the lcm degree
// decides, ties going to the index pair; otherwise the term order itself
// ranks the lcms, with sugar and indices as tie breaks.
bool pair_before(const Pair& a, const Pair& b, const TermOrder& ord, bool graded) {
  if (a.degree != b.degree && graded) return a.degree < b.degree;
  if (!graded) {
    const int c = ord.order.compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
  }
  if (a.i != b.i) return a.i < b.i;
  return a.j < b.j;
}

class Engine {
 public:
  Engine(std::size_t nvars, std::size_t rank, TermOrder ord, const GbOptions& opts)
      : nvars_(nvars), rank_(rank), ord_(std::move(ord)), opts_(opts), reducers_(rank) {}

  void insert(IVec p, unsigned sugar) {
    detail::reduce(p, reducers_, ord_, true);
    if (p.empty()) return;
    detail::make_primitive(p);
    if (opts_.max_degree && ivec_degree(p) > *opts_.max_degree)
      throw DegreeLimitExceeded("basis degree " + std::to_string(ivec_degree(p)) +
                                " exceeds limit " + std::to_string(*opts_.max_degree));
    update(std::move(p), std::max(sugar, ivec_degree(p)));
  }

  void run() {
    while (!pairs_.empty()) {
      const bool graded = ord_.order.kind() == MonomialOrder::Kind::GradedReverseLex;
      auto best = std::min_element(pairs_.begin(), pairs_.end(),
                                   [&](const Pair& a, const Pair& b) { return pair_before(a, b, ord_, graded); });
      const Pair pr = *best;
      pairs_.erase(best);
      insert(detail::s_vector(polys_[pr.i], polys_[pr.j], ord_), pr.sugar);
    }
  }

  std::vector<VectorPolynomial> reduced() const {
    std::vector<VectorPolynomial> out;
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (!active_[k]) continue;
      const IVec& g = polys_[k];
      IVec tail(g.begin() + 1, g.end());
      Rational scale = 1;
      detail::reduce(tail, reducers_, ord_, true, &scale);
      IVec lead{g.front()};
      VectorPolynomial v = detail::to_rational(lead, rank_, nvars_) +
                           detail::to_rational(tail, rank_, nvars_, scale);
      out.push_back(make_monic(v, ord_));
    }
    return out;
  }

 private:
  bool coprime_leads(std::uint32_t a, std::uint32_t b) const {
    return rank_ == 1 && polys_[a].front().m.coprime(polys_[b].front().m);
  }

  void rebuild_reducers() {
    reducers_.clear();
    for (std::size_t k = 0; k < polys_.size(); ++k)
      if (active_[k]) reducers_.add(&polys_[k]);
  }

  void update(IVec h_poly, unsigned sugar) {
    const auto h = static_cast<std::uint32_t>(polys_.size());
    polys_.push_back(std::move(h_poly));
    sugar_.push_back(sugar);
    active_.push_back(false);
    const ITerm& lh = polys_[h].front();

    std::vector<std::uint32_t> candidates;
    for (std::uint32_t g = 0; g < h; ++g)
      if (active_[g] && polys_[g].front().comp == lh.comp) candidates.push_back(g);

    struct Kept {
      std::uint32_t g;
      Monomial lcm;
      bool coprime;
    };
    std::vector<Monomial> lcms;
    lcms.reserve(candidates.size());
    for (auto g : candidates) lcms.push_back(lcm(lh.m, polys_[g].front().m));

    std::vector<Kept> kept;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      const bool coprime = coprime_leads(h, candidates[a]);
      bool keep = true;
      if (!coprime) {
        for (std::size_t b = a + 1; b < candidates.size() && keep; ++b)
          if (lcms[b].divides(lcms[a])) keep = false;
        for (const auto& k : kept)
          if (keep && k.lcm.divides(lcms[a])) keep = false;
      }
      if (keep) kept.push_back(Kept{candidates[a], lcms[a], coprime});
    }

    // Chain criterion on existing pairs.
    std::erase_if(pairs_, [&](const Pair& p) {
      if (polys_[p.i].front().comp != lh.comp) return false;
      if (!lh.m.divides(p.lcm)) return false;
      const Monomial li = lcm(polys_[p.i].front().m, lh.m);
      const Monomial lj = lcm(polys_[p.j].front().m, lh.m);
      return !(li == p.lcm) && !(lj == p.lcm);
    });

    for (const auto& k : kept) {
      if (k.coprime) continue;
      const unsigned d = k.lcm.degree();
      const unsigned s1 = sugar_[k.g] + d - polys_[k.g].front().m.degree();
      const unsigned s2 = sugar_[h] + d - lh.m.degree();
      pairs_.push_back(Pair{k.g, h, k.lcm, d, std::max(s1, s2)});
    }

    bool dropped = false;
    for (std::uint32_t g = 0; g < h; ++g) {
      if (active_[g] && polys_[g].front().comp == lh.comp && lh.m.divides(polys_[g].front().m)) {
        active_[g] = false;
        dropped = true;
      }
    }
    active_[h] = true;
    if (dropped) {
      rebuild_reducers();
    } else {
      reducers_.add(&polys_[h]);
    }

    // Keep the basis interreduced; stale tails feed coefficient swell.
    for (std::uint32_t g = 0; g < h; ++g) {
      if (!active_[g]) continue;
      const IVec& p = polys_[g];
      const bool hit = std::any_of(p.begin() + 1, p.end(), [&](const ITerm& t) {
        return t.comp == lh.comp && lh.m.divides(t.m);
      });
      if (hit) tail_reduce(polys_[g]);
    }
  }

  void tail_reduce(IVec& g) {
    IVec tail(std::make_move_iterator(g.begin() + 1), std::make_move_iterator(g.end()));
    g.resize(1);
    Rational scale = 1;
    detail::reduce(tail, reducers_, ord_, true, &scale);
    // g = lead + tail_out / scale; clear the fraction.
    const poly::Integer num = scale.get_num(), den = scale.get_den();
    g.front().c *= num;
    for (auto& t : tail) {
      t.c *= den;
      g.push_back(std::move(t));
    }
    detail::make_primitive(g);
  }

  std::size_t nvars_, rank_;
  TermOrder ord_;
  GbOptions opts_;
  std::deque<IVec> polys_;
  std::vector<bool> active_;
  std::vector<unsigned> sugar_;
  std::vector<Pair> pairs_;
  detail::ReducerSet reducers_;
};

}  // namespace

GroebnerBasis detail::adopt_reduced(std::size_t nvars, std::size_t rank, const MonomialOrder& order,
                                    std::vector<VectorPolynomial> monic) {
  return make_basis(finish(nvars, rank, TermOrder{order}, std::move(monic)));
}

// ---------------------------------------------------------------------------
// Entry points

std::string cache_key(std::span<const VectorPolynomial> generators, const MonomialOrder& order) {
  std::ostringstream os;
  const std::size_t nvars = generators.empty() ? 0 : generators[0].nvars();
  const std::size_t rank = generators.empty() ? 0 : generators[0].rank();
  os << "qsmooth-generators v1\norder " << order.to_string() << "\nnvars " << nvars << "\nrank "
     << rank << "\nsize " << generators.size() << '\n';
  for (const auto& g : generators) os << g.to_string() << '\n';
  return os.str();
}

GroebnerBasis buchberger(std::span<const VectorPolynomial> generators, const MonomialOrder& order,
                         const GbOptions& options) {
  if (generators.empty()) throw std::invalid_argument("buchberger: empty generator list");
  const std::size_t rank = generators[0].rank();
  const std::size_t nvars = generators[0].nvars();
  for (const auto& g : generators)
    if (g.rank() != rank || g.nvars() != nvars)
      throw std::invalid_argument("buchberger: generators of different shape");

  std::string key;
  if (options.store) {
    key = cache_key(generators, order);
    if (auto hit = options.store->load(key)) {
      GroebnerBasis b = GroebnerBasis::deserialize(*hit);
      if (b.rank() == rank && b.nvars() == nvars && b.order() == order) return b;
    }
  }

  const TermOrder ord{order};
  Engine engine(nvars, rank, ord, options);
  for (const auto& g : generators) {
    if (g.is_zero()) continue;
    engine.insert(detail::to_integer(g, ord), 0);
  }
  engine.run();
  GroebnerBasis basis = make_basis(finish(nvars, rank, ord, engine.reduced()));
  if (options.store) options.store->save(key, basis.serialize());
  return basis;
}

GroebnerBasis buchberger(std::span<const Polynomial> generators, const MonomialOrder& order,
                         const GbOptions& options) {
  std::vector<VectorPolynomial> v;
  v.reserve(generators.size());
  for (const auto& g : generators) v.push_back(VectorPolynomial{g});
  return buchberger(v, order, options);
}

// ---------------------------------------------------------------------------
// GroebnerBasis accessors

std::size_t GroebnerBasis::nvars() const { return impl_->nvars; }
std::size_t GroebnerBasis::rank() const { return impl_->rank; }
const MonomialOrder& GroebnerBasis::order() const { return impl_->ord.order; }
const std::vector<VectorPolynomial>& GroebnerBasis::generators() const { return impl_->gens; }

std::vector<Polynomial> GroebnerBasis::polynomials() const {
  std::vector<Polynomial> out;
  for (const auto& g : impl_->gens) out.push_back(g[0]);
  return out;
}

std::vector<ModuleTerm> GroebnerBasis::leading_terms() const {
  std::vector<ModuleTerm> out;
  for (const auto& g : impl_->igens) out.push_back(ModuleTerm{g.front().m, g.front().comp});
  return out;
}

unsigned GroebnerBasis::max_degree() const {
  unsigned d = 0;
  for (const auto& g : impl_->igens) d = std::max(d, ivec_degree(g));
  return d;
}

int GroebnerBasis::compare(const ModuleTerm& a, const ModuleTerm& b) const {
  return impl_->ord.compare(a.monomial, static_cast<std::uint32_t>(a.component), b.monomial,
                            static_cast<std::uint32_t>(b.component));
}

VectorPolynomial GroebnerBasis::normal_form(const VectorPolynomial& v) const {
  if (v.rank() != impl_->rank || v.nvars() != impl_->nvars)
    throw std::invalid_argument("normal_form: dimension mismatch");
  if (v.is_zero()) return v;
  Rational scale = 1;
  IVec p = detail::to_integer(v, impl_->ord, &scale);
  detail::reduce(p, impl_->reducers, impl_->ord, true, &scale);
  return detail::to_rational(p, impl_->rank, impl_->nvars, scale);
}

Polynomial GroebnerBasis::normal_form(const Polynomial& f) const {
  if (impl_->rank != 1) throw std::invalid_argument("normal_form: basis is not an ideal basis");
  return normal_form(VectorPolynomial{f})[0];
}

bool GroebnerBasis::is_unit() const {
  std::vector<bool> seen(impl_->rank, false);
  for (const auto& g : impl_->igens)
    if (g.front().m.is_one()) seen[g.front().comp] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

std::string GroebnerBasis::serialize() const {
  std::ostringstream os;
  os << "qsmooth-groebner v1\norder " << order().to_string() << "\nnvars " << nvars() << "\nrank "
     << rank() << "\nsize " << size() << '\n';
  for (const auto& g : generators()) os << g.to_string() << '\n';
  return os.str();
}

GroebnerBasis GroebnerBasis::deserialize(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto expect = [&](const std::string& prefix) {
    if (!std::getline(is, line) || line.rfind(prefix, 0) != 0)
      throw std::runtime_error("malformed basis text: expected '" + prefix + "'");
    return line.substr(prefix.size());
  };
  expect("qsmooth-groebner v1");
  const MonomialOrder order = MonomialOrder::parse(expect("order "));
  const std::size_t nvars = std::stoul(expect("nvars "));
  const std::size_t rank = std::stoul(expect("rank "));
  const std::size_t size = std::stoul(expect("size "));
  const auto names = poly::default_names(nvars);
  std::vector<VectorPolynomial> gens;
  for (std::size_t i = 0; i < size; ++i) {
    if (!std::getline(is, line)) throw std::runtime_error("malformed basis text: truncated");
    std::vector<Polynomial> comps;
    std::size_t pos = 0;
    for (;;) {
      const auto bar = line.find(" | ", pos);
      comps.push_back(poly::parse(line.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos), names));
      if (bar == std::string::npos) break;
      pos = bar + 3;
    }
    if (comps.size() != rank) throw std::runtime_error("malformed basis text: wrong rank");
    gens.emplace_back(std::move(comps));
  }
  return make_basis(finish(nvars, rank, TermOrder{order}, std::move(gens)));
}

bool satisfies_buchberger_criterion(const GroebnerBasis& basis) {
  const auto& impl = *basis.impl_;
  for (std::size_t i = 0; i < impl.igens.size(); ++i) {
    for (std::size_t j = i + 1; j < impl.igens.size(); ++j) {
      if (impl.igens[i].front().comp != impl.igens[j].front().comp) continue;
      IVec s = detail::s_vector(impl.igens[i], impl.igens[j], impl.ord);
      detail::reduce(s, impl.reducers, impl.ord, false);
      if (!s.empty()) return false;
    }
  }
  return true;
}

}  // namespace qsmooth::gb
