// One line per acceptance criterion: PASS/FAIL, label, detail, seconds.
// Exit status is the number of failing criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "germs.hpp"
#include "oracle.hpp"
#include "qsmooth/cli.hpp"
#include "random_poly.hpp"

using namespace qsmooth;
using nlohmann::json;
using poly::Polynomial;
using poly::parse;

namespace {

// Collects failed checks; a criterion passes when none were recorded.
struct Check {
  std::vector<std::string> failures;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::size_t oracle_tjurina(const t1::GermPresentation& germ) {
  std::vector<testing::Generator> gens;
  for (const auto& v : t1::jtilde_generators(germ)) gens.push_back(v.components());
  const auto r = testing::local_colength_stable(gens, germ.e(), 1, 30);
  if (!r.stable) throw std::runtime_error("oracle did not stabilise");
  return r.dimension;
}

const geom::StepRecord* find_step(const geom::Report& r, const std::string& prefix) {
  for (const auto& s : r.steps)
    if (s.step.rfind(prefix, 0) == 0) return &s;
  return nullptr;
}

// Shared contract for the four hypersurface examples.
void example_contract(Check& c, const std::string& file, std::size_t germ_index, double budget_s) {
  const auto start = std::chrono::steady_clock::now();
  const auto m = cli::load_manifest(std::string(QSMOOTH_MANIFEST_DIR) + "/" + file);
  const auto report = geom::example_pipeline(m);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto tag = m.name + ": ";

  for (const auto& s : report.steps)
    c.require(s.status == geom::StepStatus::Pass, tag + s.step + " " + geom::to_string(s.status));
  for (const char* step : {"homogeneity", "singular_locus", "character", "fixed_points", "reid_tai", "germ@", "family"})
    c.require(find_step(report, step) != nullptr, tag + "missing step " + step);

  const auto pinned = testing::example_germs()[germ_index];
  const auto oracle = oracle_tjurina(t1::minimalize(pinned.polynomials(), pinned.vars));
  if (const auto* g = find_step(report, "germ@")) {
    const auto& cert = g->certificate;
    const auto tj = cert.value("tjurina", json()).is_number() ? cert["tjurina"].get<std::size_t>() : 0;
    c.require(tj == pinned.tjurina && tj == oracle,
              tag + "tjurina " + std::to_string(tj) + " pinned " + std::to_string(pinned.tjurina) + " oracle " +
                  std::to_string(oracle));
    c.require(cert.value("ordinary", false), tag + "germ not ordinary");
    c.require(cert.value("good_direction_unit", std::string()) == "e_1", tag + "good direction is not e_1");
    c.require(cert.value("good_direction_character", -1) == 0, tag + "good direction not invariant");
    c.require(cert.value("is_good_direction", false), tag + "is_good_direction false");
    c.require(cert.contains("bertini") && cert["bertini"].value("passed", false), tag + "bertini failed");
    c.detail << m.name << " tjurina=" << tj;
  }
  if (const auto* f = find_step(report, "fixed_points")) {
    const auto& cert = f->certificate;
    if (cert.contains("quotient_points"))
      c.detail << " quotient_points=" << cert["quotient_points"].dump();
    if (cert.contains("stated_quotient_points")) {
      c.detail << " stated=" << cert["stated_quotient_points"].dump();
      if (!cert.value("matches_stated", false)) c.detail << " (DISCREPANCY)";
    }
  }
  char t[32];
  std::snprintf(t, sizeof t, " %.1fs", secs);
  c.detail << t << "; ";
  c.require(secs < budget_s, tag + "over time budget");
}

void criterion_example1(Check& c) { example_contract(c, "example1.json", 0, 60); }

void criterion_examples234(Check& c) {
  example_contract(c, "example2.json", 1, 300);
  example_contract(c, "example3.json", 2, 300);
  example_contract(c, "example4.json", 3, 300);
}

void criterion_tjurina_oracle(Check& c) {
  std::size_t n = 0;
  for (const auto& g : testing::all_germs()) {
    const auto germ = t1::minimalize(g.polynomials(), g.vars);
    const auto t = t1::t1_module(germ);
    const auto oracle = oracle_tjurina(germ);
    c.require(t.tjurina() && *t.tjurina() == oracle, g.name + " differs from oracle");
    c.detail << g.name << "=" << oracle << " ";
    ++n;
  }
  c.require(n >= 10, "fewer than 10 germs");
}

void criterion_good_direction(Check& c) {
  std::size_t n = 0;
  for (const auto& g : testing::all_germs()) {
    const auto t = t1::t1_module(t1::minimalize(g.polynomials(), g.vars));
    const auto e = t.germ.e();
    const auto dir = t1::good_direction_for_submodule(t, t1::ProperSubmodule(t.rank(), {}));
    c.require(t1::is_good_direction(dir), g.name + ": M=0 direction not good");
    c.require(t1::verify_good_direction_bertini(t.germ, dir), g.name + ": M=0 direction fails Bertini");
    // M generated by x_1 e_k for all k has zero constant span: e_1 comes back.
    std::vector<t1::T1Class> gens;
    for (std::size_t k = 0; k < t.rank(); ++k) {
      auto comps = std::vector<Polynomial>(t.rank(), Polynomial(e));
      comps[k] = Polynomial::variable(e, 0);
      gens.emplace_back(t, gb::VectorPolynomial(comps));
    }
    const t1::ProperSubmodule m(t.rank(), gens);
    c.require(m.constant_span().rank() == 0, g.name + ": expected empty constant span");
    c.require(t1::good_direction_for_submodule(t, m) == t1::unit_class(t, 0), g.name + ": not e_1");
    // Full span is not proper.
    std::vector<t1::T1Class> units;
    for (std::size_t k = 0; k < t.rank(); ++k) units.push_back(t1::unit_class(t, k));
    bool threw = false;
    try {
      t1::good_direction_for_submodule(t, t1::ProperSubmodule(t.rank(), units));
    } catch (const t1::NotProper&) {
      threw = true;
    }
    c.require(threw, g.name + ": full span accepted");
    ++n;
  }
  // Pencil: span of (1 + x, x^2) and (x, z) is <(1, 0)>, so e_2 must be chosen.
  const auto p = testing::pencil();
  const auto t = t1::t1_module(t1::minimalize(p.polynomials(), p.vars));
  const auto x = Polynomial::variable(4, 0), one = Polynomial::constant(4, 1);
  const t1::ProperSubmodule m(2, {t1::T1Class(t, gb::VectorPolynomial{one + x, x * x}),
                                  t1::T1Class(t, gb::VectorPolynomial{x, Polynomial::variable(4, 2)})});
  const auto d = t1::good_direction_for_submodule(t, m);
  c.require(d == t1::unit_class(t, 1), "pencil: expected e_2");
  for (const auto& g : m.generators()) c.require(t1::is_good_direction(d + g), "pencil: e_2 + m not good");
  c.detail << n << " germs, pencil span avoided";
}

void criterion_equivariance(Check& c) {
  std::mt19937_64 rng(2024);
  std::size_t agree = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const long r = 1 + static_cast<long>(rng() % 12);
    std::vector<long> w(4);
    for (auto& a : w) a = static_cast<long>(rng() % 40) - 20;
    const equiv::CyclicAction act(r, w);
    const auto m1 = testing::random_monomial(rng, 4, 6);
    const auto m2 = testing::random_monomial(rng, 4, 6);
    long direct = 0;
    for (std::size_t i = 0; i < 4; ++i) direct += w[i] * static_cast<long>(m1[i] + m2[i]);
    direct = ((direct % r) + r) % r;
    const long sum = (act.character(m1) + act.character(m2)) % r;
    if (act.character(m1 * m2) == direct && sum == direct) ++agree;
  }
  c.require(agree == 1000, "additivity failed on " + std::to_string(1000 - agree) + " pairs");
  c.detail << agree << "/1000 pairs; ";

  for (const auto& g : testing::example_germs()) {
    const auto germ = t1::minimalize(g.polynomials(), g.vars);
    const equiv::CyclicAction act = equiv::CyclicAction(g.action->first, g.action->second).restricted(germ.kept);
    const auto t = t1::t1_module(germ);
    std::size_t total = 0;
    for (const auto& [ch, n] : equiv::t1_character_dimensions(t, act)) total += n;
    c.require(t.tjurina() && total == *t.tjurina(), g.name + ": character dimensions do not sum to tjurina");
    c.detail << g.name << " sum=" << total << " ";
  }

  const auto q = testing::example_germs()[0];
  const auto germ = t1::minimalize(q.polynomials(), q.vars);
  const equiv::CyclicAction act(q.action->first, q.action->second);
  const std::vector<std::string> ext{"x1", "x2", "x3", "x4", "s"};
  const auto good = equiv::equivariant_family_check(germ, act, {parse("s", ext)});
  c.require(good.invariant() && good.ordinary_preserved(), "Example 1 family not preserved");
  const auto bad = equiv::equivariant_family_check(germ, act, {parse("s*x1", ext)});
  c.require(!bad.invariant() && !bad.ordinary_preserved(), "non-invariant perturbation accepted");
  c.detail << "; family s: preserved, s*x1: rejected";
}

void criterion_gb(Check& c) {
  using gb::MonomialOrder;
  const std::vector<std::string> xyz{"x", "y", "z"};
  auto P = [&](const char* s) { return parse(s, xyz); };
  std::size_t bases = 0;
  auto checked = [&](const std::vector<Polynomial>& gens, const MonomialOrder& o) {
    auto b = gb::buchberger(gens, o);
    c.require(gb::satisfies_buchberger_criterion(b), "S-pair criterion failed under " + o.to_string());
    ++bases;
    return b;
  };

  const std::vector<std::vector<const char*>> ideals{
      {"x^2 + y^2 - 1", "x - y^3", "z^2 - x*y"},
      {"x^3 - y*z", "y^2 - x*z + 1", "z^3 - x"},
      {"x^2 - 2", "y^2 - 3", "z - x*y"},
      {"x*y - 1", "y*z - 1", "x^2 + y^2 + z^2 - 3"},
      {"x^3", "y^3", "z^3", "x*y*z"},
      {"x^2 + x*y + z", "y^2 - z^2 + x", "z^3 + x*y - 2"},
  };
  const std::vector<MonomialOrder> orders{MonomialOrder::grevlex(), MonomialOrder::lex(),
                                          MonomialOrder::elimination(1), MonomialOrder::elimination(2),
                                          MonomialOrder::lex().with_permutation({2, 1, 0})};
  for (const auto& texts : ideals) {
    std::vector<Polynomial> I;
    for (const char* t : texts) I.push_back(P(t));
    std::optional<std::size_t> ref;
    for (const auto& o : orders) {
      const auto q = gb::quotient_dimension(checked(I, o));
      if (!ref) ref = q.dimension;
      c.require(q.finite() && q.dimension == ref, std::string("order dependence on ") + texts[0]);
    }
  }
  c.detail << ideals.size() << " ideals order-independent; ";

  auto sat = [&](std::vector<Polynomial> I, const char* g) {
    auto s = gb::ideal_quotient_saturation(checked(I, MonomialOrder::grevlex()), P(g));
    c.require(gb::satisfies_buchberger_criterion(s), "saturation basis not Groebner");
    ++bases;
    return s.polynomials();
  };
  c.require(sat({P("x*y")}, "x") == std::vector<Polynomial>{P("y")}, "(xy : x^inf) != (y)");
  c.require(sat({P("x")}, "y") == std::vector<Polynomial>{P("x")}, "(x : y^inf) != (x)");
  c.require(sat({P("x*y"), P("x*z")}, "x") == std::vector<Polynomial>{P("z"), P("y")}, "(xy, xz : x^inf) != (y, z)");
  const auto x2 = checked({P("x^2")}, MonomialOrder::grevlex());
  c.require(gb::radical_membership(P("x"), x2), "x not in rad(x^2)");
  c.require(!gb::radical_membership(P("y"), x2), "y in rad(x^2)");
  const auto g = P("x + y");
  const auto I = checked({g.pow(3) + g * P("z") * g.pow(3), P("z^2")}, MonomialOrder::grevlex());
  c.require(!I.contains(g) && gb::radical_membership(g, I), "x + y radical case");

  std::mt19937_64 rng(101);
  std::size_t oracle_cases = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 3;
    std::vector<Polynomial> sys;
    unsigned D = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned d = 1 + static_cast<unsigned>(rng() % 4);
      D = std::max(D, d);
      Polynomial f = Polynomial::monomial(n, poly::Monomial::variable(i, d), 1 + static_cast<int>(rng() % 3));
      if (d > 1) f += testing::random_polynomial(rng, n, d - 1, 4, 3);
      sys.push_back(f);
    }
    const auto q = gb::quotient_dimension(checked(sys, MonomialOrder::grevlex()));
    std::vector<testing::Generator> gens;
    for (const auto& f : sys) gens.push_back({f});
    c.require(q.finite() && *q.dimension == testing::macaulay_deficiency(gens, n, 2 * D + 2),
              "oracle mismatch in trial " + std::to_string(trial));
    ++oracle_cases;
  }
  c.detail << "saturation/radical cases ok; " << oracle_cases << " oracle systems; " << bases
           << " bases pass the S-pair criterion";
}

void criterion_reid_tai(Check& c) {
  std::size_t triples = 0, series = 0;
  for (unsigned r = 2; r <= 12; ++r) {
    for (unsigned a = 1; a < r; ++a)
      for (unsigned b = 1; b < r; ++b)
        for (unsigned d = 1; d < r; ++d) {
          ++triples;
          c.require(geom::reid_tai_terminal(r, {a, b, d}) == testing::terminal_by_enumeration(r, a, b, d),
                    "1/" + std::to_string(r) + "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                        std::to_string(d) + ")");
        }
    for (unsigned a = 1; a < r; ++a)
      if (std::gcd(a, r) == 1) {
        ++series;
        c.require(geom::reid_tai_terminal(r, {1, static_cast<long>(a), static_cast<long>(r - a)}),
                  "series 1/" + std::to_string(r) + "(1," + std::to_string(a) + "," + std::to_string(r - a) + ")");
      }
  }
  c.detail << triples << " triples agree with enumeration; " << series << " series members terminal";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"Example 1 end-to-end", criterion_example1},
      {"Examples 2, 3, 4 end-to-end", criterion_examples234},
      {"Tjurina oracle equivalence", criterion_tjurina_oracle},
      {"Good-direction suite", criterion_good_direction},
      {"Equivariance suite", criterion_equivariance},
      {"GB engine suite", criterion_gb},
      {"Reid-Tai plumbing", criterion_reid_tai},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = c.failures.empty();
    failed += ok ? 0 : 1;
    std::printf("%s [PRIMARY %zu] %s (%.1fs): %s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                c.detail.str().c_str());
    for (std::size_t k = 0; k < std::min<std::size_t>(c.failures.size(), 10); ++k)
      std::printf("    - %s\n", c.failures[k].c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed;
}
