#include "qsmooth/pipeline.hpp"

#include <chrono>
#include <functional>
#include <map>

namespace qsmooth::geom {
namespace {

using nlohmann::json;

// Outcome of a step body: pass/fail plus its certificate.
struct Outcome {
  bool passed = false;
  json certificate = json::object();
};

class Recorder {
 public:
  explicit Recorder(Report& report) : report_(report) {}

  void run(const std::string& step, const std::function<Outcome()>& body) {
    StepRecord rec;
    rec.step = step;
    const auto start = std::chrono::steady_clock::now();
    try {
      Outcome o = body();
      rec.status = o.passed ? StepStatus::Pass : StepStatus::Fail;
      rec.certificate = std::move(o.certificate);
    } catch (const std::invalid_argument& e) {
      rec.status = StepStatus::Fail;
      rec.certificate = {{"rejected", e.what()}};
    } catch (const std::domain_error& e) {
      rec.status = StepStatus::Fail;
      rec.certificate = {{"rejected", e.what()}};
    } catch (const std::exception& e) {
      rec.status = StepStatus::Error;
      rec.certificate = {{"error", e.what()}};
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report_.steps.push_back(std::move(rec));
  }

  void skip(const std::string& step, const std::string& reason) {
    StepRecord rec;
    rec.step = step;
    rec.status = StepStatus::Skipped;
    rec.certificate = {{"reason", reason}};
    report_.steps.push_back(std::move(rec));
  }

 private:
  Report& report_;
};

json weights_json(const std::vector<long>& w) { return json(w); }

json fixed_points_json(const std::vector<FixedPoints>& fps, const std::vector<std::string>& names) {
  json out = json::array();
  for (const auto& fp : fps) {
    json j = {{"subspace", fp.subspace.label(names)}, {"lift", fp.subspace.lift}};
    j["points"] = fp.points ? json(*fp.points) : json(nullptr);
    j["singular"] = fp.singular;
    j["tangent_weights"] = fp.tangent_weights ? weights_json(*fp.tangent_weights) : json(nullptr);
    if (!fp.detail.empty()) j["detail"] = fp.detail;
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<long> divisors_below(long r) {
  std::vector<long> out;
  for (long m = 1; m < r; ++m)
    if (r % m == 0) out.push_back(m);
  return out;
}

std::string class_text(const t1::T1Class& c, const std::vector<std::string>& names) {
  return c.representative().to_string(names);
}

// T1, ordinarity, invariant good direction and Bertini on a germ. `family`
// is the class of the smoothing term, when there is one.
Outcome germ_outcome(const t1::GermPresentation& germ, const std::optional<CyclicAction>& action,
                     const std::vector<gb::VectorPolynomial>& submodule,
                     const std::optional<gb::VectorPolynomial>& family, const PipelineOptions& options) {
  Outcome o;
  auto& c = o.certificate;
  c["germ"] = germ.to_string();
  c["e"] = germ.e();
  c["d"] = germ.d();
  if (germ.truncated_at) c["series_truncated_at"] = *germ.truncated_at;
  if (germ.smooth()) {
    c["smooth"] = true;
    return o;
  }
  const auto t1 = t1::t1_module(germ, options.t1);
  if (!t1.tjurina()) {
    c["tjurina"] = nullptr;
    c["isolated"] = false;
    return o;
  }
  c["tjurina"] = *t1.tjurina();
  c["truncation_degree"] = *t1.truncation_degree;
  c["gb_size"] = t1.gb->size();

  std::vector<t1::T1Class> gens;
  for (const auto& v : submodule) gens.emplace_back(t1, v);
  const t1::ProperSubmodule m(germ.d(), gens);
  c["submodule_constant_rank"] = m.constant_span().rank();

  bool ok = true;
  std::optional<t1::T1Class> direction;
  if (action) {
    c["action"] = action->to_string();
    const bool ordinary = equiv::is_ordinary(germ, *action);
    c["ordinary"] = ordinary;
    ok = ordinary;
    if (ordinary) {
      direction = equiv::invariant_good_direction(t1, *action, m);
      c["character_dimensions"] = json::object();
      for (const auto& [ch, n] : equiv::t1_character_dimensions(t1, *action))
        c["character_dimensions"][std::to_string(ch)] = n;
      c["good_direction_character"] = equiv::class_character(t1, *direction, *action)->value;
    }
  } else {
    direction = t1::good_direction_for_submodule(t1, m);
  }
  if (direction) {
    c["good_direction"] = class_text(*direction, germ.names());
    for (std::size_t i = 0; i < germ.d(); ++i)
      if (*direction == t1::unit_class(t1, i)) {
        c["good_direction_unit"] = "e_" + std::to_string(i + 1);
        break;
      }
    const bool good = t1::is_good_direction(*direction);
    const auto bert = t1::bertini_details(germ, *direction);
    c["is_good_direction"] = good;
    c["bertini"] = {{"jacobian_rank", bert.jacobian_rank},
                    {"total_space_embedding_dimension", bert.total_space_embedding_dimension},
                    {"passed", bert.passed}};
    ok = ok && good && bert.passed;
  }
  if (family) {
    const t1::T1Class fc(t1, *family);
    const bool good = t1::is_good_direction(fc);
    const auto deg = t1::monotone_degeneration(germ, fc, options.gb);
    json f = {{"class", class_text(fc, germ.names())}, {"is_good_direction", good},
              {"monotone_degeneration", deg.passed}};
    if (action) {
      const auto ch = equiv::class_character(t1, fc, *action);
      f["character"] = ch ? json(ch->value) : json(nullptr);
      ok = ok && ch && ch->value == 0;
    }
    c["smoothing_direction"] = std::move(f);
    ok = ok && good && deg.passed;
  }
  o.passed = ok;
  return o;
}

void run_ambient(const VerificationManifest& mf, const PipelineOptions& options, Recorder& rec) {
  std::optional<HypersurfaceScheme> scheme;
  rec.run("homogeneity", [&] {
    Outcome o;
    scheme.emplace(*mf.ambient, poly::parse(*mf.equation, mf.variables), mf.variables);
    o.passed = true;
    o.certificate = {{"ambient", mf.ambient->to_string()}, {"degree", scheme->degree()}};
    return o;
  });
  const char* const no_scheme = "no hypersurface (homogeneity step did not pass)";
  if (!scheme) {
    for (const char* s : {"singular_locus", "fixed_points", "character", "reid_tai", "family"}) rec.skip(s, no_scheme);
    return;
  }
  const auto& names = scheme->names();

  rec.run("singular_locus", [&] {
    Outcome o;
    const auto v = singular_locus_check(*scheme, mf.claimed_singular_points, options.gb);
    json claimed = json::array();
    for (const auto& p : mf.claimed_singular_points) claimed.push_back(point_label(scheme->ambient(), p));
    json charts = json::array();
    for (const auto& c : v.charts)
      charts.push_back({{"chart", c.chart},
                        {"basis_size", c.basis_size},
                        {"points", c.points ? json(*c.points) : json(nullptr)},
                        {"claimed", c.claimed}});
    o.passed = v.verified;
    o.certificate = {{"claimed", claimed}, {"charts", charts}, {"problems", v.problems}};
    return o;
  });

  std::optional<CyclicAction> action;
  if (mf.action) action.emplace(mf.action->order, mf.action->weights);

  if (!action) {
    rec.skip("fixed_points", "no action");
    rec.skip("character", "no action");
  } else {
    rec.run("fixed_points", [&] {
      Outcome o;
      bool decided = true;
      std::size_t quotient = 0, singular = 0;
      json groups = json::array();
      for (const long m : divisors_below(action->order())) {
        const CyclicAction h = action->subgroup(m);
        const auto fps = fixed_points(*scheme, h);
        for (const auto& fp : fps) {
          decided = decided && fp.points.has_value();
          if (fp.points && m == 1) {
            quotient += *fp.points - fp.singular;
            singular += fp.singular;
          }
        }
        groups.push_back({{"subgroup_order", h.order()}, {"strata", fixed_points_json(fps, names)}});
      }
      o.certificate["groups"] = std::move(groups);
      o.certificate["fixed_singular_points"] = singular;
      o.certificate["quotient_points"] = quotient;
      if (mf.stated_quotient_points) {
        o.certificate["stated_quotient_points"] = *mf.stated_quotient_points;
        o.certificate["matches_stated"] = quotient == *mf.stated_quotient_points;
      }
      o.passed = decided;
      return o;
    });

    rec.run("character", [&] {
      Outcome o;
      const auto c = equiv::character_of(scheme->F(), *action);
      o.certificate["action"] = action->to_string();
      o.certificate["character"] = c ? json(c->value) : json(nullptr);
      if (!c) {
        // Terms off the most common character (ties: the smallest).
        std::map<long, std::size_t> count;
        for (const auto& t : scheme->F().terms()) ++count[action->character(t.monomial)];
        long modal = count.begin()->first;
        for (const auto& [ch, n] : count)
          if (n > count[modal]) modal = ch;
        json off = json::array();
        for (const auto& t : scheme->F().terms()) {
          const long ch = action->character(t.monomial);
          if (ch != modal)
            off.push_back({{"term", Polynomial::monomial(scheme->F().nvars(), t.monomial).to_string(names)},
                           {"character", ch}});
        }
        o.certificate["majority_character"] = modal;
        o.certificate["offending_terms"] = std::move(off);
      }
      o.passed = c.has_value();
      return o;
    });
  }

  if (!action && mf.quotient_points.empty()) {
    rec.skip("reid_tai", "no action and no declared quotient points");
  } else {
    rec.run("reid_tai", [&] {
      Outcome o;
      o.passed = true;
      json entries = json::array();
      if (action)
        for (const long m : divisors_below(action->order())) {
          const CyclicAction h = action->subgroup(m);
          for (const auto& fp : fixed_points(*scheme, h)) {
            if (!fp.tangent_weights) continue;
            json e = {{"source", "fixed"},
                      {"subspace", fp.subspace.label(names)},
                      {"order", h.order()},
                      {"weights", *fp.tangent_weights},
                      {"points", *fp.points - fp.singular}};
            try {
              const bool t = reid_tai_terminal(h.order(), *fp.tangent_weights);
              e["terminal"] = t;
              o.passed = o.passed && t;
            } catch (const std::invalid_argument& ex) {
              e["terminal"] = false;
              e["rejected"] = ex.what();
              o.passed = false;
            }
            entries.push_back(std::move(e));
          }
        }
      for (const auto& q : mf.quotient_points) {
        json e = {{"source", "declared"}, {"label", q.label}, {"order", q.order}, {"weights", q.weights}};
        try {
          const bool t = reid_tai_terminal(q.order, q.weights);
          e["terminal"] = t;
          o.passed = o.passed && t;
        } catch (const std::invalid_argument& ex) {
          e["terminal"] = false;
          e["rejected"] = ex.what();
          o.passed = false;
        }
        entries.push_back(std::move(e));
      }
      o.certificate["points"] = std::move(entries);
      return o;
    });
  }

  std::optional<Polynomial> perturbation;
  if (mf.perturbation) perturbation = poly::parse(*mf.perturbation, mf.variables);

  for (const auto& p : mf.claimed_singular_points) {
    rec.run("germ@" + point_label(scheme->ambient(), p), [&] {
      const ChartGerm cg = chart_germ(*scheme, p, action);
      std::optional<gb::VectorPolynomial> family;
      if (perturbation) {
        // The smoothing term in the chart, as a class on the minimal germ.
        const Polynomial local = localize(scheme->ambient(), *perturbation, p);
        std::vector<std::size_t> kept = cg.germ.kept;
        std::vector<Polynomial> assign(local.nvars(), Polynomial(cg.germ.e()));
        for (std::size_t j = 0; j < kept.size(); ++j) assign[kept[j]] = Polynomial::variable(cg.germ.e(), j);
        if (cg.germ.d() == 1) family = gb::VectorPolynomial{poly::substitute(local, assign, cg.germ.e())};
      }
      Outcome o = germ_outcome(cg.germ, cg.action, {}, family, options);
      o.certificate["chart"] = cg.chart.label(names);
      o.certificate["chart_equation"] = cg.local.to_string(cg.names);
      if (action) o.certificate["chart_action"] = chart_action(scheme->ambient(), *action, cg.chart).to_string();
      return o;
    });
  }

  if (!perturbation) {
    rec.skip("family", "no smoothing term");
  } else if (options.skip_family) {
    rec.skip("family", "--skip-family");
  } else {
    rec.run("family", [&] {
      Outcome o;
      const SmoothingFamily family(*scheme, *perturbation);
      const auto v = family_smoothing_verify(family, action, mf.claimed_singular_points, options.gb);
      json charts = json::array();
      for (const auto& c : v.charts)
        charts.push_back({{"chart", c.chart}, {"eliminant", c.eliminant}, {"generic_smooth", c.generic_smooth}});
      auto& c = o.certificate;
      c["perturbation"] = perturbation->to_string(names);
      c["charts"] = std::move(charts);
      c["generic_fiber_smooth"] = v.generic_fiber_smooth;
      c["total_space_smooth"] = v.total_space_smooth;
      if (v.perturbation_semi_invariant) c["perturbation_semi_invariant"] = *v.perturbation_semi_invariant;
      if (v.sample) {
        c["sample"] = v.sample->get_str();
        if (action) {
          c["sample_fixed_points"] = fixed_points_json(v.sample_fixed_points, names);
          c["sample_terminal"] = v.sample_terminal;
        }
      }
      o.passed = v.passed();
      return o;
    });
  }
}

void run_germ(const GermEntry& g, const PipelineOptions& options, Recorder& rec) {
  rec.run("germ:" + g.name, [&] {
    std::vector<Polynomial> f;
    for (const auto& e : g.equations) f.push_back(poly::parse(e, g.variables));
    const auto germ = t1::minimalize(f, g.variables);
    std::optional<CyclicAction> action;
    if (g.action) action = CyclicAction(g.action->order, g.action->weights).restricted(germ.kept);
    // Submodule generators are written in the input variables.
    std::vector<Polynomial> assign(g.variables.size(), Polynomial(germ.e()));
    for (std::size_t j = 0; j < germ.kept.size(); ++j) assign[germ.kept[j]] = Polynomial::variable(germ.e(), j);
    std::vector<gb::VectorPolynomial> m;
    for (const auto& gen : g.submodule) {
      if (gen.size() != germ.d())
        throw std::invalid_argument("submodule generator has " + std::to_string(gen.size()) + " components, germ has " +
                                    std::to_string(germ.d()) + " equations");
      std::vector<Polynomial> comps;
      for (const auto& s : gen) comps.push_back(poly::substitute(poly::parse(s, g.variables), assign, germ.e()));
      m.emplace_back(std::move(comps));
    }
    Outcome o = germ_outcome(germ, action, m, std::nullopt, options);
    o.certificate["input_variables"] = g.variables;
    return o;
  });
}

}  // namespace

std::string to_string(StepStatus s) {
  switch (s) {
    case StepStatus::Pass: return "pass";
    case StepStatus::Fail: return "fail";
    case StepStatus::Skipped: return "skipped";
    case StepStatus::Error: return "error";
  }
  return "?";
}

bool Report::passed() const {
  return std::all_of(steps.begin(), steps.end(), [](const StepRecord& s) {
    return s.status == StepStatus::Pass || s.status == StepStatus::Skipped;
  });
}

bool Report::has_error() const {
  return std::any_of(steps.begin(), steps.end(), [](const StepRecord& s) { return s.status == StepStatus::Error; });
}

Report example_pipeline(const VerificationManifest& manifest, const PipelineOptions& options) {
  Report report;
  report.name = manifest.name;
  report.claims = manifest.claims;
  Recorder rec(report);
  if (manifest.ambient && manifest.equation && !options.germ_only) run_ambient(manifest, options, rec);
  for (const auto& g : manifest.germs) run_germ(g, options, rec);
  return report;
}

}  // namespace qsmooth::geom
