#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "qsmooth/cli.hpp"

namespace qsmooth::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ManifestError(where + ": " + what); }

void allow_keys(const json& obj, const std::string& where, const std::set<std::string>& keys) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [k, v] : obj.items())
    if (!keys.count(k)) fail(where, "unknown key \"" + k + "\"");
}

const json& require(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) fail(where, "missing \"" + key + "\"");
  return obj.at(key);
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

long as_integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<long>();
}

std::vector<long> integers(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of integers");
  std::vector<long> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_integer(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::size_t> sizes(const json& v, const std::string& where) {
  std::vector<std::size_t> out;
  for (long x : integers(v, where)) {
    if (x < 1) fail(where, "dimensions must be positive");
    out.push_back(static_cast<std::size_t>(x));
  }
  return out;
}

std::vector<std::string> variables(const json& v, const std::string& where) {
  static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
  if (!v.is_array() || v.empty()) fail(where, "expected a non-empty array of names");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto name = as_string(v[i], where + "[" + std::to_string(i) + "]");
    if (!std::regex_match(name, ident)) fail(where, "\"" + name + "\" is not a valid variable name");
    if (!seen.insert(name).second) fail(where, "duplicate variable \"" + name + "\"");
    out.push_back(name);
  }
  return out;
}

std::string polynomial(const json& v, const std::string& where, const std::vector<std::string>& vars) {
  const auto text = as_string(v, where);
  try {
    (void)poly::parse(text, vars);
  } catch (const poly::ParseError& e) {
    fail(where, e.what());
  }
  return text;
}

poly::Rational rational(const json& v, const std::string& where) {
  if (v.is_number_integer()) return poly::Rational(v.get<long>());
  if (v.is_string()) {
    try {
      poly::Rational q(v.get<std::string>());
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
    }
  }
  fail(where, "expected an integer or a rational string such as \"1/2\"");
}

geom::ActionSpec action(const json& v, const std::string& where, std::size_t nvars) {
  allow_keys(v, where, {"order", "weights"});
  geom::ActionSpec a;
  a.order = as_integer(require(v, where, "order"), where + ".order");
  if (a.order < 1) fail(where + ".order", "must be at least 1");
  a.weights = integers(require(v, where, "weights"), where + ".weights");
  if (a.weights.size() != nvars)
    fail(where + ".weights", "has " + std::to_string(a.weights.size()) + " entries for " + std::to_string(nvars) +
                                 " variables");
  return a;
}

geom::AmbientSpace ambient(const json& v, const std::string& where) {
  const auto kind = as_string(require(v, where, "kind"), where + ".kind");
  try {
    if (kind == "projective") {
      allow_keys(v, where, {"kind", "dimension"});
      const long n = as_integer(require(v, where, "dimension"), where + ".dimension");
      if (n < 1) fail(where + ".dimension", "must be positive");
      return geom::AmbientSpace::projective(static_cast<std::size_t>(n));
    }
    if (kind == "product") {
      allow_keys(v, where, {"kind", "dimensions"});
      return geom::AmbientSpace::product(sizes(require(v, where, "dimensions"), where + ".dimensions"));
    }
    if (kind == "weighted") {
      allow_keys(v, where, {"kind", "weights"});
      return geom::AmbientSpace::weighted(integers(require(v, where, "weights"), where + ".weights"));
    }
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  fail(where + ".kind", "must be projective, product or weighted");
}

geom::Point point(const json& v, const std::string& where, const geom::AmbientSpace& amb) {
  if (!v.is_array() || v.size() != amb.factors())
    fail(where, "expected " + std::to_string(amb.factors()) + " coordinate tuple(s), one per factor");
  geom::Point p;
  for (std::size_t k = 0; k < amb.factors(); ++k) {
    const auto [lo, hi] = amb.factor_range(k);
    const std::string w = where + "[" + std::to_string(k) + "]";
    if (!v[k].is_array() || v[k].size() != hi - lo) fail(w, "expected " + std::to_string(hi - lo) + " coordinates");
    bool nonzero = false;
    for (std::size_t i = 0; i < v[k].size(); ++i) {
      p.push_back(rational(v[k][i], w + "[" + std::to_string(i) + "]"));
      nonzero = nonzero || p.back() != 0;
    }
    if (!nonzero) fail(w, "all coordinates are zero");
  }
  return p;
}

geom::GermEntry germ(const json& v, const std::string& where) {
  allow_keys(v, where, {"name", "variables", "equations", "action", "submodule"});
  geom::GermEntry g;
  g.name = as_string(require(v, where, "name"), where + ".name");
  g.variables = variables(require(v, where, "variables"), where + ".variables");
  const auto& eqs = require(v, where, "equations");
  if (!eqs.is_array() || eqs.empty()) fail(where + ".equations", "expected a non-empty array");
  for (std::size_t i = 0; i < eqs.size(); ++i)
    g.equations.push_back(polynomial(eqs[i], where + ".equations[" + std::to_string(i) + "]", g.variables));
  if (v.contains("action")) g.action = action(v.at("action"), where + ".action", g.variables.size());
  if (v.contains("submodule")) {
    const auto& sm = v.at("submodule");
    if (!sm.is_array()) fail(where + ".submodule", "expected an array of generators");
    for (std::size_t i = 0; i < sm.size(); ++i) {
      const std::string w = where + ".submodule[" + std::to_string(i) + "]";
      if (!sm[i].is_array() || sm[i].size() != g.equations.size())
        fail(w, "expected " + std::to_string(g.equations.size()) + " components");
      std::vector<std::string> gen;
      for (std::size_t k = 0; k < sm[i].size(); ++k)
        gen.push_back(polynomial(sm[i][k], w + "[" + std::to_string(k) + "]", g.variables));
      g.submodule.push_back(std::move(gen));
    }
  }
  return g;
}

}  // namespace

geom::VerificationManifest parse_manifest(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ManifestError(std::string("syntax: ") + e.what());
  }
  const std::string top = "manifest";
  allow_keys(doc, top,
             {"name", "ambient", "variables", "equation", "action", "singular_points", "smoothing",
              "stated_quotient_points", "quotient_points", "germs", "claims"});
  geom::VerificationManifest m;
  m.name = as_string(require(doc, top, "name"), "name");
  if (m.name.empty()) fail("name", "must not be empty");

  const bool hyper = doc.contains("ambient") || doc.contains("equation");
  if (hyper) {
    m.ambient = ambient(require(doc, top, "ambient"), "ambient");
    m.variables = variables(require(doc, top, "variables"), "variables");
    if (m.variables.size() != m.ambient->coordinates())
      fail("variables", std::to_string(m.variables.size()) + " names for " +
                            std::to_string(m.ambient->coordinates()) + " coordinates of " + m.ambient->to_string());
    m.equation = polynomial(require(doc, top, "equation"), "equation", m.variables);
    if (doc.contains("action")) m.action = action(doc.at("action"), "action", m.variables.size());
    if (doc.contains("singular_points")) {
      const auto& sp = doc.at("singular_points");
      if (!sp.is_array()) fail("singular_points", "expected an array of points");
      for (std::size_t i = 0; i < sp.size(); ++i)
        m.claimed_singular_points.push_back(point(sp[i], "singular_points[" + std::to_string(i) + "]", *m.ambient));
    }
    if (doc.contains("smoothing")) {
      allow_keys(doc.at("smoothing"), "smoothing", {"perturbation"});
      m.perturbation =
          polynomial(require(doc.at("smoothing"), "smoothing", "perturbation"), "smoothing.perturbation", m.variables);
    }
    if (doc.contains("stated_quotient_points")) {
      const long n = as_integer(doc.at("stated_quotient_points"), "stated_quotient_points");
      if (n < 0) fail("stated_quotient_points", "must be non-negative");
      m.stated_quotient_points = static_cast<std::size_t>(n);
    }
  } else {
    for (const char* k : {"variables", "action", "singular_points", "smoothing", "stated_quotient_points"})
      if (doc.contains(k)) fail(k, "only allowed together with ambient and equation");
  }

  if (doc.contains("quotient_points")) {
    const auto& qp = doc.at("quotient_points");
    if (!qp.is_array()) fail("quotient_points", "expected an array");
    for (std::size_t i = 0; i < qp.size(); ++i) {
      const std::string w = "quotient_points[" + std::to_string(i) + "]";
      allow_keys(qp[i], w, {"label", "order", "weights"});
      geom::QuotientPointDecl d;
      d.label = as_string(require(qp[i], w, "label"), w + ".label");
      d.order = as_integer(require(qp[i], w, "order"), w + ".order");
      d.weights = integers(require(qp[i], w, "weights"), w + ".weights");
      m.quotient_points.push_back(std::move(d));
    }
  }
  if (doc.contains("germs")) {
    const auto& gs = doc.at("germs");
    if (!gs.is_array()) fail("germs", "expected an array");
    std::set<std::string> names;
    for (std::size_t i = 0; i < gs.size(); ++i) {
      m.germs.push_back(germ(gs[i], "germs[" + std::to_string(i) + "]"));
      if (!names.insert(m.germs.back().name).second)
        fail("germs[" + std::to_string(i) + "].name", "duplicate germ name");
    }
  }
  if (!hyper && m.germs.empty()) fail(top, "needs ambient and equation, or germs");
  if (doc.contains("claims")) m.claims = doc.at("claims");
  return m;
}

geom::VerificationManifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ManifestError(path + ": cannot read");
  std::ostringstream os;
  os << in.rdbuf();
  try {
    return parse_manifest(os.str());
  } catch (const ManifestError& e) {
    throw ManifestError(path + ": " + e.what());
  }
}

}  // namespace qsmooth::cli
