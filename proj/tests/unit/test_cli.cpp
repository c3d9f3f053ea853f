#include <gtest/gtest.h>
#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "qsmooth/cache.hpp"
#include "qsmooth/cli.hpp"

using namespace qsmooth;
using cli::ManifestError;
using cli::parse_manifest;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kManifests = QSMOOTH_MANIFEST_DIR;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qsmooth-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Report lines with the wall-time fields removed.
std::string without_times(const std::string& jsonl) {
  std::istringstream in(jsonl);
  std::string line, out;
  while (std::getline(in, line)) {
    auto j = json::parse(line);
    j.erase("wall_ms");
    out += j.dump() + "\n";
  }
  return out;
}

int run_binary(const std::string& args) {
  const int status = std::system((std::string(QSMOOTH_BIN) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int run_lib(const std::vector<std::string>& paths, cli::RunOptions opts, std::string* human = nullptr) {
  std::ostringstream out, err;
  const int rc = cli::run(paths, opts, out, err);
  if (human) *human = out.str();
  return rc;
}

const char* kNode = R"({"name": "n", "germs": [{"name": "node", "variables": ["x","y","z","w"],
                        "equations": ["x^2 + y^2 + z^2 + w^2"]}]})";

}  // namespace

TEST(Manifest, BundledExamplesParse) {
  for (int i = 1; i <= 4; ++i) {
    const auto m = cli::load_manifest(kManifests + "/example" + std::to_string(i) + ".json");
    ASSERT_TRUE(m.ambient && m.equation && m.action && m.perturbation);
    EXPECT_EQ(m.claimed_singular_points.size(), 1u);
    EXPECT_EQ(m.action->weights.size(), m.variables.size());
  }
  const auto p = cli::load_manifest(kManifests + "/example2.json").claimed_singular_points[0];
  EXPECT_EQ(p, (geom::Point{1, 0, 1, 0, 0, 0}));
}

TEST(Manifest, GermOnly) {
  const auto m = parse_manifest(kNode);
  EXPECT_FALSE(m.ambient);
  ASSERT_EQ(m.germs.size(), 1u);
  EXPECT_EQ(m.germs[0].equations.size(), 1u);
}

TEST(Manifest, Rational) {
  const auto m = parse_manifest(R"({"name": "c", "ambient": {"kind": "projective", "dimension": 2},
    "variables": ["x","y","z"], "equation": "x*y - z^2", "singular_points": [[["2/4", 1, "-3"]]]})");
  EXPECT_EQ(m.claimed_singular_points[0], (geom::Point{poly::Rational(1, 2), 1, -3}));
}

TEST(Manifest, Rejections) {
  const std::vector<std::pair<std::string, std::string>> bad{
      {"{", "syntax"},
      {R"({"germs": []})", "missing \"name\""},
      {R"({"name": "x"})", "needs ambient"},
      {R"({"name": "x", "colour": 1, "germs": []})", "unknown key \"colour\""},
      {R"({"name": "x", "ambient": {"kind": "projective", "dimension": 1}, "variables": ["a","b"], "equation": "a*c"})",
       "undeclared variable 'c'"},
      {R"({"name": "x", "ambient": {"kind": "projective", "dimension": 2}, "variables": ["a","b"], "equation": "a"})",
       "2 names for 3 coordinates"},
      {R"({"name": "x", "ambient": {"kind": "projective", "dimension": 1}, "variables": ["a","a"], "equation": "a"})",
       "duplicate variable"},
      {R"({"name": "x", "ambient": {"kind": "projective", "dimension": 1}, "variables": ["a","b"], "equation": "a",
          "action": {"order": 2, "weights": [1]}})",
       "1 entries for 2 variables"},
      {R"({"name": "x", "ambient": {"kind": "product", "dimensions": [1, 1]}, "variables": ["a","b","c","d"],
          "equation": "a*c", "singular_points": [[[1, 0, 0, 1]]]})",
       "2 coordinate tuple(s)"},
      {R"({"name": "x", "ambient": {"kind": "projective", "dimension": 1}, "variables": ["a","b"], "equation": "a",
          "singular_points": [[[0, 0]]]})",
       "all coordinates are zero"},
      {R"({"name": "x", "ambient": {"kind": "weighted", "weights": [1, 0]}, "variables": ["a","b"], "equation": "a"})",
       "ambient"},
      {R"({"name": "x", "ambient": {"kind": "toric"}, "variables": ["a"], "equation": "a"})", "ambient.kind"},
      {R"({"name": "x", "variables": ["a"], "germs": [{"name": "g", "variables": ["a"], "equations": ["a"]}]})",
       "only allowed together"},
      {R"({"name": "x", "germs": [{"name": "g", "variables": ["x"], "equations": ["x^2"], "submodule": [["x", "1"]]}]})",
       "expected 1 components"},
      {R"({"name": "x", "germs": [{"name": "g", "variables": ["x"], "equations": ["x^2"]},
                                  {"name": "g", "variables": ["x"], "equations": ["x^3"]}]})",
       "duplicate germ name"},
  };
  for (const auto& [text, needle] : bad) {
    try {
      parse_manifest(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const ManifestError& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  }
}

TEST(Report, ExitCodeMatchesStatuses) {
  geom::Report r;
  r.name = "r";
  EXPECT_EQ(cli::exit_code(r), 0);
  r.steps.push_back({"a", geom::StepStatus::Pass, {}, 1});
  r.steps.push_back({"b", geom::StepStatus::Skipped, {}, 0});
  EXPECT_EQ(cli::exit_code(r), 0);
  r.steps.push_back({"c", geom::StepStatus::Fail, {}, 0});
  EXPECT_EQ(cli::exit_code(r), 1);
  r.steps.push_back({"d", geom::StepStatus::Error, {}, 0});
  EXPECT_EQ(cli::exit_code(r), 3);

  std::ostringstream os;
  cli::write_machine_report(os, r);
  std::istringstream in(os.str());
  std::string line;
  std::vector<json> recs;
  while (std::getline(in, line)) recs.push_back(json::parse(line));
  ASSERT_EQ(recs.size(), 6u);
  EXPECT_EQ(recs[0]["record"], "manifest");
  EXPECT_EQ(recs[3]["status"], "fail");
  EXPECT_EQ(recs[5]["exit_code"], 3);
}

TEST(Run, NodeGermReport) {
  const auto dir = scratch("node");
  const auto path = dir / "node.json";
  std::ofstream(path) << kNode;
  cli::RunOptions opts;
  opts.germ_only = true;
  opts.cache_dir = (dir / "cache").string();
  opts.report_path = (dir / "report.jsonl").string();
  std::string human;
  EXPECT_EQ(run_lib({path.string()}, opts, &human), 0);
  EXPECT_NE(human.find("tjurina: 1"), std::string::npos);
  EXPECT_NE(human.find("good_direction_unit: e_1"), std::string::npos);
  const auto report = slurp(dir / "report.jsonl");
  EXPECT_NE(report.find("\"tjurina\":1"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Run, WarmCacheReportIsIdentical) {
  const auto dir = scratch("warm");
  cli::RunOptions opts;
  opts.cache_dir = (dir / "cache").string();
  opts.report_path = (dir / "cold.jsonl").string();
  const std::string ex1 = kManifests + "/example1.json";
  ASSERT_EQ(run_lib({ex1}, opts), 0);
  cache::FileStore store(dir / "cache");
  const std::size_t entries = store.list().size();
  EXPECT_GT(entries, 0u);
  opts.report_path = (dir / "warm.jsonl").string();
  ASSERT_EQ(run_lib({ex1}, opts), 0);
  EXPECT_EQ(store.list().size(), entries);
  EXPECT_EQ(without_times(slurp(dir / "cold.jsonl")), without_times(slurp(dir / "warm.jsonl")));
  opts.no_cache = true;
  opts.report_path = (dir / "none.jsonl").string();
  ASSERT_EQ(run_lib({ex1}, opts), 0);
  EXPECT_EQ(without_times(slurp(dir / "cold.jsonl")), without_times(slurp(dir / "none.jsonl")));
  fs::remove_all(dir);
}

TEST(Run, ConcurrentJobsMatchSequential) {
  const auto dir = scratch("jobs");
  const std::vector<std::string> paths{kManifests + "/example4.json", kManifests + "/example1.json",
                                       kManifests + "/negative/permuted-weights.json"};
  cli::RunOptions opts;
  opts.no_cache = true;
  opts.report_path = (dir / "seq.jsonl").string();
  EXPECT_EQ(run_lib(paths, opts), 1);
  opts.jobs = 3;
  opts.report_path = (dir / "par.jsonl").string();
  EXPECT_EQ(run_lib(paths, opts), 1);
  EXPECT_EQ(without_times(slurp(dir / "seq.jsonl")), without_times(slurp(dir / "par.jsonl")));
  fs::remove_all(dir);
}

TEST(Cache, ClearOnEmpty) {
  const auto dir = scratch("empty");
  cache::FileStore store(dir);
  EXPECT_EQ(store.clear(), 0u);
  EXPECT_TRUE(store.list().empty());
  EXPECT_TRUE(store.verify().empty());
  fs::remove_all(dir);
}

TEST(Cache, RoundTripAndKeyCheck) {
  const auto dir = scratch("rt");
  cache::FileStore store(dir);
  EXPECT_FALSE(store.load("k"));
  store.save("k", "value\nwith lines");
  EXPECT_EQ(store.load("k"), "value\nwith lines");
  EXPECT_EQ(cache::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  // An entry copied under another key's name is not served.
  fs::copy_file(dir / (cache::sha256_hex("k") + ".gb"), dir / (cache::sha256_hex("other") + ".gb"));
  EXPECT_FALSE(store.load("other"));
  EXPECT_EQ(store.incidents().size(), 1u);
  EXPECT_TRUE(fs::exists(dir / "quarantine" / (cache::sha256_hex("other") + ".gb")));
  fs::remove_all(dir);
}

TEST(Cache, VerifyAfterRunAndCorruption) {
  const auto dir = scratch("verify");
  cli::RunOptions opts;
  opts.cache_dir = (dir / "cache").string();
  ASSERT_EQ(run_lib({kManifests + "/example1.json"}, opts), 0);
  cache::FileStore store(dir / "cache");
  auto v = store.verify();
  ASSERT_FALSE(v.empty());
  for (const auto& e : v) EXPECT_TRUE(e.ok) << e.id << " " << e.problem;

  // Flip one byte near the end of one entry.
  const auto victim = dir / "cache" / (v[0].id + ".gb");
  std::string text = slurp(victim);
  text[text.size() - 2] ^= 1;
  std::ofstream(victim, std::ios::binary | std::ios::trunc) << text;
  v = store.verify();
  std::size_t bad = 0;
  for (const auto& e : v) bad += e.ok ? 0 : 1;
  EXPECT_EQ(bad, 1u);
  EXPECT_FALSE(fs::exists(victim));
  EXPECT_TRUE(fs::exists(dir / "cache" / "quarantine" / victim.filename()));
  for (const auto& e : store.verify()) EXPECT_TRUE(e.ok);

  // Corruption seen at load time: quarantined, recomputed, run still passes.
  const auto entries = store.list();
  const auto second = dir / "cache" / (entries[0].id + ".gb");
  text = slurp(second);
  text[text.size() - 2] ^= 1;
  std::ofstream(second, std::ios::binary | std::ios::trunc) << text;
  std::ostringstream out, err;
  EXPECT_EQ(cli::run({kManifests + "/example1.json"}, opts, out, err), 0);
  EXPECT_NE(err.str().find("quarantined cache entry " + entries[0].id), std::string::npos) << err.str();
  for (const auto& e : store.verify()) EXPECT_TRUE(e.ok);
  fs::remove_all(dir);
}

TEST(Binary, ExitCodes) {
  const auto dir = scratch("bin");
  const std::string cache = " --cache-dir " + (dir / "cache").string();
  EXPECT_EQ(run_binary("run" + cache + " " + kManifests + "/example4.json"), 0);
  EXPECT_EQ(run_binary("run" + cache + " --germ-only " + kManifests + "/node-germ.json"), 0);
  EXPECT_EQ(run_binary("run" + cache + " " + kManifests + "/negative/misdeclared-point.json"), 1);
  EXPECT_EQ(run_binary("run" + cache + " " + kManifests + "/negative/missing-point.json"), 1);
  EXPECT_EQ(run_binary("run" + cache + " " + kManifests + "/negative/undeclared-variable.json"), 2);
  EXPECT_EQ(run_binary("run --max-degree 2 --no-cache " + kManifests + "/example4.json"), 3);
  EXPECT_EQ(run_binary("cache verify" + cache), 0);
  EXPECT_EQ(run_binary("cache list" + cache), 0);
  EXPECT_EQ(run_binary("cache clear" + cache), 0);
  EXPECT_EQ(run_binary("frobnicate"), 2);
  // Environment override of the cache directory.
  const std::string env = "QSMOOTH_CACHE_DIR=" + (dir / "envcache").string() + " ";
  EXPECT_EQ(std::system((env + QSMOOTH_BIN + " run " + kManifests + "/example4.json > /dev/null").c_str()), 0);
  EXPECT_FALSE(cache::FileStore(dir / "envcache").list().empty());
  fs::remove_all(dir);
}
