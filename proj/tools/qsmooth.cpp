// qsmooth run <manifest>... | qsmooth cache list|clear|verify

#include <iostream>

#include "CLI11.hpp"
#include "qsmooth/cache.hpp"
#include "qsmooth/cli.hpp"

namespace {

int cache_admin(const std::string& action, const std::optional<std::string>& dir) {
  qsmooth::cache::FileStore store(qsmooth::cache::resolve_directory(dir));
  std::cout << "cache: " << store.directory().string() << '\n';
  if (action == "clear") {
    std::cout << "removed " << store.clear() << " entries\n";
    return 0;
  }
  if (action == "list") {
    const auto entries = store.list();
    for (const auto& e : entries) std::cout << e.id << "  " << e.bytes << " bytes\n";
    std::cout << entries.size() << " entries\n";
    return 0;
  }
  const auto entries = store.verify();
  std::size_t bad = 0;
  for (const auto& e : entries)
    if (!e.ok) {
      ++bad;
      std::cout << "QUARANTINED " << e.id << ": " << e.problem << '\n';
    }
  std::cout << entries.size() << " entries, " << entries.size() - bad << " consistent, " << bad << " quarantined\n";
  return bad ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Q-smoothing verification for hypersurfaces with cyclic actions and T^1 of ICIS germs"};
  app.require_subcommand(1);

  qsmooth::cli::RunOptions opts;
  opts.max_degree = 200;
  std::vector<std::string> manifests;
  auto* run = app.add_subcommand("run", "Verify one or more manifests");
  run->add_option("manifests", manifests, "Manifest files")->required()->check(CLI::ExistingFile);
  run->add_flag("--germ-only", opts.germ_only, "Only the standalone germ entries");
  run->add_flag("--skip-family", opts.skip_family, "Skip the smoothing-family step");
  run->add_option("--report", opts.report_path, "Write the line-delimited JSON report here");
  run->add_option("--cache-dir", opts.cache_dir, "Basis cache directory (default $QSMOOTH_CACHE_DIR)");
  run->add_flag("--no-cache", opts.no_cache, "Neither read nor write the basis cache");
  run->add_option("--max-degree", opts.max_degree, "Abort Groebner runs past this basis degree")
      ->check(CLI::PositiveNumber);
  run->add_option("--jobs", opts.jobs, "Manifests verified concurrently")->check(CLI::PositiveNumber);

  std::string action;
  std::optional<std::string> cache_dir;
  auto* cache = app.add_subcommand("cache", "Inspect or maintain the basis cache");
  cache->add_option("action", action, "list, clear or verify")
      ->required()
      ->check(CLI::IsMember({"list", "clear", "verify"}));
  cache->add_option("--cache-dir", cache_dir, "Basis cache directory (default $QSMOOTH_CACHE_DIR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : qsmooth::cli::kManifestError;
  }

  try {
    if (*run) return qsmooth::cli::run(manifests, opts, std::cout, std::cerr);
    return cache_admin(action, cache_dir);
  } catch (const std::exception& e) {
    std::cerr << "qsmooth: " << e.what() << '\n';
    return qsmooth::cli::kInternalError;
  }
}
