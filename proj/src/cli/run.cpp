#include <atomic>
#include <fstream>
#include <memory>
#include <ostream>
#include <thread>

#include "qsmooth/cache.hpp"
#include "qsmooth/cli.hpp"

namespace qsmooth::cli {

namespace {

struct Job {
  std::string path;
  std::optional<geom::Report> report;
  std::string manifest_error;
};

}  // namespace

int run(const std::vector<std::string>& manifests, const RunOptions& options, std::ostream& out, std::ostream& err) {
  std::unique_ptr<cache::FileStore> store;
  if (!options.no_cache) store = std::make_unique<cache::FileStore>(cache::resolve_directory(options.cache_dir));

  geom::PipelineOptions popts;
  popts.germ_only = options.germ_only;
  popts.skip_family = options.skip_family;
  popts.gb.max_degree = options.max_degree;
  popts.gb.store = store.get();

  std::vector<Job> jobs(manifests.size());
  for (std::size_t i = 0; i < manifests.size(); ++i) jobs[i].path = manifests[i];

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        const auto m = load_manifest(jobs[i].path);
        jobs[i].report = geom::example_pipeline(m, popts);
      } catch (const ManifestError& e) {
        jobs[i].manifest_error = e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  std::ofstream machine;
  if (options.report_path) {
    machine.open(*options.report_path, std::ios::binary | std::ios::trunc);
    if (!machine) {
      err << "qsmooth: cannot write report " << *options.report_path << '\n';
      return kInternalError;
    }
  }
  int code = kOk;
  for (const auto& j : jobs) {
    if (j.report) {
      write_human_report(out, *j.report);
      if (machine.is_open()) write_machine_report(machine, *j.report);
      code = std::max(code, exit_code(*j.report));
    } else {
      err << "qsmooth: manifest error: " << j.manifest_error << '\n';
      if (machine.is_open())
        machine << nlohmann::json{{"record", "manifest_error"}, {"path", j.path}, {"message", j.manifest_error}}.dump()
                << '\n';
      code = std::max<int>(code, kManifestError);
    }
  }
  if (store)
    for (const auto& inc : store->incidents()) err << "qsmooth: quarantined cache entry " << inc << '\n';
  return code;
}

}  // namespace qsmooth::cli
