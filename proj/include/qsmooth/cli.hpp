#pragma once
// Manifest reading, report writing and the run driver behind tools/qsmooth.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsmooth/pipeline.hpp"

namespace qsmooth::cli {

class ManifestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses and validates a manifest (format in docs/manifest.md). Throws
// ManifestError with a path-qualified message.
geom::VerificationManifest parse_manifest(const std::string& text);
geom::VerificationManifest load_manifest(const std::string& path);

// One JSON object per line: a header, one record per step, a verdict.
void write_machine_report(std::ostream& os, const geom::Report& report);
void write_human_report(std::ostream& os, const geom::Report& report);

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kManifestError = 2, kInternalError = 3 };
int exit_code(const geom::Report& report);

struct RunOptions {
  bool germ_only = false;
  bool skip_family = false;
  std::optional<std::string> report_path;
  std::optional<std::string> cache_dir;
  bool no_cache = false;
  std::optional<unsigned> max_degree;
  unsigned jobs = 1;
};

// Runs each manifest (concurrently with jobs > 1), prints human reports in
// input order and writes the machine report. Returns the largest exit code.
int run(const std::vector<std::string>& manifests, const RunOptions& options, std::ostream& out,
        std::ostream& err);

}  // namespace qsmooth::cli
