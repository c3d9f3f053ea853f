#pragma once
// On-disk store for reduced Groebner bases, keyed by the SHA-256 of the
// canonical generator text. Each entry records digests of its key and value
// so that corruption is detected before a basis is reused.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qsmooth/gb.hpp"

namespace qsmooth::cache {

std::string sha256_hex(const std::string& data);

// --cache-dir, else $QSMOOTH_CACHE_DIR, else $XDG_CACHE_HOME/qsmooth, else
// ~/.cache/qsmooth, else ./.qsmooth-cache.
std::filesystem::path resolve_directory(const std::optional<std::string>& flag);

struct EntryInfo {
  std::string id;  // file stem, the key digest
  std::uintmax_t bytes = 0;
  bool ok = false;
  std::string problem;
};

class FileStore : public gb::BasisStore {
 public:
  explicit FileStore(std::filesystem::path dir);

  std::optional<std::string> load(const std::string& key) override;
  void save(const std::string& key, const std::string& value) override;

  const std::filesystem::path& directory() const { return dir_; }
  // Entries that failed their checks during load and were quarantined.
  std::vector<std::string> incidents() const;

  std::vector<EntryInfo> list() const;
  // Recomputes digests; bad entries are moved to quarantine/.
  std::vector<EntryInfo> verify();
  // Removes all entries (and the quarantine); returns how many were removed.
  std::size_t clear();

 private:
  std::filesystem::path entry_path(const std::string& id) const;
  void quarantine(const std::filesystem::path& p);

  std::filesystem::path dir_;
  mutable std::mutex mu_;
  std::vector<std::string> incidents_;
};

}  // namespace qsmooth::cache
