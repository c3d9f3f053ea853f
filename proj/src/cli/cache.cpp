#include "qsmooth/cache.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <variant>

namespace qsmooth::cache {

namespace fs = std::filesystem;

namespace {

constexpr const char* kMagic = "qsmooth-gb-cache 1";
constexpr const char* kSuffix = ".gb";

struct Entry {
  std::string key_digest, value_digest, key, value;
};

std::optional<std::string> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Parses an entry and checks both digests; returns the problem on failure.
std::variant<Entry, std::string> decode(const std::string& text) {
  std::istringstream in(text);
  std::string magic, tag;
  Entry e;
  std::size_t nkey = 0, nvalue = 0;
  if (!std::getline(in, magic) || magic != kMagic) return std::string("bad header");
  if (!(in >> tag >> e.key_digest) || tag != "key-sha256") return std::string("bad key digest line");
  if (!(in >> tag >> e.value_digest) || tag != "value-sha256") return std::string("bad value digest line");
  if (!(in >> tag >> nkey) || tag != "key-bytes") return std::string("bad key length");
  if (!(in >> tag >> nvalue) || tag != "value-bytes") return std::string("bad value length");
  in.get();
  const auto start = static_cast<std::size_t>(in.tellg());
  if (start + nkey + nvalue != text.size()) return std::string("truncated or padded entry");
  e.key = text.substr(start, nkey);
  e.value = text.substr(start + nkey, nvalue);
  if (sha256_hex(e.key) != e.key_digest) return std::string("key digest mismatch");
  if (sha256_hex(e.value) != e.value_digest) return std::string("value digest mismatch");
  return e;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

fs::path resolve_directory(const std::optional<std::string>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("QSMOOTH_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "qsmooth";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "qsmooth";
  return ".qsmooth-cache";
}

FileStore::FileStore(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

fs::path FileStore::entry_path(const std::string& id) const { return dir_ / (id + kSuffix); }

void FileStore::quarantine(const fs::path& p) {
  const fs::path q = dir_ / "quarantine";
  fs::create_directories(q);
  std::error_code ec;
  fs::rename(p, q / p.filename(), ec);
  if (ec) fs::remove(p, ec);
}

std::optional<std::string> FileStore::load(const std::string& key) {
  const std::string id = sha256_hex(key);
  std::lock_guard lock(mu_);
  const fs::path p = entry_path(id);
  if (!fs::exists(p)) return std::nullopt;
  const auto text = read_file(p);
  std::string problem = "unreadable";
  if (text) {
    auto d = decode(*text);
    if (auto* e = std::get_if<Entry>(&d)) {
      if (e->key_digest == id && e->key == key) return e->value;
      problem = "entry stored under the wrong key";
    } else {
      problem = std::get<std::string>(d);
    }
  }
  incidents_.push_back(id + ": " + problem);
  quarantine(p);
  return std::nullopt;
}

void FileStore::save(const std::string& key, const std::string& value) {
  const std::string id = sha256_hex(key);
  std::ostringstream os;
  os << kMagic << "\nkey-sha256 " << id << "\nvalue-sha256 " << sha256_hex(value) << "\nkey-bytes " << key.size()
     << "\nvalue-bytes " << value.size() << '\n'
     << key << value;
  std::lock_guard lock(mu_);
  const fs::path p = entry_path(id);
  const fs::path tmp = dir_ / (id + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << os.str();
    if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
  }
  fs::rename(tmp, p);
}

std::vector<std::string> FileStore::incidents() const {
  std::lock_guard lock(mu_);
  return incidents_;
}

std::vector<EntryInfo> FileStore::list() const {
  std::vector<EntryInfo> out;
  std::lock_guard lock(mu_);
  for (const auto& de : fs::directory_iterator(dir_)) {
    if (!de.is_regular_file() || de.path().extension() != kSuffix) continue;
    EntryInfo info;
    info.id = de.path().stem().string();
    info.bytes = de.file_size();
    out.push_back(info);
  }
  std::sort(out.begin(), out.end(), [](const EntryInfo& a, const EntryInfo& b) { return a.id < b.id; });
  return out;
}

std::vector<EntryInfo> FileStore::verify() {
  auto entries = list();
  std::lock_guard lock(mu_);
  for (auto& info : entries) {
    const fs::path p = entry_path(info.id);
    const auto text = read_file(p);
    if (!text) {
      info.problem = "unreadable";
    } else {
      auto d = decode(*text);
      if (auto* e = std::get_if<Entry>(&d)) {
        if (e->key_digest != info.id) info.problem = "file name does not match key digest";
      } else {
        info.problem = std::get<std::string>(d);
      }
    }
    info.ok = info.problem.empty();
    if (!info.ok) quarantine(p);
  }
  return entries;
}

std::size_t FileStore::clear() {
  std::lock_guard lock(mu_);
  std::size_t n = 0;
  for (const auto& de : fs::directory_iterator(dir_))
    if (de.is_regular_file() && (de.path().extension() == kSuffix || de.path().extension() == ".tmp")) {
      fs::remove(de.path());
      if (de.path().extension() == kSuffix) ++n;
    }
  fs::remove_all(dir_ / "quarantine");
  return n;
}

}  // namespace qsmooth::cache
