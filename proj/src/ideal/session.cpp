#include "birat/ideal/session.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <system_error>

namespace birat {

namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t seed) {
  std::uint64_t h = 1469598103934665603ull ^ seed;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  // final avalanche (splitmix64)
  h += 0x9e3779b97f4a7c15ull;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
  return h ^ (h >> 31);
}

thread_local Session* tl_session = nullptr;

constexpr const char* kMagic = "birat-basis-v1";

}  // namespace

std::string content_hash(const std::string& text) {
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(fnv1a(text, 0)),
                static_cast<unsigned long long>(fnv1a(text, 0x5bd1e995ull)));
  return buf;
}

BasisStore::BasisStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
}

std::filesystem::path BasisStore::entry(const std::string& key) const { return dir_ / (key + ".gb"); }

std::optional<std::string> BasisStore::load(const std::string& key) const {
  std::ifstream in(entry(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  // layout: magic key checksum \n payload
  auto nl = text.find('\n');
  if (nl == std::string::npos) return std::nullopt;
  std::istringstream header(text.substr(0, nl));
  std::string magic, k, sum;
  header >> magic >> k >> sum;
  if (magic != kMagic || k != key) return std::nullopt;
  std::string payload = text.substr(nl + 1);
  if (content_hash(payload) != sum) return std::nullopt;
  return payload;
}

void BasisStore::store(const std::string& key, const std::string& payload) const {
  std::error_code ec;
  if (std::filesystem::exists(entry(key), ec)) return;
  std::random_device rd;
  auto tmp = dir_ / (key + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) return;
    out << kMagic << ' ' << key << ' ' << content_hash(payload) << '\n' << payload;
    if (!out) {
      std::filesystem::remove(tmp, ec);
      return;
    }
  }
  std::filesystem::rename(tmp, entry(key), ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

Session::Session(std::optional<std::filesystem::path> cache_dir, double min_cached_seconds)
    : min_cached_seconds_(min_cached_seconds) {
  if (cache_dir) store_.emplace(*cache_dir);
}

Session* Session::current() { return tl_session; }

SessionScope::SessionScope(Session& s) : previous_(tl_session) { tl_session = &s; }
SessionScope::~SessionScope() { tl_session = previous_; }

}  // namespace birat
