#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypcells/conjecture.hpp"

namespace hypcells {

inline constexpr const char* kToolVersion = "0.1.0";

struct Stamp {
  std::string group_hash;
  std::size_t radius = 0;
  std::size_t k = 0;
  std::string tool_version = kToolVersion;

  nlohmann::ordered_json to_json() const;
  static Stamp from_json(const nlohmann::json& j);
  friend bool operator==(const Stamp&, const Stamp&) = default;
};

// Per-group artifact directory <root>/<group name>/ with meta.json recording
// the validated k and one stamp per artifact. Writes go through a temporary
// file and an atomic rename; one writer per artifact.
class Workspace {
 public:
  Workspace(const std::filesystem::path& root, const Presentation& p);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path(const std::string& rel) const { return dir_ / rel; }
  Stamp stamp(std::size_t radius, std::size_t k) const { return {hash_, radius, k, kToolVersion}; }

  // File present and its recorded stamp equal to `want`; a stale or missing
  // stamp is logged.
  bool fresh(const std::string& rel, const Stamp& want);
  void commit(const std::string& rel, const std::string& bytes, const Stamp& s);
  std::string read(const std::string& rel) const;  // CorruptCache if unreadable

  std::optional<ValidatedK> validated_k(const CoxeterGroup& g) const;
  void store_k(const ValidatedK& k);

  // "computed <file>", "cached <file>", "recompute <file>: <reason>".
  const std::vector<std::string>& log() const { return log_; }
  void note(std::string line) { log_.push_back(std::move(line)); }

 private:
  void save_meta();

  std::filesystem::path dir_;
  std::string hash_;
  nlohmann::ordered_json meta_;
  std::vector<std::string> log_;
};

// Text written atomically: <path>.tmp then rename.
void write_atomic(const std::filesystem::path& path, const std::string& bytes);

// Validated k from the cache, from an explicit request, or selected
// automatically (radius 10) and stored.
ValidatedK workspace_k(Workspace& ws, const CoxeterGroup& g, std::optional<std::size_t> requested);

// Partition automata from fsa/X_<i>.fsa and fsa/<label>.fsa when fresh,
// otherwise built and committed.
ConjecturalPartition workspace_partition(Workspace& ws, const CoxeterGroup& g, const ValidatedK& k);

}  // namespace hypcells
