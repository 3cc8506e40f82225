#include "hypcells/workspace.hpp"

#include <fstream>
#include <sstream>

#include "hypcells/error.hpp"

namespace hypcells {

namespace fs = std::filesystem;

nlohmann::ordered_json Stamp::to_json() const {
  nlohmann::ordered_json j;
  j["group_hash"] = group_hash;
  j["radius"] = radius;
  j["k"] = k;
  j["tool_version"] = tool_version;
  return j;
}

Stamp Stamp::from_json(const nlohmann::json& j) {
  Stamp s;
  s.group_hash = j.at("group_hash").get<std::string>();
  s.radius = j.at("radius").get<std::size_t>();
  s.k = j.at("k").get<std::size_t>();
  s.tool_version = j.at("tool_version").get<std::string>();
  return s;
}

void write_atomic(const fs::path& path, const std::string& bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << bytes;
    if (!out) throw Error(ErrorCode::CorruptCache, "cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

Workspace::Workspace(const fs::path& root, const Presentation& p) : dir_(root / p.name()), hash_(p.hash()) {
  fs::create_directories(dir_);
  const fs::path meta = dir_ / "meta.json";
  if (fs::exists(meta)) {
    std::ifstream in(meta);
    try {
      meta_ = nlohmann::ordered_json::parse(in);
      if (!meta_.is_object() || !meta_.contains("artifacts")) throw std::runtime_error("missing artifacts");
      for (const auto& [rel, s] : meta_["artifacts"].items()) (void)Stamp::from_json(s);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::CorruptCache, meta.string() + ": " + e.what());
    }
    if (meta_.value("group_hash", "") != hash_) {
      log_.push_back("recompute all: group changed");
      meta_ = nlohmann::ordered_json();
    }
  }
  if (meta_.is_null()) {
    meta_["group"] = p.name();
    meta_["group_hash"] = hash_;
    meta_["tool_version"] = kToolVersion;
    meta_["artifacts"] = nlohmann::ordered_json::object();
  }
}

void Workspace::save_meta() { write_atomic(dir_ / "meta.json", meta_.dump(2) + "\n"); }

bool Workspace::fresh(const std::string& rel, const Stamp& want) {
  const auto& artifacts = meta_["artifacts"];
  if (!artifacts.contains(rel) || !fs::exists(path(rel))) return false;
  const Stamp have = Stamp::from_json(artifacts[rel]);
  if (have == want) {
    log_.push_back("cached " + rel);
    return true;
  }
  log_.push_back("recompute " + rel + ": stale stamp");
  return false;
}

void Workspace::commit(const std::string& rel, const std::string& bytes, const Stamp& s) {
  write_atomic(path(rel), bytes);
  meta_["artifacts"][rel] = s.to_json();
  save_meta();
  log_.push_back("computed " + rel);
}

std::string Workspace::read(const std::string& rel) const {
  std::ifstream in(path(rel), std::ios::binary);
  if (!in) throw Error(ErrorCode::CorruptCache, "cannot read " + path(rel).string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<ValidatedK> Workspace::validated_k(const CoxeterGroup& g) const {
  if (!meta_.contains("validated_k")) return std::nullopt;
  const auto& v = meta_["validated_k"];
  if (v.value("tool_version", "") != kToolVersion) return std::nullopt;
  try {
    return ValidatedK::restore(g, v.at("k").get<std::size_t>(), v.at("radius").get<std::size_t>());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::CorruptCache, (dir_ / "meta.json").string() + ": " + e.what());
  }
}

void Workspace::store_k(const ValidatedK& k) {
  meta_["validated_k"] = {{"k", k.k()}, {"radius", k.radius()}, {"tool_version", kToolVersion}};
  save_meta();
}

ValidatedK workspace_k(Workspace& ws, const CoxeterGroup& g, std::optional<std::size_t> requested) {
  const auto cached = ws.validated_k(g);
  if (cached && (!requested || cached->k() == *requested)) {
    ws.note("cached validated k = " + std::to_string(cached->k()));
    return *cached;
  }
  std::optional<ValidatedK> k;
  if (requested) {
    k = validate_k(g, *requested, 10);
    if (!k) throw Error(ErrorCode::KNotValidated, "k = " + std::to_string(*requested) + " fails at radius 10");
  } else {
    std::vector<Word> patterns;
    for (const auto& e : dihedral_data(g.presentation()).entries) patterns.push_back(e.longest);
    k = select_k(g, patterns, 10);
  }
  ws.store_k(*k);
  ws.note("computed validated k = " + std::to_string(k->k()));
  return *k;
}

namespace {

std::string fsa_text(const Fsa& f) {
  std::ostringstream out;
  f.write(out);
  return out.str();
}

Fsa fsa_from(const Workspace& ws, const std::string& rel) {
  std::istringstream in(ws.read(rel));
  try {
    return Fsa::read(in);
  } catch (const Error& e) {
    throw Error(ErrorCode::CorruptCache, ws.path(rel).string() + ": " + e.what());
  }
}

}  // namespace

ConjecturalPartition workspace_partition(Workspace& ws, const CoxeterGroup& g, const ValidatedK& k) {
  const DihedralData d = dihedral_data(g.presentation());
  const Stamp s = ws.stamp(0, k.k());
  std::vector<std::string> pattern_files, cell_files;
  for (std::size_t i = 1; i <= d.levels(); ++i) pattern_files.push_back("fsa/X_" + std::to_string(i) + ".fsa");
  for (const CellLabel& l : all_labels(d)) cell_files.push_back("fsa/" + l.name() + ".fsa");
  bool warm = true;
  for (const auto* files : {&pattern_files, &cell_files}) {
    for (const auto& f : *files) warm = ws.fresh(f, s) && warm;
  }
  if (warm) {
    std::vector<Fsa> patterns, cells;
    for (const auto& f : pattern_files) patterns.push_back(fsa_from(ws, f));
    for (const auto& f : cell_files) cells.push_back(fsa_from(ws, f));
    return ConjecturalPartition(g, k, std::move(patterns), std::move(cells));
  }
  ConjecturalPartition part(g, k);
  for (std::size_t i = 0; i < pattern_files.size(); ++i) ws.commit(pattern_files[i], fsa_text(part.all_patterns()[i]), s);
  for (std::size_t i = 0; i < cell_files.size(); ++i) ws.commit(cell_files[i], fsa_text(part.all_cells()[i]), s);
  return part;
}

}  // namespace hypcells
