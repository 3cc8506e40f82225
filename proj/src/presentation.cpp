#include "hypcells/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "hypcells/error.hpp"

namespace hypcells {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHyperbolic: return "NonHyperbolic";
    case ErrorCode::BadDenominator: return "BadDenominator";
    case ErrorCode::TooFewSides: return "TooFewSides";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::PatternNotReduced: return "PatternNotReduced";
    case ErrorCode::KNotValidated: return "KNotValidated";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::StateBlowup: return "StateBlowup";
    case ErrorCode::BallTooSmall: return "BallTooSmall";
    case ErrorCode::InvalidDescentClass: return "InvalidDescentClass";
    case ErrorCode::NoFiniteVertex: return "NoFiniteVertex";
    case ErrorCode::SolverDiverged: return "SolverDiverged";
    case ErrorCode::CorruptCache: return "CorruptCache";
  }
  return "Unknown";
}

std::string to_string(CoxeterOrder m) {
  return m.is_finite() ? std::to_string(m.value()) : std::string("inf");
}

Presentation::Presentation(std::string name, std::vector<char> symbols,
                           std::vector<Generator> sides, std::vector<CoxeterOrder> angles)
    : name_(std::move(name)),
      symbols_(std::move(symbols)),
      sides_(std::move(sides)),
      angles_(std::move(angles)) {
  const std::size_t n = angles_.size();
  if (n < 3) {
    throw Error(ErrorCode::TooFewSides, "a polygon needs at least 3 sides, got " + std::to_string(n));
  }
  if (n > kMaxGenerators) {
    throw Error(ErrorCode::BadConfig, "at most " + std::to_string(kMaxGenerators) + " sides supported");
  }
  if (symbols_.size() != n || sides_.size() != n) {
    throw Error(ErrorCode::BadConfig, "generators, sides and angles must have equal length");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (symbols_[i] == symbols_[j]) throw Error(ErrorCode::BadConfig, "duplicate generator symbol");
    }
    if (symbols_[i] == '_' || symbols_[i] == ',' || std::isspace(static_cast<unsigned char>(symbols_[i]))) {
      throw Error(ErrorCode::BadConfig, "reserved generator symbol");
    }
  }
  std::vector<Generator> perm = sides_;
  std::sort(perm.begin(), perm.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (perm[i] != i) throw Error(ErrorCode::BadConfig, "sides must list every generator exactly once");
  }

  // Angle sum over finite vertices: sum 1/a_i < n - 2, compared exactly.
  long long num = 0;
  long long den = 1;
  for (const CoxeterOrder a : angles_) {
    if (!a.is_finite()) continue;
    if (a.value() < 2) {
      throw Error(ErrorCode::BadDenominator, "angle denominator " + std::to_string(a.value()) + " < 2");
    }
    const long long l = std::lcm(den, static_cast<long long>(a.value()));
    num = num * (l / den) + l / a.value();
    den = l;
    const long long g = std::gcd(num, den);
    num /= g;
    den /= g;
  }
  if (num >= static_cast<long long>(n - 2) * den) {
    throw Error(ErrorCode::NonHyperbolic, "angle sum is not below (n-2)pi");
  }

  matrix_.assign(n * n, CoxeterOrder::infinite());
  for (std::size_t s = 0; s < n; ++s) matrix_[s * n + s] = CoxeterOrder(1);
  for (std::size_t i = 0; i < n; ++i) {
    const Generator a = sides_[i];
    const Generator b = sides_[(i + 1) % n];
    matrix_[a * n + b] = angles_[i];
    matrix_[b * n + a] = angles_[i];
  }
}

Presentation Presentation::from_angles(std::string name, std::vector<CoxeterOrder> angles) {
  std::vector<char> symbols;
  std::vector<Generator> sides;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    symbols.push_back(static_cast<char>('a' + i));
    sides.push_back(static_cast<Generator>(i));
  }
  return Presentation(std::move(name), std::move(symbols), std::move(sides), std::move(angles));
}

namespace {

std::vector<char> read_symbols(const nlohmann::json& node) {
  std::vector<char> out;
  if (node.is_string()) {
    for (char c : node.get<std::string>()) out.push_back(c);
    return out;
  }
  if (!node.is_array()) throw Error(ErrorCode::BadConfig, "generators must be a string or an array");
  for (const auto& item : node) {
    if (!item.is_string() || item.get<std::string>().size() != 1) {
      throw Error(ErrorCode::BadConfig, "generator symbols must be one character");
    }
    out.push_back(item.get<std::string>()[0]);
  }
  return out;
}

}  // namespace

Presentation Presentation::from_json(const nlohmann::json& config) {
  if (!config.is_object() || !config.contains("angles") || !config["angles"].is_array()) {
    throw Error(ErrorCode::BadConfig, "config needs an 'angles' array");
  }
  std::vector<CoxeterOrder> angles;
  for (const auto& a : config["angles"]) {
    if (a.is_string() && a.get<std::string>() == "inf") {
      angles.push_back(CoxeterOrder::infinite());
    } else if (a.is_number_integer()) {
      const long long v = a.get<long long>();
      if (v < 2) throw Error(ErrorCode::BadDenominator, "angle denominator " + std::to_string(v) + " < 2");
      angles.push_back(CoxeterOrder(static_cast<unsigned>(v)));
    } else {
      throw Error(ErrorCode::BadDenominator, "angle entries must be integers or \"inf\"");
    }
  }
  const std::string name = config.value("name", std::string("W"));
  if (!config.contains("generators")) {
    if (config.contains("sides")) throw Error(ErrorCode::BadConfig, "sides given without generators");
    return from_angles(name, std::move(angles));
  }
  std::vector<char> symbols = read_symbols(config["generators"]);
  std::vector<Generator> sides;
  if (config.contains("sides")) {
    for (char c : read_symbols(config["sides"])) {
      const auto it = std::find(symbols.begin(), symbols.end(), c);
      if (it == symbols.end()) throw Error(ErrorCode::BadConfig, std::string("unknown side symbol ") + c);
      sides.push_back(static_cast<Generator>(it - symbols.begin()));
    }
  } else {
    for (std::size_t i = 0; i < symbols.size(); ++i) sides.push_back(static_cast<Generator>(i));
  }
  return Presentation(name, std::move(symbols), std::move(sides), std::move(angles));
}

Presentation Presentation::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadConfig, "cannot open group config " + path.string());
  nlohmann::json config;
  try {
    in >> config;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadConfig, path.string() + ": " + e.what());
  }
  return from_json(config);
}

nlohmann::ordered_json Presentation::to_json() const {
  nlohmann::ordered_json out;
  out["name"] = name_;
  std::string gens(symbols_.begin(), symbols_.end());
  std::string sides;
  for (Generator s : sides_) sides.push_back(symbols_[s]);
  out["generators"] = gens;
  out["sides"] = sides;
  nlohmann::json angles = nlohmann::json::array();
  for (CoxeterOrder a : angles_) {
    if (a.is_finite()) angles.push_back(a.value());
    else angles.push_back("inf");
  }
  out["angles"] = angles;
  return out;
}

std::optional<Generator> Presentation::find_symbol(char c) const {
  const auto it = std::find(symbols_.begin(), symbols_.end(), c);
  if (it == symbols_.end()) return std::nullopt;
  return static_cast<Generator>(it - symbols_.begin());
}

Word Presentation::parse_word(std::string_view text) const {
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    const auto g = find_symbol(c);
    if (!g) throw Error(ErrorCode::BadConfig, std::string("unknown generator symbol '") + c + "'");
    w.push_back(*g);
  }
  return w;
}

std::string Presentation::format_word(WordView w) const {
  std::string out;
  out.reserve(w.size());
  for (Generator g : w) out.push_back(symbols_[g]);
  return out;
}

std::string Presentation::format_set(GeneratorSet set) const {
  std::string out;
  for (std::size_t s = 0; s < rank(); ++s) {
    if (contains(set, static_cast<Generator>(s))) out.push_back(symbols_[s]);
  }
  return out;
}

GeneratorSet Presentation::parse_set(std::string_view text) const {
  GeneratorSet set = 0;
  for (Generator g : parse_word(text)) set |= singleton(g);
  return set;
}

std::string Presentation::canonical_string() const {
  std::ostringstream out;
  out << "gens=" << std::string(symbols_.begin(), symbols_.end()) << ";m=";
  for (std::size_t s = 0; s < rank(); ++s) {
    for (std::size_t t = s + 1; t < rank(); ++t) {
      out << to_string(order(static_cast<Generator>(s), static_cast<Generator>(t))) << ',';
    }
  }
  out << ";sides=";
  for (Generator s : sides_) out << symbols_[s];
  return out.str();
}

std::string Presentation::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical_string()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace hypcells
