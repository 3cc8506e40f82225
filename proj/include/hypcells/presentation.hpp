#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace hypcells {

using Generator = std::uint8_t;
using Word = std::vector<Generator>;
using WordView = std::span<const Generator>;

// Bit i set <=> generator i is in the set.
using GeneratorSet = std::uint32_t;

inline constexpr std::size_t kMaxGenerators = 24;

inline bool contains(GeneratorSet set, Generator s) { return (set >> s) & 1u; }
inline GeneratorSet singleton(Generator s) { return GeneratorSet{1} << s; }

// Order of a product st, or of a polygon angle denominator. Infinity is a
// distinguished state, never a large integer.
class CoxeterOrder {
 public:
  constexpr CoxeterOrder() = default;  // infinite
  constexpr explicit CoxeterOrder(unsigned m) : m_(m) {}

  static constexpr CoxeterOrder infinite() { return CoxeterOrder(); }

  constexpr bool is_finite() const { return m_.has_value(); }
  constexpr unsigned value() const { return *m_; }

  friend constexpr bool operator==(const CoxeterOrder&, const CoxeterOrder&) = default;

 private:
  std::optional<unsigned> m_;
};

std::string to_string(CoxeterOrder m);

// A hyperbolic polygon group. Side i of the polygon is reflected by
// generator sides()[i]; the angle pi/a_i sits between sides i and i+1 (mod n).
class Presentation {
 public:
  // Builds the Coxeter matrix from the polygon data and checks
  // hyperbolicity. `symbols` fixes the generator order used for ShortLex;
  // `sides` lists generator indices in cyclic side order.
  Presentation(std::string name, std::vector<char> symbols, std::vector<Generator> sides,
               std::vector<CoxeterOrder> angles);

  // Default symbols a, b, c, ... with sides in generator order.
  static Presentation from_angles(std::string name, std::vector<CoxeterOrder> angles);

  // Config fields: name, angles (integers or "inf"), optional generators
  // (string of one-character symbols or array of them), optional sides.
  static Presentation from_json(const nlohmann::json& config);
  static Presentation load(const std::filesystem::path& path);
  nlohmann::ordered_json to_json() const;

  const std::string& name() const { return name_; }
  std::size_t rank() const { return symbols_.size(); }
  CoxeterOrder order(Generator s, Generator t) const { return matrix_[s * rank() + t]; }

  const std::vector<Generator>& sides() const { return sides_; }
  const std::vector<CoxeterOrder>& angles() const { return angles_; }

  char symbol(Generator s) const { return symbols_[s]; }
  std::optional<Generator> find_symbol(char c) const;

  // Words are written as concatenated one-character symbols; "" is the identity.
  Word parse_word(std::string_view text) const;
  std::string format_word(WordView w) const;
  std::string format_set(GeneratorSet set) const;
  GeneratorSet parse_set(std::string_view text) const;

  // Stable textual form of the Coxeter data; used for cache stamps.
  std::string canonical_string() const;
  std::string hash() const;

 private:
  std::string name_;
  std::vector<char> symbols_;
  std::vector<Generator> sides_;
  std::vector<CoxeterOrder> angles_;
  std::vector<CoxeterOrder> matrix_;
};

}  // namespace hypcells
