#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hypcells {

// Integer polynomial in q, dense from degree 0; zero is the empty list.
class IntPoly {
 public:
  using Coeff = std::int64_t;

  IntPoly() = default;
  explicit IntPoly(std::vector<Coeff> coeffs);
  static IntPoly constant(Coeff c);
  static IntPoly monomial(Coeff c, std::size_t degree);

  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  Coeff operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
  const std::vector<Coeff>& coeffs() const { return coeffs_; }

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  IntPoly operator-() const;
  IntPoly shifted(std::size_t by) const;         // times q^by
  IntPoly truncated(long max_degree) const;      // drop terms above max_degree
  IntPoly reversed(std::size_t degree) const;    // q^degree * p(1/q); requires degree >= deg p

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

  // "1,0,-1" from degree 0; "" for zero.
  std::string to_csv() const;
  static IntPoly from_csv(std::string_view text);
  std::string to_string() const;

 private:
  void trim();
  std::vector<Coeff> coeffs_;
};

// Laurent polynomial in v = q^{1/2}: coefficient of v^(low + i) at index i.
class HalfLaurent {
 public:
  using Coeff = std::int64_t;

  HalfLaurent() = default;
  HalfLaurent(long low, std::vector<Coeff> coeffs);
  static HalfLaurent monomial(Coeff c, long exponent);
  // p(q) with q = v^2, scaled by v^shift, optionally with q -> q^{-1}.
  static HalfLaurent from_q_poly(const IntPoly& p, long shift, bool inverted);

  bool is_zero() const { return coeffs_.empty(); }
  long low() const { return low_; }
  long high() const { return low_ + static_cast<long>(coeffs_.size()) - 1; }
  Coeff coeff(long exponent) const;
  const std::vector<Coeff>& coeffs() const { return coeffs_; }

  HalfLaurent& operator+=(const HalfLaurent& o);
  HalfLaurent& operator-=(const HalfLaurent& o);
  friend HalfLaurent operator+(HalfLaurent a, const HalfLaurent& b) { return a += b; }
  friend HalfLaurent operator-(HalfLaurent a, const HalfLaurent& b) { return a -= b; }
  friend HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b);
  HalfLaurent operator-() const;
  HalfLaurent shifted(long by) const;  // times v^by

  friend bool operator==(const HalfLaurent&, const HalfLaurent&) = default;

  // e.g. "-v^-1 - v", "0"
  std::string to_string() const;

 private:
  void trim();
  long low_ = 0;
  std::vector<Coeff> coeffs_;
};

}  // namespace hypcells
