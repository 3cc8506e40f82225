#include "hypcells/poly.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "hypcells/error.hpp"

namespace hypcells {

IntPoly::IntPoly(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::constant(Coeff c) { return IntPoly({c}); }

IntPoly IntPoly::monomial(Coeff c, std::size_t degree) {
  std::vector<Coeff> v(degree + 1, 0);
  v[degree] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<IntPoly::Coeff> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPoly(std::move(out));
}

IntPoly IntPoly::operator-() const {
  IntPoly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

IntPoly IntPoly::shifted(std::size_t by) const {
  if (is_zero()) return {};
  std::vector<Coeff> v(by, 0);
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  return IntPoly(std::move(v));
}

IntPoly IntPoly::truncated(long max_degree) const {
  if (max_degree < 0) return {};
  std::vector<Coeff> v(coeffs_.begin(),
                       coeffs_.begin() + std::min<long>(max_degree + 1, static_cast<long>(coeffs_.size())));
  return IntPoly(std::move(v));
}

IntPoly IntPoly::reversed(std::size_t degree) const {
  if (is_zero()) return {};
  std::vector<Coeff> v(degree + 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[degree - i] = coeffs_[i];
  return IntPoly(std::move(v));
}

std::string IntPoly::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(coeffs_[i]);
  }
  return out;
}

IntPoly IntPoly::from_csv(std::string_view text) {
  std::vector<Coeff> v;
  if (text.empty()) return {};
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item = text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start);
    Coeff c = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), c);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw Error(ErrorCode::CorruptCache, "bad polynomial coefficient '" + std::string(item) + "'");
    }
    v.push_back(c);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  IntPoly p(std::move(v));
  if (p.coeffs_.size() != static_cast<std::size_t>(std::count(text.begin(), text.end(), ',') + 1)) {
    throw Error(ErrorCode::CorruptCache, "polynomial has trailing zero coefficients");
  }
  return p;
}

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Coeff c = coeffs_[i];
    if (c == 0) continue;
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    const Coeff a = c < 0 ? -c : c;
    if (a != 1 || i == 0) out << a;
    if (i >= 1) out << "q";
    if (i >= 2) out << "^" << i;
    first = false;
  }
  return out.str();
}

HalfLaurent::HalfLaurent(long low, std::vector<Coeff> coeffs) : low_(low), coeffs_(std::move(coeffs)) { trim(); }

HalfLaurent HalfLaurent::monomial(Coeff c, long exponent) { return HalfLaurent(exponent, {c}); }

HalfLaurent HalfLaurent::from_q_poly(const IntPoly& p, long shift, bool inverted) {
  if (p.is_zero()) return {};
  const long deg = p.degree();
  std::vector<Coeff> v(static_cast<std::size_t>(2 * deg + 1), 0);
  for (long i = 0; i <= deg; ++i) {
    const long e = inverted ? 2 * (deg - i) : 2 * i;
    v[static_cast<std::size_t>(e)] = p[static_cast<std::size_t>(i)];
  }
  return HalfLaurent(shift + (inverted ? -2 * deg : 0), std::move(v));
}

void HalfLaurent::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<long>(lead);
  }
  if (coeffs_.empty()) low_ = 0;
}

HalfLaurent::Coeff HalfLaurent::coeff(long exponent) const {
  if (exponent < low_ || exponent > high()) return 0;
  return coeffs_[static_cast<std::size_t>(exponent - low_)];
}

HalfLaurent& HalfLaurent::operator+=(const HalfLaurent& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const long lo = std::min(low_, o.low_);
  const long hi = std::max(high(), o.high());
  std::vector<Coeff> v(static_cast<std::size_t>(hi - lo + 1), 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[static_cast<std::size_t>(low_ - lo) + i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[static_cast<std::size_t>(o.low_ - lo) + i] += o.coeffs_[i];
  low_ = lo;
  coeffs_ = std::move(v);
  trim();
  return *this;
}

HalfLaurent& HalfLaurent::operator-=(const HalfLaurent& o) { return *this += -o; }

HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<HalfLaurent::Coeff> v(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return HalfLaurent(a.low_ + b.low_, std::move(v));
}

HalfLaurent HalfLaurent::operator-() const {
  HalfLaurent out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

HalfLaurent HalfLaurent::shifted(long by) const {
  if (is_zero()) return {};
  HalfLaurent out = *this;
  out.low_ += by;
  return out;
}

std::string HalfLaurent::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Coeff c = coeffs_[i];
    if (c == 0) continue;
    const long e = low_ + static_cast<long>(i);
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    const Coeff a = c < 0 ? -c : c;
    if (a != 1 || e == 0) out << a;
    if (e != 0) out << "v";
    if (e != 0 && e != 1) out << "^" << e;
    first = false;
  }
  return out.str();
}

}  // namespace hypcells
