#pragma once

#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hypcells {

class FieldScalar;

// Q(theta) with theta = 2cos(pi/N). The minimal polynomial of theta comes
// from the 2N-th cyclotomic polynomial by the substitution y = x + 1/x.
class CyclotomicField {
 public:
  static std::shared_ptr<const CyclotomicField> make(unsigned conductor);

  unsigned conductor() const { return conductor_; }
  std::size_t degree() const { return minpoly_.size() - 1; }
  // Monic, coefficients from degree 0 upward.
  const std::vector<mpz_class>& minimal_polynomial() const { return minpoly_; }

  FieldScalar zero() const;
  FieldScalar one() const;
  FieldScalar rational(const mpq_class& q) const;
  FieldScalar theta() const;
  // 2cos(pi/m); m must divide the conductor.
  FieldScalar two_cos_pi_over(unsigned m) const;

 private:
  explicit CyclotomicField(unsigned conductor);

  unsigned conductor_;
  std::vector<mpz_class> minpoly_;
};

// Exact element of a CyclotomicField in the power basis 1, theta, ...,
// theta^(d-1). The field must outlive every scalar that refers to it.
class FieldScalar {
 public:
  FieldScalar() = default;
  FieldScalar(const CyclotomicField* field, std::vector<mpq_class> coeffs);

  const CyclotomicField* field() const { return field_; }
  const std::vector<mpq_class>& coefficients() const { return c_; }

  bool is_zero() const;
  // Exact sign: zero is decided on coefficients; otherwise the value is
  // enclosed by interval arithmetic at doubling precision until the
  // enclosure excludes zero.
  int sign() const;
  double to_double() const;
  std::string to_string() const;

  FieldScalar operator-() const;
  FieldScalar& operator+=(const FieldScalar& o);
  FieldScalar& operator-=(const FieldScalar& o);
  FieldScalar& operator*=(const mpq_class& q);
  friend FieldScalar operator+(FieldScalar a, const FieldScalar& b) { return a += b; }
  friend FieldScalar operator-(FieldScalar a, const FieldScalar& b) { return a -= b; }
  friend FieldScalar operator*(FieldScalar a, const mpq_class& q) { return a *= q; }
  friend FieldScalar operator*(const FieldScalar& a, const FieldScalar& b);

  friend bool operator==(const FieldScalar& a, const FieldScalar& b) { return a.c_ == b.c_; }

 private:
  const CyclotomicField* field_ = nullptr;
  std::vector<mpq_class> c_;
};

// Sign of a rational-coefficient polynomial at theta = 2cos(pi/N), decided
// with MPFR intervals. Exposed for tests.
int certified_sign(const std::vector<mpq_class>& poly, unsigned conductor);

}  // namespace hypcells
