#include "hypcells/field.hpp"

#include <cassert>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <mpfr.h>

namespace hypcells {

namespace {

using ZPoly = std::vector<mpz_class>;

void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact quotient by a monic divisor.
ZPoly divide_exact(ZPoly num, const ZPoly& den) {
  assert(!den.empty() && den.back() == 1);
  trim(num);
  if (num.size() < den.size()) return {};
  ZPoly q(num.size() - den.size() + 1, 0);
  for (std::size_t k = num.size(); k-- >= den.size();) {
    const mpz_class c = num[k];
    const std::size_t shift = k - (den.size() - 1);
    q[shift] = c;
    if (c != 0) {
      for (std::size_t j = 0; j < den.size(); ++j) num[shift + j] -= c * den[j];
    }
  }
  trim(num);
  if (!num.empty()) throw std::logic_error("cyclotomic division left a remainder");
  return q;
}

ZPoly cyclotomic(unsigned n, std::map<unsigned, ZPoly>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  ZPoly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d == 0) p = divide_exact(p, cyclotomic(d, memo));
  }
  memo[n] = p;
  return p;
}

// C_0 = 2, C_1 = y, C_{k+1} = y C_k - C_{k-1}: x^k + x^-k = C_k(x + 1/x).
std::vector<ZPoly> vieta_lucas(std::size_t upto) {
  std::vector<ZPoly> c{{2}, {0, 1}};
  while (c.size() <= upto) {
    const ZPoly& a = c[c.size() - 1];
    const ZPoly& b = c[c.size() - 2];
    ZPoly next(a.size() + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) next[i + 1] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) next[i] -= b[i];
    c.push_back(next);
  }
  return c;
}

void reduce(std::vector<mpq_class>& c, const std::vector<mpz_class>& minpoly) {
  const std::size_t d = minpoly.size() - 1;
  for (std::size_t k = c.size(); k-- > d;) {
    const mpq_class lead = c[k];
    if (lead != 0) {
      for (std::size_t j = 0; j <= d; ++j) c[k - d + j] -= lead * minpoly[j];
    }
  }
  c.resize(d, 0);
}

// Closed interval with MPFR endpoints rounded outward.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
  }
  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }
  Interval(const Interval&) = delete;
  Interval& operator=(const Interval&) = delete;

  void set(const mpq_class& q) {
    mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
  }

  void set_theta(unsigned conductor, mpfr_prec_t prec) {
    mpfr_t x;
    mpfr_init2(x, prec);
    // cos is decreasing on [0, pi]: an upper bound on the angle gives a lower
    // bound on the cosine.
    mpfr_const_pi(x, MPFR_RNDU);
    mpfr_div_ui(x, x, conductor, MPFR_RNDU);
    mpfr_cos(lo_, x, MPFR_RNDD);
    mpfr_mul_ui(lo_, lo_, 2, MPFR_RNDD);
    mpfr_const_pi(x, MPFR_RNDD);
    mpfr_div_ui(x, x, conductor, MPFR_RNDD);
    mpfr_cos(hi_, x, MPFR_RNDU);
    mpfr_mul_ui(hi_, hi_, 2, MPFR_RNDU);
    mpfr_clear(x);
  }

  // this = this * other + addend
  void fma(const Interval& other, const Interval& addend, mpfr_prec_t prec) {
    mpfr_t p, lo, hi;
    mpfr_inits2(prec, p, lo, hi, static_cast<mpfr_ptr>(nullptr));
    bool first = true;
    for (mpfr_srcptr a : {static_cast<mpfr_srcptr>(lo_), static_cast<mpfr_srcptr>(hi_)}) {
      for (mpfr_srcptr b : {static_cast<mpfr_srcptr>(other.lo_), static_cast<mpfr_srcptr>(other.hi_)}) {
        mpfr_mul(p, a, b, MPFR_RNDD);
        if (first || mpfr_less_p(p, lo)) mpfr_set(lo, p, MPFR_RNDD);
        mpfr_mul(p, a, b, MPFR_RNDU);
        if (first || mpfr_greater_p(p, hi)) mpfr_set(hi, p, MPFR_RNDU);
        first = false;
      }
    }
    mpfr_add(lo_, lo, addend.lo_, MPFR_RNDD);
    mpfr_add(hi_, hi, addend.hi_, MPFR_RNDU);
    mpfr_clears(p, lo, hi, static_cast<mpfr_ptr>(nullptr));
  }

  int certain_sign() const {
    if (mpfr_sgn(lo_) > 0) return 1;
    if (mpfr_sgn(hi_) < 0) return -1;
    return 0;
  }

 private:
  mpfr_t lo_, hi_;
};

}  // namespace

int certified_sign(const std::vector<mpq_class>& poly, unsigned conductor) {
  std::size_t top = poly.size();
  while (top > 0 && poly[top - 1] == 0) --top;
  if (top == 0) return 0;
  for (mpfr_prec_t prec = 64; prec <= (1 << 16); prec *= 2) {
    Interval theta(prec);
    theta.set_theta(conductor, prec);
    Interval acc(prec);
    acc.set(poly[top - 1]);
    Interval coeff(prec);
    for (std::size_t k = top - 1; k-- > 0;) {
      coeff.set(poly[k]);
      acc.fma(theta, coeff, prec);
    }
    if (const int s = acc.certain_sign(); s != 0) return s;
  }
  throw std::runtime_error("sign undecided: value is zero but not reduced");
}

std::shared_ptr<const CyclotomicField> CyclotomicField::make(unsigned conductor) {
  return std::shared_ptr<const CyclotomicField>(new CyclotomicField(conductor));
}

CyclotomicField::CyclotomicField(unsigned conductor) : conductor_(conductor < 2 ? 2 : conductor) {
  std::map<unsigned, ZPoly> memo;
  const ZPoly phi = cyclotomic(2 * conductor_, memo);
  const std::size_t d = (phi.size() - 1) / 2;
  const auto c = vieta_lucas(d);
  ZPoly psi(d + 1, 0);
  psi[0] = phi[d];
  for (std::size_t k = 1; k <= d; ++k) {
    for (std::size_t j = 0; j < c[k].size(); ++j) psi[j] += phi[d + k] * c[k][j];
  }
  trim(psi);
  minpoly_ = psi;
}

FieldScalar CyclotomicField::zero() const { return FieldScalar(this, {}); }

FieldScalar CyclotomicField::one() const { return rational(1); }

FieldScalar CyclotomicField::rational(const mpq_class& q) const { return FieldScalar(this, {q}); }

FieldScalar CyclotomicField::theta() const { return FieldScalar(this, {0, 1}); }

FieldScalar CyclotomicField::two_cos_pi_over(unsigned m) const {
  if (m == 0 || conductor_ % m != 0) throw std::invalid_argument("order does not divide the conductor");
  const auto c = vieta_lucas(conductor_ / m);
  const ZPoly& p = c[conductor_ / m];
  std::vector<mpq_class> coeffs(p.begin(), p.end());
  return FieldScalar(this, std::move(coeffs));
}

FieldScalar::FieldScalar(const CyclotomicField* field, std::vector<mpq_class> coeffs)
    : field_(field), c_(std::move(coeffs)) {
  if (c_.size() < field_->degree()) c_.resize(field_->degree(), 0);
  reduce(c_, field_->minimal_polynomial());
}

bool FieldScalar::is_zero() const {
  for (const auto& x : c_) {
    if (x != 0) return false;
  }
  return true;
}

int FieldScalar::sign() const { return certified_sign(c_, field_->conductor()); }

double FieldScalar::to_double() const {
  const double theta = 2.0 * std::cos(3.14159265358979323846 / field_->conductor());
  double acc = 0;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * theta + c_[k].get_d();
  return acc;
}

std::string FieldScalar::to_string() const {
  std::ostringstream out;
  bool any = false;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (any) out << " + ";
    out << c_[k].get_str();
    if (k > 0) out << "*t^" << k;
    any = true;
  }
  if (!any) out << "0";
  return out.str();
}

FieldScalar FieldScalar::operator-() const {
  FieldScalar out = *this;
  for (auto& x : out.c_) x = -x;
  return out;
}

FieldScalar& FieldScalar::operator+=(const FieldScalar& o) {
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

FieldScalar& FieldScalar::operator-=(const FieldScalar& o) {
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

FieldScalar& FieldScalar::operator*=(const mpq_class& q) {
  for (auto& x : c_) x *= q;
  return *this;
}

FieldScalar operator*(const FieldScalar& a, const FieldScalar& b) {
  std::vector<mpq_class> out(a.c_.size() + b.c_.size(), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return FieldScalar(a.field_, std::move(out));
}

}  // namespace hypcells
