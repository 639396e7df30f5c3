#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "twelvej/errors.hpp"

namespace twelvej {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Arbitrary-precision real. RAII over mpfr_t; every value carries its own
// precision, and binary operations work at the larger operand precision, so
// there is no ambient global precision to race on across worker threads.
class BigFloat {
 public:
  static int bits_for_digits(int digits10) {
    return static_cast<int>(digits10 * 3.3219280948873626) + 32;
  }

  explicit BigFloat(int prec_bits = 64) {
    mpfr_init2(v_, std::max<mpfr_prec_t>(prec_bits, MPFR_PREC_MIN));
    mpfr_set_zero(v_, 1);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat from_double(double d, int prec_bits) {
    BigFloat r(prec_bits);
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
  }
  static BigFloat from_int(const BigInt& z, int prec_bits) {
    BigFloat r(prec_bits);
    mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN);
    return r;
  }
  static BigFloat from_rat(const BigRat& q, int prec_bits) {
    BigFloat r(prec_bits);
    mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
    return r;
  }
  static BigFloat from_string(const std::string& s, int prec_bits) {
    BigFloat r(prec_bits);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw ArgumentError("cannot parse real number '" + s + "'");
    return r;
  }

  int precision_bits() const { return static_cast<int>(mpfr_get_prec(v_)); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision_bits(), b.precision_bits()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision_bits(), b.precision_bits()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision_bits(), b.precision_bits()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision_bits(), b.precision_bits()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  BigFloat operator-() const {
    BigFloat r(precision_bits());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }

  friend int cmp(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return cmp(a, b) < 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return cmp(a, b) > 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_); }

  friend BigFloat sqrt(const BigFloat& a) {
    BigFloat r(a.precision_bits());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat abs(const BigFloat& a) {
    BigFloat r(a.precision_bits());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat cos(const BigFloat& a) {
    BigFloat r(a.precision_bits());
    mpfr_cos(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend double log10_abs(const BigFloat& a) {
    if (a.is_zero()) return -std::numeric_limits<double>::infinity();
    BigFloat r(64);
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    mpfr_log10(r.v_, r.v_, MPFR_RNDN);
    return r.to_double();
  }

  // Scientific decimal string with the requested number of significant digits
  // ("-1.234e-07" style). Trailing zeros are kept so emission width is stable.
  std::string str(int digits10) const {
    if (is_nan()) return "nan";
    if (is_zero()) return "0";
    mpfr_exp_t e = 0;
    char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(std::max(digits10, 2)),
                             v_, MPFR_RNDN);
    std::string m(raw);
    mpfr_free_str(raw);
    std::string sign_part;
    if (!m.empty() && m[0] == '-') {
      sign_part = "-";
      m.erase(m.begin());
    }
    std::string out = sign_part + m.substr(0, 1);
    if (m.size() > 1) out += "." + m.substr(1);
    out += "e" + std::to_string(static_cast<long>(e) - 1);
    return out;
  }

  // Number of significant decimal digits on which a and b agree.
  friend double agreement_digits(const BigFloat& a, const BigFloat& b) {
    if (a.is_zero() && b.is_zero()) return std::numeric_limits<double>::infinity();
    BigFloat diff = a - b;
    if (diff.is_zero()) return std::numeric_limits<double>::infinity();
    double scale = std::max(log10_abs(a), log10_abs(b));
    return scale - log10_abs(diff);
  }

 private:
  mpfr_t v_;
};

}  // namespace twelvej
