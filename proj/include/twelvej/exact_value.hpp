#pragma once

#include <limits>
#include <string>
#include <utility>

#include "twelvej/bigfloat.hpp"
#include "twelvej/spin.hpp"

namespace twelvej {

// Value of a recoupling symbol. While it can be kept in closed form it is
// coeff * sqrt(radicand) with a rational coefficient and a square-free
// nonnegative integer radicand; a sum of incompatible surds degrades to a
// high-precision float tagged with its working precision in decimal digits.
class ExactValue {
 public:
  ExactValue() : exact_(true), coeff_(0), radicand_(1) {}  // exact zero

  // coeff * sqrt(radicand); small square factors of the radicand are pulled
  // out so equal values get equal representations.
  static ExactValue surd(BigRat coeff, BigInt radicand) {
    if (sgn(radicand) < 0) throw ArgumentError("surd radicand must be nonnegative");
    ExactValue v;
    if (sgn(coeff) == 0 || sgn(radicand) == 0) return v;
    v.coeff_ = std::move(coeff);
    v.coeff_.canonicalize();
    v.radicand_ = reduce_square_free(std::move(radicand), v.coeff_);
    return v;
  }

  // Engine-internal: radicand already square-free by construction.
  static ExactValue surd_reduced(BigRat coeff, BigInt radicand) {
    ExactValue v;
    if (sgn(coeff) == 0) return v;
    v.coeff_ = std::move(coeff);
    v.coeff_.canonicalize();
    v.radicand_ = std::move(radicand);
    return v;
  }

  static ExactValue rational(BigRat c) { return surd_reduced(std::move(c), BigInt(1)); }

  // sqrt of a nonnegative rational, e.g. 1/sqrt([j1][j4]) factors.
  static ExactValue sqrt_of(const BigRat& q) {
    if (sgn(q) < 0) throw ArgumentError("sqrt of negative rational");
    if (sgn(q) == 0) return ExactValue();
    BigInt n = q.get_num() * q.get_den();
    return surd(BigRat(1, q.get_den()), n);
  }

  static ExactValue approximate(BigFloat f, int digits10) {
    ExactValue v;
    v.exact_ = false;
    v.approx_ = std::move(f);
    v.digits_ = digits10;
    return v;
  }

  bool is_exact() const { return exact_; }
  bool is_zero() const { return exact_ ? sgn(coeff_) == 0 : approx_.is_zero(); }
  const BigRat& coeff() const { return coeff_; }
  const BigInt& radicand() const { return radicand_; }

  // Trusted decimal digits: huge for exact values, the tag for fallbacks.
  int precision_digits() const { return exact_ ? std::numeric_limits<int>::max() : digits_; }

  void negate() {
    if (exact_)
      coeff_ = -coeff_;
    else
      approx_ = -approx_;
  }

  ExactValue& scale(const BigRat& r) {
    if (sgn(r) == 0) return *this = ExactValue();
    if (exact_) {
      coeff_ *= r;
      coeff_.canonicalize();
    } else {
      approx_ = approx_ * BigFloat::from_rat(r, approx_.precision_bits());
    }
    return *this;
  }

  friend ExactValue operator*(const ExactValue& a, const ExactValue& b) {
    if (a.is_zero() || b.is_zero()) return ExactValue();
    if (a.exact_ && b.exact_) {
      ExactValue r;
      r.coeff_ = a.coeff_ * b.coeff_;
      // product of two square-free radicands: the gcd appears squared
      BigInt g = gcd(a.radicand_, b.radicand_);
      r.coeff_ *= BigRat(g);
      r.coeff_.canonicalize();
      r.radicand_ = (a.radicand_ / g) * (b.radicand_ / g);
      return r;
    }
    int digits = std::min(a.precision_digits(), b.precision_digits());
    int bits = std::max(a.float_bits(), b.float_bits());
    return approximate(a.to_float_bits(bits) * b.to_float_bits(bits), digits);
  }

  // Sum; stays exact when the radicands coincide, else falls back to the
  // requested working precision (capped by what the operands actually carry).
  static ExactValue add(const ExactValue& a, const ExactValue& b, int digits10) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.exact_ && b.exact_ && a.radicand_ == b.radicand_) {
      BigRat c = a.coeff_ + b.coeff_;
      c.canonicalize();
      if (sgn(c) == 0) return ExactValue();
      return surd_reduced(std::move(c), a.radicand_);
    }
    int digits = std::min({digits10, a.precision_digits(), b.precision_digits()});
    int bits = std::max({BigFloat::bits_for_digits(digits10), a.float_bits(), b.float_bits()});
    return approximate(a.to_float_bits(bits) + b.to_float_bits(bits), digits);
  }

  BigFloat to_float_bits(int bits) const {
    if (!exact_) return approx_;
    BigFloat c = BigFloat::from_rat(coeff_, bits);
    if (radicand_ == 1) return c;
    return c * sqrt(BigFloat::from_int(radicand_, bits));
  }
  BigFloat to_float(int digits10) const { return to_float_bits(BigFloat::bits_for_digits(digits10)); }
  double to_double() const { return to_float(20).to_double(); }

  std::string str(int digits10) const { return to_float(digits10 + 4).str(digits10); }

  // Decimal string with explicit precision suffix, e.g. "-5.1279e-06@50".
  std::string str_tagged(int digits10) const {
    int shown = exact_ ? digits10 : std::min(digits10, digits_);
    return str(shown) + "@" + std::to_string(shown);
  }

  // Closed form "(-3/7)*sqrt(30)" when available.
  std::string surd_str() const {
    if (!exact_) return "";
    if (sgn(coeff_) == 0) return "0";
    std::string s = "(" + coeff_.get_str() + ")";
    if (radicand_ != 1) s += "*sqrt(" + radicand_.get_str() + ")";
    return s;
  }

  friend bool operator==(const ExactValue& a, const ExactValue& b) {
    if (a.is_zero() && b.is_zero()) return true;
    if (a.exact_ && b.exact_) return a.coeff_ == b.coeff_ && a.radicand_ == b.radicand_;
    return false;
  }

  // Significant-digit agreement evaluated at the given working precision.
  friend double agreement_digits(const ExactValue& a, const ExactValue& b, int digits10) {
    if (a.is_zero() && b.is_zero()) return std::numeric_limits<double>::infinity();
    if (a.exact_ && b.exact_ && a == b) return std::numeric_limits<double>::infinity();
    int bits = BigFloat::bits_for_digits(digits10);
    return agreement_digits(a.to_float_bits(bits), b.to_float_bits(bits));
  }

 private:
  int float_bits() const { return exact_ ? 0 : approx_.precision_bits(); }

  // Pulls p^2 factors with small primes out of n into carry. All radicands
  // built from factorial machinery arrive square-free already; this covers
  // dimension factors like [j1][j4] whose prime factors are small.
  static BigInt reduce_square_free(BigInt n, BigRat& carry) {
    const auto& ps = primes_up_to(2048);
    for (long p : ps) {
      if (BigInt(p) * p > n) break;
      BigInt p2 = BigInt(p) * p;
      while (mpz_divisible_p(n.get_mpz_t(), p2.get_mpz_t())) {
        n /= p2;
        carry *= p;
      }
    }
    carry.canonicalize();
    return n;
  }

  bool exact_;
  BigRat coeff_;
  BigInt radicand_{1};
  BigFloat approx_{64};
  int digits_ = 0;
};

}  // namespace twelvej
