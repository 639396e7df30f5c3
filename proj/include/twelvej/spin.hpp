#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <string>
#include <vector>

#include "twelvej/errors.hpp"

namespace twelvej {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Half-integer angular momentum quantum number, stored as twice its value so
// that j = 0, 1/2, 1, 3/2, ... compare exactly.
struct Spin {
  int twice = 0;

  Spin() = default;
  explicit Spin(int twice_j) : twice(twice_j) {
    if (twice_j < 0) throw ArgumentError("spin must be nonnegative");
  }
  static Spin from_twice(int t) { return Spin(t); }
  static Spin integer(int n) { return Spin(2 * n); }
  static Spin half_odd(int numerator) { return Spin(numerator); }

  bool is_integer() const { return twice % 2 == 0; }
  double value() const { return 0.5 * twice; }

  friend bool operator==(Spin a, Spin b) { return a.twice == b.twice; }
  friend bool operator!=(Spin a, Spin b) { return a.twice != b.twice; }
  friend bool operator<(Spin a, Spin b) { return a.twice < b.twice; }
  friend bool operator<=(Spin a, Spin b) { return a.twice <= b.twice; }
  friend bool operator>(Spin a, Spin b) { return a.twice > b.twice; }
  friend bool operator>=(Spin a, Spin b) { return a.twice >= b.twice; }
};

// Serialized form: "n" for integers, "n/2" with odd numerator for half-odds.
inline std::string to_string(Spin j) {
  if (j.is_integer()) return std::to_string(j.twice / 2);
  return std::to_string(j.twice) + "/2";
}

// Strict parser for the forms above; anything else is rejected.
inline Spin parse_spin(const std::string& s) {
  auto all_digits = [](const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto fail = [&]() -> Spin {
    throw ArgumentError("invalid spin '" + s + "': expected \"n\" or \"n/2\" with odd n");
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!all_digits(s)) return fail();
    long n = std::strtol(s.c_str(), nullptr, 10);
    if (n > 1000000) return fail();
    return Spin(static_cast<int>(2 * n));
  }
  if (s.substr(slash + 1) != "2") return fail();
  std::string num = s.substr(0, slash);
  if (!all_digits(num)) return fail();
  long n = std::strtol(num.c_str(), nullptr, 10);
  if (n % 2 == 0 || n > 2000000) return fail();
  return Spin(static_cast<int>(n));
}

// True iff |a-b| <= c <= a+b and a+b+c is an integer.
inline bool is_triangle(Spin a, Spin b, Spin c) {
  if ((a.twice + b.twice + c.twice) % 2 != 0) return false;
  return std::abs(a.twice - b.twice) <= c.twice && c.twice <= a.twice + b.twice;
}

// Integer sum a+b+c of a triad (the triad sum of any triangle is an integer).
inline long triad_sum(Spin a, Spin b, Spin c) {
  long t = a.twice + b.twice + c.twice;
  if (t % 2 != 0) throw SelectionRuleError("triad sum is not an integer");
  return t / 2;
}

// Exact n!, memoized in a grow-on-demand per-thread table. Per-worker caching
// gives reentrancy without locks; references stay valid as the table grows.
inline const BigInt& factorial(long n) {
  if (n < 0) throw ArgumentError("factorial of negative integer");
  thread_local std::deque<BigInt> table{BigInt(1)};
  while (static_cast<long>(table.size()) <= n) {
    table.push_back(table.back() * static_cast<long>(table.size()));
  }
  return table[static_cast<std::size_t>(n)];
}

// Primes up to at least n, grown on demand (per-thread, same rationale).
inline const std::vector<long>& primes_up_to(long n) {
  thread_local std::vector<long> primes;
  thread_local long sieved_to = 0;
  if (n > sieved_to) {
    long limit = std::max<long>(2 * n, 64);
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    primes.clear();
    for (long p = 2; p <= limit; ++p) {
      if (composite[static_cast<std::size_t>(p)]) continue;
      primes.push_back(p);
      for (long q = p * p; q <= limit; q += p) composite[static_cast<std::size_t>(q)] = true;
    }
    sieved_to = limit;
  }
  return primes;
}

// Legendre's formula: adds sign * v_p(n!) for every prime p to exps, which is
// indexed like the prime list. Lets factorial quotients under square roots be
// split into perfect-square and square-free parts without any factoring.
inline void add_factorial_exponents(std::vector<long>& exps, const std::vector<long>& primes,
                                    long n, int sign) {
  for (std::size_t i = 0; i < primes.size() && primes[i] <= n; ++i) {
    long p = primes[i], e = 0;
    for (long q = p; q <= n; q *= p) {
      e += n / q;
      if (q > n / p) break;
    }
    if (exps.size() <= i) exps.resize(i + 1, 0);
    exps[i] += sign * e;
  }
}

// Splits prod p^exps[i] into sqrt-extractable part (returned in square_part,
// as the square root, i.e. prod p^(e/2)) and a square-free remainder.
inline BigInt split_square_free(const std::vector<long>& exps, const std::vector<long>& primes,
                                BigRat& square_part) {
  BigInt sf = 1;
  BigRat sq = 1;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    long e = exps[i];
    if (e == 0) continue;
    BigInt p(primes[i]);
    long h = (e >= 0 ? e / 2 : -((-e + 1) / 2));  // floor(e/2)
    long r = e - 2 * h;                           // e mod 2, in {0,1}
    if (h > 0) {
      BigInt ppow;
      mpz_pow_ui(ppow.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(h));
      sq *= BigRat(ppow);
    } else if (h < 0) {
      BigInt ppow;
      mpz_pow_ui(ppow.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(-h));
      sq /= BigRat(ppow);
    }
    if (r == 1) sf *= p;  // p^e = p^(2h) * p with h = floor(e/2)
  }
  square_part = sq;
  return sf;
}

// Triangle coefficient Delta^2(a,b,c) = (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!.
inline BigRat delta_squared(Spin a, Spin b, Spin c) {
  if (!is_triangle(a, b, c))
    throw SelectionRuleError("delta_squared: (" + to_string(a) + "," + to_string(b) + "," +
                             to_string(c) + ") violates the triangle rule");
  long s = triad_sum(a, b, c);
  BigRat r(factorial(s - c.twice) * factorial(s - b.twice) * factorial(s - a.twice),
           factorial(s + 1));
  r.canonicalize();
  return r;
}

// Same triangle coefficient as prime exponents (for surd canonicalization).
inline void add_delta_sq_exponents(std::vector<long>& exps, const std::vector<long>& primes,
                                   Spin a, Spin b, Spin c) {
  long s = triad_sum(a, b, c);
  add_factorial_exponents(exps, primes, s - c.twice, +1);
  add_factorial_exponents(exps, primes, s - b.twice, +1);
  add_factorial_exponents(exps, primes, s - a.twice, +1);
  add_factorial_exponents(exps, primes, s + 1, -1);
}

// Edge length convention of the semiclassical limit: J = j + 1/2 (hbar = 1).
struct SemiclassicalLength {
  double value = 0.0;
};

inline SemiclassicalLength semiclassical_length(Spin j) {
  return SemiclassicalLength{(j.twice + 1) * 0.5};
}

}  // namespace twelvej
