#pragma once

#include <array>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "twelvej/exact_value.hpp"
#include "twelvej/spin.hpp"

namespace twelvej {

namespace detail {

// sum_t (-1)^t [(t+1)! if top_factorial] / (prod_i (dec_i - t)! prod_j (inc_j + t)!)
// over the full admissible range, evaluated exactly. Terms are scaled to a
// common denominator so the whole sum runs on integers; the only rational
// division happens once at the end.
inline BigRat alternating_factorial_sum(bool top_factorial, const std::vector<long>& dec,
                                        const std::vector<long>& inc) {
  long tmax = 1L << 60;
  for (long x : dec) tmax = std::min(tmax, x);
  long tmin = 0;
  for (long y : inc) tmin = std::max(tmin, -y);
  if (tmin > tmax) return BigRat(0);

  // T(t) = (-1)^t [(t+1)!] prod_i (dec_i-tmin)!/(dec_i-t)! prod_j (inc_j+tmax)!/(inc_j+t)!
  BigInt term = top_factorial ? factorial(tmin + 1) : BigInt(1);
  for (long y : inc) {
    BigInt q;
    mpz_divexact(q.get_mpz_t(), factorial(y + tmax).get_mpz_t(), factorial(y + tmin).get_mpz_t());
    term *= q;
  }
  if (tmin % 2 != 0) term = -term;

  BigInt sum = term;
  BigInt num, den;
  for (long t = tmin; t < tmax; ++t) {
    num = top_factorial ? BigInt(t + 2) : BigInt(1);
    for (long x : dec) num *= (x - t);
    den = 1;
    for (long y : inc) den *= (y + t + 1);
    term *= num;
    mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), den.get_mpz_t());
    term = -term;
    sum += term;
  }

  BigInt scale = 1;
  for (long x : dec) scale *= factorial(x - tmin);
  for (long y : inc) scale *= factorial(y + tmax);
  BigRat r(sum, scale);
  r.canonicalize();
  return r;
}

inline ExactValue surd_from_exponents(BigRat coeff, const std::vector<long>& exps,
                                      const std::vector<long>& primes) {
  BigRat square_part;
  BigInt sf = split_square_free(exps, primes, square_part);
  coeff *= square_part;
  return ExactValue::surd_reduced(std::move(coeff), std::move(sf));
}

}  // namespace detail

// Wigner 3j symbol. Magnetic quantum numbers are passed as twice-values; a
// parity mismatch between m and j is a malformed argument, whereas ordinary
// selection-rule failures give exact zero.
inline ExactValue wigner3j(Spin j1, Spin j2, Spin j3, int tm1, int tm2, int tm3) {
  const Spin js[3] = {j1, j2, j3};
  const int tms[3] = {tm1, tm2, tm3};
  for (int i = 0; i < 3; ++i) {
    if ((js[i].twice + tms[i]) % 2 != 0)
      throw ArgumentError("wigner3j: m parity inconsistent with j in slot " + std::to_string(i + 1));
  }
  if (tm1 + tm2 + tm3 != 0) return ExactValue();
  for (int i = 0; i < 3; ++i)
    if (std::abs(tms[i]) > js[i].twice) return ExactValue();
  if (!is_triangle(j1, j2, j3)) return ExactValue();

  std::vector<long> dec = {(j1.twice + j2.twice - j3.twice) / 2, (j1.twice - tm1) / 2,
                           (j2.twice + tm2) / 2};
  std::vector<long> inc = {0, (j3.twice - j2.twice + tm1) / 2, (j3.twice - j1.twice - tm2) / 2};
  BigRat s = detail::alternating_factorial_sum(false, dec, inc);
  if (sgn(s) == 0) return ExactValue();

  const auto& ps = primes_up_to(triad_sum(j1, j2, j3) + 2);
  std::vector<long> exps;
  add_delta_sq_exponents(exps, ps, j1, j2, j3);
  for (int i = 0; i < 3; ++i) {
    add_factorial_exponents(exps, ps, (js[i].twice + tms[i]) / 2, +1);
    add_factorial_exponents(exps, ps, (js[i].twice - tms[i]) / 2, +1);
  }
  long phase = (j1.twice - j2.twice - tm3) / 2;  // j1 - j2 - m3, an integer here
  if (((phase % 2) + 2) % 2 == 1) s = -s;
  return detail::surd_from_exponents(std::move(s), exps, ps);
}

namespace detail {

inline ExactValue wigner6j_uncached(Spin a, Spin b, Spin c, Spin d, Spin e, Spin f) {
  if (!is_triangle(a, b, c) || !is_triangle(a, e, f) || !is_triangle(d, b, f) ||
      !is_triangle(d, e, c))
    return ExactValue();

  long alpha[4] = {triad_sum(a, b, c), triad_sum(a, e, f), triad_sum(d, b, f), triad_sum(d, e, c)};
  long beta[3] = {(a.twice + b.twice + d.twice + e.twice) / 2,
                  (b.twice + c.twice + e.twice + f.twice) / 2,
                  (a.twice + c.twice + d.twice + f.twice) / 2};
  BigRat s = alternating_factorial_sum(true, {beta[0], beta[1], beta[2]},
                                       {-alpha[0], -alpha[1], -alpha[2], -alpha[3]});
  if (sgn(s) == 0) return ExactValue();

  const auto& ps = primes_up_to(std::max({alpha[0], alpha[1], alpha[2], alpha[3]}) + 2);
  std::vector<long> exps;
  add_delta_sq_exponents(exps, ps, a, b, c);
  add_delta_sq_exponents(exps, ps, a, e, f);
  add_delta_sq_exponents(exps, ps, d, b, f);
  add_delta_sq_exponents(exps, ps, d, e, c);
  return surd_from_exponents(std::move(s), exps, ps);
}

// Canonical cache key under the 24 classical symmetries: column permutations
// and upper/lower swaps in pairs of columns.
inline std::array<int, 6> canonical_6j_key(std::array<int, 6> k) {
  static const int colperm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  static const int flipmask[4] = {0b000, 0b110, 0b101, 0b011};
  std::array<int, 6> best = k;
  for (const auto& p : colperm) {
    for (int fm : flipmask) {
      std::array<int, 6> v;
      for (int c = 0; c < 3; ++c) {
        int top = k[p[c]], bot = k[p[c] + 3];
        if (fm & (1 << c)) std::swap(top, bot);
        v[c] = top;
        v[c + 3] = bot;
      }
      if (v < best) best = v;
    }
  }
  return best;
}

}  // namespace detail

// Wigner 6j symbol via the Racah single sum, exact. Values are memoized under
// the 24 classical symmetries (concurrent readers, serialized insertions).
inline ExactValue wigner6j(Spin a, Spin b, Spin c, Spin d, Spin e, Spin f) {
  static std::map<std::array<int, 6>, ExactValue> cache;
  static std::shared_mutex mtx;
  auto key = detail::canonical_6j_key({a.twice, b.twice, c.twice, d.twice, e.twice, f.twice});
  {
    std::shared_lock lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  ExactValue v = detail::wigner6j_uncached(a, b, c, d, e, f);
  {
    std::unique_lock lock(mtx);
    cache.emplace(key, v);
  }
  return v;
}

// Wigner 9j symbol in row-major 3x3 layout, via the single sum over the
// auxiliary spin x of three 6j symbols. Exact while the surds merge (e.g.
// single-term sums), high-precision fallback otherwise.
inline ExactValue wigner9j(const std::array<Spin, 9>& j, int digits10 = 50) {
  const Spin a = j[0], b = j[1], c = j[2];
  const Spin d = j[3], e = j[4], f = j[5];
  const Spin g = j[6], h = j[7], i = j[8];
  if (!is_triangle(a, b, c) || !is_triangle(d, e, f) || !is_triangle(g, h, i) ||
      !is_triangle(a, d, g) || !is_triangle(b, e, h) || !is_triangle(c, f, i))
    return ExactValue();

  int txmin = std::max({std::abs(a.twice - i.twice), std::abs(b.twice - f.twice),
                        std::abs(d.twice - h.twice)});
  int txmax = std::min({a.twice + i.twice, b.twice + f.twice, d.twice + h.twice});
  ExactValue acc;
  for (int tx = txmin; tx <= txmax; tx += 2) {
    Spin x(tx);
    ExactValue term = wigner6j(a, b, c, f, i, x) * wigner6j(d, e, f, b, x, h) *
                      wigner6j(g, h, i, x, a, d);
    if (term.is_zero()) continue;
    term.scale(BigRat(tx + 1));   // (2x+1)
    if (tx % 2 != 0) term.negate();  // (-1)^{2x}
    acc = ExactValue::add(acc, term, digits10);
  }
  return acc;
}

// The twelve spins of a 12j symbol of the first kind, laid out as the 3x4
// array rows (j1, s2, j12, j346), (j3, j4, j34, j135), (j13, j24, j5, j6).
struct Symbol12Args {
  Spin j1, s2, j12, j346;
  Spin j3, j4, j34, j135;
  Spin j13, j24, j5, j6;

  static Symbol12Args from_array(const std::array<Spin, 12>& v) {
    return Symbol12Args{v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9], v[10], v[11]};
  }
  std::array<Spin, 12> to_array() const {
    return {j1, s2, j12, j346, j3, j4, j34, j135, j13, j24, j5, j6};
  }

  // The eight triads of the first-kind coupling tree.
  bool selection_ok() const {
    return is_triangle(j1, s2, j12) && is_triangle(j3, j4, j34) && is_triangle(j34, j6, j346) &&
           is_triangle(j12, j5, j346) && is_triangle(j1, j3, j13) && is_triangle(s2, j4, j24) &&
           is_triangle(j13, j5, j135) && is_triangle(j24, j6, j135);
  }

  int twice_mu() const { return j12.twice - j1.twice; }  // mu = j12 - j1
  int twice_nu() const { return j24.twice - j4.twice; }  // nu = j24 - j4
};

// 12j symbol of the first kind. Expansion over the auxiliary spin x obtained
// by recoupling the defining scalar product:
//   sum_x (-1)^{2 j5 + j24 + j34 + j135 + j346 + 2x} (2x+1)
//         {j5 j12 j346; j34 j6 x} {j5 j13 j135; j24 j6 x}
//         9j{j1 s2 j12; j3 j4 j34; j13 j24 x}
// The conventions are pinned by exact agreement with the two zero-argument
// special formulas (see special_A8/special_A9 and the validation suites).
inline ExactValue wigner12j_first(const Symbol12Args& a, int digits10 = 50) {
  if (!a.selection_ok()) return ExactValue();

  int txmin = std::max({std::abs(a.j5.twice - a.j6.twice), std::abs(a.j12.twice - a.j34.twice),
                        std::abs(a.j13.twice - a.j24.twice)});
  int txmax = std::min({a.j5.twice + a.j6.twice, a.j12.twice + a.j34.twice,
                        a.j13.twice + a.j24.twice});
  if ((txmin + a.j5.twice + a.j6.twice) % 2 != 0) ++txmin;

  // per-sweep reuse: the 9j factor does not involve j5
  static std::map<std::pair<std::array<int, 9>, int>, ExactValue> nine_cache;
  static std::shared_mutex nine_mtx;

  ExactValue acc;
  for (int tx = txmin; tx <= txmax; tx += 2) {
    Spin x(tx);
    ExactValue s1 = wigner6j(a.j5, a.j12, a.j346, a.j34, a.j6, x);
    if (s1.is_zero()) continue;
    ExactValue s2 = wigner6j(a.j5, a.j13, a.j135, a.j24, a.j6, x);
    if (s2.is_zero()) continue;

    std::pair<std::array<int, 9>, int> key{{a.j1.twice, a.s2.twice, a.j12.twice, a.j3.twice,
                                            a.j4.twice, a.j34.twice, a.j13.twice, a.j24.twice, tx},
                                           digits10};
    ExactValue nine;
    bool have = false;
    {
      std::shared_lock lock(nine_mtx);
      auto it = nine_cache.find(key);
      if (it != nine_cache.end()) {
        nine = it->second;
        have = true;
      }
    }
    if (!have) {
      nine = wigner9j({a.j1, a.s2, a.j12, a.j3, a.j4, a.j34, a.j13, a.j24, x}, digits10);
      std::unique_lock lock(nine_mtx);
      nine_cache.emplace(key, nine);
    }
    if (nine.is_zero()) continue;

    ExactValue term = s1 * s2 * nine;
    term.scale(BigRat(tx + 1));
    long texp = 2L * a.j5.twice + a.j24.twice + a.j34.twice + a.j135.twice + a.j346.twice +
                2L * tx;
    if (texp % 2 != 0) throw SelectionRuleError("wigner12j_first: non-integer phase exponent");
    if ((texp / 2) % 2 != 0) term.negate();
    acc = ExactValue::add(acc, term, digits10);
  }
  return acc;
}

// Zero-argument identity with j5 = 0 (which forces j346 = j12, j135 = j13):
// the 12j collapses to 9j{j1 s2 j12; j3 j4 j34; j13 j24 j6} / sqrt([j12][j13]).
inline ExactValue special_A9(const Symbol12Args& a, int digits10 = 50) {
  if (a.j5.twice != 0 || a.j346 != a.j12 || a.j135 != a.j13)
    throw ArgumentError("special_A9: arguments do not match the j5 = 0 zero pattern");
  ExactValue nine = wigner9j({a.j1, a.s2, a.j12, a.j3, a.j4, a.j34, a.j13, a.j24, a.j6}, digits10);
  if (nine.is_zero()) return ExactValue();
  BigRat dims(BigInt(a.j12.twice + 1) * BigInt(a.j13.twice + 1));
  return nine * ExactValue::sqrt_of(BigRat(1) / dims);
}

// Zero-argument identity with s2 = 0 (which forces j12 = j1, j24 = j4):
//   (-1)^{j1+2j3+j4+j346+j135+j5+j6} / sqrt([j1][j4])
//     * {j346 j3 j135; j4 j6 j34} * {j346 j3 j135; j13 j5 j1}
inline ExactValue special_A8(const Symbol12Args& a) {
  if (a.s2.twice != 0 || a.j12 != a.j1 || a.j24 != a.j4)
    throw ArgumentError("special_A8: arguments do not match the s2 = 0 zero pattern");
  ExactValue s1 = wigner6j(a.j346, a.j3, a.j135, a.j4, a.j6, a.j34);
  if (s1.is_zero()) return ExactValue();
  ExactValue s2 = wigner6j(a.j346, a.j3, a.j135, a.j13, a.j5, a.j1);
  if (s2.is_zero()) return ExactValue();
  long texp = a.j1.twice + 2L * a.j3.twice + a.j4.twice + a.j346.twice + a.j135.twice +
              a.j5.twice + a.j6.twice;
  if (texp % 2 != 0) throw SelectionRuleError("special_A8: non-integer phase exponent");
  ExactValue v = s1 * s2;
  BigRat dims(BigInt(a.j1.twice + 1) * BigInt(a.j4.twice + 1));
  v = v * ExactValue::sqrt_of(BigRat(1) / dims);
  if ((texp / 2) % 2 != 0) v.negate();
  return v;
}

}  // namespace twelvej
