#pragma once

#include <climits>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "springer/errors.hpp"

namespace springer {

bool is_prime(uint64_t n);

/** The prime field F_p. Elements are stored as integers in [0, p). */
class PrimeField {
 public:
  explicit PrimeField(uint32_t p);

  uint32_t p() const { return p_; }
  uint32_t reduce(long long x) const;
  uint32_t add(uint32_t a, uint32_t b) const { return (a + b) % p_; }
  uint32_t sub(uint32_t a, uint32_t b) const { return (a + p_ - b) % p_; }
  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p_);
  }
  uint32_t inv(uint32_t a) const;

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }
  bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

 private:
  uint32_t p_;
};

/** Integer-coefficient series literal: (exponent, coefficient) pairs. */
using SeriesLiteral = std::vector<std::pair<int, long long>>;

/**
 * A formal Laurent series over F_p known exactly below its horizon.
 *
 * Coefficients of exponents < low() are zero, exponents in [low, low+len) are stored,
 * exponents in [low+len, horizon) are known zeros, and exponents >= horizon are unknown.
 */
class TruncSeries {
 public:
  TruncSeries(PrimeField f, int horizon);

  static TruncSeries monomial(PrimeField f, int exp, long long coeff, int horizon);
  static TruncSeries from_literal(PrimeField f, const SeriesLiteral& terms, int horizon);

  const PrimeField& field() const { return f_; }
  int low() const { return low_; }
  int horizon() const { return horizon_; }

  /** Coefficient of eps^e. Throws PrecisionError when e >= horizon. */
  uint32_t coeff(int e) const;

  /** Exact valuation; throws PrecisionError when every known coefficient vanishes. */
  int valuation() const;

  /** True iff the valuation is at least k. Needs k <= horizon unless a nonzero term sits below k. */
  bool val_at_least(int k) const;

  /** True iff every coefficient below the horizon vanishes. */
  bool known_zero() const;

  TruncSeries with_horizon(int h) const;
  TruncSeries shifted(int k) const;  // multiply by eps^k
  TruncSeries negated() const;
  TruncSeries scaled(uint32_t c) const;
  TruncSeries inv() const;

  friend TruncSeries operator+(const TruncSeries& s, const TruncSeries& t);
  friend TruncSeries operator-(const TruncSeries& s, const TruncSeries& t);
  friend TruncSeries operator*(const TruncSeries& s, const TruncSeries& t);

  /** Equality of all coefficients below the smaller horizon. */
  bool agrees_with(const TruncSeries& o) const;

  std::string to_string() const;

 private:
  void normalize();
  int known_low_bound() const;  // valuation if known, else horizon

  PrimeField f_;
  int low_ = 0;
  std::vector<uint32_t> c_;
  int horizon_;
};

/** Square matrix of series, row-major. */
struct SeriesMatrix {
  int d = 0;
  std::vector<TruncSeries> e;

  SeriesMatrix(PrimeField f, int d, int horizon);
  TruncSeries& at(int i, int j) { return e[i * d + j]; }
  const TruncSeries& at(int i, int j) const { return e[i * d + j]; }
  const PrimeField& field() const { return e.front().field(); }

  SeriesMatrix transposed() const;
  /** Inverse by Gauss-Jordan with minimal-valuation pivots. */
  SeriesMatrix inverse() const;
  TruncSeries det() const;
  int min_horizon() const;
};

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);

}  // namespace springer
