#include "springer/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace springer {

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

PrimeField::PrimeField(uint32_t p) : p_(p) {
  if (!is_prime(p)) throw InputError("modulus " + std::to_string(p) + " is not prime");
}

uint32_t PrimeField::reduce(long long x) const {
  long long r = x % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<uint32_t>(r);
}

uint32_t PrimeField::inv(uint32_t a) const {
  if (a % p_ == 0) throw InputError("inverse of zero in F_" + std::to_string(p_));
  uint32_t result = 1, base = a % p_, e = p_ - 2;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------------------

TruncSeries::TruncSeries(PrimeField f, int horizon) : f_(f), low_(horizon), horizon_(horizon) {}

TruncSeries TruncSeries::monomial(PrimeField f, int exp, long long coeff, int horizon) {
  TruncSeries s(f, horizon);
  if (exp < horizon) {
    s.low_ = exp;
    s.c_ = {f.reduce(coeff)};
  }
  s.normalize();
  return s;
}

TruncSeries TruncSeries::from_literal(PrimeField f, const SeriesLiteral& terms, int horizon) {
  TruncSeries s(f, horizon);
  for (const auto& [e, c] : terms) s = s + monomial(f, e, c, horizon);
  return s;
}

void TruncSeries::normalize() {
  if (!c_.empty()) {
    long long keep = static_cast<long long>(horizon_) - low_;
    if (keep < 0) keep = 0;
    if (static_cast<long long>(c_.size()) > keep) c_.resize(static_cast<size_t>(keep));
  }
  size_t first = 0;
  while (first < c_.size() && c_[first] == 0) ++first;
  if (first == c_.size()) {
    c_.clear();
    low_ = horizon_;
    return;
  }
  if (first) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(first));
    low_ += static_cast<int>(first);
  }
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int TruncSeries::known_low_bound() const { return c_.empty() ? horizon_ : low_; }

uint32_t TruncSeries::coeff(int e) const {
  if (e >= horizon_)
    throw PrecisionError("coefficient of e^" + std::to_string(e) + " is past horizon " +
                         std::to_string(horizon_));
  if (e < low_ || e >= low_ + static_cast<int>(c_.size())) return 0;
  return c_[static_cast<size_t>(e - low_)];
}

int TruncSeries::valuation() const {
  if (c_.empty())
    throw PrecisionError("valuation undecided below horizon " + std::to_string(horizon_));
  return low_;
}

bool TruncSeries::val_at_least(int k) const {
  if (!c_.empty() && low_ < k) return false;
  if (k > horizon_)
    throw PrecisionError("cannot decide val >= " + std::to_string(k) + " with horizon " +
                         std::to_string(horizon_));
  return true;
}

bool TruncSeries::known_zero() const { return c_.empty(); }

TruncSeries TruncSeries::with_horizon(int h) const {
  TruncSeries s = *this;
  s.horizon_ = std::min(h, horizon_);
  s.normalize();
  return s;
}

TruncSeries TruncSeries::shifted(int k) const {
  TruncSeries s = *this;
  s.low_ += k;
  s.horizon_ += k;
  return s;
}

TruncSeries TruncSeries::negated() const {
  TruncSeries s = *this;
  for (auto& x : s.c_) x = f_.neg(x);
  return s;
}

TruncSeries TruncSeries::scaled(uint32_t c) const {
  TruncSeries s = *this;
  for (auto& x : s.c_) x = f_.mul(x, c);
  s.normalize();
  return s;
}

TruncSeries operator+(const TruncSeries& s, const TruncSeries& t) {
  if (s.f_ != t.f_) throw InputError("field mismatch in series addition");
  TruncSeries r(s.f_, std::min(s.horizon_, t.horizon_));
  if (s.c_.empty() && t.c_.empty()) return r;
  int lo = std::min(s.known_low_bound(), t.known_low_bound());
  int hi = std::max(s.low_ + static_cast<int>(s.c_.size()), t.low_ + static_cast<int>(t.c_.size()));
  hi = std::min(hi, r.horizon_);
  if (hi <= lo) return r;
  r.low_ = lo;
  r.c_.assign(static_cast<size_t>(hi - lo), 0);
  for (size_t k = 0; k < s.c_.size(); ++k) {
    int e = s.low_ + static_cast<int>(k);
    if (e < hi) r.c_[static_cast<size_t>(e - lo)] = s.c_[k];
  }
  for (size_t k = 0; k < t.c_.size(); ++k) {
    int e = t.low_ + static_cast<int>(k);
    if (e < hi) {
      auto& x = r.c_[static_cast<size_t>(e - lo)];
      x = s.f_.add(x, t.c_[k]);
    }
  }
  r.normalize();
  return r;
}

TruncSeries operator-(const TruncSeries& s, const TruncSeries& t) { return s + t.negated(); }

TruncSeries operator*(const TruncSeries& s, const TruncSeries& t) {
  if (s.f_ != t.f_) throw InputError("field mismatch in series product");
  int ls = s.known_low_bound(), lt = t.known_low_bound();
  int h = std::min(s.horizon_ + lt, t.horizon_ + ls);
  TruncSeries r(s.f_, h);
  if (s.c_.empty() || t.c_.empty()) return r;
  r.low_ = s.low_ + t.low_;
  r.c_.assign(s.c_.size() + t.c_.size() - 1, 0);
  const uint64_t p = s.f_.p();
  for (size_t i = 0; i < s.c_.size(); ++i) {
    if (!s.c_[i]) continue;
    for (size_t j = 0; j < t.c_.size(); ++j)
      r.c_[i + j] = static_cast<uint32_t>((r.c_[i + j] + static_cast<uint64_t>(s.c_[i]) * t.c_[j]) % p);
  }
  r.normalize();
  return r;
}

TruncSeries TruncSeries::inv() const {
  if (c_.empty()) throw PrecisionError("division by a series indistinguishable from zero");
  const int v = low_;
  const int rel = horizon_ - v;  // relative precision
  TruncSeries r(f_, -v + rel);
  r.low_ = -v;
  r.c_.assign(static_cast<size_t>(rel), 0);
  const uint32_t u0inv = f_.inv(c_[0]);
  for (int k = 0; k < rel; ++k) {
    uint32_t acc = (k == 0) ? 1 : 0;
    for (int j = 1; j <= k && j < static_cast<int>(c_.size()); ++j)
      acc = f_.sub(acc, f_.mul(c_[static_cast<size_t>(j)], r.c_[static_cast<size_t>(k - j)]));
    r.c_[static_cast<size_t>(k)] = f_.mul(acc, u0inv);
  }
  r.normalize();
  return r;
}

bool TruncSeries::agrees_with(const TruncSeries& o) const {
  if (f_ != o.f_) return false;
  int h = std::min(horizon_, o.horizon_);
  int lo = std::min(known_low_bound(), o.known_low_bound());
  for (int e = lo; e < h; ++e)
    if (coeff(e) != o.coeff(e)) return false;
  return true;
}

std::string TruncSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (!c_[k]) continue;
    if (!first) os << " + ";
    os << c_[k] << "*e^" << (low_ + static_cast<int>(k));
    first = false;
  }
  if (!first) os << " + ";
  os << "O(e^" << horizon_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

SeriesMatrix::SeriesMatrix(PrimeField f, int d_, int horizon)
    : d(d_), e(static_cast<size_t>(d_ * d_), TruncSeries(f, horizon)) {}

SeriesMatrix SeriesMatrix::transposed() const {
  SeriesMatrix t = *this;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) t.at(i, j) = at(j, i);
  return t;
}

int SeriesMatrix::min_horizon() const {
  int h = INT_MAX;
  for (const auto& s : e) h = std::min(h, s.horizon());
  return h;
}

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
  if (a.d != b.d) throw ShapeError("matrix size mismatch");
  const int d = a.d;
  SeriesMatrix r(a.field(), d, std::min(a.min_horizon(), b.min_horizon()));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      TruncSeries acc = a.at(i, 0) * b.at(0, j);
      for (int k = 1; k < d; ++k) acc = acc + a.at(i, k) * b.at(k, j);
      r.at(i, j) = acc;
    }
  return r;
}

TruncSeries SeriesMatrix::det() const {
  std::vector<int> perm(static_cast<size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  TruncSeries acc(field(), min_horizon());
  bool have = false;
  do {
    int inversions = 0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        if (perm[static_cast<size_t>(i)] > perm[static_cast<size_t>(j)]) ++inversions;
    TruncSeries term = at(0, perm[0]);
    for (int i = 1; i < d; ++i) term = term * at(i, perm[static_cast<size_t>(i)]);
    if (inversions % 2) term = term.negated();
    acc = have ? acc + term : term;
    have = true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

SeriesMatrix SeriesMatrix::inverse() const {
  const PrimeField f = field();
  SeriesMatrix a = *this;
  SeriesMatrix r(f, d, min_horizon());
  for (int i = 0; i < d; ++i) r.at(i, i) = TruncSeries::monomial(f, 0, 1, min_horizon());
  for (int k = 0; k < d; ++k) {
    int best = -1, bestv = INT_MAX;
    for (int i = k; i < d; ++i) {
      const auto& s = a.at(i, k);
      if (s.known_zero()) continue;
      if (s.valuation() < bestv) {
        bestv = s.valuation();
        best = i;
      }
    }
    if (best < 0) throw PrecisionError("matrix is singular or precision is insufficient");
    if (best != k)
      for (int j = 0; j < d; ++j) {
        std::swap(a.at(k, j), a.at(best, j));
        std::swap(r.at(k, j), r.at(best, j));
      }
    const TruncSeries pinv = a.at(k, k).inv();
    for (int j = 0; j < d; ++j) {
      a.at(k, j) = a.at(k, j) * pinv;
      r.at(k, j) = r.at(k, j) * pinv;
    }
    for (int i = 0; i < d; ++i) {
      if (i == k || a.at(i, k).known_zero()) continue;
      const TruncSeries factor = a.at(i, k);
      for (int j = 0; j < d; ++j) {
        a.at(i, j) = a.at(i, j) - factor * a.at(k, j);
        r.at(i, j) = r.at(i, j) - factor * r.at(k, j);
      }
    }
  }
  return r;
}

}  // namespace springer
