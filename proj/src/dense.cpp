#include "springer/dense.hpp"

#include <algorithm>
#include <numeric>

#include "springer/errors.hpp"
#include "springer/series.hpp"

namespace springer {

std::vector<int> weight_order(const DenseFrame& fr, const Coweight& a) {
  std::vector<int> order(static_cast<size_t>(fr.size()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return weight(fr.d, a, fr.comp(x), fr.expo(x)) < weight(fr.d, a, fr.comp(y), fr.expo(y));
  });
  return order;
}

namespace {

using Vec = std::vector<uint32_t>;

// Row space in reduced echelon form. Columns are visited in the order given by `cols`.
struct Echelon {
  PrimeField f;
  std::vector<int> cols;         // column visiting order
  std::vector<int> rank_of;      // column -> index in cols
  std::vector<int> pivot_row;    // index in cols -> row id or -1
  std::vector<Vec> rows;
  std::vector<int> row_pivot;    // row id -> index in cols

  Echelon(PrimeField f_, std::vector<int> order) : f(f_), cols(std::move(order)) {
    rank_of.assign(cols.size(), 0);
    for (size_t k = 0; k < cols.size(); ++k) rank_of[static_cast<size_t>(cols[k])] = static_cast<int>(k);
    pivot_row.assign(cols.size(), -1);
  }

  void add(Vec v) {
    for (size_t k = 0; k < cols.size(); ++k) {
      const uint32_t c = v[static_cast<size_t>(cols[k])];
      if (!c) continue;
      const int r = pivot_row[k];
      if (r >= 0) {
        const Vec& row = rows[static_cast<size_t>(r)];
        for (size_t t = 0; t < v.size(); ++t)
          if (row[t]) v[t] = f.sub(v[t], f.mul(c, row[t]));
      } else {
        const uint32_t ci = f.inv(c);
        for (auto& x : v) x = f.mul(x, ci);
        pivot_row[k] = static_cast<int>(rows.size());
        row_pivot.push_back(static_cast<int>(k));
        rows.push_back(std::move(v));
        return;
      }
    }
  }

  void reduce_fully() {
    for (size_t r = 0; r < rows.size(); ++r) {
      Vec& q = rows[r];
      for (size_t k = static_cast<size_t>(row_pivot[r]) + 1; k < cols.size(); ++k) {
        const int pr = pivot_row[k];
        if (pr < 0) continue;
        const uint32_t c = q[static_cast<size_t>(cols[k])];
        if (!c) continue;
        const Vec& row = rows[static_cast<size_t>(pr)];
        for (size_t t = 0; t < q.size(); ++t)
          if (row[t]) q[t] = f.sub(q[t], f.mul(c, row[t]));
      }
    }
  }
};

// All eps^s multiples of the generators that survive in the frame.
Echelon span(const DenseFrame& fr, uint32_t p, std::vector<int> order, const std::vector<Vec>& gens) {
  Echelon ech(PrimeField(p), std::move(order));
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != fr.size()) throw ShapeError("frame vector has wrong size");
    for (int s = 0; s < fr.E(); ++s) {
      Vec v(g.size(), 0);
      bool any = false;
      for (int i = 0; i < fr.d; ++i)
        for (int e = fr.elo; e + s < fr.ehi; ++e) {
          const uint32_t c = g[static_cast<size_t>(fr.pos(i, e))];
          if (c) {
            v[static_cast<size_t>(fr.pos(i, e + s))] = c;
            any = true;
          }
        }
      if (any) ech.add(std::move(v));
    }
  }
  return ech;
}

}  // namespace

CanonicalData dense_canonical(const DenseFrame& fr, uint32_t p, const Coweight& a,
                              const std::vector<std::vector<uint32_t>>& gens) {
  Echelon ech = span(fr, p, weight_order(fr, a), gens);
  ech.reduce_fully();

  CanonicalData cd;
  cd.w.assign(static_cast<size_t>(fr.d), fr.ehi);
  cd.cols.assign(static_cast<size_t>(fr.d), {});
  std::vector<char> is_pivot(static_cast<size_t>(fr.size()), 0);
  for (size_t r = 0; r < ech.rows.size(); ++r) {
    const int pos = ech.cols[static_cast<size_t>(ech.row_pivot[r])];
    is_pivot[static_cast<size_t>(pos)] = 1;
    const int i = fr.comp(pos);
    cd.w[static_cast<size_t>(i)] = std::min(cd.w[static_cast<size_t>(i)], fr.expo(pos));
  }
  // An O-module containing eps^ehi O^d has a staircase of leading monomials.
  for (int i = 0; i < fr.d; ++i)
    for (int e = fr.elo; e < fr.ehi; ++e)
      if ((e >= cd.w[static_cast<size_t>(i)]) != static_cast<bool>(is_pivot[static_cast<size_t>(fr.pos(i, e))]))
        throw ShapeError("generators do not span a lattice inside the frame");

  for (size_t r = 0; r < ech.rows.size(); ++r) {
    const int pos = ech.cols[static_cast<size_t>(ech.row_pivot[r])];
    const int j = fr.comp(pos);
    if (fr.expo(pos) != cd.w[static_cast<size_t>(j)]) continue;
    const Vec& row = ech.rows[r];
    for (int t = 0; t < fr.size(); ++t) {
      if (!row[static_cast<size_t>(t)] || t == pos) continue;
      cd.cols[static_cast<size_t>(j)].push_back(
          Term{fr.comp(t), fr.expo(t) - cd.w[static_cast<size_t>(j)], row[static_cast<size_t>(t)]});
    }
  }
  return cd;
}

std::vector<uint32_t> dense_column(const DenseFrame& fr, const CanonicalData& cd, int j) {
  Vec v(static_cast<size_t>(fr.size()), 0);
  const int wj = cd.w[static_cast<size_t>(j)];
  if (wj < fr.ehi) v[static_cast<size_t>(fr.pos(j, wj))] = 1;
  for (const auto& t : cd.cols[static_cast<size_t>(j)]) {
    const int e = wj + t.n;
    if (e < fr.elo) throw ShapeError("lattice is not contained in the frame");
    if (e < fr.ehi) v[static_cast<size_t>(fr.pos(t.i, e))] = t.c;
  }
  return v;
}

FastMembership::FastMembership(const DenseFrame& fr, uint32_t p, const Coweight& a)
    : fr_(fr), p_(p), order_(weight_order(fr, a)) {}

void FastMembership::load(const CanonicalData& cd) { cd_ = &cd; }

bool FastMembership::contains(std::vector<uint32_t>& y) const {
  const int E = fr_.E();
  const uint32_t p = p_;
  for (const int pos : order_) {
    const uint32_t c = y[static_cast<size_t>(pos)];
    if (!c) continue;
    const int i = pos / E;
    const int e = fr_.elo + pos % E;
    const int wi = cd_->w[static_cast<size_t>(i)];
    if (e < wi) return false;
    y[static_cast<size_t>(pos)] = 0;
    const uint32_t nc = p - c;
    for (const auto& t : cd_->cols[static_cast<size_t>(i)]) {
      const int e2 = e + t.n;
      if (e2 >= fr_.ehi) continue;
      uint32_t& slot = y[static_cast<size_t>(t.i * E + (e2 - fr_.elo))];
      slot = static_cast<uint32_t>((slot + static_cast<uint64_t>(nc) * t.c) % p);
    }
  }
  return true;
}

std::vector<std::vector<uint32_t>> dense_dual(const DenseFrame& fr, uint32_t p,
                                              const std::vector<std::vector<uint32_t>>& gens,
                                              DenseFrame& dual_frame) {
  std::vector<int> order(static_cast<size_t>(fr.size()));
  std::iota(order.begin(), order.end(), 0);
  Echelon ech = span(fr, p, order, gens);
  ech.reduce_fully();
  dual_frame = DenseFrame{fr.d, -fr.ehi, -fr.elo};
  const PrimeField f(p);
  std::vector<Vec> out;
  // Null space of the row space; free column t gives one solution vector.
  for (int t = 0; t < fr.size(); ++t) {
    if (ech.pivot_row[static_cast<size_t>(t)] >= 0) continue;
    Vec y(static_cast<size_t>(fr.size()), 0);
    y[static_cast<size_t>(t)] = 1;
    for (size_t r = 0; r < ech.rows.size(); ++r) {
      const uint32_t c = ech.rows[r][static_cast<size_t>(t)];
      if (c) y[static_cast<size_t>(ech.cols[static_cast<size_t>(ech.row_pivot[r])])] = f.neg(c);
    }
    Vec z(static_cast<size_t>(dual_frame.size()), 0);
    for (int pos = 0; pos < fr.size(); ++pos)
      if (y[static_cast<size_t>(pos)])
        z[static_cast<size_t>(dual_frame.pos(fr.comp(pos), -1 - fr.expo(pos)))] = y[static_cast<size_t>(pos)];
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace springer
