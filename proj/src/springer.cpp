#include "springer/springer.hpp"

#include <algorithm>
#include <thread>

#include "springer/errors.hpp"

namespace springer {

SpringerTester::SpringerTester(const GammaMatrix& g, const DenseFrame& fr, const Coweight& a, uint32_t p)
    : d_(g.d), p_(p), mem_(fr, p, a), y_(static_cast<size_t>(fr.size()), 0) {
  if (g.d != fr.d) throw ShapeError("gamma and lattice sizes differ");
  const int E = fr.E();
  gam_.assign(static_cast<size_t>(d_), std::vector<std::vector<std::pair<int, uint32_t>>>(static_cast<size_t>(d_)));
  for (int r = 0; r < d_; ++r)
    for (int i = 0; i < d_; ++i) {
      const TruncSeries& s = g.at(r, i);
      if (s.field().p() != p) throw InputError("gamma was reduced at a different prime");
      if (s.horizon() < E)
        throw PrecisionError("gamma is known below e^" + std::to_string(s.horizon()) + " but e^" + std::to_string(E) +
                             " is needed");
      if (!s.known_zero() && s.valuation() < 0) throw InputError("gamma is not integral");
      for (int t = 0; t < E; ++t)
        if (const uint32_t c = s.coeff(t)) gam_[static_cast<size_t>(r)][static_cast<size_t>(i)].emplace_back(t, c);
    }
}

bool SpringerTester::test(const CanonicalData& cd) {
  const DenseFrame& fr = mem_.frame();
  const int E = fr.E();
  mem_.load(cd);
  auto add = [&](int i, int e, uint32_t c) {
    if (e >= fr.ehi) return;
    if (e < fr.elo) throw ShapeError("lattice is not contained in the frame");
    for (int r = 0; r < d_; ++r)
      for (const auto& [t, gc] : gam_[static_cast<size_t>(r)][static_cast<size_t>(i)]) {
        const int e2 = e + t;
        if (e2 >= fr.ehi) break;
        uint32_t& slot = y_[static_cast<size_t>(r * E + (e2 - fr.elo))];
        slot = static_cast<uint32_t>((slot + static_cast<uint64_t>(gc) * c) % p_);
      }
  };
  for (int j = 0; j < d_; ++j) {
    std::fill(y_.begin(), y_.end(), 0);
    const int wj = cd.w[static_cast<size_t>(j)];
    add(j, wj, 1);
    for (const auto& t : cd.cols[static_cast<size_t>(j)]) add(t.i, wj + t.n, t.c);
    if (!mem_.contains(y_)) return false;
  }
  return true;
}

bool in_springer(const LatticePoint& L, const GammaMatrix& g) {
  const CanonicalData cd = L.canonical();
  SpringerTester t(g, frame_of(cd), L.cell.a, L.p);
  return t.test(cd);
}

bool in_springer(const LatticePoint& L, const GammaData& g) { return in_springer(L, g.matrix()); }

bool in_springer_conjugation(const LatticePoint& L, const GammaMatrix& g) {
  const DenseFrame fr = frame_of(L.canonical());
  const int H = fr.ehi + 4 * fr.E() + 8;
  const SeriesMatrix B = basis_matrix(L, H);
  const PrimeField f(L.p);
  SeriesMatrix G(f, g.d, H);
  for (int i = 0; i < g.d; ++i)
    for (int j = 0; j < g.d; ++j) G.at(i, j) = g.at(i, j);
  const SeriesMatrix M = B.inverse() * G * B;
  for (const auto& s : M.e)
    if (!s.val_at_least(0)) return false;
  return true;
}

DenseFrame cell_frame(const CellSpec& cell) {
  const int d = cell.d();
  int elo = *std::min_element(cell.w.begin(), cell.w.end());
  for (const auto& s : cell.slots) elo = std::min(elo, cell.w[static_cast<size_t>(s.j)] + s.lo);
  return DenseFrame{d, elo, std::max(degree(cell.w) - (d - 1) * elo, elo + 1)};
}

namespace {

// Counts points whose last coordinate is congruent to `part` mod `parts`.
uint64_t count_part(const CellSpec& cell, const GammaMatrix& g, uint32_t q, const PointFilter& filter, int part,
                    int parts) {
  const DenseFrame fr = cell_frame(cell);
  SpringerTester tester(g, fr, cell.a, q);
  LatticePoint L;
  L.cell = cell;
  L.p = q;
  L.coords.assign(static_cast<size_t>(cell.dim), 0);
  CanonicalData cd;
  cd.w = cell.w;
  cd.cols.assign(static_cast<size_t>(cell.d()), {});
  struct Loc {
    int i, j, n;
  };
  std::vector<Loc> loc;
  for (const auto& s : cell.slots)
    for (int n = s.lo; n < s.hi; ++n) loc.push_back({s.i, s.j, n});

  uint64_t count = 0;
  auto visit = [&]() {
    if (filter && !filter(L)) return;
    for (auto& c : cd.cols) c.clear();
    for (size_t k = 0; k < loc.size(); ++k)
      if (const uint32_t c = L.coords[k]) cd.cols[static_cast<size_t>(loc[k].j)].push_back(Term{loc[k].i, loc[k].n, c});
    if (tester.test(cd)) ++count;
  };
  if (cell.dim == 0) {
    if (part == 0) visit();
    return count;
  }
  // The last coordinate is fixed per part; the odometer runs over the rest.
  for (uint32_t last = static_cast<uint32_t>(part); last < q; last += static_cast<uint32_t>(parts)) {
    std::fill(L.coords.begin(), L.coords.end(), 0);
    L.coords.back() = last;
    std::vector<uint32_t> head(L.coords.size() - 1, 0);
    do {
      std::copy(head.begin(), head.end(), L.coords.begin());
      visit();
    } while (next_coords(head, q));
  }
  return count;
}

}  // namespace

CountResult count_cell(const CellSpec& cell, const GammaMatrix& g, uint32_t q, const PointFilter& filter,
                       uint64_t budget, int jobs) {
  if (power_capped(q, cell.dim, budget) > budget)
    throw BudgetError("cell of dimension " + std::to_string(cell.dim) + " exceeds the point budget at q = " +
                      std::to_string(q));
  CountResult r;
  r.q = q;
  r.region = "cell a=" + to_string(cell.a) + " w=" + to_string(cell.w);
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(q)));
  if (jobs == 1 || cell.dim == 0) {
    r.count = count_part(cell, g, q, filter, 0, 1);
    return r;
  }
  std::vector<uint64_t> partial(static_cast<size_t>(jobs), 0);
  std::vector<std::thread> pool;
  for (int k = 0; k < jobs; ++k)
    pool.emplace_back([&, k] { partial[static_cast<size_t>(k)] = count_part(cell, g, q, filter, k, jobs); });
  for (auto& t : pool) t.join();
  for (auto x : partial) r.count += x;
  return r;
}

std::vector<CellSpec> window_cells(int d, int m, int degree) {
  std::vector<CellSpec> out;
  const Coweight zero(static_cast<size_t>(d), 0);
  for (const auto& w : window_fixed_points(d, m, degree)) out.push_back(make_cell(zero, w, Window::low(m)));
  return out;
}

CountResult count_region(const std::vector<CellSpec>& cells, const GammaMatrix& g, uint32_t q, uint64_t budget,
                         int jobs) {
  uint64_t total = 0;
  for (const auto& c : cells) {
    total += power_capped(q, c.dim, budget);
    if (total > budget) throw BudgetError("region exceeds the point budget");
  }
  CountResult r;
  r.q = q;
  r.region = std::to_string(cells.size()) + " cells";
  for (const auto& c : cells) r.count += count_cell(c, g, q, nullptr, budget, jobs).count;
  return r;
}

uint64_t ipow(uint64_t q, int e) {
  if (e < 0) throw InputError("negative exponent");
  uint64_t r = 1;
  for (int k = 0; k < e; ++k) {
    if (r > UINT64_MAX / q) throw SpringerError("integer overflow in q^e");
    r *= q;
  }
  return r;
}

PowerCheck power_check(const std::map<uint32_t, uint64_t>& counts) {
  PowerCheck pc;
  if (counts.empty()) {
    pc.witness = "no counts";
    return pc;
  }
  int dim = -1;
  for (const auto& [q, c] : counts) {
    int e = 0;
    uint64_t v = 1;
    while (v < c) {
      v *= q;
      ++e;
    }
    if (v != c) {
      pc.witness = "count " + std::to_string(c) + " at q = " + std::to_string(q) + " is not a power of q";
      return pc;
    }
    if (dim >= 0 && e != dim) {
      pc.witness = "exponent " + std::to_string(e) + " at q = " + std::to_string(q) + " differs from " +
                   std::to_string(dim);
      return pc;
    }
    dim = e;
  }
  pc.pure = true;
  pc.dim = dim;
  return pc;
}

}  // namespace springer
