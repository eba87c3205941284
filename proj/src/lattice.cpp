#include "springer/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "springer/errors.hpp"

namespace springer {

uint32_t LatticePoint::coord(int i, int j, int n) const {
  const auto off = cell.offsets();
  for (size_t s = 0; s < cell.slots.size(); ++s) {
    const Slot& sl = cell.slots[s];
    if (sl.i == i && sl.j == j && n >= sl.lo && n < sl.hi)
      return coords[static_cast<size_t>(off[s] + n - sl.lo)];
  }
  return 0;
}

CanonicalData LatticePoint::canonical() const {
  CanonicalData cd;
  cd.w = cell.w;
  cd.cols.assign(static_cast<size_t>(d()), {});
  int k = 0;
  for (const Slot& sl : cell.slots)
    for (int n = sl.lo; n < sl.hi; ++n, ++k) {
      const uint32_t c = coords[static_cast<size_t>(k)];
      if (c) cd.cols[static_cast<size_t>(sl.j)].push_back(Term{sl.i, n, c});
    }
  return cd;
}

DenseFrame frame_of(const CanonicalData& cd) {
  const int d = static_cast<int>(cd.w.size());
  int elo = cd.w[0];
  for (int j = 0; j < d; ++j) {
    elo = std::min(elo, cd.w[static_cast<size_t>(j)]);
    for (const auto& t : cd.cols[static_cast<size_t>(j)]) elo = std::min(elo, cd.w[static_cast<size_t>(j)] + t.n);
  }
  // The smallest elementary divisor is elo and they sum to the degree.
  const int ehi = std::max(degree(cd.w) - (d - 1) * elo, elo + 1);
  return DenseFrame{d, elo, ehi};
}

LatticePoint point_from_canonical(const CanonicalData& cd, const Coweight& a, uint32_t p) {
  LatticePoint L;
  L.cell = make_cell(a, cd.w);
  L.p = p;
  L.coords.assign(static_cast<size_t>(L.cell.dim), 0);
  const auto off = L.cell.offsets();
  for (size_t j = 0; j < cd.cols.size(); ++j)
    for (const auto& t : cd.cols[j]) {
      bool placed = false;
      for (size_t s = 0; s < L.cell.slots.size(); ++s) {
        const Slot& sl = L.cell.slots[s];
        if (sl.i == t.i && sl.j == static_cast<int>(j) && t.n >= sl.lo && t.n < sl.hi) {
          L.coords[static_cast<size_t>(off[s] + t.n - sl.lo)] = t.c % p;
          placed = true;
          break;
        }
      }
      if (!placed)
        throw ShapeError("coordinate (" + std::to_string(t.i + 1) + "," + std::to_string(j + 1) + "," +
                         std::to_string(t.n) + ") lies outside the cell of " + to_string(cd.w));
    }
  return L;
}

LatticePoint fixed_point(const Coweight& w, uint32_t p) {
  LatticePoint L;
  L.cell = make_cell(Coweight(w.size(), 0), w);
  L.p = p;
  L.coords.assign(static_cast<size_t>(L.cell.dim), 0);
  return L;
}

LatticePoint base_point(int d, uint32_t p) { return fixed_point(Coweight(static_cast<size_t>(d), 0), p); }

SeriesMatrix basis_matrix(const LatticePoint& L, std::optional<int> horizon) {
  const CanonicalData cd = L.canonical();
  const DenseFrame fr = frame_of(cd);
  const int H = horizon.value_or(fr.ehi + fr.E() + 2);
  const PrimeField f(L.p);
  const int d = L.d();
  SeriesMatrix B(f, d, H);
  for (int j = 0; j < d; ++j) {
    const int wj = cd.w[static_cast<size_t>(j)];
    B.at(j, j) = TruncSeries::monomial(f, wj, 1, H);
    for (const auto& t : cd.cols[static_cast<size_t>(j)])
      B.at(t.i, j) = B.at(t.i, j) + TruncSeries::monomial(f, wj + t.n, t.c, H);
  }
  return B;
}

namespace {

std::vector<std::vector<uint32_t>> frame_columns(const DenseFrame& fr, const CanonicalData& cd) {
  std::vector<std::vector<uint32_t>> gens;
  for (int j = 0; j < fr.d; ++j) gens.push_back(dense_column(fr, cd, j));
  return gens;
}

}  // namespace

LatticePoint canonical_form(const SeriesMatrix& B, const Coweight& a) {
  const int d = B.d;
  if (static_cast<int>(a.size()) != d) throw ShapeError("shift has wrong length");
  bool have = false;
  int elo = 0;
  for (const auto& s : B.e)
    if (!s.known_zero()) {
      elo = have ? std::min(elo, s.valuation()) : s.valuation();
      have = true;
    }
  if (!have) throw PrecisionError("matrix is singular or precision is insufficient");
  const TruncSeries det = B.det();
  if (det.known_zero()) throw PrecisionError("matrix is singular or precision is insufficient");
  const int deg = det.valuation();
  const DenseFrame fr{d, elo, std::max(deg - (d - 1) * elo, elo + 1)};
  for (const auto& s : B.e) {
    if (s.horizon() < fr.ehi)
      throw PrecisionError("entry known to e^" + std::to_string(s.horizon()) + " but e^" +
                           std::to_string(fr.ehi) + " is needed");
    if (s.known_zero() && s.horizon() < elo) throw PrecisionError("entry undecided below the frame");
  }
  std::vector<std::vector<uint32_t>> gens;
  for (int j = 0; j < d; ++j) {
    std::vector<uint32_t> v(static_cast<size_t>(fr.size()), 0);
    for (int i = 0; i < d; ++i)
      for (int e = fr.elo; e < fr.ehi; ++e) v[static_cast<size_t>(fr.pos(i, e))] = B.at(i, j).coeff(e);
    gens.push_back(std::move(v));
  }
  return point_from_canonical(dense_canonical(fr, B.field().p(), a, gens), a, B.field().p());
}

LatticePoint recanonicalize(const LatticePoint& L, const Coweight& a) {
  const CanonicalData cd = L.canonical();
  const DenseFrame fr = frame_of(cd);
  return point_from_canonical(dense_canonical(fr, L.p, a, frame_columns(fr, cd)), a, L.p);
}

LatticePoint dual(const LatticePoint& L, std::optional<Coweight> a) {
  const CanonicalData cd = L.canonical();
  const DenseFrame fr = frame_of(cd);
  DenseFrame dfr;
  const auto gens = dense_dual(fr, L.p, frame_columns(fr, cd), dfr);
  const Coweight sh = a.value_or(Coweight(static_cast<size_t>(L.d()), 0));
  return point_from_canonical(dense_canonical(dfr, L.p, sh, gens), sh, L.p);
}

bool in_window(const LatticePoint& L, const Window& win) {
  const CanonicalData cd = L.canonical();
  const DenseFrame fr = frame_of(cd);
  if (win.m_low && fr.elo < -*win.m_low) return false;
  if (win.m_high) {
    const int m = *win.m_high;
    if (m >= fr.ehi) return true;
    if (m < fr.elo) return false;
    FastMembership mem(fr, L.p, L.cell.a);
    mem.load(cd);
    for (int i = 0; i < L.d(); ++i) {
      std::vector<uint32_t> y(static_cast<size_t>(fr.size()), 0);
      y[static_cast<size_t>(fr.pos(i, m))] = 1;
      if (!mem.contains(y)) return false;
    }
  }
  return true;
}

std::string lattice_key(const LatticePoint& L) {
  const bool standard = std::all_of(L.cell.a.begin(), L.cell.a.end(), [](int x) { return x == 0; });
  const LatticePoint S = standard ? L : recanonicalize(L, Coweight(static_cast<size_t>(L.d()), 0));
  std::ostringstream os;
  os << to_string(S.cell.w) << ":";
  // Terms, not flat coordinates, so windowed and full cells agree.
  const CanonicalData cd = S.canonical();
  for (size_t j = 0; j < cd.cols.size(); ++j)
    for (const auto& t : cd.cols[j]) os << t.i << "," << j << "," << t.n << "," << t.c << ";";
  return os.str();
}

bool same_lattice(const LatticePoint& x, const LatticePoint& y) {
  return x.p == y.p && x.d() == y.d() && lattice_key(x) == lattice_key(y);
}

bool next_coords(std::vector<uint32_t>& c, uint32_t q) {
  for (auto& x : c) {
    if (++x < q) return true;
    x = 0;
  }
  return false;
}

uint64_t power_capped(uint64_t q, int n, uint64_t cap) {
  uint64_t r = 1;
  for (int k = 0; k < n; ++k) {
    if (r > cap / q) return cap + 1;
    r *= q;
  }
  return r;
}

uint64_t default_budget() {
  if (const char* s = std::getenv("SPRINGER_BUDGET")) {
    try {
      const double v = std::stod(s);
      if (v > 0) return static_cast<uint64_t>(v);
    } catch (const std::exception&) {
    }
    throw InputError(std::string("SPRINGER_BUDGET is not a positive number: ") + s);
  }
  return 1000000000ULL;
}

void for_each_point(const CellSpec& cell, uint32_t q, const std::function<void(const LatticePoint&)>& fn) {
  LatticePoint L;
  L.cell = cell;
  L.p = q;
  L.coords.assign(static_cast<size_t>(cell.dim), 0);
  do fn(L);
  while (next_coords(L.coords, q));
}

void enumerate_window(int d, int m, uint32_t q, int degree, const std::function<void(const LatticePoint&)>& fn,
                      uint64_t budget) {
  const Coweight zero(static_cast<size_t>(d), 0);
  std::vector<CellSpec> cells;
  uint64_t total = 0;
  for (const auto& w : window_fixed_points(d, m, degree)) {
    cells.push_back(make_cell(zero, w, Window::low(m)));
    total += power_capped(q, cells.back().dim, budget);
    if (total > budget) throw BudgetError("window enumeration exceeds the point budget");
  }
  for (const auto& c : cells) for_each_point(c, q, fn);
}

nlohmann::json to_json(const LatticePoint& L) {
  nlohmann::json coords = nlohmann::json::array();
  const CanonicalData cd = L.canonical();
  for (int j = 0; j < L.d(); ++j)
    for (const auto& t : cd.cols[static_cast<size_t>(j)]) coords.push_back({t.i + 1, j + 1, t.n, t.c});
  return {{"a", L.cell.a}, {"w", L.cell.w}, {"coords", coords}};
}

LatticePoint lattice_from_json(const nlohmann::json& j, uint32_t p) {
  CanonicalData cd;
  cd.w = j.at("w").get<Coweight>();
  const int d = static_cast<int>(cd.w.size());
  if (d == 0) throw InputError("lattice point needs a nonempty w");
  const Coweight a = j.contains("a") ? j.at("a").get<Coweight>() : Coweight(static_cast<size_t>(d), 0);
  cd.cols.assign(static_cast<size_t>(d), {});
  const PrimeField f(p);
  if (j.contains("coords"))
    for (const auto& c : j.at("coords")) {
      const int i = c.at(0).get<int>() - 1, jj = c.at(1).get<int>() - 1;
      if (i < 0 || i >= d || jj < 0 || jj >= d || i == jj) throw InputError("coordinate index out of range");
      const uint32_t v = f.reduce(c.at(3).get<long long>());
      if (v) cd.cols[static_cast<size_t>(jj)].push_back(Term{i, c.at(2).get<int>(), v});
    }
  return point_from_canonical(cd, a, p);
}

nlohmann::json to_json(const Window& w) {
  nlohmann::json j;
  j["m_low"] = w.m_low ? nlohmann::json(*w.m_low) : nlohmann::json(nullptr);
  j["m_high"] = w.m_high ? nlohmann::json(*w.m_high) : nlohmann::json(nullptr);
  return j;
}

Window window_from_json(const nlohmann::json& j) {
  Window w;
  if (j.contains("m_low") && !j.at("m_low").is_null()) w.m_low = j.at("m_low").get<int>();
  if (j.contains("m_high") && !j.at("m_high").is_null()) w.m_high = j.at("m_high").get<int>();
  return w;
}

}  // namespace springer
