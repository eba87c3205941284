#include <random>

#include "doctest.h"
#include "springer/springer.hpp"

using namespace springer;

namespace {

GammaSpec example_spec() {
  GammaSpec g;
  g.diag = {{{2, 1}}, {{4, 1}}, {{4, -1}}};
  return g;
}

GammaSpec mixed_spec() {
  GammaSpec g;
  g.matrix = {{{{0, 1}}, {}, {}}, {{}, {}, {{0, 1}}}, {{}, {{1, 1}}, {}}};
  return g;
}

LatticePoint example_point(uint32_t a0, uint32_t b1) {
  LatticePoint L;
  L.cell = make_cell({0, 0, 0}, {0, 2, -2});
  L.p = 5;
  L.coords.assign(7, 0);
  const auto offs = L.cell.offsets();
  for (size_t s = 0; s < L.cell.slots.size(); ++s) {
    const Slot& sl = L.cell.slots[s];
    if (sl.i == 0 && sl.j == 2) L.coords[static_cast<size_t>(offs[s] - sl.lo)] = a0;
    if (sl.i == 1 && sl.j == 0) L.coords[static_cast<size_t>(offs[s] + 1 - sl.lo)] = b1;
  }
  return L;
}

// Ad((B k)^{-1}) gamma for a random k in GL_3(O), tested for integrality.
bool conjugation_with_k(const LatticePoint& L, const GammaMatrix& g, std::mt19937_64& rng) {
  const int H = 60;
  const PrimeField f(L.p);
  SeriesMatrix k(f, 3, H);
  for (int i = 0; i < 3; ++i) k.at(i, i) = TruncSeries::monomial(f, 0, static_cast<long long>(1 + rng() % (L.p - 1)), H);
  k.at(0, 1) = TruncSeries::from_literal(f, {{0, static_cast<long long>(rng() % L.p)}, {1, 1}}, H);
  k.at(2, 0) = TruncSeries::from_literal(f, {{1, static_cast<long long>(rng() % L.p)}}, H);
  const SeriesMatrix B = basis_matrix(L, H) * k;
  SeriesMatrix G(f, 3, H);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) G.at(i, j) = g.at(i, j).with_horizon(std::min(H, g.at(i, j).horizon()));
  const SeriesMatrix M = B.inverse() * G * B;
  for (const auto& s : M.e)
    if (!s.val_at_least(0)) return false;
  return true;
}

}  // namespace

TEST_CASE("fixed points lie in the fiber") {
  const GammaMatrix g = gamma_matrix(example_spec(), 5, 40);
  for (const auto& w : window_fixed_points(3, 2, 0)) CHECK(in_springer(fixed_point(w, 5), g));
}

TEST_CASE("the example equation a0 b1 = 0") {
  const GammaMatrix g = gamma_matrix(example_spec(), 5, 40);
  CHECK_FALSE(in_springer(example_point(1, 1), g));
  CHECK(in_springer(example_point(1, 0), g));
  CHECK(in_springer(example_point(0, 1), g));
  CHECK_FALSE(in_springer_conjugation(example_point(1, 1), g));
  CHECK(in_springer_conjugation(example_point(1, 0), g));
}

TEST_CASE("elimination agrees with conjugation") {
  std::mt19937_64 rng(31);
  int yes = 0, no = 0;
  for (const GammaSpec& spec : {example_spec(), mixed_spec()}) {
    const GammaMatrix g = gamma_matrix(spec, 5, 60);
    std::vector<LatticePoint> pts;
    enumerate_window(3, 1, 5, 0, [&](const LatticePoint& L) {
      if (rng() % 20 == 0) pts.push_back(L);
    });
    for (size_t k = 0; k < pts.size() && k < 250; ++k) {
      const bool a = in_springer(pts[k], g);
      CHECK(a == in_springer_conjugation(pts[k], g));
      CHECK(a == conjugation_with_k(pts[k], g, rng));
      (a ? yes : no)++;
    }
  }
  CHECK(yes > 0);
  CHECK(no > 0);
}

TEST_CASE("counts of the example cell") {
  const CellSpec cell = make_cell({0, 0, 0}, {0, 2, -2}, Window::low(2));
  for (uint32_t q : {5u, 7u}) {
    const GammaMatrix g = gamma_matrix(example_spec(), q, 80);
    const uint64_t want = 2 * ipow(q, 6) - ipow(q, 5);
    CHECK(count_cell(cell, g, q).count == want);
    CHECK(count_cell(cell, g, q, nullptr, default_budget(), 3).count == want);
  }
  CHECK(2 * ipow(5, 6) - ipow(5, 5) == 28125);
  const GammaMatrix g = gamma_matrix(example_spec(), 5, 80);
  const CellSpec point = make_cell({0, 0, 0}, {0, 0, 0});
  REQUIRE(point.dim == 0);
  CHECK(count_cell(point, g, 5).count == 1);
  CHECK_THROWS_AS(count_cell(cell, g, 5, nullptr, 1000), BudgetError);
}

TEST_CASE("regions") {
  const GammaMatrix g = gamma_matrix(example_spec(), 5, 80);
  CHECK(count_region({}, g, 5).count == 0);
  const CellSpec c = make_cell({0, 0, 0}, {1, 0, -1}, Window::low(1));
  CHECK(count_region({c}, g, 5).count == count_cell(c, g, 5).count);
  const auto cells = window_cells(3, 1, 0);
  uint64_t sum = 0;
  for (const auto& x : cells) sum += count_cell(x, g, 5).count;
  CHECK(count_region(cells, g, 5).count == sum);
  CHECK(sum == 5306);
}

TEST_CASE("power check") {
  const PowerCheck a = power_check({{3, 27}, {5, 125}});
  CHECK(a.pure);
  CHECK(a.dim == 3);
  CHECK_FALSE(power_check({{3, 24}, {5, 120}}).pure);
  CHECK_FALSE(power_check({{5, 28125}, {7, 218491}}).pure);
  CHECK_FALSE(power_check({{3, 9}, {5, 125}}).pure);
  CHECK(power_check({{3, 1}, {5, 1}}).dim == 0);
}

TEST_CASE("precision guard") {
  const GammaMatrix g = gamma_matrix(example_spec(), 5, 3);
  CHECK_THROWS_AS(in_springer(example_point(1, 0), g), PrecisionError);
}
