#include <algorithm>
#include <set>

#include "doctest.h"
#include "springer/paving.hpp"

using namespace springer;

namespace {

GammaSpec diag(std::vector<SeriesLiteral> e) {
  GammaSpec g;
  g.diag = std::move(e);
  return g;
}

GammaSpec example_spec() { return diag({{{2, 1}}, {{4, 1}}, {{4, -1}}}); }

// Dominant forms below v by partial sums, over all w of the same degree with entries in range.
std::set<Coweight> schubert_oracle(const Coweight& v) {
  const int d = static_cast<int>(v.size());
  const int lo = *std::min_element(v.begin(), v.end()), hi = *std::max_element(v.begin(), v.end());
  std::set<Coweight> out;
  Coweight w(static_cast<size_t>(d), lo);
  while (true) {
    if (degree(w) == degree(v)) {
      Coweight x = w, y = v;
      std::sort(x.rbegin(), x.rend());
      std::sort(y.rbegin(), y.rend());
      int sx = 0, sy = 0;
      bool below = true;
      for (int i = 0; i < d; ++i) {
        sx += x[static_cast<size_t>(i)];
        sy += y[static_cast<size_t>(i)];
        below = below && sx <= sy;
      }
      if (below) out.insert(w);
    }
    int k = 0;
    while (k < d && w[static_cast<size_t>(k)] == hi) w[static_cast<size_t>(k++)] = lo;
    if (k == d) break;
    ++w[static_cast<size_t>(k)];
  }
  return out;
}

uint64_t sum_powers(const std::vector<int>& dims, uint64_t q) {
  uint64_t s = 0;
  for (int e : dims) s += ipow(q, e);
  return s;
}

}  // namespace

TEST_CASE("vbar") {
  CHECK(vbar({2, -1, -1}) == Coweight{0, 0, 0});
  CHECK(vbar({1, 1, -2}) == Coweight{0, 0, 0});
  CHECK(vbar({2, 0, 0, -2}) == Coweight{1, 0, 0, -1});
  CHECK_FALSE(vbar({0, 0, 0}).has_value());
  CHECK_THROWS(vbar({2, 1, 0, -3}));
}

TEST_CASE("Schubert fixed points split into vbar and R(v)") {
  for (const Coweight& v : std::vector<Coweight>{{2, -1, -1}, {1, 1, -2}, {3, 0, -3}, {4, -2, -2}, {2, 0, 0, -2}, {3, -1, -1, -1}}) {
    const auto sch = schubert_fixed_points(v);
    CHECK(std::set<Coweight>(sch.begin(), sch.end()) == schubert_oracle(v));
    const auto r = r_fixed_points(v);
    std::set<Coweight> joined(r.begin(), r.end());
    CHECK(joined.size() == r.size());
    if (const auto vb = vbar(v)) {
      for (const auto& w : schubert_fixed_points(*vb)) CHECK(joined.insert(w).second);
    }
    CHECK(joined == schubert_oracle(v));
  }
}

TEST_CASE("cuts") {
  const auto c1 = default_cut({2, -1, -1});
  REQUIRE(c1);
  CHECK(floor_of(*c1) == -1);
  CHECK(ceil_of(*c1) == 0);
  const auto c2 = default_cut({1, 1, -2});
  REQUIRE(c2);
  CHECK(floor_of(*c2) == 0);
  CHECK(ceil_of(*c2) == 1);
  CHECK_FALSE(default_cut({0, 0, 0}).has_value());
  const auto q = default_cut({2, -1, -1}, {1, 4});
  REQUIRE(q);
  CHECK((q->num == -3 && q->den == 4));
  CHECK_THROWS_AS(default_cut({2, -1, -1}, {5, 4}), InputError);
  CHECK(to_string(Rational{-1, 2}) == "-1/2");
}

TEST_CASE("slices partition R(v)") {
  for (const Coweight& v : std::vector<Coweight>{{2, -1, -1}, {1, 1, -2}, {3, -1, -1, -1}, {4, -2, -2}}) {
    const Rational c = *default_cut(v);
    const auto slices = slice_fixed_points(v, c);
    std::set<Coweight> seen;
    for (const auto& [J, pts] : slices)
      for (const auto& w : pts) {
        CHECK(seen.insert(w).second);
        for (size_t i = 0; i < w.size(); ++i) CHECK((w[i] > floor_of(c)) == ((J >> i) & 1u));
      }
    const auto r = r_fixed_points(v);
    CHECK(seen == std::set<Coweight>(r.begin(), r.end()));
    // Same interval, same split.
    CHECK(slice_fixed_points(v, *default_cut(v, {1, 4})) == slices);
    CHECK(slice_fixed_points(v, *default_cut(v, {3, 4})) == slices);
  }
  for (const auto& [J, pts] : slice_fixed_points({0, 0, 0}, {1, 2})) CHECK(pts.empty());
}

TEST_CASE("slice witnesses") {
  const Rational c{-1, 2};
  const auto w = slice_witness({3, -1, -1, -1}, c, 2);
  REQUIRE(w);
  CHECK(*w == Coweight{2, 0, -1, -1});
  const auto slices = slice_fixed_points({3, -1, -1, -1}, c);
  const auto& s = slices.at(0b0011u);
  CHECK(std::find(s.begin(), s.end(), *w) != s.end());
  // The top gap is too small to move two steps.
  CHECK_FALSE(slice_witness({1, 0, 0, -1}, Rational{-1, 2}, 2).has_value());
  CHECK_THROWS_AS(slice_witness({3, -1, -1, -1}, c, 4), ShapeError);
}

TEST_CASE("N-part dimension against distinct lattices at q = 2") {
  const PrimeField f(2);
  const int H = 30;
  const Coweight zero{0, 0, 0};
  for (Mask J : {0b011u, 0b001u, 0b101u})
    for (const Coweight& w : window_fixed_points(3, 1, 0)) {
      const SliceCells sc = slice_cells(J, zero, w, Rational{-1, 2});
      // Entries (i, j), i in J, j outside, with exponents lb <= n < w_i - w_j + 2.
      std::vector<std::tuple<int, int, int>> loc;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          if (((J >> i) & 1u) && !((J >> j) & 1u))
            for (int n = lb(zero, i, j); n < w[static_cast<size_t>(i)] - w[static_cast<size_t>(j)] + 2; ++n)
              loc.emplace_back(i, j, n);
      std::set<std::string> keys;
      for (uint32_t mask = 0; mask < (1u << loc.size()); ++mask) {
        SeriesMatrix B(f, 3, H);
        for (int i = 0; i < 3; ++i) B.at(i, i) = TruncSeries::monomial(f, w[static_cast<size_t>(i)], 1, H);
        for (size_t k = 0; k < loc.size(); ++k)
          if ((mask >> k) & 1u) {
            const auto [i, j, n] = loc[k];
            B.at(i, j) = B.at(i, j) + TruncSeries::monomial(f, n + w[static_cast<size_t>(j)], 1, H);
          }
        keys.insert(lattice_key(canonical_form(B, zero)));
      }
      CHECK(keys.size() == ipow(2, sc.n_dim));
    }
}

TEST_CASE("slice cell bounds") {
  const SliceCells sc = slice_cells(0b001u, {0, 0, 0}, {0, 0, 0}, Rational{-1, 2});
  CHECK(sc.h1.dim == 0);
  CHECK(sc.h2.empty());
  CHECK(sc.n_dim == 0);
  const SliceCells t = slice_cells(0b011u, {1, 2, 2}, {2, 0, -2}, Rational{-1, 2});
  for (const auto& s : t.h2) CHECK(s.lo >= 1 + 0);
  CHECK(t.h1.d() == 2);
}

TEST_CASE("GL3 parameters and shifts") {
  const Gl3Params p = gl3_params(integer_nu(example_spec()));
  CHECK(p.n1 == 2);
  CHECK(p.n2 == 4);
  CHECK_THROWS_AS(gl3_params(integer_nu(diag({{{4, 1}}, {{2, 1}}, {{4, -1}}}))), InputError);
  CHECK(slice_shift(p, 0b001u) == Coweight{0, 0, 0});
  CHECK(slice_shift(p, 0b110u) == Coweight{0, 0, 0});
  CHECK(slice_shift(p, 0b011u) == Coweight{2, 4, 4});
  CHECK(slice_shift(p, 0b101u) == Coweight{2, 4, 4});
  CHECK(slice_shift(p, 0b010u) == Coweight{-2, -4, -4});
  CHECK(slice_shift(p, 0b100u) == Coweight{-2, -4, -4});
}

TEST_CASE("kernel dimension of a slice") {
  const NuMatrix nu = integer_nu(example_spec());
  const auto lo0 = [](int i, int j) { return lb({0, 0, 0}, i, j); };
  CHECK(kernel_dim(nu, 0b001u, {2, -1, -1}, lo0) == 4);
  CHECK(kernel_dim(nu, 0b001u, {1, 0, -1}, lo0) == 3);
  CHECK(kernel_dim(nu, 0b110u, {-1, 1, 0}, lo0) == 1);
}

TEST_CASE("GL2 upper cells have dimension min(w1 - w2, n)") {
  for (int n = 0; n <= 3; ++n) {
    const GammaSpec g = diag({{}, {{n, 1}}});
    for (uint32_t q : {3u, 5u}) {
      const GammaMatrix gm = gamma_matrix(g, q, 30);
      for (int k = 1; k <= 4; ++k) {
        const CellSpec c = make_cell({0, 0}, {k, -k + 0});
        CHECK(count_cell(c, gm, q).count == ipow(q, std::min(2 * k, n)));
      }
    }
  }
}

TEST_CASE("GL3 paving of the example") {
  const PavingContext ctx = make_context(example_spec(), {5, 7}, 1);
  PavingReport r = gl3_paving(ctx, {2, -1, -1});
  certify(r, ctx);
  CHECK(r.status == "pure");
  CHECK(r.witnesses.empty());
  CHECK(r.totals.at(5) == 5306);
  CHECK(r.totals.at(7) == 24802);
  CHECK(r.brute.at(5) == 5306);
  CHECK(sum_powers(r.total_dims, 5) == 5306);
  CHECK(sum_powers(r.total_dims, 7) == 24802);
  // The same dimension multiset predicts the count at q = 3.
  const GammaMatrix g3 = gamma_matrix(example_spec(), 3, 40);
  CHECK(count_region(window_cells(3, 1, 0), g3, 3).count == sum_powers(r.total_dims, 3));
  // Every fixed point of the region lies in exactly one piece.
  std::multiset<Coweight> covered;
  for (const auto& P : r.pieces) covered.insert(P.region.begin(), P.region.end());
  const auto sch = schubert_fixed_points({2, -1, -1});
  CHECK(covered == std::multiset<Coweight>(sch.begin(), sch.end()));
  // Every window point at q = 2 lands in exactly one piece cell.
  std::set<std::string> keys;
  size_t n = 0;
  for (const auto& P : r.pieces)
    for (const auto& c : P.cells) piece_cell_keys(c, 2, [&](const std::string& k) {
        keys.insert(k);
        ++n;
      });
  std::set<std::string> ref;
  enumerate_window(3, 1, 2, 0, [&](const LatticePoint& L) { ref.insert(lattice_key(L)); });
  CHECK(n == keys.size());
  CHECK(keys == ref);
  const auto j = to_json(r);
  CHECK(j["status"] == "pure");
  CHECK(j["pieces"].size() == r.pieces.size());
}

TEST_CASE("GL3 paving corner cases") {
  const PavingContext ctx = make_context(example_spec(), {5}, 0);
  PavingReport r = gl3_paving(ctx, {0, 0, 0});
  certify(r, ctx);
  REQUIRE(r.pieces.size() == 1);
  CHECK(r.pieces[0].cells.size() == 1);
  CHECK(r.pieces[0].cells[0].dim == 0);
  CHECK(r.status == "pure");
  const PavingContext eq = make_context(diag({{{1, 1}}, {{1, 2}}, {{1, 3}}}), {5}, 1);
  PavingReport e = gl3_paving(eq, {2, -1, -1});
  certify(e, eq);
  CHECK(e.status == "pure");
  CHECK(e.totals.at(5) == e.brute.at(5));
}

TEST_CASE("certify rejects the unsplit example cell") {
  const PavingContext ctx = make_context(example_spec(), {5, 7}, 2);
  PavingReport r;
  r.d = 3;
  r.order_shift = {0, 0, 0};
  Piece P;
  P.label = "C(0,2,-2)";
  P.group = P.label;
  P.a = {0, 0, 0};
  P.region = {{0, 2, -2}};
  PieceCell c;
  c.w = {0, 2, -2};
  c.dim = 7;
  c.inner = InnerPlan{{0, 0, 0}, {0, 2, -2}, 2, {}, 0, false};
  P.cells.push_back(c);
  r.pieces.push_back(P);
  r.ambient = {{0, 2, -2}};
  r.brute_cells = {make_cell({0, 0, 0}, {0, 2, -2}, Window::low(2))};
  certify(r, ctx);
  CHECK(r.status == "failed");
  REQUIRE_FALSE(r.witnesses.empty());
  CHECK(r.witnesses[0].find("28125") != std::string::npos);
}

TEST_CASE("GL4 corner cells") {
  const auto m0 = gl4_corner_cells(0);
  REQUIRE(m0.size() == 1);
  CHECK(m0[0].first == 0);
  CHECK(m0[0].second.size() == 1);
  CHECK(m0[0].second[0].dim == 0);
  const auto m1 = gl4_corner_cells(1);
  std::vector<int> bs;
  size_t total = 0;
  for (const auto& [b, cells] : m1) {
    bs.push_back(b);
    total += cells.size();
    for (const auto& c : cells) {
      CHECK(c.w[0] == b);
      CHECK(c.dim == cell_dimension({4, 0, 0, 0}, c.w, Window::low(1)));
      for (const auto& s : c.slots) {
        CHECK(s.i != 0);
        if (s.j == 0) CHECK(s.lo == -1 - b);
      }
    }
  }
  CHECK(bs == std::vector<int>{3, 2, 1, 0, -1});
  CHECK(total == window_fixed_points(4, 1, 0).size());
}

TEST_CASE("GL4 fiber kernel formula") {
  const int m = 2;
  const Gl4Class t1{Gl4Type::Type1, {1, 1, 2}};
  // Far above the cut the image has dimension 3(m - n1) - b.
  CHECK(gl4_fiber_kernel_dim({-3, 1, 1, 1}, t1, m) == 3 * 1);
  // Below it the image is 0 and the kernel is 3m - b.
  CHECK(gl4_fiber_kernel_dim({3, -1, -1, -1}, t1, m) == 3 * m - 3);
  const Gl4Class t2{Gl4Type::Type2, {2, 1, 3}};
  for (const auto& w : window_fixed_points(4, m, 0)) {
    int k1 = 0, k2 = std::min(w[1] + m, 2);
    for (int i = 1; i < 4; ++i) k1 += std::min(w[static_cast<size_t>(i)] + m, 1);
    for (int i = 2; i < 4; ++i) k2 += std::min(w[static_cast<size_t>(i)] + m, 1);
    CHECK(gl4_fiber_kernel_dim(w, t1, m) == k1);
    CHECK(gl4_fiber_kernel_dim(w, t2, m) == k2);
  }
}

TEST_CASE("GL4 trivial window") {
  const PavingContext ctx = make_context(diag({{}, {{0, 1}}, {{0, 2}}, {{0, 2}, {1, 1}}}), {5}, 0);
  PavingReport r = gl4_paving(ctx, 0);
  certify(r, ctx);
  CHECK(r.status == "pure");
  CHECK(r.totals.at(5) == 1);
}

TEST_CASE("contexts") {
  CHECK_THROWS_AS(make_context(example_spec(), {6}, 1), InputError);
  CHECK_THROWS_AS(make_context(example_spec(), {5}, -1), InputError);
  CHECK_THROWS_AS(make_context(example_spec(), {}, 1), InputError);
  const PavingContext ctx = make_context(diag({{}, {{0, 1}}, {{0, 2}}, {{0, 2}, {1, 1}}}), {5}, 1);
  const PavingContext sub = sub_context(ctx, {1, 2, 3});
  CHECK(sub.d() == 3);
  CHECK(sub.nu[1][2] == 1);
}
