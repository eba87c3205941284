#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "springer/lattice.hpp"
#include "springer/order.hpp"

using namespace springer;

namespace {

int inversions(const Perm& g) {
  int n = 0;
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = i + 1; j < g.size(); ++j)
      if (g[i] > g[j]) ++n;
  return n;
}

// Bruhat order as the transitive closure of u < u t, t a transposition raising length.
std::set<std::pair<Perm, Perm>> bruhat_closure(int d) {
  const auto perms = all_perms(d);
  std::set<std::pair<Perm, Perm>> rel;
  for (const auto& u : perms) rel.insert({u, u});
  for (const auto& u : perms)
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        Perm v = u;
        std::swap(v[static_cast<size_t>(i)], v[static_cast<size_t>(j)]);
        if (inversions(v) > inversions(u)) rel.insert({u, v});
      }
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [x, y] : std::vector<std::pair<Perm, Perm>>(rel.begin(), rel.end()))
      for (const auto& z : perms)
        if (rel.count({y, z}) && rel.insert({x, z}).second) grew = true;
  }
  return rel;
}

}  // namespace

TEST_CASE("length and Bruhat order against covers") {
  for (int d = 1; d <= 4; ++d) {
    const auto perms = all_perms(d);
    int fact = 1;
    for (int k = 2; k <= d; ++k) fact *= k;
    CHECK(static_cast<int>(perms.size()) == fact);
    const auto rel = bruhat_closure(d);
    for (const auto& u : perms) {
      CHECK(length(u) == inversions(u));
      for (const auto& w : perms) CHECK(bruhat_leq(u, w) == (rel.count({u, w}) > 0));
    }
  }
}

TEST_CASE("dominant forms and coset representatives") {
  CHECK(dominant({-1, 2, 0}) == Coweight{2, 0, -1});
  CHECK(dominance_leq({0, 0, 0}, {1, 0, -1}));
  CHECK(dominance_leq({1, 0, -1}, {2, -1, -1}));
  CHECK_FALSE(dominance_leq({2, -1, -1}, {1, 1, -2}));
  CHECK_FALSE(dominance_leq({1, 1, -2}, {2, -1, -1}));
  std::mt19937_64 rng(1);
  for (int k = 0; k < 200; ++k) {
    Coweight w(4);
    for (auto& x : w) x = static_cast<int>(rng() % 3) - 1;
    const Perm g = min_coset_rep(w);
    const Coweight v = dominant(w);
    for (size_t i = 0; i < w.size(); ++i) CHECK(w[static_cast<size_t>(g[i])] == v[i]);
    // No shorter permutation does the same.
    for (const auto& h : all_perms(4)) {
      bool same = true;
      for (size_t i = 0; i < w.size(); ++i) same = same && w[static_cast<size_t>(h[i])] == v[i];
      if (same) CHECK(length(h) >= length(g));
    }
  }
}

TEST_CASE("modified order, rank 2") {
  const Coweight a{0, 0};
  CHECK(bruhat_mod_less({0, 0}, {1, -1}, a));
  CHECK(bruhat_mod_less({0, 0}, {-1, 1}, a));
  // The big cell sits over (1,-1) and its closure holds the cell over (-1,1).
  CHECK(make_cell(a, {1, -1}).dim == 2);
  CHECK(make_cell(a, {-1, 1}).dim == 1);
  CHECK(bruhat_mod_less({-1, 1}, {1, -1}, a));
  CHECK_FALSE(bruhat_mod_less({1, -1}, {-1, 1}, a));
  CHECK_FALSE(bruhat_mod_less({1, -1}, {1, -1}, a));
}

TEST_CASE("modified order is a strict order and translates") {
  const auto pts = window_fixed_points(3, 2, 0);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 5; ++k) {
    Coweight a(3);
    for (auto& x : a) x = static_cast<int>(rng() % 5) - 2;
    for (const auto& x : pts)
      for (const auto& y : pts) {
        const bool xy = bruhat_mod_less(x, y, a);
        if (xy) CHECK_FALSE(bruhat_mod_less(y, x, a));
        Coweight xa = x, ya = y;
        for (size_t i = 0; i < 3; ++i) {
          xa[i] -= a[i];
          ya[i] -= a[i];
        }
        CHECK(xy == bruhat_mod_less(xa, ya, {0, 0, 0}));
      }
  }
  for (const auto& x : pts)
    for (const auto& y : pts)
      for (const auto& z : pts)
        if (bruhat_mod_less(x, y, {0, 0, 0}) && bruhat_mod_less(y, z, {0, 0, 0}))
          CHECK(bruhat_mod_less(x, z, {0, 0, 0}));
}

TEST_CASE("limit points") {
  for (const auto& w : window_fixed_points(3, 1, 0)) CHECK(limit_point(fixed_point(w, 5), {1, 0, -2}) == w);
  // The example branch b_1 = 1 of C(0,2,-2) moves into C(1,1,-2) for the shift (0,2,2).
  LatticePoint L;
  L.cell = make_cell({0, 0, 0}, {0, 2, -2});
  L.p = 5;
  L.coords.assign(7, 0);
  const auto offs = L.cell.offsets();
  for (size_t s = 0; s < L.cell.slots.size(); ++s) {
    const Slot& sl = L.cell.slots[s];
    if (sl.i == 1 && sl.j == 0) L.coords[static_cast<size_t>(offs[s] + (1 - sl.lo))] = 1;
  }
  CHECK(L.coord(1, 0, 1) == 1);
  CHECK(limit_point(L, {0, 0, 0}) == Coweight{0, 2, -2});
  CHECK(limit_point(L, {0, 2, 2}) == Coweight{1, 1, -2});
}

TEST_CASE("closure order check") {
  CHECK(closure_order_check({OrderPiece{{0, 0, 0}, {{0, 0, 0}}}}).ok);
  auto pts = window_fixed_points(3, 1, 0);
  std::sort(pts.begin(), pts.end());
  const Coweight a{0, 0, 0};
  const auto ext = linear_extension(static_cast<int>(pts.size()), [&](int i, int j) {
    return bruhat_mod_less(pts[static_cast<size_t>(i)], pts[static_cast<size_t>(j)], a);
  });
  REQUIRE(ext);
  std::vector<Coweight> ordered;
  for (int k : *ext) ordered.push_back(pts[static_cast<size_t>(k)]);
  const OrderCert ok = closure_order_check({OrderPiece{a, ordered}});
  CHECK(ok.ok);
  CHECK_FALSE(ok.pairs.empty());
  // Swap the first comparable adjacent-in-list pair.
  bool swapped = false;
  for (size_t i = 0; i < ordered.size() && !swapped; ++i)
    for (size_t j = i + 1; j < ordered.size() && !swapped; ++j)
      if (bruhat_mod_less(ordered[i], ordered[j], a)) {
        std::swap(ordered[i], ordered[j]);
        swapped = true;
      }
  REQUIRE(swapped);
  const OrderCert bad = closure_order_check({OrderPiece{a, {{0, 0, 0}}}, OrderPiece{a, ordered}});
  CHECK_FALSE(bad.ok);
  CHECK(bad.piece == 1);
  CHECK(bad.violation.has_value());
}

TEST_CASE("prefix down-sets") {
  const Coweight a{0, 0};
  const std::vector<Coweight> region{{-1, 1}, {0, 0}, {1, -1}};
  CHECK_FALSE(prefix_downset_violation({{{0, 0}}, {{-1, 1}}, {{1, -1}}}, region, a));
  const auto v = prefix_downset_violation({{{1, -1}}, {{0, 0}}, {{-1, 1}}}, region, a);
  REQUIRE(v);
  CHECK(v->second == Coweight{1, -1});
}

TEST_CASE("linear extensions") {
  const auto e = linear_extension(4, [](int i, int j) { return i == 3 && j == 0; });
  REQUIRE(e);
  CHECK(*e == std::vector<int>{1, 2, 3, 0});
  CHECK_FALSE(linear_extension(2, [](int, int) { return true; }));
}

TEST_CASE("order graph of the rank 2 window is a chain") {
  const std::string dot = order_graph_dot(window_fixed_points(2, 1, 0), {0, 0});
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(std::count(dot.begin(), dot.end(), '>') == 2);
  CHECK(dot.find("n1 -> n0") != std::string::npos);
  CHECK(dot.find("n0 -> n2") != std::string::npos);
}
