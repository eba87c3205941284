#include <random>
#include <set>

#include "doctest.h"
#include "springer/lattice.hpp"
#include "springer/order.hpp"

using namespace springer;

namespace {

constexpr int kH = 40;

SeriesMatrix identity(const PrimeField& f, int d) {
  SeriesMatrix m(f, d, kH);
  for (int i = 0; i < d; ++i) m.at(i, i) = TruncSeries::monomial(f, 0, 1, kH);
  return m;
}

SeriesMatrix diagonal(const PrimeField& f, const Coweight& w) {
  const int d = static_cast<int>(w.size());
  SeriesMatrix m(f, d, kH);
  for (int i = 0; i < d; ++i) m.at(i, i) = TruncSeries::monomial(f, w[static_cast<size_t>(i)], 1, kH);
  return m;
}

// A random element of GL_d(O): unit diagonal times elementary operations with integral entries.
SeriesMatrix random_k(std::mt19937_64& rng, const PrimeField& f, int d) {
  SeriesMatrix k = identity(f, d);
  for (int i = 0; i < d; ++i) k.at(i, i) = TruncSeries::monomial(f, 0, static_cast<long long>(1 + rng() % (f.p() - 1)), kH);
  for (int s = 0; s < 4; ++s) {
    SeriesMatrix e = identity(f, d);
    const int i = static_cast<int>(rng() % static_cast<uint64_t>(d));
    int j = static_cast<int>(rng() % static_cast<uint64_t>(d - 1));
    if (j >= i) ++j;
    e.at(i, j) = TruncSeries::from_literal(
        f, {{0, static_cast<long long>(rng() % f.p())}, {static_cast<int>(1 + rng() % 3), 1}}, kH);
    k = k * e;
  }
  return k;
}

LatticePoint random_point(std::mt19937_64& rng, int d, uint32_t p, int spread = 2) {
  Coweight a(static_cast<size_t>(d)), w(static_cast<size_t>(d));
  for (auto& x : a) x = static_cast<int>(rng() % 3) - 1;
  for (auto& x : w) x = static_cast<int>(rng() % (2 * spread + 1)) - spread;
  LatticePoint L;
  L.cell = make_cell(a, w);
  L.p = p;
  L.coords.resize(static_cast<size_t>(L.cell.dim));
  for (auto& c : L.coords) c = static_cast<uint32_t>(rng() % p);
  return L;
}

uint64_t ipow_u(uint64_t q, int e) {
  uint64_t r = 1;
  while (e-- > 0) r *= q;
  return r;
}

}  // namespace

TEST_CASE("basis matrices of fixed points") {
  const PrimeField f(5);
  const SeriesMatrix B = basis_matrix(base_point(3, 5));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(B.at(i, j).agrees_with(TruncSeries::monomial(f, 0, i == j, kH)));
  const Coweight w{3, -1, 0};
  const SeriesMatrix D = basis_matrix(fixed_point(w, 5));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(D.at(i, j).agrees_with(TruncSeries::monomial(f, i == j ? w[static_cast<size_t>(i)] : 0, i == j, kH)));
}

TEST_CASE("canonical form of diagonal matrices") {
  const PrimeField f(7);
  std::mt19937_64 rng(4);
  for (int k = 0; k < 50; ++k) {
    Coweight w(3), a(3);
    for (auto& x : w) x = static_cast<int>(rng() % 7) - 3;
    for (auto& x : a) x = static_cast<int>(rng() % 7) - 3;
    const LatticePoint L = canonical_form(diagonal(f, w), a);
    CHECK(L.cell.w == w);
    CHECK(std::all_of(L.coords.begin(), L.coords.end(), [](uint32_t c) { return c == 0; }));
  }
}

TEST_CASE("example branch lands in C(1,1,-2) for the shifted Iwahori") {
  const PrimeField f(5);
  for (uint32_t a1 : {0u, 3u})
    for (uint32_t c3 : {0u, 1u}) {
      SeriesMatrix u = identity(f, 3);
      u.at(0, 2) = TruncSeries::monomial(f, 1, a1, kH);
      u.at(1, 0) = TruncSeries::monomial(f, 1, 1, kH);
      u.at(1, 2) = TruncSeries::from_literal(f, {{0, 2}, {3, c3}}, kH);
      const LatticePoint L = canonical_form(u * diagonal(f, {0, 2, -2}), {0, 2, 2});
      CHECK(L.cell.w == Coweight{1, 1, -2});
      CHECK(canonical_form(u * diagonal(f, {0, 2, -2}), {0, 0, 0}).cell.w == Coweight{0, 2, -2});
    }
}

TEST_CASE("canonical form survives the K action") {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 200; ++k) {
    const int d = 2 + static_cast<int>(rng() % 3);
    const uint32_t p = k % 2 ? 3 : 5;
    const LatticePoint L = random_point(rng, d, p);
    const PrimeField f(p);
    const LatticePoint R = canonical_form(basis_matrix(L, kH) * random_k(rng, f, d), L.cell.a);
    CHECK(R.cell.w == L.cell.w);
    CHECK(R.coords == L.coords);
    CHECK(same_lattice(R, L));
  }
}

TEST_CASE("duality") {
  CHECK(same_lattice(dual(base_point(3, 5)), base_point(3, 5)));
  CHECK(same_lattice(dual(fixed_point({2, -3, 1}, 5)), fixed_point({-2, 3, -1}, 5)));
  std::mt19937_64 rng(8);
  for (int k = 0; k < 100; ++k) {
    const LatticePoint L = random_point(rng, 3, 5);
    const LatticePoint V = dual(L);
    CHECK(degree(V.cell.w) == -degree(L.cell.w));
    CHECK(same_lattice(dual(V), L));
  }
}

TEST_CASE("windows and duality") {
  CHECK(in_window(base_point(3, 5), Window::low(0)));
  CHECK(in_window(base_point(3, 5), Window::low(2)));
  CHECK_FALSE(in_window(fixed_point({2, -2, 0}, 5), Window::low(1)));
  std::mt19937_64 rng(10);
  int inside = 0;
  for (int k = 0; k < 500; ++k) {
    const LatticePoint L = random_point(rng, 3, 3);
    const int m = static_cast<int>(rng() % 3);
    const bool lo = in_window(L, Window::low(m));
    inside += lo;
    CHECK(lo == in_window(dual(L), Window::high(m)));
  }
  CHECK(inside > 0);
}

TEST_CASE("window enumeration counts") {
  uint64_t n = 0;
  enumerate_window(2, 0, 2, 0, [&](const LatticePoint&) { ++n; });
  CHECK(n == 1);
  for (uint32_t q : {2u, 3u, 5u}) {
    n = 0;
    enumerate_window(2, 1, q, 0, [&](const LatticePoint&) { ++n; });
    CHECK(n == q * q + q + 1);
  }
  for (uint32_t q : {3u, 5u}) {
    uint64_t want = 0;
    for (const auto& w : window_fixed_points(3, 1, 0)) want += ipow_u(q, cell_dimension({0, 0, 0}, w, Window::low(1)));
    std::set<std::string> keys;
    n = 0;
    enumerate_window(3, 1, q, 0, [&](const LatticePoint& L) {
      keys.insert(lattice_key(L));
      ++n;
      CHECK(in_window(L, Window::low(1)));
    });
    CHECK(n == want);
    CHECK(keys.size() == want);
  }
}

TEST_CASE("canonical forms are unique on whole windows") {
  for (int d : {2, 3})
    for (uint32_t q : {2u, 3u}) {
      std::set<std::string> keys;
      bool round_trip = true;
      enumerate_window(d, 1, q, 0, [&](const LatticePoint& L) {
        keys.insert(lattice_key(L));
        const LatticePoint R = canonical_form(basis_matrix(L), L.cell.a);
        round_trip = round_trip && R.cell.w == L.cell.w && R.coords == L.coords;
      });
      uint64_t want = 0;
      for (const auto& w : window_fixed_points(d, 1, 0)) want += ipow_u(q, cell_dimension(Coweight(static_cast<size_t>(d), 0), w, Window::low(1)));
      CHECK(round_trip);
      CHECK(keys.size() == want);
    }
}

TEST_CASE("JSON forms") {
  std::mt19937_64 rng(12);
  const LatticePoint L = random_point(rng, 3, 5);
  const nlohmann::json j = to_json(L);
  CHECK(j.contains("w"));
  CHECK(j.contains("coords"));
  for (const auto& t : j["coords"]) CHECK(t.size() == 4);
  CHECK(same_lattice(lattice_from_json(j, 5), L));
  const Window w{1, std::nullopt};
  CHECK(window_from_json(to_json(w)) == w);
  CHECK(to_json(w)["m_high"].is_null());
}
