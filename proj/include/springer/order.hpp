#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "springer/cells.hpp"
#include "springer/lattice.hpp"

namespace springer {

/** Permutation in one-line notation, 0-based: g[k] is the image of k. */
using Perm = std::vector<int>;

int length(const Perm& g);
/** Bruhat order on S_d by the tableau criterion. */
bool bruhat_leq(const Perm& u, const Perm& w);
std::vector<Perm> all_perms(int d);

/** Dominant representative (weakly decreasing). */
Coweight dominant(const Coweight& v);
/** Minimal-length g with (g v)_{g(k)} = v_k, where v = dominant(w). */
Perm min_coset_rep(const Coweight& w);
/** Partial sums of the dominant forms, equal totals. */
bool dominance_leq(const Coweight& x, const Coweight& y);

/**
 * Strict relation v <_{I_a} w: dominant parts ordered by dominance first,
 * inside one orbit the coset representatives in reversed Bruhat order.
 */
bool bruhat_mod_less(const Coweight& v, const Coweight& w, const Coweight& a);

/** w with L in I_a eps^w K / K. */
Coweight limit_point(const LatticePoint& L, const Coweight& a);

struct OrderPiece {
  Coweight a;
  std::vector<Coweight> points;  // in emitted order
};

struct OrderCert {
  bool ok = true;
  std::vector<std::pair<Coweight, Coweight>> pairs;  // comparable pairs, smaller first
  int piece = -1;                                    // first violating piece
  std::optional<std::pair<Coweight, Coweight>> violation;
};

/** Checks each piece's order is a linear extension of <_{I_a} on its points. */
OrderCert closure_order_check(const std::vector<OrderPiece>& pieces);

/**
 * Checks that every prefix union of the piece point sets is down-closed inside
 * `region` under <_{I_a}. Returns the first offending (smaller, larger) pair.
 */
std::optional<std::pair<Coweight, Coweight>> prefix_downset_violation(
    const std::vector<std::vector<Coweight>>& pieces, const std::vector<Coweight>& region, const Coweight& a);

/**
 * Linear extension of `before` over n items; among available items the smallest
 * index goes first, so callers encode their preferred order in the numbering.
 * Returns nullopt on a cycle.
 */
std::optional<std::vector<int>> linear_extension(int n, const std::function<bool(int, int)>& before);

/** Hasse diagram of <_{I_a} on the given points, in DOT. */
std::string order_graph_dot(const std::vector<Coweight>& points, const Coweight& a);

}  // namespace springer
