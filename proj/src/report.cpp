#include <algorithm>

#include "springer/errors.hpp"
#include "springer/order.hpp"
#include "springer/paving.hpp"

namespace springer {

namespace {

CellSpec inner_cell(const InnerPlan& pl) { return make_cell(pl.a, pl.w, Window::low(pl.m_low)); }

bool in_region(const InnerPlan& pl, const LatticePoint& L) {
  if (pl.region.empty()) return true;
  const Coweight zero(static_cast<size_t>(L.d()), 0);
  return std::binary_search(pl.region.begin(), pl.region.end(), limit_point(L, zero));
}

GammaMatrix block_gamma(const GammaMatrix& g) {
  GammaMatrix s;
  s.d = g.d - 1;
  for (int i = 1; i < g.d; ++i)
    for (int j = 1; j < g.d; ++j) s.e.push_back(g.at(i, j));
  return s;
}

struct LiftedCell {
  CellSpec inner;
  CellSpec outer;
  int nx = 0;  // coordinates of the first column, leading the flat vector
};

LiftedCell lifted_cell(const PieceCell& pc) {
  const Lift& lf = *pc.lift;
  LiftedCell lc;
  lc.inner = inner_cell(pc.inner);
  Coweight a4{0};
  for (int i = 0; i < 3; ++i) a4.push_back(pc.inner.a[static_cast<size_t>(i)] + lf.t[static_cast<size_t>(i)]);
  a4[0] = 4 * lf.m + *std::max_element(a4.begin() + 1, a4.end());
  lc.outer = make_cell(a4, pc.w, Window::low(lf.m));
  for (const auto& s : lc.outer.slots)
    if (s.j == 0) lc.nx += s.size();
  return lc;
}

/**
 * Every point over an inner point y' accepted by keep_y: y = eps^t y' in the
 * M-block, the first column running over its slots.
 */
void for_each_lifted(const PieceCell& pc, uint32_t q, const std::function<bool(const CanonicalData&)>& keep_y,
                     const std::function<void(const CanonicalData&, const CellSpec&)>& fn) {
  const LiftedCell lc = lifted_cell(pc);
  const Coweight& t = pc.lift->t;
  struct Loc {
    int i, n;
  };
  std::vector<Loc> xloc;
  for (const auto& s : lc.outer.slots)
    if (s.j == 0)
      for (int n = s.lo; n < s.hi; ++n) xloc.push_back({s.i, n});
  auto fits = [&](int i, int j, int n) {
    for (const auto& s : lc.outer.slots)
      if (s.i == i && s.j == j) return s.lo <= n && n < s.hi;
    return false;
  };
  CanonicalData cd;
  cd.w = lc.outer.w;
  for_each_point(lc.inner, q, [&](const LatticePoint& yp) {
    if (!in_region(pc.inner, yp)) return;
    const CanonicalData c3 = yp.canonical();
    CanonicalData cy;
    cy.w = c3.w;
    cy.cols.assign(3, {});
    for (int j = 0; j < 3; ++j) {
      cy.w[static_cast<size_t>(j)] += t[static_cast<size_t>(j)];
      for (const auto& tm : c3.cols[static_cast<size_t>(j)])
        cy.cols[static_cast<size_t>(j)].push_back(
            Term{tm.i, tm.n + t[static_cast<size_t>(tm.i)] - t[static_cast<size_t>(j)], tm.c});
    }
    if (!keep_y(cy)) return;
    cd.cols.assign(4, {});
    for (int j = 0; j < 3; ++j)
      for (const auto& tm : cy.cols[static_cast<size_t>(j)]) {
        if (!fits(tm.i + 1, j + 1, tm.n)) throw SpringerError("lifted point leaves the truncation");
        cd.cols[static_cast<size_t>(j + 1)].push_back(Term{tm.i + 1, tm.n, tm.c});
      }
    std::vector<uint32_t> x(xloc.size(), 0);
    do {
      cd.cols[0].clear();
      for (size_t k = 0; k < x.size(); ++k)
        if (x[k]) cd.cols[0].push_back(Term{xloc[k].i, xloc[k].n, x[k]});
      fn(cd, lc.outer);
    } while (next_coords(x, q));
  });
}

}  // namespace

uint64_t count_piece_cell(const PavingContext& ctx, const PieceCell& pc, uint32_t q) {
  const GammaMatrix& g = ctx.gamma.at(q);
  if (!pc.lift) {
    const InnerPlan& pl = pc.inner;
    PointFilter f = nullptr;
    if (!pl.region.empty()) f = [&pl](const LatticePoint& L) { return in_region(pl, L); };
    return count_cell(inner_cell(pl), g, q, f, ctx.budget, ctx.jobs).count;
  }
  const LiftedCell lc = lifted_cell(pc);
  if (power_capped(q, lc.outer.dim, ctx.budget) > ctx.budget)
    throw BudgetError("piece cell exceeds the point budget at q = " + std::to_string(q));
  const GammaMatrix gm = block_gamma(g);
  SpringerTester tester(g, cell_frame(lc.outer), lc.outer.a, q);
  uint64_t count = 0;
  // The retraction to M commutes with gamma, so y must lie in the M-fiber.
  auto keep_y = [&](const CanonicalData& cy) {
    Coweight ay(3);
    for (int i = 0; i < 3; ++i) ay[static_cast<size_t>(i)] = lc.outer.a[static_cast<size_t>(i + 1)];
    SpringerTester ty(gm, frame_of(cy), ay, q);
    return ty.test(cy);
  };
  for_each_lifted(pc, q, keep_y, [&](const CanonicalData& cd, const CellSpec&) {
    if (tester.test(cd)) ++count;
  });
  return count;
}

void piece_cell_keys(const PieceCell& pc, uint32_t q, const std::function<void(const std::string&)>& fn) {
  if (!pc.lift) {
    for_each_point(inner_cell(pc.inner), q, [&](const LatticePoint& L) {
      if (in_region(pc.inner, L)) fn(lattice_key(L));
    });
    return;
  }
  for_each_lifted(pc, q, [](const CanonicalData&) { return true; },
                  [&](const CanonicalData& cd, const CellSpec& outer) {
                    fn(lattice_key(point_from_canonical(cd, outer.a, q)));
                  });
}

void certify(PavingReport& r, const PavingContext& ctx) {
  r.witnesses.clear();
  r.notes.clear();
  r.totals.clear();
  r.brute.clear();
  r.total_dims.clear();
  for (const auto& P : r.pieces)
    for (const auto& c : P.cells) r.total_dims.push_back(c.dim);
  std::sort(r.total_dims.begin(), r.total_dims.end());

  for (uint32_t q : ctx.primes) {
    uint64_t total = 0;
    for (auto& P : r.pieces)
      for (auto& c : P.cells) {
        const uint64_t n = count_piece_cell(ctx, c, q);
        c.counts[q] = n;
        const std::string where = P.label + " cell " + to_string(c.w);
        if (c.dim < 0) {
          r.witnesses.push_back(where + ": base count is not a power of q");
          total += n;
        } else if (n != ipow(q, c.dim)) {
          r.witnesses.push_back(where + ": " + std::to_string(n) + " points at q = " + std::to_string(q) +
                                ", claimed q^" + std::to_string(c.dim));
          total += ipow(q, c.dim);
        } else {
          total += n;
        }
      }
    r.totals[q] = total;
    r.brute[q] = count_region(r.brute_cells, ctx.gamma.at(q), q, ctx.budget, ctx.jobs).count;
    if (r.brute[q] != total)
      r.witnesses.push_back("q = " + std::to_string(q) + ": pieces give " + std::to_string(total) +
                            ", brute force gives " + std::to_string(r.brute[q]));
  }

  std::vector<OrderPiece> ops;
  std::vector<std::vector<Coweight>> regions;
  for (const auto& P : r.pieces) {
    OrderPiece op{P.a, {}};
    for (const auto& c : P.cells) op.points.push_back(c.w);
    ops.push_back(std::move(op));
    regions.push_back(P.region);
  }
  const OrderCert oc = closure_order_check(ops);
  if (!oc.ok && oc.violation)
    r.witnesses.push_back("order inside " + r.pieces[static_cast<size_t>(oc.piece)].label + ": " +
                          to_string(oc.violation->first) + " emitted after " + to_string(oc.violation->second));
  // The order is only a necessary condition for closure, so a prefix that is
  // not a down-set is reported without failing the paving.
  if (const auto v = prefix_downset_violation(regions, r.ambient, r.order_shift))
    r.notes.push_back("prefix not closed: " + to_string(v->first) + " lies below " + to_string(v->second));

  std::map<std::string, int> kernel;
  for (const auto& P : r.pieces)
    for (const auto& c : P.cells) {
      if (!c.lift) continue;
      const auto [it, fresh] = kernel.emplace(P.group, c.kernel);
      if (!fresh && it->second != c.kernel)
        r.witnesses.push_back("fiber kernel not constant on " + P.group);
    }
  r.status = r.witnesses.empty() ? "pure" : "failed";
}

nlohmann::json to_json(const PavingReport& r) {
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& P : r.pieces) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : P.cells) {
      nlohmann::json counts = nlohmann::json::object();
      for (const auto& [q, n] : c.counts) counts[std::to_string(q)] = n;
      cells.push_back({{"w", c.w}, {"dim", c.dim}, {"counts", counts}});
    }
    pieces.push_back({{"label", P.label}, {"a", P.a}, {"cells", cells}});
  }
  nlohmann::json totals = nlohmann::json::object(), brute = nlohmann::json::object();
  for (const auto& [q, n] : r.totals) totals[std::to_string(q)] = n;
  for (const auto& [q, n] : r.brute) brute[std::to_string(q)] = n;
  nlohmann::json j;
  j["pieces"] = pieces;
  j["total_dims"] = r.total_dims;
  j["totals"] = totals;
  j["brute_force"] = brute;
  j["status"] = r.status.empty() ? "uncertified" : r.status;
  if (!r.witnesses.empty()) j["witnesses"] = r.witnesses;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

}  // namespace springer
