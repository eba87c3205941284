#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "springer/cells.hpp"
#include "springer/dense.hpp"
#include "springer/series.hpp"

namespace springer {

/** A lattice u eps^w O^d, with u read off the coordinates of an I_a cell. */
struct LatticePoint {
  CellSpec cell;
  uint32_t p = 2;
  std::vector<uint32_t> coords;  // flat, slot by slot, exponent ascending

  int d() const { return cell.d(); }
  uint32_t coord(int i, int j, int n) const;
  CanonicalData canonical() const;
};

/** Frame eps^elo O^d >= L >= eps^ehi O^d read from canonical data. */
DenseFrame frame_of(const CanonicalData& cd);

/** Canonical data back to cell coordinates. Throws ShapeError if a term leaves its slot. */
LatticePoint point_from_canonical(const CanonicalData& cd, const Coweight& a, uint32_t p);

LatticePoint base_point(int d, uint32_t p);
LatticePoint fixed_point(const Coweight& w, uint32_t p);

/** Columns b_j = eps^{w_j}(e_j + sum_i u_ij e_i). Default horizon is comfortably past the frame. */
SeriesMatrix basis_matrix(const LatticePoint& L, std::optional<int> horizon = std::nullopt);

/** Unique (w, coords) with B O^d in I_a eps^w K / K. */
LatticePoint canonical_form(const SeriesMatrix& B, const Coweight& a);

/** Same lattice, coordinates for another shift. */
LatticePoint recanonicalize(const LatticePoint& L, const Coweight& a);

/** L^vee = {y : Tr(x, y) in O for x in L}, in coordinates for shift a (default 0). */
LatticePoint dual(const LatticePoint& L, std::optional<Coweight> a = std::nullopt);

bool in_window(const LatticePoint& L, const Window& win);

/** Canonical data equality: same lattice iff same w and same terms. */
bool same_lattice(const LatticePoint& x, const LatticePoint& y);
std::string lattice_key(const LatticePoint& L);

/** Odometer over [0, q)^n; returns false after the last vector. */
bool next_coords(std::vector<uint32_t>& c, uint32_t q);

/** q^n with a cap; returns cap + 1 on overflow. */
uint64_t power_capped(uint64_t q, int n, uint64_t cap);

/** Point-test budget, SPRINGER_BUDGET overrides the default of 1e9. */
uint64_t default_budget();

/** Every F_q-point of the cell, in odometer order. */
void for_each_point(const CellSpec& cell, uint32_t q, const std::function<void(const LatticePoint&)>& fn);

/**
 * Every F_q-point of X_{>= -m} of the given degree, once each, through the
 * standard truncated cells.
 */
void enumerate_window(int d, int m, uint32_t q, int degree,
                      const std::function<void(const LatticePoint&)>& fn,
                      uint64_t budget = default_budget());

nlohmann::json to_json(const LatticePoint& L);
LatticePoint lattice_from_json(const nlohmann::json& j, uint32_t p);
nlohmann::json to_json(const Window& w);
Window window_from_json(const nlohmann::json& j);

}  // namespace springer
