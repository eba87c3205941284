#pragma once

#include <optional>
#include <string>
#include <vector>

namespace springer {

/** Integer d-vector; a T-fixed lattice eps^w K, a shift a, or a dominant coweight. */
using Coweight = std::vector<int>;

int degree(const Coweight& w);
std::string to_string(const Coweight& w);

/**
 * Truncation window. m_low = m means L is inside eps^{-m} O^d,
 * m_high = m means L contains eps^{m} O^d.
 */
struct Window {
  std::optional<int> m_low;
  std::optional<int> m_high;

  static Window low(int m) { return Window{m, std::nullopt}; }
  static Window high(int m) { return Window{std::nullopt, m}; }
  bool operator==(const Window& o) const = default;
};

/** Exponents lo <= n < hi allowed in entry (i, j) of the unipotent part (0-based). */
struct Slot {
  int i, j, lo, hi;
  int size() const { return hi > lo ? hi - lo : 0; }
};

/** Lower exponent bound of entry (i, j) for I_a: ceiling of a_i - a_j + (i - j)/d. */
int lb(const Coweight& a, int i, int j);

/** An I_a-orbit cell I_a eps^w K, optionally cut down by an m_low window. */
struct CellSpec {
  Coweight a;
  Coweight w;
  std::optional<Window> window;
  std::vector<Slot> slots;  // nonempty slots only, ordered by (j, i)
  int dim = 0;

  int d() const { return static_cast<int>(w.size()); }
  /** Index of the first coordinate of slot s inside the flat coordinate vector. */
  std::vector<int> offsets() const;
};

/**
 * Builds the cell. Only the m_low part of the window enters the slot bounds;
 * an m_high constraint is not a coordinate box and is left to filters.
 */
CellSpec make_cell(const Coweight& a, const Coweight& w, std::optional<Window> window = std::nullopt);
int cell_dimension(const Coweight& a, const Coweight& w, std::optional<Window> window = std::nullopt);

/** All w with w_i >= -m and sum w = deg. */
std::vector<Coweight> window_fixed_points(int d, int m, int deg);

}  // namespace springer
