#pragma once

#include <cstdint>
#include <vector>

#include "springer/cells.hpp"

namespace springer {

/**
 * Finite window eps^elo O^d / eps^ehi O^d, flattened as position i*E + (e - elo).
 * A lattice L with eps^ehi O^d <= L <= eps^elo O^d is a subspace of F_p^{d*E}.
 */
struct DenseFrame {
  int d = 0;
  int elo = 0;
  int ehi = 0;

  int E() const { return ehi - elo; }
  int size() const { return d * E(); }
  int pos(int i, int e) const { return i * E() + (e - elo); }
  int comp(int pos) const { return pos / E(); }
  int expo(int pos) const { return elo + pos % E(); }
};

/** Weight of eps^e e_i (0-based i) for the cocharacter attached to shift a. */
inline long weight(int d, const Coweight& a, int i, int e) {
  return static_cast<long>(d) * e + (d - i) - static_cast<long>(a[i]) * d;
}

/** Frame positions sorted by increasing weight. */
std::vector<int> weight_order(const DenseFrame& fr, const Coweight& a);

/** Entry (i, j) of the unipotent part carries c * eps^n. */
struct Term {
  int i;
  int n;
  uint32_t c;
};

/** Canonical I_a data of a lattice: b_j = eps^{w_j} (e_j + sum over cols[j] of c eps^n e_i). */
struct CanonicalData {
  Coweight w;
  std::vector<std::vector<Term>> cols;
};

/**
 * Reduced echelon form, in the weight order of a, of the lattice generated over O
 * by the given frame vectors. Throws ShapeError if they do not span a lattice
 * that contains eps^ehi O^d.
 */
CanonicalData dense_canonical(const DenseFrame& fr, uint32_t p, const Coweight& a,
                              const std::vector<std::vector<uint32_t>>& gens);

/** Frame vector of b_j for canonical data; terms at or past ehi are dropped. */
std::vector<uint32_t> dense_column(const DenseFrame& fr, const CanonicalData& cd, int j);

/**
 * Membership in a lattice given by its canonical I_a basis, by weight-ordered
 * reduction. Valid only when the lattice contains eps^ehi O^d.
 */
class FastMembership {
 public:
  FastMembership(const DenseFrame& fr, uint32_t p, const Coweight& a);

  const DenseFrame& frame() const { return fr_; }
  void load(const CanonicalData& cd);
  /** Destroys y. */
  bool contains(std::vector<uint32_t>& y) const;

 private:
  DenseFrame fr_;
  uint32_t p_;
  std::vector<int> order_;
  const CanonicalData* cd_ = nullptr;
};

/**
 * Orthogonal complement under the residue pairing <eps^e e_i, eps^f e_i> = [e + f = -1].
 * Input spans L inside frame fr; output spans the dual lattice inside the mirrored frame.
 */
std::vector<std::vector<uint32_t>> dense_dual(const DenseFrame& fr, uint32_t p,
                                              const std::vector<std::vector<uint32_t>>& gens,
                                              DenseFrame& dual_frame);

}  // namespace springer
