#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "springer/gamma.hpp"
#include "springer/lattice.hpp"

namespace springer {

/** gamma L <= L, by reducing gamma b_j against the canonical basis of L. */
bool in_springer(const LatticePoint& L, const GammaMatrix& g);
bool in_springer(const LatticePoint& L, const GammaData& g);

/** Independent route: B^{-1} gamma B integral, with series inversion. */
bool in_springer_conjugation(const LatticePoint& L, const GammaMatrix& g);

/**
 * Repeated membership tests for lattices sharing one frame and one shift.
 * gamma must be known below e^{E} where E is the frame width.
 */
class SpringerTester {
 public:
  SpringerTester(const GammaMatrix& g, const DenseFrame& fr, const Coweight& a, uint32_t p);
  bool test(const CanonicalData& cd);
  const DenseFrame& frame() const { return mem_.frame(); }

 private:
  int d_;
  uint32_t p_;
  FastMembership mem_;
  // gam_[r][i] lists (t, c) with gamma_{r,i} = sum c e^t, t < E.
  std::vector<std::vector<std::vector<std::pair<int, uint32_t>>>> gam_;
  std::vector<uint32_t> y_;
};

/** A frame valid for every point of the cell. */
DenseFrame cell_frame(const CellSpec& cell);

struct CountResult {
  uint32_t q = 0;
  std::string region;
  uint64_t count = 0;
};

using PointFilter = std::function<bool(const LatticePoint&)>;

/** Points of the cell (passing the filter) that lie in the Springer fiber. */
CountResult count_cell(const CellSpec& cell, const GammaMatrix& g, uint32_t q, const PointFilter& filter = nullptr,
                       uint64_t budget = default_budget(), int jobs = 1);

CountResult count_region(const std::vector<CellSpec>& cells, const GammaMatrix& g, uint32_t q,
                         uint64_t budget = default_budget(), int jobs = 1);

/** Standard truncated cells of X_{>= -m} of the given degree. */
std::vector<CellSpec> window_cells(int d, int m, int degree);

struct PowerCheck {
  bool pure = false;
  int dim = -1;
  std::string witness;  // why it failed
};

/** count(q) = q^e at every supplied prime for one integer e. */
PowerCheck power_check(const std::map<uint32_t, uint64_t>& counts);

/** Exact integer power, throws on overflow. */
uint64_t ipow(uint64_t q, int e);

}  // namespace springer
