#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "springer/gamma.hpp"
#include "springer/springer.hpp"

namespace springer {

/** A cut value c = num / den, den > 0. Only the open unit interval containing it matters. */
struct Rational {
  long num = 0;
  long den = 1;
};

long floor_of(const Rational& c);
long ceil_of(const Rational& c);
std::string to_string(const Rational& c);

/** Index subset J of {0, ..., d-1} as a bit mask. */
using Mask = unsigned;

/** All w of degree deg(v) whose dominant form lies below v. */
std::vector<Coweight> schubert_fixed_points(const Coweight& v);

/** Fixed points of Sch(v) sharing some partial sum varpi_i with v. */
std::vector<Coweight> r_fixed_points(const Coweight& v);

/**
 * Next Schubert variety down the recursion, nullopt when Sch(v)^T = R(v).
 * v must be dominant with v_2 = ... = v_{d-1}.
 */
std::optional<Coweight> vbar(const Coweight& v);

/** Cut v_2 + offset when v_1 > v_2, else v_{d-1} - offset; nullopt for central v. 0 < offset < 1. */
std::optional<Rational> default_cut(const Coweight& v, const Rational& offset = {1, 2});

/** R(v) split by J = {i : w_i > c}. Throws SpringerError if the split is not a partition. */
std::map<Mask, std::vector<Coweight>> slice_fixed_points(const Coweight& v, const Rational& c);

/** Longest element of the varpi_r slice: v^{(r)} above the cut, v_{(r)} below it. */
std::optional<Coweight> slice_witness(const Coweight& v, const Rational& c, int r);

/** GL3 data with nu_12 = nu_13 = n1 <= nu_23 = n2. */
struct Gl3Params {
  int n1 = 0;
  int n2 = 0;
};

/** Throws InputError("gamma is not in minimal form") if nu does not have that shape. */
Gl3Params gl3_params(const NuMatrix& nu);

/** Shift for the slice of J: 0 for {1} and {2,3}, a for {1,2} and {1,3}, -a for {2} and {3}. */
Coweight slice_shift(const Gl3Params& p, Mask J);

struct SliceCells {
  CellSpec h1;            // block J, window from ceil(c)
  std::vector<Slot> h2;   // block J-bar, rows bounded by floor(c)
  int n_dim = 0;          // ambient dimension of the (N n I) part
};

SliceCells slice_cells(Mask J, const Coweight& a, const Coweight& w, const Rational& c);

/** Sum over i in J, j outside J of min(nu_ij, max(0, w_i - w_j - lo_ij)). */
int kernel_dim(const NuMatrix& nu, Mask J, const Coweight& w, const std::function<int(int, int)>& lo);

/** Points of I_a wK inside X_{>= -m_low} whose standard limit is in `region` (empty: no filter). */
struct InnerPlan {
  Coweight a;
  Coweight w;
  int m_low = 0;
  std::vector<Coweight> region;
  Mask J = 0;                      // Levi block of the retraction, 0 for a point
  bool kernel_from_window = false; // N lower bounds from the window instead of lb_0
};

/** A GL4 cell over a GL3 inner cell: free first column, inner lattice translated by eps^t. */
struct Lift {
  int b = 0;
  int m = 0;
  Coweight t;
};

struct PieceCell {
  Coweight w;
  int dim = -1;  // claimed, -1 when the base was not a q-power
  int kernel = 0;
  int base_dim = 0;
  InnerPlan inner;
  std::optional<Lift> lift;
  std::map<uint32_t, uint64_t> counts;
};

struct Piece {
  std::string label;
  std::string group;  // cells of one group share the retraction kernel dimension
  Coweight a;
  std::vector<PieceCell> cells;
  std::vector<Coweight> region;  // ambient fixed points covered, for the prefix check
};

struct PavingReport {
  int d = 0;
  std::vector<Piece> pieces;
  Coweight order_shift;
  std::vector<Coweight> ambient;
  std::vector<CellSpec> brute_cells;
  std::map<uint32_t, uint64_t> totals;
  std::map<uint32_t, uint64_t> brute;
  std::vector<int> total_dims;
  std::string status;
  std::vector<std::string> witnesses;
  std::vector<std::string> notes;  // advisory, do not affect status
};

/** gamma reduced at each prime, with integer root valuations. */
struct PavingContext {
  GammaSpec spec;
  NuMatrix nu;
  std::vector<uint32_t> primes;
  std::map<uint32_t, GammaMatrix> gamma;
  uint64_t budget = default_budget();
  int jobs = 1;
  Rational cut_offset{1, 2};  // where the GL3 cuts sit inside their unit interval

  int d() const { return spec.d(); }
};

/** Validates gamma at every prime and reduces it far enough for the window X_{>= -m}. */
PavingContext make_context(const GammaSpec& spec, const std::vector<uint32_t>& primes, int m, bool diagonal = true,
                           bool allow_small_prime = false);

/** The block of gamma on the given indices. */
PavingContext sub_context(const PavingContext& ctx, const std::vector<int>& idx);

/** Pieces paving Sch(v) for d = 3 in emitted order. */
std::vector<Piece> gl3_pieces(const PavingContext& ctx, const Coweight& v);

/** Paving of Sch(v) for d = 3, uncertified. */
PavingReport gl3_paving(const PavingContext& ctx, const Coweight& v);

/** I'-cells of X_{>= -m}^{(0)} for GL4 grouped by b = w_1, b descending. */
std::vector<std::pair<int, std::vector<CellSpec>>> gl4_corner_cells(int m);

/** Retraction fiber dimension over the M-part, by the piecewise image formula. */
int gl4_fiber_kernel_dim(const Coweight& w, const Gl4Class& cls, int m);

/** Paving of X_{>= -m}^{(0)} for d = 4, uncertified. nu must already be in paving form. */
PavingReport gl4_paving(const PavingContext& ctx, int m);

/** Corner cells of X_{>= -m}^{(0)} for d = 3 with claimed dims read from counts, uncertified. */
PavingReport gl3_corner_paving_check(const PavingContext& ctx, int m);

/** Points of one piece cell lying in the Springer fiber. */
uint64_t count_piece_cell(const PavingContext& ctx, const PieceCell& pc, uint32_t q);

/** Canonical keys of every point of the piece cell, Springer or not. */
void piece_cell_keys(const PieceCell& pc, uint32_t q, const std::function<void(const std::string&)>& fn);

/** Counts every piece cell, compares with brute force and checks the order. Sets status. */
void certify(PavingReport& report, const PavingContext& ctx);

/** Report JSON; keys and pieces in a fixed order. */
nlohmann::json to_json(const PavingReport& r);

}  // namespace springer
