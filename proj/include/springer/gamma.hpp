#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "springer/order.hpp"
#include "springer/series.hpp"

namespace springer {

/** gamma with integer coefficients; either diagonal entries or a full matrix. */
struct GammaSpec {
  std::vector<SeriesLiteral> diag;
  std::vector<std::vector<SeriesLiteral>> matrix;  // row-major, used when diag is empty

  int d() const { return static_cast<int>(diag.empty() ? matrix.size() : diag.size()); }
  bool is_diagonal() const { return !diag.empty(); }
};

GammaSpec gamma_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GammaSpec& g);
/** Entry k of the result is entry perm[k] of g. */
GammaSpec permuted(const GammaSpec& g, const Perm& perm);

/** gamma as a matrix of series over F_p. */
struct GammaMatrix {
  int d = 0;
  std::vector<TruncSeries> e;  // row-major

  const TruncSeries& at(int i, int j) const { return e[static_cast<size_t>(i * d + j)]; }
  bool diagonal() const;
};

GammaMatrix gamma_matrix(const GammaSpec& g, uint32_t p, int horizon);

using NuMatrix = std::vector<std::vector<int>>;

/** Diagonal gamma over F_p with its root valuations (nu[i][i] = -1). */
struct GammaData {
  std::vector<TruncSeries> entries;
  NuMatrix nu;

  int d() const { return static_cast<int>(entries.size()); }
  int nu_max() const;
  GammaMatrix matrix() const;
};

/** d*m + nu_max + 2. */
int working_horizon(int d, int m, int nu_max);

/** Throws InputError for non-regular input and PrecisionError when a difference is undecided. */
GammaData root_valuations(const std::vector<TruncSeries>& entries);

/** Root valuations over the integers, before reduction. */
NuMatrix integer_nu(const GammaSpec& g);

/**
 * Rejects (gamma, p) when p <= d, an entry is not integral, two entries coincide,
 * or reduction mod p raises some valuation. allow_small_prime relaxes p > d to p >= 3.
 */
void validate_gamma(const GammaSpec& g, uint32_t p, bool allow_small_prime = false);

/** Validates, reduces mod p at the given horizon and computes nu. */
GammaData gamma_data(const GammaSpec& g, uint32_t p, int horizon, bool allow_small_prime = false);

bool is_minimal_form(const NuMatrix& nu);
inline bool is_minimal_form(const GammaData& g) { return is_minimal_form(g.nu); }

struct MinimalFormCert {
  Perm perm;  // position k holds original index perm[k]
  std::vector<int> radicial;
};

NuMatrix permute_nu(const NuMatrix& nu, const Perm& perm);
std::vector<int> radicial_of(const NuMatrix& nu);

/** Contract a maximal equivalued block at the top valuation, recurse, expand. */
MinimalFormCert minimal_form(const NuMatrix& nu);
inline MinimalFormCert minimal_form(const GammaData& g) { return minimal_form(g.nu); }

/** Does some permutation put nu in minimal form. */
bool minimal_form_exists_bruteforce(const NuMatrix& nu);

enum class Gl4Type { Type1, Type2 };

/** Type1: radicial (n1, n2, n3), n1 <= n2 <= n3. Type2: radicial (n1, n, n2), n <= n1 <= n2. */
struct Gl4Class {
  Gl4Type type;
  std::vector<int> r;
};

Gl4Class classify_gl4(const MinimalFormCert& cert);

/**
 * Minimal form oriented for the pavings: for d = 3 the deeper pair sits last,
 * for d = 4 the radicial vector fits one of the two types.
 */
MinimalFormCert paving_form(const NuMatrix& nu);

}  // namespace springer
