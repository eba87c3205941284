#include "springer/gamma.hpp"

#include <algorithm>
#include <map>

#include "springer/errors.hpp"

namespace springer {

namespace {

SeriesLiteral literal_from_json(const nlohmann::json& j) {
  SeriesLiteral s;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2) throw InputError("series terms must be [exponent, coefficient] pairs");
    s.emplace_back(t.at(0).get<int>(), t.at(1).get<long long>());
  }
  return s;
}

std::map<int, long long> combine(const SeriesLiteral& s) {
  std::map<int, long long> m;
  for (const auto& [e, c] : s) m[e] += c;
  for (auto it = m.begin(); it != m.end();) it = it->second == 0 ? m.erase(it) : std::next(it);
  return m;
}

std::map<int, long long> difference(const SeriesLiteral& x, const SeriesLiteral& y) {
  SeriesLiteral t = x;
  for (const auto& [e, c] : y) t.emplace_back(e, -c);
  return combine(t);
}

void check_integral(const SeriesLiteral& s) {
  const auto m = combine(s);
  if (!m.empty() && m.begin()->first < 0) throw InputError("gamma is not integral");
}

}  // namespace

GammaSpec gamma_from_json(const nlohmann::json& j) {
  GammaSpec g;
  if (j.contains("diag")) {
    for (const auto& s : j.at("diag")) g.diag.push_back(literal_from_json(s));
    if (g.diag.empty()) throw InputError("gamma needs at least one entry");
  } else if (j.contains("matrix")) {
    for (const auto& row : j.at("matrix")) {
      g.matrix.emplace_back();
      for (const auto& s : row) g.matrix.back().push_back(literal_from_json(s));
    }
    for (const auto& row : g.matrix)
      if (row.size() != g.matrix.size()) throw ShapeError("gamma matrix is not square");
    if (g.matrix.empty()) throw InputError("gamma needs at least one entry");
  } else {
    throw InputError("gamma JSON needs a \"diag\" or a \"matrix\" key");
  }
  return g;
}

nlohmann::json to_json(const GammaSpec& g) {
  auto lit = [](const SeriesLiteral& s) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [e, c] : s) a.push_back({e, c});
    return a;
  };
  nlohmann::json j;
  if (g.is_diagonal()) {
    j["diag"] = nlohmann::json::array();
    for (const auto& s : g.diag) j["diag"].push_back(lit(s));
  } else {
    j["matrix"] = nlohmann::json::array();
    for (const auto& row : g.matrix) {
      nlohmann::json r = nlohmann::json::array();
      for (const auto& s : row) r.push_back(lit(s));
      j["matrix"].push_back(r);
    }
  }
  return j;
}

GammaSpec permuted(const GammaSpec& g, const Perm& perm) {
  GammaSpec out;
  const int d = g.d();
  if (static_cast<int>(perm.size()) != d) throw ShapeError("permutation has wrong length");
  if (g.is_diagonal()) {
    for (int k = 0; k < d; ++k) out.diag.push_back(g.diag[static_cast<size_t>(perm[static_cast<size_t>(k)])]);
  } else {
    out.matrix.assign(static_cast<size_t>(d), std::vector<SeriesLiteral>(static_cast<size_t>(d)));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        out.matrix[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            g.matrix[static_cast<size_t>(perm[static_cast<size_t>(i)])][static_cast<size_t>(perm[static_cast<size_t>(j)])];
  }
  return out;
}

bool GammaMatrix::diagonal() const {
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j && !at(i, j).known_zero()) return false;
  return true;
}

GammaMatrix gamma_matrix(const GammaSpec& g, uint32_t p, int horizon) {
  const PrimeField f(p);
  GammaMatrix m;
  m.d = g.d();
  m.e.assign(static_cast<size_t>(m.d * m.d), TruncSeries(f, horizon));
  for (int i = 0; i < m.d; ++i)
    for (int j = 0; j < m.d; ++j) {
      if (g.is_diagonal()) {
        if (i == j) m.e[static_cast<size_t>(i * m.d + j)] = TruncSeries::from_literal(f, g.diag[static_cast<size_t>(i)], horizon);
      } else {
        m.e[static_cast<size_t>(i * m.d + j)] =
            TruncSeries::from_literal(f, g.matrix[static_cast<size_t>(i)][static_cast<size_t>(j)], horizon);
      }
    }
  return m;
}

int GammaData::nu_max() const {
  int n = 0;
  for (int i = 0; i < d(); ++i)
    for (int j = 0; j < d(); ++j)
      if (i != j) n = std::max(n, nu[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  return n;
}

GammaMatrix GammaData::matrix() const {
  GammaMatrix m;
  m.d = d();
  int h = entries.front().horizon();
  for (const auto& s : entries) h = std::min(h, s.horizon());
  m.e.assign(static_cast<size_t>(m.d * m.d), TruncSeries(entries.front().field(), h));
  for (int i = 0; i < m.d; ++i) m.e[static_cast<size_t>(i * m.d + i)] = entries[static_cast<size_t>(i)];
  return m;
}

int working_horizon(int d, int m, int nu_max) { return d * m + nu_max + 2; }

GammaData root_valuations(const std::vector<TruncSeries>& entries) {
  GammaData g;
  g.entries = entries;
  const int d = g.d();
  if (d == 0) throw InputError("gamma needs at least one entry");
  for (const auto& s : entries)
    if (!s.known_zero() && s.valuation() < 0) throw InputError("gamma is not integral");
  g.nu.assign(static_cast<size_t>(d), std::vector<int>(static_cast<size_t>(d), -1));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      const TruncSeries diff = entries[static_cast<size_t>(i)] - entries[static_cast<size_t>(j)];
      if (diff.known_zero())
        throw InputError("gamma is not regular: entries " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                         " agree below e^" + std::to_string(diff.horizon()));
      g.nu[static_cast<size_t>(i)][static_cast<size_t>(j)] = diff.valuation();
    }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        if (i == j || j == k || i == k) continue;
        const int a = g.nu[static_cast<size_t>(i)][static_cast<size_t>(j)];
        const int b = g.nu[static_cast<size_t>(j)][static_cast<size_t>(k)];
        const int c = g.nu[static_cast<size_t>(i)][static_cast<size_t>(k)];
        if (c < std::min(a, b) || (a != b && c != std::min(a, b)))
          throw SpringerError("root valuations are not ultrametric");
      }
  return g;
}

NuMatrix integer_nu(const GammaSpec& g) {
  if (!g.is_diagonal()) throw ShapeError("root valuations need a diagonal gamma");
  const int d = g.d();
  NuMatrix nu(static_cast<size_t>(d), std::vector<int>(static_cast<size_t>(d), -1));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      const auto diff = difference(g.diag[static_cast<size_t>(i)], g.diag[static_cast<size_t>(j)]);
      if (diff.empty())
        throw InputError("gamma is not regular: entries " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                         " coincide");
      nu[static_cast<size_t>(i)][static_cast<size_t>(j)] = diff.begin()->first;
    }
  return nu;
}

void validate_gamma(const GammaSpec& g, uint32_t p, bool allow_small_prime) {
  const PrimeField f(p);
  const int d = g.d();
  if (allow_small_prime ? p < 3 : p <= static_cast<uint32_t>(d))
    throw InputError("prime " + std::to_string(p) + " must exceed d = " + std::to_string(d));
  if (g.is_diagonal()) {
    for (const auto& s : g.diag) check_integral(s);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        const auto diff = difference(g.diag[static_cast<size_t>(i)], g.diag[static_cast<size_t>(j)]);
        if (diff.empty())
          throw InputError("gamma is not regular: entries " + std::to_string(i + 1) + " and " +
                           std::to_string(j + 1) + " coincide");
        if (f.reduce(diff.begin()->second) == 0)
          throw InputError("valuation of entry " + std::to_string(i + 1) + " minus entry " + std::to_string(j + 1) +
                           " jumps mod " + std::to_string(p));
      }
  } else {
    for (const auto& row : g.matrix)
      for (const auto& s : row) check_integral(s);
  }
}

GammaData gamma_data(const GammaSpec& g, uint32_t p, int horizon, bool allow_small_prime) {
  validate_gamma(g, p, allow_small_prime);
  if (!g.is_diagonal()) throw ShapeError("root data needs a diagonal gamma");
  const PrimeField f(p);
  std::vector<TruncSeries> entries;
  for (const auto& s : g.diag) entries.push_back(TruncSeries::from_literal(f, s, horizon));
  return root_valuations(entries);
}

bool is_minimal_form(const NuMatrix& nu) {
  const int d = static_cast<int>(nu.size());
  for (int i = 0; i < d; ++i) {
    int mn = INT_MAX;
    for (int j = i + 1; j < d; ++j) {
      mn = std::min(mn, nu[static_cast<size_t>(j - 1)][static_cast<size_t>(j)]);
      if (nu[static_cast<size_t>(i)][static_cast<size_t>(j)] != mn) return false;
    }
  }
  return true;
}

NuMatrix permute_nu(const NuMatrix& nu, const Perm& perm) {
  const size_t d = nu.size();
  NuMatrix out(d, std::vector<int>(d, -1));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) out[i][j] = nu[static_cast<size_t>(perm[i])][static_cast<size_t>(perm[j])];
  return out;
}

std::vector<int> radicial_of(const NuMatrix& nu) {
  std::vector<int> r;
  for (size_t k = 0; k + 1 < nu.size(); ++k) r.push_back(nu[k][k + 1]);
  return r;
}

namespace {

using Groups = std::vector<std::vector<int>>;

// Each group is a contracted block; the valuation between two groups does not
// depend on the chosen members.
std::vector<int> contract(const NuMatrix& nu, Groups groups) {
  while (groups.size() > 1) {
    std::sort(groups.begin(), groups.end(),
              [](const auto& x, const auto& y) { return *std::min_element(x.begin(), x.end()) <
                                                        *std::min_element(y.begin(), y.end()); });
    const size_t k = groups.size();
    auto gnu = [&](size_t x, size_t y) {
      return nu[static_cast<size_t>(groups[x][0])][static_cast<size_t>(groups[y][0])];
    };
    int n = -1;
    for (size_t x = 0; x < k; ++x)
      for (size_t y = x + 1; y < k; ++y) n = std::max(n, gnu(x, y));
    // "nu = n" is an equivalence relation at the top valuation.
    std::vector<int> cls(k, -1);
    std::vector<std::vector<size_t>> classes;
    for (size_t x = 0; x < k; ++x) {
      if (cls[x] >= 0) continue;
      cls[x] = static_cast<int>(classes.size());
      classes.push_back({x});
      for (size_t y = x + 1; y < k; ++y)
        if (cls[y] < 0 && gnu(x, y) == n) {
          cls[y] = cls[x];
          classes.back().push_back(y);
        }
    }
    // Lexicographically least index set among blocks of size >= 2.
    const std::vector<size_t>* best = nullptr;
    std::vector<int> best_key;
    for (const auto& c : classes) {
      if (c.size() < 2) continue;
      std::vector<int> key;
      for (size_t x : c) key.insert(key.end(), groups[x].begin(), groups[x].end());
      std::sort(key.begin(), key.end());
      if (!best || key < best_key) {
        best = &c;
        best_key = key;
      }
    }
    std::vector<int> merged;
    std::vector<char> take(k, 0);
    for (size_t x : *best) {
      merged.insert(merged.end(), groups[x].begin(), groups[x].end());
      take[x] = 1;
    }
    Groups next;
    for (size_t x = 0; x < k; ++x)
      if (!take[x]) next.push_back(groups[x]);
    next.push_back(merged);
    groups = std::move(next);
  }
  return groups.front();
}

}  // namespace

MinimalFormCert minimal_form(const NuMatrix& nu) {
  const int d = static_cast<int>(nu.size());
  Groups groups;
  for (int i = 0; i < d; ++i) groups.push_back({i});
  MinimalFormCert cert;
  cert.perm = d ? contract(nu, groups) : Perm{};
  cert.radicial = radicial_of(permute_nu(nu, cert.perm));
  return cert;
}

bool minimal_form_exists_bruteforce(const NuMatrix& nu) {
  for (const auto& g : all_perms(static_cast<int>(nu.size())))
    if (is_minimal_form(permute_nu(nu, g))) return true;
  return false;
}

Gl4Class classify_gl4(const MinimalFormCert& cert) {
  const auto& r = cert.radicial;
  if (r.size() != 3) throw ShapeError("GL4 classification needs a radicial vector of length 3");
  if (r[0] <= r[1] && r[1] <= r[2]) return {Gl4Type::Type1, r};
  if (r[1] <= r[0] && r[0] <= r[2]) return {Gl4Type::Type2, r};
  throw SpringerError("radicial vector fits neither GL4 type");
}

MinimalFormCert paving_form(const NuMatrix& nu) {
  const int d = static_cast<int>(nu.size());
  MinimalFormCert cert = minimal_form(nu);
  auto reversed = [&](const MinimalFormCert& c) {
    MinimalFormCert r;
    r.perm.assign(c.perm.rbegin(), c.perm.rend());
    r.radicial = radicial_of(permute_nu(nu, r.perm));
    return r;
  };
  auto fits = [&](const MinimalFormCert& c) {
    if (d == 3) return c.radicial[0] <= c.radicial[1];
    if (d == 4) {
      try {
        classify_gl4(c);
        return true;
      } catch (const SpringerError&) {
        return false;
      }
    }
    return true;
  };
  if (fits(cert)) return cert;
  if (fits(reversed(cert))) return reversed(cert);
  for (const auto& g : all_perms(d)) {
    MinimalFormCert c{g, radicial_of(permute_nu(nu, g))};
    if (is_minimal_form(permute_nu(nu, g)) && fits(c)) return c;
  }
  throw SpringerError("no minimal form fits the paving types");
}

}  // namespace springer
