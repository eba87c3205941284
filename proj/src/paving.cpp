#include "springer/paving.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "springer/errors.hpp"
#include "springer/order.hpp"

namespace springer {

long floor_of(const Rational& c) {
  if (c.den <= 0) throw InputError("cut denominator must be positive");
  long q = c.num / c.den;
  if (c.num % c.den != 0 && c.num < 0) --q;
  return q;
}

long ceil_of(const Rational& c) { return -floor_of(Rational{-c.num, c.den}); }

std::string to_string(const Rational& c) {
  return c.den == 1 ? std::to_string(c.num) : std::to_string(c.num) + "/" + std::to_string(c.den);
}

namespace {

bool is_central(const Coweight& v) { return std::all_of(v.begin(), v.end(), [&](int x) { return x == v[0]; }); }

int partial_sum(const Coweight& v, int r) { return std::accumulate(v.begin(), v.begin() + r, 0); }

int popcount(Mask J) { return __builtin_popcount(J); }

bool in(Mask J, int i) { return (J >> i) & 1u; }

std::string mask_label(Mask J, int d) {
  std::string s = "{";
  for (int i = 0; i < d; ++i)
    if (in(J, i)) s += (s.size() > 1 ? "," : "") + std::to_string(i + 1);
  return s + "}";
}

void check_slice_shape(const Coweight& v) {
  const int d = static_cast<int>(v.size());
  if (d < 2) throw ShapeError("need d >= 2");
  if (dominant(v) != v) throw ShapeError("v must be dominant");
  for (int i = 2; i < d - 1; ++i)
    if (v[static_cast<size_t>(i)] != v[1]) throw ShapeError("v must have v_2 = ... = v_{d-1}");
}

// Which side of the cut: 1 above v_2, 2 below v_{d-1}, 0 not admissible.
int cut_case(const Coweight& v, const Rational& c) {
  const int d = static_cast<int>(v.size());
  const long lo = floor_of(c), hi = ceil_of(c);
  if (lo == hi) return 0;
  if (v[0] > v[1] && lo == v[1]) return 1;
  if (v[static_cast<size_t>(d - 2)] > v[static_cast<size_t>(d - 1)] && hi == v[static_cast<size_t>(d - 2)]) return 2;
  return 0;
}

}  // namespace

std::vector<Coweight> schubert_fixed_points(const Coweight& v) {
  const int d = static_cast<int>(v.size());
  const Coweight dv = dominant(v);
  const int lo = dv.back(), hi = dv.front(), deg = degree(v);
  std::vector<Coweight> out;
  Coweight w(static_cast<size_t>(d), lo);
  // Odometer over [lo, hi]^d, keeping the right degree.
  while (true) {
    if (degree(w) == deg && dominance_leq(w, dv)) out.push_back(w);
    int k = 0;
    while (k < d && w[static_cast<size_t>(k)] == hi) w[static_cast<size_t>(k++)] = lo;
    if (k == d) break;
    ++w[static_cast<size_t>(k)];
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Coweight> r_fixed_points(const Coweight& v) {
  const int d = static_cast<int>(v.size());
  const Coweight dv = dominant(v);
  std::vector<Coweight> out;
  for (const auto& w : schubert_fixed_points(v)) {
    const Coweight dw = dominant(w);
    for (int i = 1; i < d; ++i)
      if (partial_sum(dw, i) == partial_sum(dv, i)) {
        out.push_back(w);
        break;
      }
  }
  return out;
}

std::optional<Coweight> vbar(const Coweight& v) {
  check_slice_shape(v);
  const auto all = schubert_fixed_points(v);
  const auto r = r_fixed_points(v);
  if (all == r) return std::nullopt;
  const int d = static_cast<int>(v.size());
  Coweight out = v;
  const bool top = v[0] > v[1], bottom = v[static_cast<size_t>(d - 2)] > v[static_cast<size_t>(d - 1)];
  if (top && v[1] == v.back()) {
    out[0] -= d - 1;
    for (int i = 1; i < d; ++i) ++out[static_cast<size_t>(i)];
  } else if (bottom && v[0] == v[static_cast<size_t>(d - 2)]) {
    for (int i = 0; i < d - 1; ++i) --out[static_cast<size_t>(i)];
    out.back() += d - 1;
  } else {
    --out[0];
    ++out.back();
  }
  // Sch(v)^T = Sch(vbar)^T u R(v).
  std::vector<Coweight> uni = schubert_fixed_points(out);
  uni.insert(uni.end(), r.begin(), r.end());
  std::sort(uni.begin(), uni.end());
  uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
  if (uni != all) throw SpringerError("Sch(v) is not Sch(vbar) u R(v) for v = " + to_string(v));
  return out;
}

std::optional<Rational> default_cut(const Coweight& v, const Rational& offset) {
  check_slice_shape(v);
  if (offset.den <= 0 || offset.num <= 0 || offset.num >= offset.den)
    throw InputError("cut offset must lie strictly between 0 and 1");
  const int d = static_cast<int>(v.size());
  if (v[0] > v[1]) return Rational{offset.den * v[1] + offset.num, offset.den};
  const long u = v[static_cast<size_t>(d - 2)];
  if (u > v.back()) return Rational{offset.den * u - offset.num, offset.den};
  return std::nullopt;
}

std::map<Mask, std::vector<Coweight>> slice_fixed_points(const Coweight& v, const Rational& c) {
  check_slice_shape(v);
  const int d = static_cast<int>(v.size());
  std::map<Mask, std::vector<Coweight>> out;
  for (Mask J = 1; J + 1 < (1u << d); ++J) out[J] = {};
  if (is_central(v)) return out;
  if (cut_case(v, c) == 0) throw ShapeError("cut " + to_string(c) + " is outside the admissible interval");
  const Coweight dv = dominant(v);
  for (const auto& w : r_fixed_points(v)) {
    Mask J = 0;
    int s = 0;
    for (int i = 0; i < d; ++i)
      if (w[static_cast<size_t>(i)] > floor_of(c)) {
        J |= 1u << i;
        s += w[static_cast<size_t>(i)];
      }
    if (J == 0 || J + 1 == (1u << d) || s != partial_sum(dv, popcount(J)))
      throw SpringerError("R(v) is not split by the cut at " + to_string(w));
    out[J].push_back(w);
  }
  return out;
}

std::optional<Coweight> slice_witness(const Coweight& v, const Rational& c, int r) {
  check_slice_shape(v);
  const int d = static_cast<int>(v.size());
  if (r < 1 || r >= d) throw ShapeError("r out of range");
  Coweight out = v;
  switch (cut_case(v, c)) {
    case 1:
      if (v[0] - v[1] < r) return std::nullopt;
      out[0] -= r - 1;
      for (int i = 1; i < r; ++i) ++out[static_cast<size_t>(i)];
      return out;
    case 2:
      if (v[static_cast<size_t>(d - 2)] - v.back() < d - r) return std::nullopt;
      for (int i = r; i < d - 1; ++i) --out[static_cast<size_t>(i)];
      out.back() += d - r - 1;
      return out;
    default:
      throw ShapeError("cut " + to_string(c) + " is outside the admissible interval");
  }
}

Gl3Params gl3_params(const NuMatrix& nu) {
  if (nu.size() != 3) throw ShapeError("expected a 3x3 root valuation matrix");
  const int n1 = nu[0][1], n2 = nu[1][2];
  if (nu[0][2] != n1 || n1 > n2) throw InputError("gamma is not in minimal form");
  return {n1, n2};
}

Coweight slice_shift(const Gl3Params& p, Mask J) {
  const Coweight a{p.n1, p.n2, p.n2};
  const Coweight zero{0, 0, 0}, neg{-p.n1, -p.n2, -p.n2};
  if (J == 0 || J >= 7u) throw ShapeError("J must be a proper nonempty subset");
  if (popcount(J) == 1) return in(J, 0) ? zero : neg;
  return in(J, 0) ? a : zero;
}

SliceCells slice_cells(Mask J, const Coweight& a, const Coweight& w, const Rational& c) {
  const int d = static_cast<int>(w.size());
  if (a.size() != w.size()) throw ShapeError("a and w differ in size");
  if (J == 0 || J + 1 >= (1u << d)) throw ShapeError("J must be a proper nonempty subset");
  std::vector<int> in_j, out_j;
  for (int i = 0; i < d; ++i) (in(J, i) ? in_j : out_j).push_back(i);
  auto restrict = [](const Coweight& x, const std::vector<int>& idx) {
    Coweight r;
    for (int i : idx) r.push_back(x[static_cast<size_t>(i)]);
    return r;
  };
  SliceCells sc;
  sc.h1 = make_cell(restrict(a, in_j), restrict(w, in_j), Window::low(static_cast<int>(-ceil_of(c))));
  const Coweight a2 = restrict(a, out_j), w2 = restrict(w, out_j);
  const long fl = floor_of(c);
  for (size_t j = 0; j < w2.size(); ++j)
    for (size_t i = 0; i < w2.size(); ++i) {
      if (i == j) continue;
      const int lo = std::max(lb(a2, static_cast<int>(i), static_cast<int>(j)), static_cast<int>(-fl) + w2[i]);
      const int hi = w2[i] - w2[j];
      if (hi > lo) sc.h2.push_back(Slot{static_cast<int>(i), static_cast<int>(j), lo, hi});
    }
  const Coweight zero(static_cast<size_t>(d), 0);
  for (int i : in_j)
    for (int j : out_j)
      sc.n_dim += std::max(0, w[static_cast<size_t>(i)] - w[static_cast<size_t>(j)] - lb(zero, i, j));
  return sc;
}

int kernel_dim(const NuMatrix& nu, Mask J, const Coweight& w, const std::function<int(int, int)>& lo) {
  const int d = static_cast<int>(w.size());
  int k = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (in(J, i) && !in(J, j))
        k += std::min(nu[static_cast<size_t>(i)][static_cast<size_t>(j)],
                      std::max(0, w[static_cast<size_t>(i)] - w[static_cast<size_t>(j)] - lo(i, j)));
  return k;
}


PavingContext make_context(const GammaSpec& spec, const std::vector<uint32_t>& primes, int m, bool diagonal,
                           bool allow_small_prime) {
  if (primes.empty()) throw InputError("need at least one prime");
  if (m < 0) throw InputError("m must be nonnegative");
  if (diagonal && !spec.is_diagonal()) throw ShapeError("expected a diagonal gamma");
  PavingContext ctx;
  ctx.spec = spec;
  ctx.primes = primes;
  int nu_max = 0;
  if (spec.is_diagonal()) {
    ctx.nu = integer_nu(spec);
    for (const auto& row : ctx.nu)
      for (int x : row) nu_max = std::max(nu_max, x);
  }
  const int h = working_horizon(spec.d(), m, nu_max) + 4;
  for (uint32_t p : primes) {
    if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
    validate_gamma(spec, p, allow_small_prime);
    if (spec.is_diagonal()) gamma_data(spec, p, h, allow_small_prime);  // rejects valuation jumps mod p
    ctx.gamma.emplace(p, gamma_matrix(spec, p, h));
  }
  return ctx;
}

PavingContext sub_context(const PavingContext& ctx, const std::vector<int>& idx) {
  PavingContext out;
  out.primes = ctx.primes;
  out.budget = ctx.budget;
  out.jobs = ctx.jobs;
  out.cut_offset = ctx.cut_offset;
  for (int i : idx) {
    if (!ctx.spec.is_diagonal()) throw ShapeError("blocks are taken of diagonal gamma only");
    out.spec.diag.push_back(ctx.spec.diag[static_cast<size_t>(i)]);
  }
  for (int i : idx) {
    out.nu.emplace_back();
    for (int j : idx) out.nu.back().push_back(ctx.nu[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  }
  for (const auto& [p, g] : ctx.gamma) {
    GammaMatrix s;
    s.d = static_cast<int>(idx.size());
    for (int i : idx)
      for (int j : idx) s.e.push_back(g.at(i, j));
    out.gamma.emplace(p, s);
  }
  return out;
}

namespace {

CellSpec inner_cell(const InnerPlan& pl) { return make_cell(pl.a, pl.w, Window::low(pl.m_low)); }

PointFilter region_filter(const std::vector<Coweight>& region) {
  if (region.empty()) return nullptr;
  return [&region](const LatticePoint& L) {
    const Coweight zero(static_cast<size_t>(L.d()), 0);
    return std::binary_search(region.begin(), region.end(), limit_point(L, zero));
  };
}

// Block-diagonal part of the cell for the Levi of J; the whole cell when J is empty.
CellSpec block_cell(const CellSpec& c, Mask J) {
  if (J == 0) return c;
  CellSpec b = c;
  b.slots.clear();
  b.dim = 0;
  for (const auto& s : c.slots)
    if (in(J, s.i) == in(J, s.j)) {
      b.slots.push_back(s);
      b.dim += s.size();
    }
  return b;
}

struct Claim {
  int kernel = 0;
  int base = -1;
};

Claim claim_for(const PavingContext& ctx, const InnerPlan& pl) {
  Claim cl;
  if (pl.J != 0) {
    const int d = static_cast<int>(pl.w.size());
    const Coweight zero(static_cast<size_t>(d), 0);
    cl.kernel = kernel_dim(ctx.nu, pl.J, pl.w, [&](int i, int j) {
      return pl.kernel_from_window ? std::max(lb(pl.a, i, j), -pl.m_low - pl.w[static_cast<size_t>(j)])
                                   : lb(zero, i, j);
    });
  }
  const CellSpec b = block_cell(inner_cell(pl), pl.J);
  std::map<uint32_t, uint64_t> counts;
  for (uint32_t q : ctx.primes)
    counts[q] = count_cell(b, ctx.gamma.at(q), q, region_filter(pl.region), ctx.budget, ctx.jobs).count;
  const PowerCheck pc = power_check(counts);
  if (pc.pure) cl.base = pc.dim;
  return cl;
}

PieceCell make_piece_cell(const PavingContext& ctx, const InnerPlan& pl) {
  PieceCell c;
  c.w = pl.w;
  c.inner = pl;
  const Claim cl = claim_for(ctx, pl);
  c.kernel = cl.kernel;
  c.base_dim = cl.base;
  c.dim = cl.base < 0 ? -1 : cl.kernel + cl.base;
  return c;
}

// Points in a linear extension of <_{I_a}, lexicographic where free.
std::vector<Coweight> order_points(std::vector<Coweight> pts, const Coweight& a) {
  std::sort(pts.begin(), pts.end());
  const auto ext = linear_extension(static_cast<int>(pts.size()), [&](int i, int j) {
    return bruhat_mod_less(pts[static_cast<size_t>(i)], pts[static_cast<size_t>(j)], a);
  });
  if (!ext) throw SpringerError("the order on fixed points has a cycle");
  std::vector<Coweight> out;
  for (int k : *ext) out.push_back(pts[static_cast<size_t>(k)]);
  return out;
}

// Keeps the given order where the closure relation allows it. When the
// relation between regions has a cycle the given order stands; certify
// reports prefixes that are not down-sets.
std::vector<Piece> order_pieces(std::vector<Piece> pieces, const Coweight& shift) {
  const auto ext = linear_extension(static_cast<int>(pieces.size()), [&](int i, int j) {
    for (const auto& x : pieces[static_cast<size_t>(i)].region)
      for (const auto& y : pieces[static_cast<size_t>(j)].region)
        if (bruhat_mod_less(x, y, shift)) return true;
    return false;
  });
  if (!ext) return pieces;
  std::vector<Piece> out;
  for (int k : *ext) out.push_back(std::move(pieces[static_cast<size_t>(k)]));
  return out;
}

Piece slice_piece(const PavingContext& ctx, const Gl3Params& prm, Mask J, std::vector<Coweight> region, int m_low,
                  const std::string& label) {
  Piece P;
  P.label = label;
  P.group = label;
  P.a = slice_shift(prm, J);
  std::sort(region.begin(), region.end());
  P.region = region;
  for (const auto& w : order_points(region, P.a))
    P.cells.push_back(make_piece_cell(ctx, InnerPlan{P.a, w, m_low, region, J, false}));
  return P;
}

// Grassmannian order on J of fixed size: larger permutations first.
bool bruhat_later(Mask x, Mask y) {
  int sx = 0, sy = 0;
  for (int i = 0; i < 3; ++i) {
    if (in(x, i)) sx += i;
    if (in(y, i)) sy += i;
  }
  return sx != sy ? sx > sy : x > y;
}

void gl3_raw(const PavingContext& ctx, const Gl3Params& prm, const Coweight& v, int m_low, std::vector<Piece>& out) {
  if (is_central(v)) {
    Piece P;
    P.label = "Residual(" + to_string(v) + ")";
    P.group = P.label;
    P.a = Coweight(3, 0);
    P.region = {v};
    P.cells.push_back(make_piece_cell(ctx, InnerPlan{P.a, v, m_low, {v}, 0, false}));
    out.push_back(std::move(P));
    return;
  }
  if (const auto vb = vbar(v)) gl3_raw(ctx, prm, *vb, m_low, out);
  const Rational c = *default_cut(v, ctx.cut_offset);
  const auto slices = slice_fixed_points(v, c);
  const bool case1 = v[0] > v[1];
  for (int k = 0; k < 2; ++k) {
    const int r = case1 ? 2 - k : 1 + k;
    std::vector<Mask> js;
    for (const auto& [J, pts] : slices)
      if (popcount(J) == r && !pts.empty()) js.push_back(J);
    std::sort(js.begin(), js.end(), bruhat_later);
    for (Mask J : js)
      out.push_back(slice_piece(ctx, prm, J, slices.at(J), m_low,
                                "SliceFamily(v=" + to_string(v) + ",c=" + to_string(c) + ",J=" + mask_label(J, 3) +
                                    ",r=" + std::to_string(r) + ")"));
  }
}

}  // namespace

std::vector<Piece> gl3_pieces(const PavingContext& ctx, const Coweight& v) {
  if (v.size() != 3 || ctx.d() != 3) throw ShapeError("gl3 paving needs d = 3");
  const Gl3Params prm = gl3_params(ctx.nu);
  const Coweight dv = dominant(v);
  std::vector<Piece> raw;
  gl3_raw(ctx, prm, dv, -dv.back(), raw);
  return order_pieces(std::move(raw), Coweight(3, 0));
}

PavingReport gl3_paving(const PavingContext& ctx, const Coweight& v) {
  PavingReport r;
  r.d = 3;
  r.pieces = gl3_pieces(ctx, v);
  r.order_shift = Coweight(3, 0);
  r.ambient = schubert_fixed_points(v);
  const int m = -dominant(v).back();
  for (const auto& w : r.ambient) r.brute_cells.push_back(make_cell(Coweight(3, 0), w, Window::low(m)));
  return r;
}

std::vector<std::pair<int, std::vector<CellSpec>>> gl4_corner_cells(int m) {
  if (m < 0) throw InputError("m must be nonnegative");
  const Coweight a{4 * m, 0, 0, 0};
  std::vector<std::pair<int, std::vector<CellSpec>>> out;
  for (int b = 3 * m; b >= -m; --b) {
    std::vector<CellSpec> cells;
    for (const auto& w3 : window_fixed_points(3, m, -b))
      cells.push_back(make_cell(a, Coweight{b, w3[0], w3[1], w3[2]}, Window::low(m)));
    if (!cells.empty()) out.emplace_back(b, std::move(cells));
  }
  return out;
}

int gl4_fiber_kernel_dim(const Coweight& w, const Gl4Class& cls, int m) {
  if (w.size() != 4) throw ShapeError("expected a GL4 coweight");
  int total = 0, image = 0;
  for (int i = 1; i < 4; ++i) total += w[static_cast<size_t>(i)] + m;
  if (cls.type == Gl4Type::Type1) {
    for (int i = 1; i < 4; ++i) image += std::max(w[static_cast<size_t>(i)] + m - cls.r[0], 0);
  } else {
    image = std::max(w[1] + m - cls.r[0], 0);
    for (int i = 2; i < 4; ++i) image += std::max(w[static_cast<size_t>(i)] + m - cls.r[1], 0);
  }
  return total - image;
}

namespace {

Coweight lift_shift(const Coweight& a3, const Coweight& t, int m) {
  Coweight s{0};
  for (int i = 0; i < 3; ++i) s.push_back(a3[static_cast<size_t>(i)] + t[static_cast<size_t>(i)]);
  s[0] = 4 * m + *std::max_element(s.begin() + 1, s.end());
  return s;
}

Coweight lift_point(int b, const Coweight& w3, const Coweight& t) {
  return {b, w3[0] + t[0], w3[1] + t[1], w3[2] + t[2]};
}

Piece lift_piece(const Piece& p3, int b, int m, const Coweight& t, const Gl4Class& cls, const std::string& prefix) {
  Piece P;
  P.label = prefix + p3.label;
  P.group = prefix;
  P.a = lift_shift(p3.a, t, m);
  for (const auto& x : p3.region) P.region.push_back(lift_point(b, x, t));
  for (const auto& c3 : p3.cells) {
    PieceCell c = c3;
    c.w = lift_point(b, c3.w, t);
    c.lift = Lift{b, m, t};
    c.kernel = gl4_fiber_kernel_dim(c.w, cls, m);
    c.base_dim = c3.dim;
    c.dim = c3.dim < 0 ? -1 : c.kernel + c3.dim;
    P.cells.push_back(std::move(c));
  }
  return P;
}

// GL3 pieces of the window of degree D over the cut with ceiling K, in priority order.
std::vector<std::pair<std::string, std::vector<Piece>>> sigma_split(const PavingContext& ctx3, const Gl3Params& prm,
                                                                    int D, int m, int K) {
  std::vector<std::pair<std::string, std::vector<Piece>>> out;
  const auto all = window_fixed_points(3, m, D);
  auto above = [&](int x) { return x >= K; };
  std::vector<Coweight> up, down;
  for (const auto& w : all) {
    const int n = static_cast<int>(std::count_if(w.begin(), w.end(), above));
    if (n == 3) up.push_back(w);
    if (n == 0) down.push_back(w);
  }
  std::vector<Coweight> s0 = up.empty() ? down : up;
  if (!s0.empty()) {
    std::sort(s0.begin(), s0.end());
    Coweight v0 = dominant(s0.front());
    for (const auto& w : s0)
      if (!dominance_leq(w, v0)) v0 = dominant(w);
    if (schubert_fixed_points(v0) != s0) throw SpringerError("Sigma0 is not a Schubert variety");
    out.emplace_back("Sigma0", gl3_pieces(ctx3, v0));
  }
  for (int one_below = 1; one_below >= 0; --one_below) {
    std::map<std::pair<int, int>, std::vector<Coweight>> parts;  // (c, i)
    for (const auto& w : all) {
      const int n = static_cast<int>(std::count_if(w.begin(), w.end(), above));
      if (n != (one_below ? 2 : 1)) continue;
      for (int i = 0; i < 3; ++i)
        if (above(w[static_cast<size_t>(i)]) != static_cast<bool>(one_below)) parts[{w[static_cast<size_t>(i)], i}].push_back(w);
    }
    for (const auto& [key, pts] : parts) {
      const auto [c, i] = key;
      const Mask J = one_below ? (7u & ~(1u << i)) : (1u << i);
      const std::string name = std::string(one_below ? "Sigma_{" : "Sigma*_{") + std::to_string(i + 2) + "," +
                               std::to_string(c) + "}";
      out.emplace_back(name, std::vector<Piece>{slice_piece(ctx3, prm, J, pts, m, "Slice(J=" + mask_label(J, 3) + ")")});
    }
  }
  return out;
}

}  // namespace

PavingReport gl4_paving(const PavingContext& ctx, int m) {
  if (ctx.d() != 4) throw ShapeError("gl4 paving needs d = 4");
  if (m < 0) throw InputError("m must be nonnegative");
  if (!is_minimal_form(ctx.nu)) throw InputError("gamma is not in minimal form");
  const Gl4Class cls = classify_gl4(MinimalFormCert{Perm{0, 1, 2, 3}, radicial_of(ctx.nu)});
  const PavingContext ctx3 = sub_context(ctx, {1, 2, 3});
  const Gl3Params prm = gl3_params(ctx3.nu);
  const int n1 = cls.r[0];
  const bool type2 = cls.type == Gl4Type::Type2;
  const int k = type2 ? cls.r[1] : n1;
  const Coweight t{type2 ? n1 - k : 0, 0, 0};

  std::vector<Piece> raw;
  for (int b = 3 * m; b >= -m; --b) {
    const std::string vb = "V_" + std::to_string(b) + "/";
    for (auto& [name, p3s] : sigma_split(ctx3, prm, -b - t[0], m, -m + k))
      for (const auto& p3 : p3s) raw.push_back(lift_piece(p3, b, m, t, cls, vb + name + "/"));
    if (!type2) continue;
    // Outside V_{b1} every cell is affine on its own.
    for (const auto& w3 : window_fixed_points(3, m, -b)) {
      if (w3[0] >= -m + n1 - k) continue;
      Piece p3;
      p3.label = "Cell(" + to_string(w3) + ")";
      p3.a = t;
      p3.region = {w3};
      p3.cells.push_back(make_piece_cell(ctx3, InnerPlan{t, w3, m, {}, 6u, true}));
      raw.push_back(lift_piece(p3, b, m, Coweight{0, 0, 0}, cls, vb));
      raw.back().group = raw.back().label;
    }
  }
  PavingReport r;
  r.d = 4;
  r.order_shift = lift_shift(Coweight{0, 0, 0}, t, m);
  r.pieces = order_pieces(std::move(raw), r.order_shift);
  r.ambient = window_fixed_points(4, m, 0);
  std::sort(r.ambient.begin(), r.ambient.end());
  r.brute_cells = window_cells(4, m, 0);
  return r;
}

PavingReport gl3_corner_paving_check(const PavingContext& ctx, int m) {
  if (ctx.d() != 3) throw ShapeError("the corner check needs d = 3");
  if (m < 0) throw InputError("m must be nonnegative");
  const Coweight a{3 * m, 0, 0};
  std::vector<Piece> raw;
  auto pts = window_fixed_points(3, m, 0);
  std::stable_sort(pts.begin(), pts.end(), [](const Coweight& x, const Coweight& y) { return x[0] > y[0]; });
  for (const auto& w : pts) {
    Piece P;
    P.label = "C(" + to_string(w) + ")";
    P.group = P.label;
    P.a = a;
    P.region = {w};
    PieceCell c;
    c.w = w;
    c.inner = InnerPlan{a, w, m, {}, 0, false};
    std::map<uint32_t, uint64_t> counts;
    for (uint32_t q : ctx.primes)
      counts[q] = count_cell(inner_cell(c.inner), ctx.gamma.at(q), q, nullptr, ctx.budget, ctx.jobs).count;
    // Empty at one prime and not another is left in to fail power_check.
    if (std::all_of(counts.begin(), counts.end(), [](const auto& e) { return e.second == 0; })) continue;
    const PowerCheck pc = power_check(counts);
    c.base_dim = pc.pure ? pc.dim : -1;
    c.dim = c.base_dim;
    P.cells.push_back(std::move(c));
    raw.push_back(std::move(P));
  }
  PavingReport r;
  r.d = 3;
  r.order_shift = a;
  r.pieces = order_pieces(std::move(raw), a);
  r.ambient = window_fixed_points(3, m, 0);
  std::sort(r.ambient.begin(), r.ambient.end());
  r.brute_cells = window_cells(3, m, 0);
  return r;
}

}  // namespace springer
