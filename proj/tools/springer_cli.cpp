// Command-line front end: pave, count, minimal-form, order-graph, verify.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "springer/acceptance.hpp"
#include "springer/errors.hpp"
#include "springer/paving.hpp"

using namespace springer;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 2, kInput = 3, kBudget = 4, kPrecision = 5, kOther = 1 };

GammaSpec load_gamma(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad JSON in ") + path + ": " + e.what());
  }
  return gamma_from_json(j);
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw InputError("not an integer list: " + s);
    }
  }
  return out;
}

std::vector<uint32_t> parse_primes(const std::string& s) {
  std::vector<uint32_t> out;
  for (int p : parse_ints(s)) {
    if (p < 2) throw InputError("bad prime " + std::to_string(p));
    out.push_back(static_cast<uint32_t>(p));
  }
  return out;
}

void print(const json& j) { std::cout << j.dump(2) << std::endl; }

int fail(const std::string& kind, const std::string& msg, int code) {
  print(json{{"error", msg}, {"kind", kind}});
  return code;
}

struct Options {
  std::string gamma;
  int d = 0;
  int m = 0;
  std::string primes = "3,5";
  uint32_t p = 5;
  std::string emit;
  bool no_minimize = false;
  bool corner = false;
  int jobs = 1;
  std::string cell;
  int degree = 0;
  std::string shift;
  uint64_t seed = 20240611;
  bool quick = false;
  bool small_primes = false;
};

int cmd_pave(const Options& o) {
  GammaSpec spec = load_gamma(o.gamma);
  if (o.d != spec.d()) throw InputError("-d " + std::to_string(o.d) + " does not match gamma of size " +
                                        std::to_string(spec.d()));
  if (o.d != 3 && o.d != 4) throw InputError("pavings exist for d = 3 and d = 4 only");
  const bool corner = o.corner || !spec.is_diagonal();
  if (corner && o.d != 3) throw InputError("the corner check is for d = 3");
  if (!corner && !o.no_minimize) spec = permuted(spec, paving_form(integer_nu(spec)).perm);
  PavingContext ctx = make_context(spec, parse_primes(o.primes), o.m, !corner, o.small_primes);
  ctx.budget = default_budget();
  ctx.jobs = o.jobs;
  PavingReport r = corner      ? gl3_corner_paving_check(ctx, o.m)
                   : o.d == 3 ? gl3_paving(ctx, Coweight{2 * o.m, -o.m, -o.m})
                              : gl4_paving(ctx, o.m);
  certify(r, ctx);
  const json j = to_json(r);
  if (!o.emit.empty()) {
    std::ofstream out(o.emit);
    if (!out) throw InputError("cannot write " + o.emit);
    out << j.dump(2) << "\n";
  }
  print(j);
  return r.status == "pure" ? kOk : kFailed;
}

int cmd_count(const Options& o) {
  const GammaSpec spec = load_gamma(o.gamma);
  const int d = spec.d();
  validate_gamma(spec, o.p, o.small_primes);
  std::vector<CellSpec> cells;
  if (!o.cell.empty()) {
    const auto colon = o.cell.find(':');
    if (colon == std::string::npos) throw InputError("--cell wants a:w, e.g. 0,0,0:0,2,-2");
    const Coweight a = parse_ints(o.cell.substr(0, colon)), w = parse_ints(o.cell.substr(colon + 1));
    if (static_cast<int>(w.size()) != d) throw ShapeError("cell size does not match gamma");
    cells.push_back(make_cell(a, w, Window::low(o.m)));
  } else {
    cells = window_cells(d, o.m, o.degree);
  }
  int deg = 0;
  for (const auto& c : cells) deg = std::max(deg, std::abs(degree(c.w)));
  const GammaMatrix g = gamma_matrix(spec, o.p, working_horizon(d, o.m, 0) + deg + 64);
  const CountResult cr = count_region(cells, g, o.p, default_budget(), o.jobs);
  json j{{"q", cr.q}, {"region", o.cell.empty() ? "window" : "cell " + o.cell}, {"count", cr.count}};
  if (cells.size() == 1) {
    const PowerCheck pc = power_check({{o.p, cr.count}});
    j["pure"] = pc.pure;
    if (pc.pure) j["dim"] = pc.dim;
  }
  print(j);
  return kOk;
}

int cmd_minimal_form(const Options& o) {
  const GammaSpec spec = load_gamma(o.gamma);
  if (spec.is_diagonal()) validate_gamma(spec, o.p);
  const NuMatrix nu = integer_nu(spec);
  const MinimalFormCert cert = minimal_form(nu);
  auto one_based = [](Perm g) {
    for (int& x : g) ++x;
    return g;
  };
  json j{{"perm", one_based(cert.perm)},
         {"radicial", cert.radicial},
         {"input_minimal", is_minimal_form(nu)},
         {"gamma", to_json(permuted(spec, cert.perm))}};
  // pave reorders gamma once more so the valuations fit the GL3 or GL4 recipe.
  if (spec.d() == 3 || spec.d() == 4) {
    const MinimalFormCert pf = paving_form(nu);
    j["paving_perm"] = one_based(pf.perm);
    if (spec.d() == 4) j["type"] = classify_gl4(pf).type == Gl4Type::Type1 ? "Type1" : "Type2";
  }
  print(j);
  return kOk;
}

int cmd_order_graph(const Options& o) {
  if (o.d < 1) throw InputError("-d must be positive");
  const Coweight a = o.shift.empty() ? Coweight(static_cast<size_t>(o.d), 0) : parse_ints(o.shift);
  if (static_cast<int>(a.size()) != o.d) throw ShapeError("shift size does not match -d");
  std::cout << order_graph_dot(window_fixed_points(o.d, o.m, o.degree), a);
  return kOk;
}

int cmd_verify(const Options& o) {
  AcceptanceOptions ao;
  ao.seed = o.seed;
  ao.quick = o.quick;
  ao.jobs = o.jobs;
  return run_acceptance(std::cout, ao) ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affine Springer fiber pavings for GL_d, certified by point counts"};
  app.require_subcommand(1);
  Options o;

  auto* pave = app.add_subcommand("pave", "pave X_{>= -m} n X_gamma and certify it");
  pave->add_option("--gamma", o.gamma, "gamma JSON")->required();
  pave->add_option("-d", o.d, "rank")->required();
  pave->add_option("-m", o.m, "truncation")->required();
  pave->add_option("--primes", o.primes, "comma separated primes");
  pave->add_option("--emit", o.emit, "also write the report here");
  pave->add_flag("--no-minimize", o.no_minimize, "use gamma as given");
  pave->add_flag("--corner", o.corner, "corner cells only, for the mixed GL3 form");
  pave->add_option("--jobs", o.jobs, "worker threads");
  pave->add_flag("--allow-small-primes", o.small_primes, "accept 3 <= p <= d when valuations survive mod p");

  auto* count = app.add_subcommand("count", "count Springer points in a cell or a window");
  count->add_option("--gamma", o.gamma, "gamma JSON")->required();
  count->add_option("-p", o.p, "prime")->required();
  count->add_option("-m", o.m, "truncation");
  count->add_option("--cell", o.cell, "a:w, comma separated");
  count->add_option("--degree", o.degree, "degree of the window");
  count->add_option("--jobs", o.jobs, "worker threads");
  count->add_flag("--allow-small-primes", o.small_primes, "accept 3 <= p <= d when valuations survive mod p");

  auto* mf = app.add_subcommand("minimal-form", "Weyl conjugate of gamma in minimal form");
  mf->add_option("--gamma", o.gamma, "gamma JSON")->required();
  mf->add_option("-p", o.p, "prime used to validate gamma");

  auto* og = app.add_subcommand("order-graph", "Hasse diagram of the cell order in DOT");
  og->add_option("-d", o.d, "rank")->required();
  og->add_option("-m", o.m, "truncation")->required();
  og->add_option("--degree", o.degree, "degree");
  og->add_option("--shift", o.shift, "Iwahori shift a, comma separated");

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--seed", o.seed, "seed for the random suites");
  verify->add_flag("--quick", o.quick, "skip the GL4 runs at the larger prime");
  verify->add_option("--jobs", o.jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInput;
  }

  try {
    if (*pave) return cmd_pave(o);
    if (*count) return cmd_count(o);
    if (*mf) return cmd_minimal_form(o);
    if (*og) return cmd_order_graph(o);
    if (*verify) return cmd_verify(o);
  } catch (const InputError& e) {
    return fail("input", e.what(), kInput);
  } catch (const BudgetError& e) {
    return fail("budget", e.what(), kBudget);
  } catch (const PrecisionError& e) {
    return fail("precision", e.what(), kPrecision);
  } catch (const SpringerError& e) {
    return fail("certification", e.what(), kFailed);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kOther);
  }
  return kOther;
}
