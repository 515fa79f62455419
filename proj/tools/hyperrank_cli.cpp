// hyperrank: rank reports, property suites, phi expansion and membership
// screening from the command line.
//
// Exit codes: 0 every check passed, 1 a check failed, 2 usage or parse
// error, 3 a computation exceeded its budget.

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hyperrank/errors.hpp"
#include "hyperrank/geometry.hpp"
#include "hyperrank/hyperplane.hpp"
#include "hyperrank/incidence.hpp"
#include "hyperrank/io.hpp"
#include "hyperrank/phi.hpp"
#include "hyperrank/suites.hpp"

namespace hr = hyperrank;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint32_t p = 2;
  std::uint32_t k = 1;
  std::uint32_t n = 2;
  std::string format = "text";
  std::uint64_t budget = 0;
};

void add_context(CLI::App* cmd, Common& c) {
  cmd->add_option("--p", c.p, "prime p")->required();
  cmd->add_option("--k", c.k, "exponent k, R = Z/p^kZ")->required();
  cmd->add_option("--n", c.n, "dimension n")->required();
}

void add_format(CLI::App* cmd, Common& c, std::vector<std::string> formats) {
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember(std::move(formats)));
}

void add_budget(CLI::App* cmd, Common& c) {
  cmd->add_option("--budget", c.budget, "maximum dense matrix entries (default 2^25, or PADIC_BUDGET)");
}

std::uint64_t effective_budget(const Common& c) {
  if (c.budget != 0) return c.budget;
  if (const char* env = std::getenv("PADIC_BUDGET"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) throw UsageError(std::string("PADIC_BUDGET must be a positive integer, got '") + env + "'");
    return v;
  }
  return hr::kDefaultEntryBudget;
}

hr::RingCtx make_ctx(const Common& c) {
  if (c.p >= 256) throw UsageError("p must be below 256");
  try {
    return hr::RingCtx(c.p, c.k, c.n);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string opt_str(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : "omitted"; }

void print_checks(std::ostream& os, const std::vector<hr::Check>& checks) {
  for (const auto& c : checks) {
    os << (c.pass ? "PASS  " : "FAIL  ") << c.name;
    if (c.lhs && c.rhs) os << "  " << *c.lhs << ' ' << c.relation << ' ' << *c.rhs;
    if (!c.detail.empty()) os << "  (" << c.detail << ')';
    os << '\n';
  }
}

hr::Json envelope(const std::string& command, const hr::RingCtx& ctx) {
  return hr::Json{{"command", command}, {"context", hr::to_json(ctx)}};
}

void emit_json(hr::Json doc, double seconds) {
  doc["seconds"] = seconds;
  std::cout << doc.dump(2) << '\n';
}

int cmd_rank(const Common& c) {
  const auto start = std::chrono::steady_clock::now();
  const hr::RingCtx ctx = make_ctx(c);
  const hr::RankReport rep = hr::rank_report(ctx, effective_budget(c));
  if (c.format == "json") {
    hr::Json doc = envelope("rank", ctx);
    doc["results"] = hr::to_json(rep);
    doc["pass"] = rep.passed();
    emit_json(std::move(doc), seconds_since(start));
  } else if (c.format == "csv") {
    std::cout << "p,k,n,rank_W,rank_Wstar,dim_H,rank_Astar_literal,checks_passed,checks_total\n";
    std::size_t passed = 0;
    for (const auto& ch : rep.checks) passed += ch.pass;
    auto cell = [](const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string(); };
    std::cout << ctx.p() << ',' << ctx.k() << ',' << ctx.n() << ',' << cell(rep.rank_W) << ',' << cell(rep.rank_Wstar)
              << ',' << cell(rep.dim_H) << ',' << cell(rep.rank_Astar_literal) << ',' << passed << ','
              << rep.checks.size() << '\n';
  } else {
    std::cout << "context p=" << ctx.p() << " k=" << ctx.k() << " n=" << ctx.n() << '\n'
              << "rank_W      " << opt_str(rep.rank_W) << '\n'
              << "rank_Wstar  " << opt_str(rep.rank_Wstar) << '\n'
              << "dim_H       " << opt_str(rep.dim_H) << '\n';
    if (ctx.size() <= hr::kAstarLiteralMaxPoints) std::cout << "rank_Astar  " << opt_str(rep.rank_Astar_literal) << '\n';
    print_checks(std::cout, rep.checks);
    for (const auto& o : rep.omitted) std::cout << "OMITTED  " << o << '\n';
    std::cout << std::fixed << std::setprecision(3) << "time " << seconds_since(start) << " s\n";
  }
  if (!rep.passed()) return kExitFail;
  if (!rep.complete()) {
    std::cerr << "budget exceeded; report is partial\n";
    return kExitBudget;
  }
  return kExitPass;
}

int cmd_verify(const Common& c, const std::string& suite, const hr::SuiteOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const hr::RingCtx ctx = make_ctx(c);
  std::vector<hr::SuiteResult> results;
  try {
    results = hr::run_suites(suite, ctx, opts);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  bool pass = true;
  for (const auto& r : results) pass = pass && r.passed();
  if (c.format == "json") {
    hr::Json doc = envelope("verify", ctx);
    doc["seed"] = opts.seed;
    doc["samples"] = opts.samples;
    hr::Json arr = hr::Json::array();
    for (const auto& r : results) arr.push_back(hr::to_json(r));
    doc["results"] = arr;
    doc["pass"] = pass;
    emit_json(std::move(doc), seconds_since(start));
  } else {
    std::cout << "context p=" << ctx.p() << " k=" << ctx.k() << " n=" << ctx.n() << "  seed " << opts.seed
              << "  samples " << opts.samples << '\n';
    for (const auto& r : results) {
      std::cout << "[" << r.suite << "]\n";
      print_checks(std::cout, r.checks);
    }
    std::cout << std::fixed << std::setprecision(3) << "time " << seconds_since(start) << " s\n";
  }
  return pass ? kExitPass : kExitFail;
}

// Fans on every admissible scale: exhaustive for small n = 2 families,
// seeded samples otherwise.
std::vector<hr::Fan> screening_fans(const hr::RingCtx& ctx, const hr::SuiteOptions& opts, std::string& how) {
  std::vector<hr::Fan> fans;
  if (ctx.k() < 2) {
    how = "none (fans need k >= 2)";
    return fans;
  }
  bool all_exhaustive = true;
  for (std::uint32_t l = 0; l + 2 <= ctx.k(); ++l) {
    const bool exhaustive = ctx.n() == 2 && hr::fan_family_size(ctx, l) <= 20000;
    all_exhaustive = all_exhaustive && exhaustive;
    const hr::FanMode mode =
        exhaustive ? hr::FanMode{} : hr::FanMode{hr::FanMode::Kind::Sampled, opts.seed, opts.samples};
    auto part = hr::fan_family(ctx, l, mode);
    fans.insert(fans.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  how = all_exhaustive ? "exhaustive" : "sampled";
  return fans;
}

int cmd_member(const Common& c, const std::string& file, bool fan_screen, const hr::SuiteOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const hr::RingCtx ctx = make_ctx(c);
  const hr::FnTable f = hr::read_fn_table_file(file, ctx);
  const std::int64_t deg = hr::degree(f);
  const hr::HyperSpanBasis basis = hr::span_basis(ctx, effective_budget(c));
  const auto cert = hr::is_hyperplane_function(f, basis);
  const auto dirs = hr::directions(ctx);

  std::vector<hr::Check> checks;
  hr::Json certificate = nullptr;
  if (cert) {
    const bool reconstructs = hr::left_multiply(*cert, basis.rows) ==
                              std::vector<std::uint8_t>(f.values().begin(), f.values().end());
    checks.push_back(hr::check_holds("certificate_reconstructs_function", reconstructs));
    certificate = hr::Json::array();
    for (std::size_t r = 0; r < cert->size(); ++r) {
      if ((*cert)[r] == 0) continue;
      certificate.push_back(hr::Json{{"direction", hr::to_json(dirs[r / ctx.pk()].rep)},
                                     {"phi_index", r % ctx.pk()},
                                     {"coefficient", (*cert)[r]}});
    }
  }

  std::optional<hr::FanTestReport> screen;
  std::vector<hr::Fan> fans;
  std::string how;
  if (fan_screen) {
    fans = screening_fans(ctx, opts, how);
    screen = hr::fan_test(f, fans);
    if (cert) checks.push_back(hr::check_holds("member_passes_fan_screen", screen->passed()));
  }
  const bool pass = hr::all_pass(checks);

  if (c.format == "json") {
    hr::Json doc = envelope("member", ctx);
    if (fan_screen) doc["seed"] = opts.seed;
    hr::Json res{{"degree", deg < 0 ? hr::Json(nullptr) : hr::Json(deg)},
                 {"member", cert.has_value()},
                 {"certificate", certificate}};
    if (screen) {
      hr::Json s = hr::to_json(*screen);
      s["mode"] = how;
      s["first_violation"] = screen->violations.empty()
                                 ? hr::Json(nullptr)
                                 : hr::to_json(fans[screen->violations.front().fan_index], ctx);
      res["fan_screen"] = s;
    }
    doc["results"] = res;
    doc["checks"] = hr::to_json(checks);
    doc["pass"] = pass;
    emit_json(std::move(doc), seconds_since(start));
  } else {
    std::cout << "degree  " << (deg < 0 ? std::string("-inf") : std::to_string(deg)) << '\n'
              << "member  " << (cert ? "true" : "false") << '\n';
    if (cert) std::cout << "certificate terms  " << certificate.size() << '\n';
    if (screen) {
      std::cout << "fan screen (" << how << ")  " << screen->fans_checked << " fans, " << screen->violations.size()
                << " violations\n";
      if (!screen->violations.empty()) {
        const auto& v = screen->violations.front();
        const hr::Fan& fan = fans[v.fan_index];
        std::cout << "first violation  fan " << v.fan_index << ", sum " << v.sum << ", X =";
        for (auto x : fan.points) {
          const auto pt = ctx.point(x);
          std::cout << " (";
          for (std::size_t i = 0; i < pt.coords.size(); ++i) std::cout << (i ? "," : "") << pt.coords[i];
          std::cout << ')';
        }
        std::cout << '\n';
      }
    }
    print_checks(std::cout, checks);
  }
  return pass ? kExitPass : kExitFail;
}

hr::FnTable load(const std::string& file) { return hr::read_fn_table_file(file); }

int cmd_expand(const std::string& file, const std::string& format) {
  const auto start = std::chrono::steady_clock::now();
  const hr::FnTable f = load(file);
  const hr::RingCtx& ctx = f.ctx();
  const hr::PhiCoeffs c = hr::expand(f);
  const bool agree = c == hr::expand_via_derivatives(f);
  const std::vector<hr::Check> checks{hr::check_holds("expansion_paths_agree", agree)};
  if (format == "json") {
    hr::Json terms = hr::Json::array();
    for (std::uint64_t i = 0; i < ctx.size(); ++i) {
      if (c[i] == 0) continue;
      terms.push_back(hr::Json{{"alpha", hr::MultiIndex::from_index(ctx, i).alpha}, {"coefficient", c[i]}});
    }
    hr::Json doc = envelope("expand", ctx);
    doc["results"] = hr::Json{{"degree", c.degree() < 0 ? hr::Json(nullptr) : hr::Json(c.degree())}, {"terms", terms}};
    doc["checks"] = hr::to_json(checks);
    doc["pass"] = agree;
    emit_json(std::move(doc), seconds_since(start));
  } else {
    for (std::uint64_t i = 0; i < ctx.size(); ++i) {
      if (c[i] == 0) continue;
      const auto a = hr::MultiIndex::from_index(ctx, i);
      std::cout << static_cast<unsigned>(c[i]) << " * phi(";
      for (std::size_t j = 0; j < a.alpha.size(); ++j) std::cout << (j ? "," : "") << a.alpha[j];
      std::cout << ")\n";
    }
    std::cout << "degree " << (c.degree() < 0 ? std::string("-inf") : std::to_string(c.degree())) << '\n';
    print_checks(std::cout, checks);
  }
  return agree ? kExitPass : kExitFail;
}

int cmd_degree(const std::string& file, const std::string& format) {
  const auto start = std::chrono::steady_clock::now();
  const hr::FnTable f = load(file);
  const std::int64_t deg = hr::degree(f);
  if (format == "json") {
    hr::Json doc = envelope("degree", f.ctx());
    doc["results"] = hr::Json{{"degree", deg < 0 ? hr::Json(nullptr) : hr::Json(deg)}};
    doc["pass"] = true;
    emit_json(std::move(doc), seconds_since(start));
  } else {
    std::cout << (deg < 0 ? std::string("-inf") : std::to_string(deg)) << '\n';
  }
  return kExitPass;
}

int cmd_bounds(const Common& c) {
  const auto start = std::chrono::steady_clock::now();
  const hr::RingCtx ctx = make_ctx(c);
  hr::TheoremBounds b{};
  try {
    b = hr::theorem_bounds(ctx);
  } catch (const std::overflow_error& e) {
    throw hr::BudgetExceeded(e.what());
  }
  const bool binding = b.fan_bound < b.trivial_bound;
  if (c.format == "json") {
    hr::Json doc = envelope("bounds", ctx);
    hr::Json res = hr::to_json(b);
    res["fan_bound_below_trivial"] = binding;
    doc["results"] = res;
    doc["pass"] = true;
    emit_json(std::move(doc), seconds_since(start));
  } else {
    std::cout << "trivial_bound  " << b.trivial_bound << '\n'
              << "fan_bound      " << b.fan_bound << '\n'
              << "ubn_bound      " << b.ubn_bound << '\n'
              << "fan_bound " << (binding ? "<" : ">=") << " trivial_bound\n";
  }
  return kExitPass;
}

std::vector<std::uint64_t> parse_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw UsageError("invalid number list '" + s + "'");
    }
  }
  return out;
}

int cmd_table(const Common& c, const std::string& alpha, const std::string& normal, const std::string& offset) {
  const hr::RingCtx ctx = make_ctx(c);
  std::optional<hr::FnTable> f;
  try {
    if (!alpha.empty()) {
      f = hr::phi_table(ctx, hr::MultiIndex::make(ctx, parse_list(alpha)));
    } else if (!normal.empty()) {
      auto b = parse_list(normal);
      auto a = offset.empty() ? std::vector<std::uint64_t>(ctx.n(), 0) : parse_list(offset);
      if (b.size() != ctx.n() || a.size() != ctx.n()) throw UsageError("--hyperplane and --through need n entries");
      for (auto& v : b) v %= ctx.pk();
      for (auto& v : a) v %= ctx.pk();
      const hr::Hyperplane h{hr::canonical_direction(ctx.point(b), ctx), ctx.point(a)};
      std::vector<std::uint8_t> values(ctx.size(), 0);
      for (auto x : h.members(ctx)) values[x] = 1;
      f.emplace(ctx, std::move(values));
    } else {
      throw UsageError("give --alpha or --hyperplane");
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (c.format == "csv") hr::write_fn_table_csv(std::cout, *f);
  else hr::write_fn_table_json(std::cout, *f);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ranks of point-hyperplane incidence matrices over Z/p^kZ and the hyperplane function space"};
  app.require_subcommand(1);

  Common common;
  hr::SuiteOptions opts;
  std::string suite = "all";
  std::string file;
  bool fan_screen = false;
  std::string alpha;
  std::string normal;
  std::string offset;

  auto* rank = app.add_subcommand("rank", "ranks of W, W*, dim H and the inequalities between them");
  add_context(rank, common);
  add_format(rank, common, {"text", "json", "csv"});
  add_budget(rank, common);

  auto* verify = app.add_subcommand("verify", "run property suites at one context");
  add_context(verify, common);
  add_format(verify, common, {"text", "json"});
  verify->add_option("--suite", suite, "all, phi, incidence, factorization or geometry");
  verify->add_option("--seed", opts.seed, "seed for sampled properties");
  verify->add_option("--samples", opts.samples, "random cases per sampled property")->check(CLI::PositiveNumber);

  auto* member = app.add_subcommand("member", "exact membership in the hyperplane span, with an optional fan screen");
  add_context(member, common);
  add_format(member, common, {"text", "json"});
  add_budget(member, common);
  member->add_option("--fn", file, "function table (JSON or CSV)")->required();
  member->add_flag("--fan-screen", fan_screen, "also sum the function over fans");
  member->add_option("--seed", opts.seed, "seed for sampled fans");
  member->add_option("--samples", opts.samples, "sampled fans per scale")->check(CLI::PositiveNumber);

  auto* expand = app.add_subcommand("expand", "phi-basis coefficients of a function table");
  expand->add_option("--fn", file, "function table (JSON or CSV)")->required();
  add_format(expand, common, {"text", "json"});

  auto* degree = app.add_subcommand("degree", "phi-degree of a function table");
  degree->add_option("--fn", file, "function table (JSON or CSV)")->required();
  add_format(degree, common, {"text", "json"});

  auto* bounds = app.add_subcommand("bounds", "closed-form upper bounds on dim H");
  add_context(bounds, common);
  add_format(bounds, common, {"text", "json"});

  auto* table = app.add_subcommand("table", "write a phi function or hyperplane indicator table");
  add_context(table, common);
  table->add_option("--format", common.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  table->add_option("--alpha", alpha, "multi-index, e.g. 2,1");
  table->add_option("--hyperplane", normal, "normal vector, e.g. 1,1");
  table->add_option("--through", offset, "a point on the hyperplane (default origin)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (common.format == "text" && *table) common.format = "json";

  try {
    if (*rank) return cmd_rank(common);
    if (*verify) return cmd_verify(common, suite, opts);
    if (*member) return cmd_member(common, file, fan_screen, opts);
    if (*expand) return cmd_expand(file, common.format);
    if (*degree) return cmd_degree(file, common.format);
    if (*bounds) return cmd_bounds(common);
    if (*table) return cmd_table(common, alpha, normal, offset);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const hr::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const hr::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  }
  return kExitUsage;
}
