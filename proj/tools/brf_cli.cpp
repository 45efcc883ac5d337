#include <array>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "brf/catalog.hpp"
#include "brf/json_io.hpp"

namespace {

using brf::Json;
using brf::Rational;

struct GlobalOptions {
  bool exact = false;
  double tol = 1e-10;
  bool tol_given = false;
  unsigned long seed = 2024;
  std::string out_json;
  std::string out_md;
};

long parse_long(const std::string& s) {
  try {
    size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw brf::ParameterError("not an integer: " + s);
    return v;
  } catch (const std::exception&) {
    throw brf::ParameterError("not an integer: " + s);
  }
}

/// Accepts integers, fractions like 5/6 and decimals; decimals are read as
/// exact tenth powers in rational mode.
template <class S>
S parse_value(const std::string& s) {
  if (s.empty()) throw brf::ParameterError("empty numeric value");
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const long num = parse_long(s.substr(0, slash));
    const long den = parse_long(s.substr(slash + 1));
    if (den == 0) throw brf::ParameterError("zero denominator in " + s);
    return brf::scalar_traits<S>::fraction(num, den);
  }
  if constexpr (brf::scalar_traits<S>::exact) {
    const auto dot = s.find('.');
    if (dot == std::string::npos) return S(parse_long(s));
    const std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    long den = 1;
    for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return brf::scalar_traits<S>::fraction(parse_long(digits), den);
  } else {
    try {
      size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw brf::ParameterError("not a number: " + s);
      return v;
    } catch (const std::exception&) {
      throw brf::ParameterError("not a number: " + s);
    }
  }
}

template <class S>
std::vector<S> parse_list(const std::string& csv) {
  std::vector<S> out;
  size_t start = 0;
  while (start <= csv.size()) {
    const auto comma = csv.find(',', start);
    const auto end = comma == std::string::npos ? csv.size() : comma;
    out.push_back(parse_value<S>(csv.substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

template <class S>
brf::BuiltAlgebra<S> factor_from_json(const Json& j) {
  const std::string family = j.at("family").get<std::string>();
  const int n = j.value("n", 2);
  if (family == "su") return brf::build_su<S>(n);
  if (family == "so") return brf::build_so<S>(n);
  if (family == "sp") return brf::build_sp<S>(n);
  if (family == "g2") return brf::build_g2<S>();
  throw brf::ParameterError("unknown factor family: " + family);
}

template <class S>
S cell_value(const Json& c) {
  if (c.is_object())
    return brf::scalar_traits<S>::fraction(c.at("num").get<long>(),
                                           c.at("den").get<long>());
  if (c.is_number_integer()) return S(c.get<long>());
  if (c.is_string()) return parse_value<S>(c.get<std::string>());
  if (c.is_number_float()) {
    if constexpr (brf::scalar_traits<S>::exact)
      throw brf::ParameterError(
          "exact mode requires integer, fraction or {num, den} entries");
    else
      return c.get<double>();
  }
  throw brf::ParameterError("unsupported numeric entry: " + c.dump());
}

/// Space-spec file: {factor1: {family, n}, factor2: {family, n},
/// subgroup: {constructor, ...} or {basis: [[...], ...]}, z1 (optional)}.
template <class S>
brf::AlignedSpace<S> space_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw brf::ParameterError("cannot read spec file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw brf::ParameterError(std::string("malformed spec file: ") + e.what());
  }
  try {
    const Json& sub = j.at("subgroup");
    if (sub.contains("constructor")) {
      const std::string ctor = sub.at("constructor").get<std::string>();
      if (ctor == "su2xsu2_s1")
        return brf::AlignedSpace<S>::build(
            brf::make_su2xsu2_s1<S>(sub.value("p", 1), sub.value("q", 1)));
      return brf::build_catalog_space<S>(ctor);
    }
    auto f1 = factor_from_json<S>(j.at("factor1"));
    auto f2 = factor_from_json<S>(j.at("factor2"));
    const int n1 = f1.algebra.dim();
    const int n2 = f2.algebra.dim();
    const Json& rows = sub.at("basis");
    if (!rows.is_array() || rows.empty() ||
        static_cast<int>(rows.size()) != n1 + n2)
      throw brf::ParameterError(
          "subgroup basis must have dim(g1) + dim(g2) = " +
          std::to_string(n1 + n2) + " rows");
    const int nk = static_cast<int>(rows.at(0).size());
    brf::Mat<S> kb(n1 + n2, nk);
    for (int r = 0; r < n1 + n2; ++r) {
      const Json& row = rows.at(r);
      if (static_cast<int>(row.size()) != nk)
        throw brf::ParameterError("ragged subgroup basis");
      for (int c = 0; c < nk; ++c) kb(r, c) = cell_value<S>(row.at(c));
    }
    const std::string name = j.value("name", "custom_space");
    return brf::AlignedSpace<S>::build(
        brf::make_embedding(std::move(f1), std::move(f2), std::move(kb), name));
  } catch (const Json::exception& e) {
    throw brf::ParameterError(std::string("malformed spec file: ") + e.what());
  }
}

template <class S>
brf::AlignedSpace<S> resolve_space(const std::string& space,
                                   const std::string& spec_file, long p,
                                   long q) {
  if (!spec_file.empty()) return space_from_file<S>(spec_file);
  if (space.empty())
    throw brf::ParameterError("--space or --spec-file is required");
  if (space == "su2xsu2_s1") {
    if (p <= 0 || q <= 0)
      throw brf::ParameterError("su2xsu2_s1 requires positive --p and --q");
    return brf::AlignedSpace<S>::build(brf::make_su2xsu2_s1<S>(p, q));
  }
  return brf::build_catalog_space<S>(space);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw brf::ParameterError("cannot open " + path + " for writing");
  out << content;
}

/// Machine report to stdout (and --out-json); the human table is rendered
/// from the same JSON into --out-md.
void emit(const GlobalOptions& g, const Json& report, const Json& md_table,
          const std::vector<std::string>& md_notes = {}) {
  const std::string dumped = report.dump(2) + "\n";
  std::cout << dumped;
  if (!g.out_json.empty()) write_file(g.out_json, dumped);
  if (!g.out_md.empty()) {
    std::string md = brf::markdown_table(md_table);
    for (const auto& note : md_notes) md += "\n- " + note;
    if (!md_notes.empty()) md += "\n";
    write_file(g.out_md, md);
  }
}

Json kv_table(const std::vector<std::pair<std::string, Json>>& rows) {
  Json t;
  t["columns"] = Json::array({"quantity", "value"});
  t["rows"] = Json::array();
  for (const auto& [k, v] : rows) t["rows"].push_back(Json::array({k, v}));
  return t;
}

template <class S>
int run_analyze(const GlobalOptions& g, const std::string& space,
                const std::string& spec_file, long p, long q) {
  const auto sp = resolve_space<S>(space, spec_file, p, q);
  Json out;
  out["report"] = "analyze";
  out["space_id"] = sp.name();
  out["exact"] = brf::scalar_traits<S>::exact;
  out["dim_g"] = sp.dim_g();
  out["dim_k"] = sp.dim_k();
  out["dim_p1"] = sp.dim_p1();
  out["dim_p2"] = sp.dim_p2();
  out["center_dim"] = sp.center_dim();
  out["swapped"] = sp.swapped();
  out["c1"] = brf::scalar_json(sp.c1());
  out["c2"] = brf::scalar_json(sp.c2());
  out["lambdas"] = Json::array();
  for (size_t l = 1; l < sp.ideals().size(); ++l)
    out["lambdas"].push_back(brf::scalar_json(sp.ideals()[l].lambda));
  out["cas1_scalar"] = sp.cas1_scalar();
  out["cas2_scalar"] = sp.cas2_scalar();
  if (sp.cas1_scalar()) out["kappa1"] = brf::scalar_json(sp.kappa1());
  if (sp.cas2_scalar()) out["kappa2"] = brf::scalar_json(sp.kappa2());
  const S alignment = S(1) / sp.c1() + S(1) / sp.c2();
  out["one_over_c1_plus_one_over_c2"] = brf::scalar_json(alignment);

  std::vector<std::pair<std::string, Json>> rows{
      {"dim g", out["dim_g"]},         {"dim k", out["dim_k"]},
      {"dim p1", out["dim_p1"]},       {"dim p2", out["dim_p2"]},
      {"c1", out["c1"]},               {"c2", out["c2"]},
      {"1/c1 + 1/c2", out["one_over_c1_plus_one_over_c2"]}};
  for (size_t l = 0; l < out["lambdas"].size(); ++l)
    rows.emplace_back("lambda[" + std::to_string(l) + "]", out["lambdas"][l]);
  if (out.contains("kappa1")) rows.emplace_back("kappa1", out["kappa1"]);
  if (out.contains("kappa2")) rows.emplace_back("kappa2", out["kappa2"]);
  emit(g, out, kv_table(rows));
  return 0;
}

template <class S>
int run_solve(const GlobalOptions& g, const std::string& space,
              const std::string& spec_file, long p, long q,
              const std::string& grid_csv) {
  const auto sp = resolve_space<S>(space, spec_file, p, q);
  const auto grid = parse_list<S>(grid_csv);
  std::vector<brf::CorrectedSolveResult<S>> rows;
  rows.reserve(grid.size());
  for (const auto& z1 : grid) rows.push_back(brf::solve_corrected(sp, z1));
  const Json out = brf::solve_report_json(sp.name(), grid, rows);

  Json md;
  md["columns"] = Json::array(
      {"z1", "x1", "x2", "x3", "gK1", "gK2", "gK3", "residual"});
  md["rows"] = Json::array();
  for (size_t i = 0; i < grid.size(); ++i) {
    const Json& sol = out["solutions"][i];
    md["rows"].push_back(Json::array(
        {out["z1_grid"][i], sol["metric"]["x1"], sol["metric"]["x2"],
         sol["metric"]["x3"], sol["gk_coordinates"][0],
         sol["gk_coordinates"][1], sol["gk_coordinates"][2],
         sol["residual"]}));
  }
  emit(g, out, md);
  return 0;
}

int run_verify(const GlobalOptions& g, const std::string& space,
               const std::string& spec_file, long p, long q,
               const std::string& z1_text, const std::string& metric_csv) {
  const auto sp = resolve_space<double>(space, spec_file, p, q);
  const double z1 = parse_value<double>(z1_text);
  const auto coeffs = parse_list<double>(metric_csv);
  if (coeffs.size() != 3)
    throw brf::ParameterError("--metric requires three values x1,x2,x3");
  brf::DiagonalMetric<double> m;
  m.x1 = coeffs[0];
  m.x2 = coeffs[1];
  m.x3 = coeffs[2];
  const double residual = brf::brf_residual(sp, z1, m);
  Json out;
  out["report"] = "verify";
  out["space_id"] = sp.name();
  out["z1"] = brf::scalar_json(z1);
  out["metric"] = brf::metric_json(m);
  out["residual"] = brf::fixed_precision(residual);
  out["tolerance"] = brf::fixed_precision(g.tol);
  out["brf"] = residual < g.tol;
  emit(g, out,
       kv_table({{"z1", out["z1"]},
                 {"residual", out["residual"]},
                 {"tolerance", out["tolerance"]},
                 {"brf", out["brf"]}}));
  return 0;
}

template <class S>
int run_legacy(const GlobalOptions& g, const std::string& space,
               const std::string& spec_file, long p, long q,
               const std::string& at_text) {
  const auto sp = resolve_space<S>(space, spec_file, p, q);
  const auto sd = brf::scalar_data(sp);
  const S z1 = parse_value<S>(at_text);
  S x3;
  if constexpr (brf::scalar_traits<S>::exact) {
    if (z1 != sd.c1 - S(1))
      throw brf::ParameterError(
          "exact legacy evaluation is available at z1 = c1 - 1 only, where "
          "the curve root is rational; use floating point elsewhere");
    x3 = (z1 + S(1)) / z1;
  } else {
    x3 = brf::legacy_solve(sd, z1);
  }
  const auto der = brf::legacy_curve_derivatives(sd, z1, x3);
  const auto m = brf::legacy_metric(sd, z1, x3);
  const auto ratios = brf::ricci_ratios(sd, z1, m);
  const Json out = brf::legacy_report_json(sp.name(), z1, x3, der, ratios);
  emit(g, out,
       kv_table({{"z1", out["z1"]},
                 {"x3", out["x3"]},
                 {"f_x", out["f_x"]},
                 {"f_z", out["f_z"]},
                 {"x3'", out["x3_prime"]},
                 {"r12", out["r12"]},
                 {"r13", out["r13"]},
                 {"r12'", out["r12_prime"]},
                 {"r13'", out["r13_prime"]}}));
  return 0;
}

int run_corrigendum(const GlobalOptions& g, const std::string& space,
                    const std::string& spec_file, long p, long q,
                    const std::string& grid_csv) {
  const auto sp = resolve_space<double>(space, spec_file, p, q);
  const auto grid = parse_list<double>(grid_csv);
  const auto rep = brf::corrigendum_report(sp, grid);
  const Json out = brf::corrigendum_report_json(rep);

  Json md;
  md["columns"] =
      Json::array({"z1", "legacy x1", "legacy x2", "legacy x3",
                   "legacy residual", "corrected gK", "h2 p3 delta"});
  md["rows"] = Json::array();
  for (const auto& row : out["rows"]) {
    std::string gk;
    for (const auto& v : row["corrected_gk"])
      gk += (gk.empty() ? "" : ", ") + v.dump();
    md["rows"].push_back(Json::array(
        {row["z1"], row["legacy_metric"]["x1"], row["legacy_metric"]["x2"],
         row["legacy_metric"]["x3"], row["legacy_residual"], gk,
         row["h2_p3_delta"]}));
  }
  std::vector<std::string> notes;
  for (const auto& n : out["notes"]) notes.push_back(n.get<std::string>());
  emit(g, out, md, notes);
  return 0;
}

int run_flow(const GlobalOptions& g, const std::string& space,
             const std::string& spec_file, long p, long q,
             const std::string& z1_text, const std::string& x0_csv,
             double t_end, double h_scale, const std::string& out_csv) {
  const auto sp = resolve_space<double>(space, spec_file, p, q);
  const double z1 = parse_value<double>(z1_text);
  const auto fc = brf::flow_context(sp, z1);
  std::array<double, 3> x0;
  if (x0_csv.empty()) {
    const auto m = brf::canonical_metric(z1);
    x0 = {m.x1, m.x2, m.x3};
  } else {
    const auto coeffs = parse_list<double>(x0_csv);
    if (coeffs.size() != 3)
      throw brf::ParameterError("--x0 requires three values x1,x2,x3");
    x0 = {coeffs[0], coeffs[1], coeffs[2]};
  }
  const double step_tol = g.tol_given ? g.tol : 1e-8;
  const auto res = brf::integrate(fc, x0, t_end, step_tol, h_scale);
  const Json out = brf::flow_report_json(sp.name(), z1, h_scale, res);
  if (!out_csv.empty()) write_file(out_csv, brf::trajectory_csv(res));
  std::vector<std::pair<std::string, Json>> rows{
      {"status", out["status"]}, {"steps", out["steps"]}};
  if (out.contains("final_t")) {
    rows.emplace_back("final t", out["final_t"]);
    rows.emplace_back("final x", out["final_x"]);
    rows.emplace_back("final rhs norm", out["final_rhs_norm"]);
  }
  emit(g, out, kv_table(rows));
  return 0;
}

int run_group(const GlobalOptions& g, const std::string& algebra,
              int trials) {
  const auto gg = brf::build_catalog_group<double>(algebra);
  const auto rep =
      brf::verify_rigidity(gg, trials, static_cast<unsigned>(g.seed));
  const Json out = brf::rigidity_report_json(algebra, rep);
  emit(g, out,
       kv_table({{"algebra", out["algebra"]},
                 {"trials", out["trials"]},
                 {"converged", out["converged"]},
                 {"solutions found", out["solutions_found"]},
                 {"hull certified", out["hull_certified"]},
                 {"max deviation from ones", out["max_deviation_from_ones"]}}));
  return 0;
}

template <class S>
int run_catalog_test(const GlobalOptions& g) {
  const auto checks = brf::check_catalog<S>();
  bool all_passed = true;
  Json out;
  out["report"] = "catalog-test";
  out["exact"] = brf::scalar_traits<S>::exact;
  out["entries"] = Json::array();
  Json md;
  md["columns"] = Json::array({"id", "status", "notes"});
  md["rows"] = Json::array();
  for (const auto& check : checks) {
    all_passed = all_passed && check.passed;
    Json e;
    e["id"] = check.id;
    e["passed"] = check.passed;
    e["failures"] = check.failures;
    e["discrepancies"] = check.discrepancies;
    out["entries"].push_back(std::move(e));
    std::string notes;
    for (const auto& msg : check.failures)
      notes += (notes.empty() ? "" : "; ") + msg;
    for (const auto& msg : check.discrepancies)
      notes += (notes.empty() ? "" : "; ") + ("discrepancy: " + msg);
    md["rows"].push_back(Json::array(
        {check.id, check.passed ? "ok" : "failed", notes}));
  }
  out["all_passed"] = all_passed;
  emit(g, out, md);
  if (!all_passed) {
    std::cerr << "catalog test failed\n";
    return 4;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Bismut Ricci flat generalized metrics on aligned homogeneous spaces"};
  app.require_subcommand(1);

  GlobalOptions g;
  if (const char* env = std::getenv("BRF_TOL")) {
    try {
      g.tol = parse_value<double>(env);
    } catch (const brf::Error&) {
      std::cout << brf::error_json("ParameterError",
                                   "BRF_TOL is not a number")
                       .dump(2)
                << "\n";
      return 2;
    }
  }
  app.add_flag("--exact", g.exact, "exact rational arithmetic");
  auto* tol_opt =
      app.add_option("--tol", g.tol, "tolerance (default 1e-10 or BRF_TOL)");
  app.add_option("--seed", g.seed, "seed for randomized trials");
  app.add_option("--out-json", g.out_json, "write the JSON report here");
  app.add_option("--out-md", g.out_md, "write the markdown rendering here");

  std::string space, spec_file, grid_csv = "0.5,1,2", z1_text = "1";
  std::string metric_csv, at_text, x0_csv, algebra, out_csv;
  long p = 0, q = 0;
  double t_end = 1.0, h_scale = 1.0;
  int trials = 100;

  const auto add_space = [&](CLI::App* sub) {
    sub->add_option("--space", space, "catalog space id");
    sub->add_option("--spec-file", spec_file, "space-spec JSON file");
    sub->add_option("--p", p, "circle weight p (su2xsu2_s1)");
    sub->add_option("--q", q, "circle weight q (su2xsu2_s1)");
  };

  auto* analyze = app.add_subcommand("analyze", "alignment constants");
  analyze->fallthrough();
  add_space(analyze);
  auto* solve = app.add_subcommand("solve", "corrected BRF solutions");
  solve->fallthrough();
  add_space(solve);
  solve->add_option("--z1-grid", grid_csv, "comma-separated z1 values");
  auto* verify = app.add_subcommand("verify", "residuals of a given metric");
  verify->fallthrough();
  add_space(verify);
  verify->add_option("--z1", z1_text, "section parameter");
  verify->add_option("--metric", metric_csv, "metric x1,x2,x3")->required();
  auto* legacy = app.add_subcommand("legacy", "historical solution curve");
  legacy->fallthrough();
  add_space(legacy);
  legacy->add_option("--at", at_text, "z1 to evaluate at")->required();
  auto* corrigendum =
      app.add_subcommand("corrigendum", "legacy vs corrected comparison");
  corrigendum->fallthrough();
  add_space(corrigendum);
  corrigendum->add_option("--z1-grid", grid_csv, "comma-separated z1 values");
  auto* flow = app.add_subcommand("flow", "generalized Ricci flow trajectory");
  flow->fallthrough();
  add_space(flow);
  flow->add_option("--z1", z1_text, "section parameter");
  flow->add_option("--x0", x0_csv, "initial metric x1,x2,x3");
  flow->add_option("--t-end", t_end, "integration time");
  flow->add_option("--h-scale", h_scale, "scale of the frozen torsion");
  flow->add_option("--out-csv", out_csv, "write the trajectory CSV here");
  auto* group = app.add_subcommand("group", "group-case rigidity search");
  group->fallthrough();
  group->add_option("--algebra", algebra, "group id (su2, su2su2)")
      ->required();
  group->add_option("--trials", trials, "number of random starts");
  auto* catalog_test =
      app.add_subcommand("catalog-test", "validate every catalog entry");
  catalog_test->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << brf::error_json("ParameterError", e.what()).dump(2) << "\n";
    return 2;
  }
  g.tol_given = tol_opt->count() > 0;

  try {
    if (analyze->parsed())
      return g.exact ? run_analyze<Rational>(g, space, spec_file, p, q)
                     : run_analyze<double>(g, space, spec_file, p, q);
    if (solve->parsed())
      return g.exact
                 ? run_solve<Rational>(g, space, spec_file, p, q, grid_csv)
                 : run_solve<double>(g, space, spec_file, p, q, grid_csv);
    if (verify->parsed()) {
      if (g.exact)
        throw brf::ParameterError(
            "the oracle residual is floating point; drop --exact");
      return run_verify(g, space, spec_file, p, q, z1_text, metric_csv);
    }
    if (legacy->parsed())
      return g.exact
                 ? run_legacy<Rational>(g, space, spec_file, p, q, at_text)
                 : run_legacy<double>(g, space, spec_file, p, q, at_text);
    if (corrigendum->parsed()) {
      if (g.exact)
        throw brf::ParameterError(
            "corrigendum runs in floating point; drop --exact");
      return run_corrigendum(g, space, spec_file, p, q, grid_csv);
    }
    if (flow->parsed()) {
      if (g.exact)
        throw brf::ParameterError("flow runs in floating point; drop --exact");
      return run_flow(g, space, spec_file, p, q, z1_text, x0_csv, t_end,
                      h_scale, out_csv);
    }
    if (group->parsed()) {
      if (g.exact)
        throw brf::ParameterError(
            "the rigidity search runs in floating point; drop --exact");
      return run_group(g, algebra, trials);
    }
    if (catalog_test->parsed())
      return g.exact ? run_catalog_test<Rational>(g)
                     : run_catalog_test<double>(g);
    throw brf::ParameterError("no command given");
  } catch (const brf::ParameterError& e) {
    std::cout << brf::error_json("ParameterError", e.what()).dump(2) << "\n";
    return 2;
  } catch (const brf::UnsupportedSpaceError& e) {
    std::cout << brf::error_json("UnsupportedSpaceError", e.what()).dump(2)
              << "\n";
    return 2;
  } catch (const brf::NumericalError& e) {
    std::cout << brf::error_json("NumericalError", e.what()).dump(2) << "\n";
    return 3;
  } catch (const brf::VerificationError& e) {
    std::cout << brf::error_json("VerificationError", e.what()).dump(2)
              << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cout << brf::error_json("InternalError", e.what()).dump(2) << "\n";
    return 3;
  }
}
