// selfstab command-line front end: run configs in, CSV/JSON/SVG artifacts out.
// Exit codes: 0 success, 2 config/usage/IO error, 3 numeric failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "selfstab/analysis.hpp"
#include "selfstab/config.hpp"
#include "selfstab/errors.hpp"
#include "selfstab/expr.hpp"
#include "selfstab/rng.hpp"
#include "selfstab/simulate.hpp"
#include "selfstab/solver.hpp"
#include "selfstab/truncation.hpp"
#include "svg.hpp"

namespace {

using nlohmann::json;
using namespace selfstab;

constexpr const char* kVersion = "0.1.0";

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

std::string out_dir() {
  const char* d = std::getenv("SELFSTAB_OUT_DIR");
  return d && *d ? std::string(d) : std::string(".");
}

// "name" -> out_dir()/name unless the user already gave a path with '/'.
std::string out_path(const std::string& name) {
  if (name.find('/') != std::string::npos) return name;
  return out_dir() + "/" + name;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << text;
  if (!out) throw ParseError(path + ": write failed");
}

json manifest_base(const json& config) {
  return json{{"library", "selfstab"},
              {"version", kVersion},
              {"prng", kRngName},
              {"config_hash", hex16(fnv1a64(config.dump()))},
              {"config", config}};
}

void print_plan(const TruncationPlan& plan) {
  std::printf("epsilon = %s\n", num17(plan.epsilon).c_str());
  std::printf("K = %s\n", num17(plan.K).c_str());
  std::printf("N = %.0f\n", plan.N);
  std::printf("bound = %s\n", num17(plan.bound).c_str());
}

double opt_number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ParseError(std::string("config field '") + key + "' must be numeric");
  return j.at(key).get<double>();
}

// ---------------------------------------------------------------- plan ----

int cmd_plan(double epsilon, double horizon, std::optional<double> K,
             std::optional<std::string> config_path, std::optional<double> b_flag,
             std::optional<double> M_flag, std::optional<double> a_flag) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParseError("epsilon must lie in (0,1)");
  std::optional<AlphaModel> model;
  if (config_path) {
    json cfg = load_json_file(*config_path);
    model = alpha_model_from_json(cfg.contains("model") ? cfg.at("model") : cfg);
  } else if (b_flag && M_flag) {
    double a = a_flag.value_or(*b_flag), b = *b_flag;
    model = AlphaModel::custom([b](double) { return b; }, a, b, *M_flag, "flat(b)");
  } else {
    throw ParseError("plan needs either --config or both --b and --M");
  }
  if (!K) {
    std::printf("small_jump_cutoff = %s\n", num17(small_jump_cutoff(epsilon, horizon)).c_str());
  }
  TruncationPlan plan = truncation_level(epsilon, horizon, *model, K.value_or(1.0));
  print_plan(plan);
  return 0;
}

// ------------------------------------------------------------ simulate ----

struct SimArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> grid_len;
  std::optional<std::string> variant;
  std::optional<double> epsilon, K, N, a0, t0, t1;
};

TruncationPlan plan_from_config(const json& cfg, const AlphaModel& model, double t0,
                                double t1) {
  const bool has_eps = cfg.contains("epsilon");
  const bool has_kn = cfg.contains("K") && cfg.contains("N");
  if (has_eps == has_kn)
    throw ParseError("config must give exactly one of: epsilon, or explicit K and N");
  if (has_eps) {
    double eps = cfg.at("epsilon").get<double>();
    double K = opt_number(cfg, "K", 1.0);
    if (!cfg.contains("K"))
      std::printf("small_jump_cutoff = %s\n", num17(small_jump_cutoff(eps, t1 - t0)).c_str());
    return truncation_level(eps, t1 - t0, model, K);
  }
  TruncationPlan plan;
  plan.K = cfg.at("K").get<double>();
  plan.N = cfg.at("N").get<double>();
  return plan;
}

int cmd_simulate(const SimArgs& args) {
  json cfg = load_json_file(args.config_path);
  // flag overrides of config fields
  if (args.seed) cfg["seed"] = *args.seed;
  if (args.out) cfg["out"] = *args.out;
  if (args.grid_len) cfg["grid_len"] = *args.grid_len;
  if (args.variant) cfg["variant"] = *args.variant;
  if (args.epsilon) {
    cfg["epsilon"] = *args.epsilon;
    cfg.erase("N");
  }
  if (args.K) cfg["K"] = *args.K;
  if (args.N) {
    cfg["N"] = *args.N;
    cfg.erase("epsilon");
  }
  if (args.a0) cfg["a0"] = *args.a0;
  if (args.t0) cfg["t0"] = *args.t0;
  if (args.t1) cfg["t1"] = *args.t1;

  const std::string variant = cfg.value("variant", std::string("selfstab"));
  const double t0 = opt_number(cfg, "t0", 0.0);
  const double t1 = opt_number(cfg, "t1", 1.0);
  const double a0 = opt_number(cfg, "a0", 0.0);
  const std::uint64_t seed = cfg.value("seed", std::uint64_t{1});
  const std::size_t grid_len = cfg.value("grid_len", std::size_t{1000});
  const std::string out = out_path(cfg.value("out", std::string("run")));
  if (t1 <= t0) throw ParseError("config requires t1 > t0");

  SampledPath path;
  json manifest = manifest_base(cfg);
  std::function<double(double)> inset;

  if (variant == "tempered") {
    if (!cfg.contains("model")) throw ParseError("tempered config needs 'model'");
    AlphaModel model = alpha_model_from_json(cfg.at("model"));
    const std::size_t n_terms = cfg.value("n_terms", std::size_t{1000});
    double residual = 0.0;
    path = simulate_tempered(model, t1 - t0, n_terms, seed, grid_len, &residual);
    manifest["n_terms"] = n_terms;
    manifest["residual_envelope"] = residual;
    std::printf("residual_envelope = %s\n", num17(residual).c_str());
    inset = [model](double z) { return model(z); };
  } else if (variant == "nonautonomous") {
    if (!cfg.contains("alpha3_expr") || !cfg.at("alpha3_expr").is_string())
      throw ParseError("nonautonomous config needs string 'alpha3_expr' in t, z, g");
    Expr alpha3 = Expr::parse(cfg.at("alpha3_expr").get<std::string>(), {"t", "z", "g"});
    Expr gexpr = Expr::parse(cfg.value("g_expr", std::string("t")), {"t"});
    if (!(cfg.contains("K") && cfg.contains("N")))
      throw ParseError("nonautonomous config needs explicit K and N");
    StripSpec spec{t0, t1, cfg.at("K").get<double>(), cfg.at("N").get<double>(), seed};
    PointSet ps = generate_poisson_strip(spec);
    JumpFunction f = solve_nonautonomous(
        ps,
        [&](double t, double z, double g) {
          const double args3[3] = {t, z, g};
          return alpha3.eval(args3);
        },
        [&](double t) { return gexpr(t); }, a0);
    path = sample_on_grid(f, t0, t1, grid_len,
                          PathMeta{seed, spec.K, spec.N, a0, "nonautonomous", variant});
  } else {
    if (!cfg.contains("model")) throw ParseError("config needs 'model'");
    AlphaModel model = alpha_model_from_json(cfg.at("model"));
    TruncationPlan plan = plan_from_config(cfg, model, t0, t1);
    print_plan(plan);
    manifest["plan"] = plan_to_json(plan);
    if (variant == "selfstab") {
      path = simulate_path(model, a0, t0, t1, plan, seed, grid_len);
    } else if (variant == "stable") {
      path = simulate_stable_motion(model(0.0), t0, t1, plan.K, plan.N, seed, grid_len);
    } else if (variant == "subordinator") {
      path = simulate_subordinator(model(0.0), t0, t1, plan.K, plan.N, seed, grid_len);
    } else if (variant == "weighted") {
      std::function<double(double)> w = [](double) { return 1.0; };
      if (cfg.contains("weight")) {
        const json& jw = cfg.at("weight");
        if (jw.is_number()) {
          double c = jw.get<double>();
          w = [c](double) { return c; };
        } else if (jw.is_string() && jw.get<std::string>() == "calpha") {
          w = [](double alpha) { return stable_norm_constant(alpha); };
        } else {
          throw ParseError("config field 'weight' must be a number or \"calpha\"");
        }
      }
      path = simulate_weighted(model, w, a0, t0, t1, plan, seed, grid_len);
    } else {
      throw ParseError("unknown variant '" + variant + "'");
    }
    inset = [model](double z) { return model(z); };
  }

  const std::string csv = out + ".csv", svg_file = out + ".svg",
                    man = out + ".manifest.json";
  path.save_csv(csv);
  svg::write_step_plot(svg_file, path.times, path.values, variant + " path, seed " +
                       std::to_string(seed), inset ? &inset : nullptr);
  manifest["seed"] = seed;
  manifest["variant"] = variant;
  manifest["files"] = json{{"path_csv", csv}, {"plot_svg", svg_file}};
  manifest["final_value"] = path.final_value();
  write_text(man, manifest.dump(2) + "\n");
  std::printf("wrote %s %s %s\n", csv.c_str(), svg_file.c_str(), man.c_str());
  return 0;
}

// --------------------------------------------------------------- solve ----

int cmd_solve(const std::string& points_path, const std::string& config_path, double a0,
              double t0, double t1, const std::string& out) {
  json cfg = load_json_file(config_path);
  AlphaModel model = alpha_model_from_json(cfg.contains("model") ? cfg.at("model") : cfg);
  PointSet ps = load_points(points_path, t0, t1);
  JumpFunction f = solve_sequential(ps, model, a0);
  const std::string dest = out_path(out);
  save_path_csv(f, dest);
  std::printf("final_value = %s\nwrote %s\n", num17(f.final_value()).c_str(), dest.c_str());
  return 0;
}

// -------------------------------------------------------------- points ----

int cmd_points_gen(double t0, double t1, double K, double N, std::uint64_t seed,
                   const std::string& out) {
  StripSpec spec{t0, t1, K, N, seed};
  PointSet ps = generate_poisson_strip(spec);
  const std::string dest = out_path(out);
  save_points(ps, dest);
  std::printf("points = %zu\nwrote %s\n", ps.points.size(), dest.c_str());
  return 0;
}

int cmd_points_convert(const std::string& in, const std::string& out, double t0, double t1) {
  PointSet ps = load_points(in, t0, t1);
  const std::string dest = out_path(out);
  save_points(ps, dest);
  std::printf("points = %zu\nwrote %s\n", ps.points.size(), dest.c_str());
  return 0;
}

// ------------------------------------------------------------ localize ----

int cmd_localize(const std::string& config_path, std::optional<std::uint64_t> seed_flag,
                 std::optional<std::string> out_flag) {
  json cfg = load_json_file(config_path);
  if (seed_flag) cfg["seed"] = *seed_flag;
  if (out_flag) cfg["out"] = *out_flag;
  if (!cfg.contains("model")) throw ParseError("localize config needs 'model'");
  AlphaModel model = alpha_model_from_json(cfg.at("model"));
  if (!cfg.contains("r_values") || !cfg.at("r_values").is_array())
    throw ParseError("localize config needs array 'r_values'");
  std::vector<double> r_values = cfg.at("r_values").get<std::vector<double>>();
  const double z0 = opt_number(cfg, "z0", 0.0);
  const double u = opt_number(cfg, "u", 1.0);
  const std::size_t n_paths = cfg.value("n_paths", std::size_t{1000});
  TruncationPlan plan;
  plan.K = opt_number(cfg, "K", 0.01);
  plan.N = opt_number(cfg, "N", 1e4);
  const std::uint64_t seed = cfg.value("seed", std::uint64_t{1});
  const std::string out = out_path(cfg.value("out", std::string("localize")));

  LocalizationReport rep = localization_experiment(model, z0, r_values, u, n_paths, plan, seed);

  json jrep = manifest_base(cfg);
  jrep["seed"] = seed;
  jrep["z0"] = rep.z0;
  jrep["alpha_at_z0"] = rep.alpha_at_z0;
  jrep["u"] = rep.u;
  jrep["r_values"] = rep.r_values;
  jrep["ks_stats"] = rep.ks_stats;
  jrep["sample_counts"] = rep.sample_counts;
  jrep["cutoffs_used"] = rep.cutoffs_used;
  write_text(out + ".json", jrep.dump(2) + "\n");

  std::ostringstream csv;
  csv << "r,ks,samples,cutoff\n";
  for (std::size_t i = 0; i < rep.r_values.size(); ++i) {
    csv << num17(rep.r_values[i]) << "," << num17(rep.ks_stats[i]) << ","
        << rep.sample_counts[i] << "," << num17(rep.cutoffs_used[i]) << "\n";
    std::printf("r = %s  ks = %s\n", num17(rep.r_values[i]).c_str(),
                num17(rep.ks_stats[i]).c_str());
  }
  write_text(out + ".csv", csv.str());
  std::printf("wrote %s.json %s.csv\n", out.c_str(), out.c_str());
  return 0;
}

// -------------------------------------------------------------- holder ----

SampledPath load_sampled_path(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  std::string line;
  if (!std::getline(in, line) || (line != "t,value" && line != "t,value\r"))
    throw ParseError(path + ":1: expected header 't,value'");
  SampledPath p;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    double t, v;
    if (std::sscanf(line.c_str(), "%lf,%lf", &t, &v) != 2)
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected 't,value' row");
    p.times.push_back(t);
    p.values.push_back(v);
  }
  if (p.times.size() < 2) throw ParseError(path + ": fewer than two samples");
  return p;
}

int cmd_holder(std::optional<std::string> path_csv, double t, std::vector<double> h_values,
               std::optional<double> alpha_const, double K, double N, std::uint64_t seed,
               double t1, std::size_t grid_len, std::optional<std::string> out) {
  SampledPath path;
  if (path_csv) {
    path = load_sampled_path(*path_csv);
  } else if (alpha_const) {
    path = simulate_subordinator(*alpha_const, 0.0, t1, K, N, seed, grid_len);
  } else {
    throw ParseError("holder needs either --path or --alpha");
  }
  HolderFit fit = holder_fit(path, t, h_values);
  json j{{"slope", fit.slope},
         {"intercept", fit.intercept},
         {"residuals", fit.residuals},
         {"increments_used", fit.increments_used},
         {"t", t},
         {"h_values", h_values}};
  std::printf("%s\n", j.dump(2).c_str());
  if (out) write_text(out_path(*out), j.dump(2) + "\n");
  return 0;
}

// ------------------------------------------------------------ tempered ----

int cmd_tempered(const std::string& config_path, std::optional<std::uint64_t> seed,
                 std::optional<std::size_t> n_terms, std::optional<std::string> out) {
  json cfg = load_json_file(config_path);
  cfg["variant"] = "tempered";
  SimArgs args;
  args.config_path = config_path;
  // reuse the simulate pipeline with the variant pinned
  if (seed) cfg["seed"] = *seed;
  if (n_terms) cfg["n_terms"] = *n_terms;
  if (out) cfg["out"] = *out;
  const std::string tmp = out_dir() + "/.tempered_cfg.json";
  write_text(tmp, cfg.dump(2) + "\n");
  args.config_path = tmp;
  int rc = cmd_simulate(args);
  std::remove(tmp.c_str());
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulation and analysis toolkit for self-stabilizing jump processes"};
  app.require_subcommand(1);

  // plan
  auto* plan = app.add_subcommand("plan", "truncation level N(epsilon) and error bound");
  double plan_eps = 0.0, plan_T = 1.0;
  std::optional<double> plan_K, plan_b, plan_M, plan_a;
  std::optional<std::string> plan_cfg;
  plan->add_option("--epsilon", plan_eps, "target accuracy in (0,1)")->required();
  plan->add_option("--horizon,-T", plan_T, "time horizon");
  plan->add_option("--K", plan_K, "small-|y| cutoff (>= 1); when unset the small-jump cutoff is printed and K=1 used");
  plan->add_option("--config", plan_cfg, "JSON file with the alpha model");
  plan->add_option("--b", plan_b, "upper range bound b (with --M)");
  plan->add_option("--M", plan_M, "derivative ratio bound (with --b)");
  plan->add_option("--a", plan_a, "lower range bound a (defaults to b)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "simulate a path and write CSV/SVG/manifest");
  SimArgs sim_args;
  sim->add_option("--config", sim_args.config_path, "run config JSON")->required();
  sim->add_option("--seed", sim_args.seed, "override config seed");
  sim->add_option("--out", sim_args.out, "override output prefix");
  sim->add_option("--grid-len", sim_args.grid_len, "override grid length");
  sim->add_option("--variant", sim_args.variant, "override variant");
  sim->add_option("--epsilon", sim_args.epsilon, "override epsilon (drops explicit N)");
  sim->add_option("--K", sim_args.K, "override K");
  sim->add_option("--N", sim_args.N, "override N (drops epsilon)");
  sim->add_option("--a0", sim_args.a0, "override start value");
  sim->add_option("--t0", sim_args.t0, "override interval start");
  sim->add_option("--t1", sim_args.t1, "override interval end");

  // solve
  auto* solve = app.add_subcommand("solve", "deterministic solve on a user point set");
  std::string solve_points, solve_cfg, solve_out = "solution.csv";
  double solve_a0 = 0.0, solve_t0 = 0.0, solve_t1 = 1.0;
  solve->add_option("--points", solve_points, "points CSV (header x,y)")->required();
  solve->add_option("--config", solve_cfg, "JSON with the alpha model")->required();
  solve->add_option("--a0", solve_a0, "start value");
  solve->add_option("--t0", solve_t0, "interval start");
  solve->add_option("--t1", solve_t1, "interval end");
  solve->add_option("--out", solve_out, "output path CSV");

  // points gen|convert
  auto* points = app.add_subcommand("points", "Poisson strip point sets");
  points->require_subcommand(1);
  auto* pgen = points->add_subcommand("gen", "sample a strip to CSV");
  double pg_t0 = 0.0, pg_t1 = 1.0, pg_K = 1.0, pg_N = 10.0;
  std::uint64_t pg_seed = 1;
  std::string pg_out = "points.csv";
  pgen->add_option("--t0", pg_t0, "interval start");
  pgen->add_option("--t1", pg_t1, "interval end");
  pgen->add_option("--K", pg_K, "small-|y| cutoff")->required();
  pgen->add_option("--N", pg_N, "large-|y| cutoff")->required();
  pgen->add_option("--seed", pg_seed, "seed");
  pgen->add_option("--out", pg_out, "output CSV");
  auto* pconv = points->add_subcommand("convert", "normalize/sort an existing CSV");
  std::string pc_in, pc_out = "points.csv";
  double pc_t0 = 0.0, pc_t1 = 1.0;
  pconv->add_option("--in", pc_in, "input CSV")->required();
  pconv->add_option("--out", pc_out, "output CSV");
  pconv->add_option("--t0", pc_t0, "interval start");
  pconv->add_option("--t1", pc_t1, "interval end");

  // localize
  auto* loc = app.add_subcommand("localize", "scaled-increment distribution vs stable reference");
  std::string loc_cfg;
  std::optional<std::uint64_t> loc_seed;
  std::optional<std::string> loc_out;
  loc->add_option("--config", loc_cfg, "experiment config JSON")->required();
  loc->add_option("--seed", loc_seed, "override config seed");
  loc->add_option("--out", loc_out, "override output prefix");

  // holder
  auto* hold = app.add_subcommand("holder", "log-log increment slope at a fixed time");
  std::optional<std::string> h_path, h_out;
  std::optional<double> h_alpha;
  double h_t = 0.5, h_K = 1.0, h_N = 1e4, h_t1 = 1.0;
  std::uint64_t h_seed = 1;
  std::size_t h_grid = 100000;
  std::vector<double> h_values;
  hold->add_option("--path", h_path, "existing path CSV (header t,value)");
  hold->add_option("--t", h_t, "window start time")->required();
  hold->add_option("--scales", h_values, "increment scales h (>= 3)")->required();
  hold->add_option("--alpha", h_alpha, "subordinator index (simulate instead of --path)");
  hold->add_option("--K", h_K, "strip K for simulation");
  hold->add_option("--N", h_N, "strip N for simulation");
  hold->add_option("--seed", h_seed, "seed for simulation");
  hold->add_option("--t1", h_t1, "horizon for simulation");
  hold->add_option("--grid-len", h_grid, "grid length for simulation");
  hold->add_option("--out", h_out, "write fit JSON here too");

  // tempered
  auto* temp = app.add_subcommand("tempered", "tempered shot-noise path");
  std::string temp_cfg;
  std::optional<std::uint64_t> temp_seed;
  std::optional<std::size_t> temp_terms;
  std::optional<std::string> temp_out;
  temp->add_option("--config", temp_cfg, "run config JSON")->required();
  temp->add_option("--seed", temp_seed, "override config seed");
  temp->add_option("--n-terms", temp_terms, "override series length");
  temp->add_option("--out", temp_out, "override output prefix");

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan->parsed()) return cmd_plan(plan_eps, plan_T, plan_K, plan_cfg, plan_b, plan_M, plan_a);
    if (sim->parsed()) return cmd_simulate(sim_args);
    if (solve->parsed())
      return cmd_solve(solve_points, solve_cfg, solve_a0, solve_t0, solve_t1, solve_out);
    if (points->parsed()) {
      if (pgen->parsed()) return cmd_points_gen(pg_t0, pg_t1, pg_K, pg_N, pg_seed, pg_out);
      return cmd_points_convert(pc_in, pc_out, pc_t0, pc_t1);
    }
    if (loc->parsed()) return cmd_localize(loc_cfg, loc_seed, loc_out);
    if (hold->parsed())
      return cmd_holder(h_path, h_t, h_values, h_alpha, h_K, h_N, h_seed, h_t1, h_grid, h_out);
    if (temp->parsed()) return cmd_tempered(temp_cfg, temp_seed, temp_terms, temp_out);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const MissingBound& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
