#include "hmvp_app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hmvp/diagnostics.hpp"
#include "hmvp/dirichlet.hpp"
#include "hmvp/errors.hpp"
#include "hmvp/estimates.hpp"
#include "hmvp/meanvalue.hpp"
#include "hmvp/perron.hpp"
#include "hmvp_app/descriptors.hpp"

namespace hmvp::app {
namespace {

using OJson = nlohmann::ordered_json;

struct Loaded {
  Json problem;
  MetricMeasureSpace space;
};

Json load_problem(const RunConfig& cfg, bool required = true) {
  if (cfg.problem.empty()) {
    if (required) throw InputError("--problem is required for " + cfg.subcommand);
    return Json::object();
  }
  return load_json(cfg.problem);
}

Loaded load(const RunConfig& cfg, bool problem_required = true) {
  Json problem = load_problem(cfg, problem_required);
  Json space;
  if (!cfg.space.empty()) {
    space = load_json(cfg.space);
  } else if (problem.contains("space")) {
    space = resolve(problem.at("space"), cfg.problem.parent_path());
  } else {
    throw InputError("no space given (use --space or a 'space' field)");
  }
  return {std::move(problem), parse_space(space)};
}

std::string point_name(const MetricMeasureSpace& s, const Point& p) { return s.describe(p); }

Table solution_table(const DiscreteSpace& s, const std::vector<double>& u) {
  Table t{"solution", {"point", "value"}, {}};
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::isfinite(u[i])) t.add({s.label(i), u[i]});
  }
  return t;
}

Table trace_table(const SolveTrace& trace) {
  Table t{"trace", {"iter", "sup_delta", "residual", "min_increment", "max_increment", "sup_abs"}, {}};
  for (const auto& r : trace.records) {
    t.add({static_cast<double>(r.iter), r.sup_delta, r.residual, r.min_increment, r.max_increment,
           r.sup_abs});
  }
  return t;
}

std::vector<double> parse_radii(const Json& j) {
  if (j.is_array()) return j.get<std::vector<double>>();
  if (j.is_object()) {
    const auto kind = j.value("kind", "geometric") == "linear" ? RadiusGridKind::linear
                                                               : RadiusGridKind::geometric;
    return radius_grid(j.at("min").get<double>(), j.at("max").get<double>(),
                       j.value("count", std::size_t{12}), kind);
  }
  throw InputError("radii must be a list or {min, max, count}");
}

std::vector<Point> parse_points(const MetricMeasureSpace& s, const Json& j, const char* key) {
  std::vector<Point> out;
  if (j.contains(key)) {
    for (const auto& p : j.at(key)) out.push_back(parse_point(s, p));
  }
  return out;
}

OJson optional_number(std::optional<double> v) { return v ? OJson(*v) : OJson(nullptr); }

}  // namespace

Report solve(const RunConfig& cfg) {
  auto [problem, space] = load(cfg);
  const std::string variant = problem.value("variant", "measurable");
  const double tol = cfg.tol.value_or(problem.value("tol", 1e-10));
  const std::size_t max_iters = cfg.max_iters.value_or(problem.value("max_iters", std::size_t{100000}));
  Report rep;
  rep.summary["command"] = "solve";
  rep.summary["variant"] = variant;

  if (variant == "sublift") {
    const NodeProblem np = discretise(space, problem, std::nullopt);
    if (!problem.contains("subsolution")) throw InputError("sublift needs a 'subsolution'");
    const FieldFunction v = parse_function(problem.at("subsolution"));
    std::vector<std::size_t> bd;
    for (const auto& [node, value] : np.boundary) {
      if (std::abs(v.at_node(np.space, node) - value) > 1e-9 * (1 + std::abs(value))) {
        throw InputError("subsolution does not match the boundary data at " + np.space.label(node));
      }
      bd.push_back(node);
    }
    const LiftResult lift = subharmonic_lift(np.space, np.omega, bd, v, tol, max_iters);
    const auto& u = lift.solution.trace.final_values;
    rep.summary["iterations"] = lift.solution.trace.iterations;
    rep.summary["residual"] = lift.solution.trace.residual;
    rep.tables = {solution_table(np.space, u), trace_table(lift.solution.trace)};
    Table radii{"radii", {"point", "r_x"}, {}};
    std::vector<std::size_t> omega = np.omega;
    std::sort(omega.begin(), omega.end());
    for (std::size_t k = 0; k < omega.size(); ++k) radii.add({np.space.label(omega[k]), lift.radii[k]});
    rep.tables.push_back(std::move(radii));
    return rep;
  }

  const std::optional<double> eps_opt =
      cfg.eps ? cfg.eps : (problem.contains("eps") ? std::optional<double>(problem.at("eps").get<double>()) : std::nullopt);
  if (!eps_opt) throw InputError("problem needs 'eps' (or --eps)");
  const double eps = *eps_opt;
  const NodeProblem np = discretise(space, problem, eps);
  DirichletProblem p = [&] {
    if (variant == "measurable") return make_measurable_problem(np.space, np.omega, eps, np.boundary);
    if (variant == "continuous") {
      std::optional<FieldFunction> ext;
      if (problem.contains("extension")) ext = parse_function(problem.at("extension"));
      return make_continuous_problem(np.space, np.omega, eps, np.boundary, ext);
    }
    throw InputError("variant must be measurable, continuous or sublift");
  }();
  p.tol = tol;
  p.max_iters = max_iters;
  SolveOptions opts;
  if (problem.contains("seed")) opts.seed = problem.at("seed").get<double>();
  const Solution sol = variant == "measurable" ? dp_solve_measurable(p, opts) : dp_solve_continuous(p, opts);
  rep.summary["eps"] = eps;
  rep.summary["tol"] = tol;
  rep.summary["iterations"] = sol.trace.iterations;
  rep.summary["residual"] = sol.trace.residual;
  rep.summary["interior_nodes"] = p.strip.omega.size();
  rep.summary["strip_nodes"] = p.strip.gamma_eps.size();
  if (problem.value("oracle", false)) {
    const auto oracle = direct_solve_oracle(p);
    double diff = 0.0;
    for (std::size_t i : p.strip.omega_eps) diff = std::max(diff, std::abs(oracle[i] - sol.trace.final_values[i]));
    rep.summary["oracle_max_difference"] = diff;
  }
  rep.tables = {solution_table(np.space, sol.trace.final_values), trace_table(sol.trace)};
  return rep;
}

Report classify(const RunConfig& cfg) {
  auto [problem, space] = load(cfg);
  if (!problem.contains("function")) throw InputError("classify needs a 'function'");
  const FieldFunction f = parse_function(problem.at("function"));
  const Domain domain = parse_domain(space, problem.value("domain", Json("whole")));
  ClassifyOptions o;
  o.points = parse_points(space, problem, "points");
  o.radii = parse_radii(problem.value("radii", Json::array({0.1, 0.25, 0.5, 1.0, 2.0})));
  o.tol = cfg.tol.value_or(problem.value("tol", o.tol));
  const Classification c = hmvp::classify(space, f, domain, o);

  Report rep;
  rep.summary["command"] = "classify";
  rep.summary["function"] = f.id();
  rep.summary["verdict"] = std::string(to_string(c.verdict));
  rep.summary["max_defect"] = c.max_defect;
  rep.summary["min_signed_defect"] = c.min_signed_defect;
  rep.summary["max_signed_defect"] = c.max_signed_defect;
  rep.summary["balls_tested"] = c.balls_tested;
  if (c.violation) {
    rep.summary["violation"] = {{"x", point_name(space, c.violation->center)},
                                {"r", c.violation->radius},
                                {"defect", c.violation->defect}};
  }
  Table adm{"admissible", {"x", "r_lo", "r_hi", "defect"}, {}};
  for (const auto& set : c.witness)
    for (const auto& e : set.entries) adm.add({point_name(space, set.center), e.lo, e.hi, e.defect});

  if (problem.contains("scan")) {
    for (const auto& s : problem.at("scan")) {
      const RadiusSet set = admissible_radii(space, f, parse_point(space, s.at("x")), domain,
                                             s.at("r_min").get<double>(), s.at("r_max").get<double>(),
                                             s.value("grid", std::size_t{24}), o.tol);
      for (const auto& e : set.entries) adm.add({point_name(space, set.center), e.lo, e.hi, e.defect});
    }
  }
  rep.tables.push_back(std::move(adm));
  return rep;
}

Report diagnose(const RunConfig& cfg) {
  auto [problem, space] = load(cfg, false);
  SamplePlan plan;
  if (problem.contains("centers")) {
    plan = parse_sample_plan(space, problem);
  } else if (problem.contains("plan")) {
    plan = parse_sample_plan(space, problem.at("plan"));
  } else if (space.is_line()) {
    plan.centers = {-1.0, 0.0, 1.0};
    plan.radii = {0.25, 0.5, 1.0, 2.0};
  } else {
    throw InputError("discrete spaces need a sample plan");
  }
  if (cfg.tol) plan.threshold = *cfg.tol;
  const DiagnosticsReport d = measure_diagnostics(space, plan);

  Report rep;
  rep.summary["command"] = "diagnose";
  rep.summary["doubling_constant"] = d.doubling_constant;
  if (d.annular_fit) rep.summary["annular_fit"] = {{"A", d.annular_fit->a}, {"delta", d.annular_fit->delta}};
  else rep.summary["annular_fit"] = "no fit";
  if (d.uniform_fit) {
    rep.summary["uniform_fit"] = {{"C", d.uniform_fit->c}, {"Q", d.uniform_fit->q}, {"residual", d.uniform_fit->residual}};
  } else {
    rep.summary["uniform_fit"] = "not uniform";
  }
  rep.summary["uniform_regression"] = {{"C", d.uniform_regression.c},
                                       {"Q", d.uniform_regression.q},
                                       {"residual", d.uniform_regression.residual}};
  rep.summary["ahlfors"] = {{"C", d.ahlfors.c}, {"Q", d.ahlfors.q}, {"satisfied", d.ahlfors.satisfied}};
  Table rows{"diagnostics", {"x", "r", "mu_B", "ratio_2B", "annulus_ratio"}, {}};
  for (const auto& r : d.rows) rows.add({r.x, r.r, r.mu_b, r.ratio_2b, r.annulus_ratio});
  Table cont{"continuity", {"probe", "sup_symmetric_difference"}, {}};
  for (const auto& c : d.metric_continuity) cont.add({c.probe, c.sup_symmetric_difference});
  rep.tables = {std::move(rows), std::move(cont)};
  return rep;
}

Report estimate(const RunConfig& cfg) {
  Json problem = load_problem(cfg);
  Report rep;
  rep.summary["command"] = "estimate";

  const Json c = problem.value("constants", Json::object());
  ConstantParams p;
  p.c_mu = c.value("C_mu", p.c_mu);
  p.t = c.value("t", p.t);
  p.delta = c.value("delta", p.delta);
  p.r_min = c.value("r_m", p.r_min);
  p.r_max = c.value("r_M", p.r_max);
  p.chain_length = c.value("n", p.chain_length);
  p.r_min_omega = c.value("r_m_omega", p.r_min_omega);
  p.r_max_omega = c.value("r_M_omega", p.r_max_omega);
  p.sup_norm = c.value("sup_norm", p.sup_norm);
  p.annular_a = c.value("A", p.annular_a);
  p.q = c.value("Q", p.q);
  p.m = c.value("M", p.m);
  p.dist = c.value("dist", p.dist);
  if (c.contains("large_Q")) p.large_q = c.at("large_Q").get<double>();
  if (c.contains("large_C")) p.large_c = c.at("large_C").get<double>();
  p.l1_norm = c.value("l1_norm", p.l1_norm);
  p.mu_ball_2r = c.value("mu_ball_2r", p.mu_ball_2r);
  p.r = c.value("r", p.r);
  const ConstantSheet s = constant_sheet(p);
  rep.summary["constants"] = {{"harnack_strong", s.harnack_strong},
                              {"harnack_weak_ball", s.harnack_weak_ball},
                              {"harnack_compact_weak", s.harnack_compact_weak},
                              {"holder_alpha", s.holder_alpha},
                              {"annular_ball_constant", s.annular_ball_constant},
                              {"lipschitz_uniform", s.lipschitz_uniform},
                              {"large_scale_c", s.large_scale_c},
                              {"large_scale_gap", s.large_scale_gap}};

  const bool needs_space = problem.contains("harnack") || problem.contains("modulus") ||
                           problem.contains("dilatation") || problem.contains("principles");
  if (!needs_space) return rep;
  const Loaded l = load(cfg);
  const MetricMeasureSpace& space = l.space;

  bool all_pass = true;
  if (problem.contains("harnack")) {
    Table t{"harnack", {"function", "center", "radius", "sup", "inf", "ratio", "bound", "pass"}, {}};
    for (const auto& h : problem.at("harnack")) {
      const FieldFunction f = parse_function(h.at("function"));
      const Point x = parse_point(space, h.at("center"));
      const double r = h.at("radius").get<double>();
      double c_mu = h.value("C_mu", 0.0);
      if (c_mu <= 0.0) {
        SamplePlan plan;
        plan.centers = {x};
        plan.radii = {r / 4, r / 2, r, 2 * r, 3 * r};
        c_mu = measure_diagnostics(space, plan).doubling_constant;
      }
      const HarnackResult res = empirical_harnack(space, f, x, r, parse_domain(space, h.value("domain", Json("whole"))), c_mu);
      all_pass = all_pass && res.pass;
      t.add({f.id(), point_name(space, x), r, res.sup, res.inf, res.ratio, res.bound, res.pass ? "true" : "false"});
    }
    rep.tables.push_back(std::move(t));
  }
  if (problem.contains("modulus")) {
    const Json& m = problem.at("modulus");
    std::vector<std::pair<Point, Point>> pairs;
    for (const auto& pr : m.at("pairs")) pairs.emplace_back(parse_point(space, pr.at(0)), parse_point(space, pr.at(1)));
    std::optional<ModulusBound> bound;
    if (m.contains("bound")) bound = ModulusBound{m.at("bound").at("constant").get<double>(), m.at("bound").at("exponent").get<double>()};
    const ModulusFit fit = empirical_modulus(space, parse_function(m.at("function")), pairs, bound);
    rep.summary["modulus"] = {{"constant", fit.constant},
                              {"exponent", fit.exponent},
                              {"degenerate", fit.degenerate},
                              {"skipped", fit.skipped},
                              {"window", {fit.window_lo, fit.window_hi}},
                              {"worst_ratio", optional_number(fit.worst_ratio)},
                              {"bound_holds", fit.bound_holds}};
    all_pass = all_pass && fit.bound_holds;
    Table t{"modulus", {"d", "increment"}, {}};
    for (const auto& r : fit.rows) t.add({r.distance, r.increment});
    rep.tables.push_back(std::move(t));
  }
  if (problem.contains("dilatation")) {
    const Json& d = problem.at("dilatation");
    const Dilatation dil = pointwise_dilatation(space, parse_function(d.at("function")),
                                                parse_point(space, d.at("x")), parse_radii(d.at("radii")),
                                                d.value("resolution", std::size_t{64}));
    rep.summary["dilatation"] = {{"lip", dil.lip}, {"Lip", dil.upper_lip}};
    Table t{"dilatation", {"r", "quotient"}, {}};
    for (std::size_t i = 0; i < dil.radii.size(); ++i) t.add({dil.radii[i], dil.quotients[i]});
    rep.tables.push_back(std::move(t));
  }
  if (problem.contains("principles")) {
    const Json& pj = problem.at("principles");
    std::vector<FieldFunction> fs;
    for (const auto& f : pj.at("functions")) fs.push_back(parse_function(f));
    PrincipleOptions o;
    o.tol = cfg.tol.value_or(pj.value("tol", o.tol));
    o.points = parse_points(space, pj, "points");
    if (pj.contains("radii")) o.radii = parse_radii(pj.at("radii"));
    if (pj.contains("basis")) {
      for (const auto& f : pj.at("basis")) o.basis.push_back(parse_function(f));
    }
    const PrincipleReport pr = principle_checks(space, fs, parse_domain(space, pj.value("domain", Json("whole"))), o);
    OJson strong = OJson::array(), weak = OJson::array(), comp = OJson::array();
    for (const auto& e : pr.strong_max) {
      strong.push_back({{"function", e.function}, {"constant", e.constant}, {"argmax", e.argmax},
                        {"argmin", e.argmin}, {"pass", e.pass}});
    }
    for (const auto& w : pr.weak_max) {
      weak.push_back({{"function", w.function}, {"interior_sup", w.interior_sup},
                      {"boundary_sup", w.boundary_sup}, {"interior_inf", w.interior_inf},
                      {"boundary_inf", w.boundary_inf}, {"pass", w.pass}});
    }
    for (const auto& cp : pr.comparison) {
      comp.push_back({{"upper", cp.upper}, {"lower", cp.lower}, {"hypothesis", cp.hypothesis},
                      {"conclusion", cp.conclusion}, {"pass", cp.pass}});
    }
    rep.summary["principles"] = {{"strong_max", strong},
                                 {"weak_max", weak},
                                 {"comparison", comp},
                                 {"dimension", {{"basis", pr.dimension.basis},
                                                {"max_defects", pr.dimension.max_defects},
                                                {"singular_values", pr.dimension.singular_values},
                                                {"kernel_dimension", pr.dimension.kernel_dimension}}},
                                 {"pass", pr.pass}};
    all_pass = all_pass && pr.pass;
  }
  rep.summary["pass"] = all_pass;
  rep.passed = all_pass;
  return rep;
}

Report scan_liouville(const RunConfig& cfg) {
  auto [problem, space] = load(cfg);
  const Point x = parse_point(space, problem.at("x"));
  const Point y = parse_point(space, problem.at("y"));
  std::vector<double> radii;
  if (problem.contains("radii")) radii = parse_radii(problem.at("radii"));
  const LiouvilleScan s = liouville_scan(space, x, y, radii);
  Report rep;
  rep.summary["command"] = "scan-liouville";
  rep.summary["x"] = point_name(space, x);
  rep.summary["y"] = point_name(space, y);
  rep.summary["d"] = s.d;
  rep.summary["liminf_estimate"] = s.liminf;
  rep.summary["window"] = {s.radii.front(), s.radii.back()};
  rep.summary["skipped_radii"] = s.skipped;
  Table t{"scan", {"r", "ratio"}, {}};
  for (std::size_t i = 0; i < s.radii.size(); ++i) t.add({s.radii[i], s.ratios[i]});
  rep.tables.push_back(std::move(t));
  return rep;
}

Report perron(const RunConfig& cfg) {
  auto [problem, space] = load(cfg);
  const NodeProblem np = discretise(space, problem, std::nullopt);
  const MetricMeasureSpace grid(np.space);
  std::vector<std::size_t> bd;
  for (const auto& [node, value] : np.boundary) bd.push_back(node);
  const Domain omega = Domain::nodes(np.omega, bd);

  auto node_point = [&](const Json& j) -> Point {
    if (space.is_line()) {
      const double x = j.get<double>();
      for (std::size_t i = 0; i < np.space.size(); ++i) {
        if (std::abs(np.space.coordinate(i) - x) <= 1e-6 * *np.space.spacing()) return NodeId{i};
      }
      throw InputError("point " + std::to_string(x) + " is not a grid node");
    }
    return parse_point(grid, j);
  };

  SubharmonicFamilyPlan plan;
  if (!problem.contains("generators")) throw InputError("perron needs 'generators'");
  for (const auto& g : problem.at("generators")) {
    if (g.is_object() && g.value("id", "") == "affine_family") {
      // {"id":"affine_family","a":..,"b_from":..,"b_to":..,"count":..}
      const double a = g.at("a").get<double>();
      const double b0 = g.at("b_from").get<double>(), b1 = g.at("b_to").get<double>();
      const std::size_t n = g.value("count", std::size_t{11});
      for (std::size_t k = 0; k < n; ++k) {
        const double t = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
        plan.generators.push_back(functions::affine(a, b0 + (b1 - b0) * t));
      }
    } else {
      plan.generators.push_back(parse_function(g));
    }
  }
  if (problem.contains("schedule")) {
    for (const auto& b : problem.at("schedule")) {
      plan.schedule.push_back({std::get<NodeId>(node_point(b.at("center"))).index, b.at("radius").get<double>()});
    }
  }
  plan.rounds = cfg.max_iters.value_or(problem.value("rounds", plan.rounds));
  if (problem.contains("inner_eps")) plan.modification.inner_eps = problem.at("inner_eps").get<double>();
  if (cfg.eps) plan.modification.inner_eps = cfg.eps;
  const PerronResult res = lower_perron(np.space, omega, np.boundary, plan);

  double sup_g = -std::numeric_limits<double>::infinity();
  for (const auto& [node, value] : np.boundary) sup_g = std::max(sup_g, value);
  double max_over_rounds = -std::numeric_limits<double>::infinity();
  for (const auto& r : res.rounds) max_over_rounds = std::max(max_over_rounds, r.max_value);

  Report rep;
  rep.summary["command"] = "perron";
  rep.summary["rounds"] = res.rounds.size() - 1;
  rep.summary["defect"] = res.defect;
  rep.summary["sup_g"] = sup_g;
  rep.summary["max_over_rounds"] = max_over_rounds;
  rep.summary["bounded_by_sup_g"] = max_over_rounds <= sup_g + 1e-12;

  rep.tables.push_back(solution_table(np.space, std::vector<double>(res.u.values().begin(), res.u.values().end())));
  Table rounds{"rounds", {"round", "max_change", "max_value", "defect"}, {}};
  for (const auto& r : res.rounds) rounds.add({static_cast<double>(r.round), r.max_change, r.max_value, r.defect});
  rep.tables.push_back(std::move(rounds));

  if (problem.contains("barrier")) {
    const Json& b = problem.at("barrier");
    const Point x0 = node_point(b.at("x0"));
    const BarrierVerdict v = verify_barrier(grid, omega, {parse_function(b.at("function")), x0});
    rep.summary["barrier"] = {{"valid", v.valid},
                              {"subharmonic", v.subharmonic},
                              {"vanishes", v.vanishes},
                              {"negative_elsewhere", v.negative_elsewhere},
                              {"min_defect", v.min_defect},
                              {"failures", v.failures}};
    if (problem.contains("approach")) {
      std::vector<Point> approach;
      for (const auto& a : problem.at("approach")) approach.push_back(node_point(a));
      const std::size_t x0n = std::get<NodeId>(x0).index;
      auto it = np.boundary.find(x0n);
      if (it == np.boundary.end()) throw InputError("barrier point is not a boundary node");
      const double tol = cfg.tol.value_or(problem.value("regularity_tol", 1e-4));
      const RegularityReport reg = boundary_regularity_check(grid, res.u, x0, it->second, v, approach, tol);
      rep.summary["regularity"] = {{"monotone", reg.monotone}, {"pass", reg.pass}, {"tol", tol}};
      rep.passed = reg.pass;
      Table t{"regularity", {"distance", "value", "deviation"}, {}};
      for (const auto& r : reg.rows) t.add({r.distance, r.value, r.deviation});
      rep.tables.push_back(std::move(t));
    }
  }
  return rep;
}

}  // namespace hmvp::app
