#include "hmvp_app/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "hmvp/diagnostics.hpp"
#include "hmvp/dirichlet.hpp"
#include "hmvp/errors.hpp"
#include "hmvp/estimates.hpp"
#include "hmvp/meanvalue.hpp"
#include "hmvp/perron.hpp"
#include "hmvp/weight.hpp"

namespace hmvp::app {
namespace {

struct Checks {
  Table table{"checks", {"check", "value", "expected", "tolerance", "pass"}, {}};
  bool all = true;

  // |value - expected| <= tol
  void near(const std::string& name, double value, double expected, double tol) {
    record(name, value, expected, tol, std::abs(value - expected) <= tol);
  }
  // value < bound
  void below(const std::string& name, double value, double bound) {
    record(name, value, bound, 0.0, value < bound);
  }
  void above(const std::string& name, double value, double bound) {
    record(name, value, bound, 0.0, value > bound);
  }
  void record(const std::string& name, double value, double expected, double tol, bool pass) {
    table.add({name, value, expected, tol, pass ? "true" : "false"});
    all = all && pass;
  }
};

MetricMeasureSpace line(const WeightSpec& w, Interval domain = Interval::real_line()) {
  return MetricMeasureSpace(WeightedLine(w, domain));
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(a + (b - a) * i / (n - 1));
  return out;
}

double max_defect_on_grid(const MetricMeasureSpace& s, const FieldFunction& f) {
  const auto xs = linspace(-2.0, 2.0, 20);
  const auto rs = linspace(0.1, 3.0, 20);
  double worst = 0.0;
  for (double x : xs)
    for (double r : rs) worst = std::max(worst, std::abs(harmonic_defect(s, f, x, r)));
  return worst;
}

Report weak_1_over_x() {
  const auto s = line(weights::abs_x());
  const auto f = functions::reciprocal();
  Checks c;
  c.near("ball_average(y=2,r=1)", ball_average(s, f, 2.0, 1.0), 0.5, 1e-8);
  c.near("ball_average(y=1,r=2)", ball_average(s, f, 1.0, 2.0), 0.4, 1e-8);
  ClassifyOptions o;
  o.points = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
  o.radii = {0.25, 0.5, 1.0, 2.0, 4.0};
  const Classification cl = classify(s, f, Domain::whole(), o);
  c.record("verdict weakly-harmonic", cl.verdict == Verdict::weakly_harmonic ? 1.0 : 0.0, 1.0, 0.0,
           cl.verdict == Verdict::weakly_harmonic);
  c.above("max defect (not strongly harmonic)", cl.max_defect, o.tol);

  Report rep;
  rep.summary["verdict"] = std::string(to_string(cl.verdict));
  rep.summary["strongly_harmonic"] = cl.verdict == Verdict::strongly_harmonic;
  rep.summary["max_defect"] = cl.max_defect;
  Table adm{"admissible", {"x", "r_lo", "r_hi", "defect"}, {}};
  for (const auto& set : cl.witness)
    for (const auto& e : set.entries) adm.add({s.describe(set.center), e.lo, e.hi, e.defect});
  rep.tables = {std::move(c.table), std::move(adm)};
  rep.passed = c.all;
  return rep;
}

Report entire_exp() {
  const auto s = line(weights::exp_neg_x());
  Checks c;
  c.below("max |defect| of 1+e^{2x}", max_defect_on_grid(s, functions::one_plus_exp2x()), 1e-8);
  double worst = 0.0;
  for (double x : linspace(-2.0, 2.0, 20)) {
    for (double r : linspace(0.1, 3.0, 20)) {
      const double exact = std::exp(-x) * (std::exp(r) - std::exp(-r));
      worst = std::max(worst, std::abs(s.ball_measure(x, r) - exact));
    }
  }
  c.below("max |ball_measure - closed form|", worst, 1e-10);
  Report rep;
  rep.tables = {std::move(c.table)};
  rep.passed = c.all;
  return rep;
}

Report liouville_cosh() {
  const auto s = line(weights::two_cosh());
  Checks c;
  c.below("max |defect| of 1/(1+e^{2x})", max_defect_on_grid(s, functions::logistic_inv()), 1e-8);
  const LiouvilleScan scan = liouville_scan(s, 0.0, 1.0);
  double worst = 0.0;
  const std::size_t tail = scan.radii.size() - scan.radii.size() / 3;
  for (std::size_t i = tail; i < scan.radii.size(); ++i) {
    const double r = scan.radii[i];
    const double expected = std::sinh(1.0) * (r > 20 ? 1.0 : std::cosh(r) / std::sinh(r));
    worst = std::max(worst, std::abs(scan.ratios[i] - expected));
  }
  c.below("max tail |ratio - sinh(1) cosh r / sinh r|", worst, 1e-3);
  c.near("liminf estimate", scan.liminf, std::sinh(1.0), 1e-3);

  const auto leb = line(weights::lebesgue());
  const LiouvilleScan flat = liouville_scan(leb, 0.0, 1.0);
  double flat_worst = 0.0;
  for (std::size_t i = 0; i < flat.radii.size(); ++i) {
    flat_worst = std::max(flat_worst, std::abs(flat.ratios[i] - 1.0 / flat.radii[i]));
  }
  c.below("Lebesgue max |ratio - 1/r|", flat_worst, 1e-12);

  Report rep;
  rep.summary["liminf_estimate"] = scan.liminf;
  rep.summary["skipped_radii"] = scan.skipped;
  Table t{"scan", {"r", "ratio"}, {}};
  for (std::size_t i = 0; i < scan.radii.size(); ++i) t.add({scan.radii[i], scan.ratios[i]});
  rep.tables = {std::move(c.table), std::move(t)};
  rep.passed = c.all;
  return rep;
}

Report annular_exp() {
  const auto s = line(weights::exp_neg_abs_x());
  const double r = 20.0;
  const double expected = 1.0 - (std::exp(-1.0) - std::exp(-2 * r + 1)) / (1.0 - std::exp(-2 * r));
  Checks c;
  const double ratio = annulus_ratio(s, 2 * r, r, 1.0 / r);
  c.near("annulus ratio at r=20 vs closed form", ratio, expected, 1e-6);
  c.near("annulus ratio at r=20 vs 1-1/e", ratio, 1.0 - std::exp(-1.0), 1e-6);
  SamplePlan plan;
  plan.centers = {100.0};
  plan.radii = {2, 4, 8, 16, 20, 40, 80};
  plan.reciprocal_eps = true;
  const DiagnosticsReport d = measure_diagnostics(s, plan);
  c.record("annular fit rejected", d.annular_fit ? 0.0 : 1.0, 1.0, 0.0, !d.annular_fit);
  Report rep;
  rep.summary["annular_fit"] = d.annular_fit ? "fit" : "no fit";
  Table t{"diagnostics", {"x", "r", "mu_B", "ratio_2B", "annulus_ratio"}, {}};
  for (const auto& row : d.rows) t.add({row.x, row.r, row.mu_b, row.ratio_2b, row.annulus_ratio});
  rep.tables = {std::move(c.table), std::move(t)};
  rep.passed = c.all;
  return rep;
}

Report dim_2() {
  const auto s = line(weights::abs_x(), {0.0, std::numeric_limits<double>::infinity()});
  PrincipleOptions o;
  o.points = {0.5, 1.0, 2.0, 3.0, 5.0};
  o.radii = {0.1, 0.2, 0.4};
  const std::vector<FieldFunction> basis{functions::constant(1.0), functions::reciprocal(),
                                         functions::affine(1.0, 0.0)};
  const DimensionProbe p = dimension_probe(s, basis, Domain::interval(0.0, std::numeric_limits<double>::infinity()), o);
  Checks c;
  c.near("kernel dimension", static_cast<double>(p.kernel_dimension), 2.0, 0.0);
  c.below("max defect of 1", p.max_defects[0], 1e-8);
  c.below("max defect of 1/x", p.max_defects[1], 1e-8);
  c.above("max defect of x", p.max_defects[2], 1e-2);
  Report rep;
  rep.summary["kernel_dimension"] = p.kernel_dimension;
  rep.summary["singular_values"] = p.singular_values;
  rep.tables = {std::move(c.table)};
  rep.passed = c.all;
  return rep;
}

Report dp_3point() {
  std::vector<std::vector<double>> d{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}};
  const auto s = DiscreteSpace::from_table(d, {1, 1, 1});
  auto p = make_measurable_problem(s, {1}, 1.5, {{0, 0.0}, {2, 1.0}});
  p.tol = 1e-14;
  SolveOptions o;
  o.keep_iterates = true;
  const Solution sol = dp_solve_measurable(p, o);
  Checks c;
  c.near("u(1)", sol.u.values()[1], 0.5, 1e-13);
  c.near("iterate 1 at node 1", sol.trace.iterates.at(1)[1], 1.0 / 3.0, 1e-16);
  c.near("iterate 2 at node 1", sol.trace.iterates.at(2)[1], 4.0 / 9.0, 1e-16);
  c.near("oracle u(1)", direct_solve_oracle(p)[1], 0.5, 1e-15);
  Report rep;
  rep.summary["iterations"] = sol.trace.iterations;
  Table t{"solution", {"point", "value"}, {}};
  for (std::size_t i = 0; i < s.size(); ++i) t.add({s.label(i), sol.u.values()[i]});
  rep.tables = {std::move(c.table), std::move(t)};
  rep.passed = c.all;
  return rep;
}

Report perron_affine() {
  const double h = 0.00625;
  const auto g = DiscreteSpace::grid(WeightedLine(weights::lebesgue()), 0.0, 1.0, h);
  std::vector<std::size_t> interior;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) interior.push_back(i);
  const Domain omega = Domain::nodes(interior, {0, g.size() - 1});
  SubharmonicFamilyPlan plan;
  plan.generators = {functions::constant(0.0), functions::square()};
  const PerronResult res = lower_perron(g, omega, {{0, 0.0}, {g.size() - 1, 1.0}}, plan);

  Checks c;
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(res.u.values()[i] - g.coordinate(i)));
  c.below("max |P[g] - x|", err, 1e-6);
  double top = 0.0;
  for (const auto& r : res.rounds) top = std::max(top, r.max_value);
  c.record("max over rounds <= sup g + 1e-12", top, 1.0, 1e-12, top <= 1.0 + 1e-12);

  const MetricMeasureSpace ms(g);
  const BarrierVerdict barrier = verify_barrier(ms, omega, {functions::affine(-1.0, 0.0), NodeId{0}});
  c.record("barrier -x valid", barrier.valid ? 1.0 : 0.0, 1.0, 0.0, barrier.valid);
  std::vector<Point> approach{NodeId{16}, NodeId{8}, NodeId{4}, NodeId{2}, NodeId{1}};
  const RegularityReport reg = boundary_regularity_check(ms, res.u, NodeId{0}, 0.0, barrier, approach, 1e-4);
  c.record("deviations monotone", reg.monotone ? 1.0 : 0.0, 1.0, 0.0, reg.monotone);
  c.record("deviation at distance 0.00625 <= 1e-4", reg.rows.back().deviation, 0.0, 1e-4, reg.pass);

  Report rep;
  rep.summary["rounds"] = res.rounds.size() - 1;
  rep.summary["defect"] = res.defect;
  Table rounds{"rounds", {"round", "max_change", "max_value", "defect"}, {}};
  for (const auto& r : res.rounds) rounds.add({static_cast<double>(r.round), r.max_change, r.max_value, r.defect});
  Table t{"regularity", {"distance", "value", "deviation"}, {}};
  for (const auto& r : reg.rows) t.add({r.distance, r.value, r.deviation});
  rep.tables = {std::move(c.table), std::move(rounds), std::move(t)};
  rep.passed = c.all;
  return rep;
}

const std::map<std::string, std::function<Report()>>& catalog() {
  static const std::map<std::string, std::function<Report()>> c{
      {"weak-1-over-x", weak_1_over_x}, {"entire-exp", entire_exp},
      {"liouville-cosh", liouville_cosh}, {"annular-exp", annular_exp},
      {"dim-2", dim_2},                 {"dp-3point", dp_3point},
      {"perron-affine", perron_affine}};
  return c;
}

}  // namespace

std::vector<std::string> reproduce_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, fn] : catalog()) ids.push_back(id);
  return ids;
}

Report reproduce(const std::string& id) {
  const auto it = catalog().find(id);
  if (it == catalog().end()) throw InputError("unknown example id '" + id + "'");
  Report rep = it->second();
  // Data tables first so plain CSV output shows the example itself.
  std::rotate(rep.tables.begin(), rep.tables.begin() + 1, rep.tables.end());
  nlohmann::ordered_json head;
  head["command"] = "reproduce";
  head["id"] = id;
  head["pass"] = rep.passed;
  for (auto& [k, v] : rep.summary.items()) head[k] = v;
  rep.summary = std::move(head);
  return rep;
}

}  // namespace hmvp::app
