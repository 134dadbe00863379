#pragma once

// Randomised invariant checks shared by the unit suite and the acceptance
// runner.  Each returns the number of failing cases and a note on the first.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "hmvp/dirichlet.hpp"
#include "hmvp/estimates.hpp"
#include "hmvp/meanvalue.hpp"
#include "hmvp/perron.hpp"

namespace hmvp::testing {

struct PropertyResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
  bool ok() const { return failures == 0 && cases > 0; }
};

inline constexpr int kPropertyCases = 200;
inline constexpr std::uint64_t kPropertySeed = 0x5eed2024;

inline MetricMeasureSpace random_line(std::mt19937_64& rng) {
  static const char* names[] = {"lebesgue", "exp_neg_x", "two_cosh", "exp_neg_abs_x", "abs_x"};
  return line(weights::by_name(names[rng() % 5]));
}

inline FieldFunction random_function(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> c(-2, 2);
  switch (rng() % 5) {
    case 0: return functions::affine(c(rng), c(rng));
    case 1: return functions::square();
    case 2: return functions::one_plus_exp2x();
    case 3: return functions::logistic_inv();
    default: return functions::c_plus_d_exp2x(c(rng), c(rng));
  }
}

inline PropertyResult defect_linearity(int n = kPropertyCases) {
  PropertyResult res{"defect linearity"};
  std::mt19937_64 rng(kPropertySeed);
  std::uniform_real_distribution<double> xs(-2, 2), rs(0.1, 2), co(-3, 3);
  for (int k = 0; k < n; ++k, ++res.cases) {
    const auto s = random_line(rng);
    const auto f = random_function(rng), g = random_function(rng);
    const double a = co(rng), b = co(rng), x = xs(rng), r = rs(rng);
    const double lhs = harmonic_defect(s, linear_combination(a, f, b, g), x, r);
    const double rhs = a * harmonic_defect(s, f, x, r) + b * harmonic_defect(s, g, x, r);
    const double scale = 1 + std::abs(a) * std::abs(f(x + r)) + std::abs(b) * std::abs(g(x + r)) +
                         std::abs(a) * std::abs(f(x - r)) + std::abs(b) * std::abs(g(x - r));
    if (std::abs(lhs - rhs) > 1e-7 * scale) res.fail("x=" + std::to_string(x) + " r=" + std::to_string(r));
  }
  return res;
}

inline PropertyResult defect_shift(int n = kPropertyCases) {
  PropertyResult res{"defect shift invariance"};
  std::mt19937_64 rng(kPropertySeed + 1);
  std::uniform_real_distribution<double> xs(-2, 2), rs(0.1, 2), ms(-10, 10);
  for (int k = 0; k < n; ++k, ++res.cases) {
    const auto s = random_line(rng);
    const auto f = random_function(rng);
    const double m = ms(rng), x = xs(rng), r = rs(rng);
    const double d0 = harmonic_defect(s, f, x, r), d1 = harmonic_defect(s, shifted(f, m), x, r);
    if (std::abs(d0 - d1) > 1e-7 * (1 + std::abs(m) + std::abs(f(x)))) res.fail("m=" + std::to_string(m));
  }
  return res;
}

/// (f - m)_+ and F(f) for convex F are subharmonic when f is harmonic.
inline PropertyResult convex_composition(int n = kPropertyCases) {
  PropertyResult res{"truncation and convex composition"};
  std::mt19937_64 rng(kPropertySeed + 2);
  std::uniform_real_distribution<double> xs(-1, 1), rs(0.1, 1), ms(-2, 4);
  struct Pair {
    MetricMeasureSpace space;
    FieldFunction f;
  };
  const std::vector<Pair> harmonic{
      {line(weights::lebesgue()), functions::affine(1.5, -0.5)},
      {line(weights::exp_neg_x()), functions::one_plus_exp2x()},
      {line(weights::two_cosh()), functions::logistic_inv()},
      {line(weights::exp_neg_x()), functions::c_plus_d_exp2x(-1.0, 0.5)}};
  const std::vector<std::function<double(double)>> convex{
      [](double t) { return t * t; }, [](double t) { return std::abs(t); },
      [](double t) { return std::exp(t); }};
  for (int k = 0; k < n; ++k, ++res.cases) {
    const Pair& p = harmonic[rng() % harmonic.size()];
    const double x = xs(rng), r = rs(rng), m = ms(rng);
    const auto trunc = positive_part(shifted(p.f, m));
    const double dt = harmonic_defect(p.space, trunc, x, r);
    const auto comp = map(p.f, convex[rng() % convex.size()], "F(f)");
    const double dc = harmonic_defect(p.space, comp, x, r);
    if (dt < -1e-8 * (1 + std::abs(p.f(x))) || dc < -1e-8 * (1 + std::abs(comp(x)))) res.fail("x=" + std::to_string(x) + " r=" + std::to_string(r));
  }
  return res;
}

inline PropertyResult symmetric_difference_containment(int n = kPropertyCases) {
  PropertyResult res{"symmetric-difference containment"};
  std::mt19937_64 rng(kPropertySeed + 3);
  std::uniform_real_distribution<double> xs(-3, 3), ds(0.0, 1.0), rs(0.05, 3);
  for (int k = 0; k < n; ++k, ++res.cases) {
    if (k % 2 == 0) {
      const auto s = random_line(rng);
      const double x = xs(rng), r = rs(rng) + 0.01, d = ds(rng) * r * 0.99;
      const double y = (rng() % 2) ? x + d : x - d;
      const double sd = s.symm_diff_measure(x, y, r, r);
      const double bound = liouville_containment_bound(s, x, d, r) * s.ball_measure(x, r);
      if (sd > bound * (1 + 1e-12) + 1e-14) res.fail("line x=" + std::to_string(x));
      if (sd < 0) res.fail("negative");
    } else {
      const MetricMeasureSpace s(random_space(rng, 12));
      const auto& dsp = s.discrete();
      const std::size_t a = rng() % 12, b = rng() % 12;
      const double d = dsp.distance(a, b);
      const double r = d + rs(rng);
      const double sd = s.symm_diff_measure(NodeId{a}, NodeId{b}, r, r);
      // Discrete version of the containment with closed outer ball.
      double bound = 0;
      for (std::size_t j = 0; j < dsp.size(); ++j) {
        const double dj = dsp.distance(a, j);
        if (dj < r + d && dj >= r - d) bound += dsp.mass(j);
      }
      if (sd > bound + 1e-12) res.fail("discrete");
    }
  }
  return res;
}

inline PropertyResult ball_average_range(int n = kPropertyCases) {
  PropertyResult res{"ball average within range"};
  std::mt19937_64 rng(kPropertySeed + 4);
  std::uniform_real_distribution<double> vs(-5, 5), rs(0.5, 4);
  for (int k = 0; k < n; ++k, ++res.cases) {
    const MetricMeasureSpace s(random_space(rng, 10));
    std::vector<double> v(10);
    for (double& t : v) t = vs(rng);
    const auto f = FieldFunction::sampled(v);
    const std::size_t x = rng() % 10;
    const double r = rs(rng);
    const double avg = ball_average(s, f, NodeId{x}, r);
    double lo = 1e300, hi = -1e300;
    for (std::size_t j : s.discrete().ball(x, r)) {
      lo = std::min(lo, v[j]);
      hi = std::max(hi, v[j]);
    }
    if (avg < lo - 1e-12 || avg > hi + 1e-12) res.fail("node " + std::to_string(x));
  }
  return res;
}

inline PropertyResult modification_monotonicity(int n = kPropertyCases) {
  PropertyResult res{"harmonic modification monotonicity"};
  std::mt19937_64 rng(kPropertySeed + 5);
  std::uniform_real_distribution<double> vs(-1, 1), gap(0, 1), cs(0.1, 3);
  const auto g = unit_grid(-1, 1, 0.05);
  std::vector<std::size_t> in;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) in.push_back(i);
  const Domain omega = Domain::nodes(in, {0, g.size() - 1});
  for (int k = 0; k < n; ++k, ++res.cases) {
    std::vector<double> fv(g.size()), hv(g.size()), sv(g.size());
    const double c = cs(rng), b = vs(rng);
    for (std::size_t i = 0; i < g.size(); ++i) {
      fv[i] = vs(rng);
      hv[i] = fv[i] - gap(rng);
      const double x = g.coordinate(i);
      sv[i] = c * x * x + b * x;  // convex, hence subharmonic on the grid
    }
    const std::size_t center = 5 + rng() % (g.size() - 10);
    const double reach = std::min(g.coordinate(center) + 1, 1 - g.coordinate(center));
    const double r = 0.05 + (reach - 0.06) * gap(rng);
    const auto fm = harmonic_modification(g, FieldFunction::sampled(fv), center, r, omega);
    const auto hm = harmonic_modification(g, FieldFunction::sampled(hv), center, r, omega);
    const auto sm = harmonic_modification(g, FieldFunction::sampled(sv), center, r, omega);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (fm.values()[i] < hm.values()[i] - 1e-12) {
        res.fail("f >= h not preserved at node " + std::to_string(i));
        break;
      }
      if (sm.values()[i] < sv[i] - 1e-12) {
        res.fail("modification below subharmonic f at node " + std::to_string(i));
        break;
      }
    }
  }
  return res;
}

inline PropertyResult dp_comparison(int n = kPropertyCases) {
  PropertyResult res{"comparison of DP solutions"};
  std::mt19937_64 rng(kPropertySeed + 6);
  std::uniform_real_distribution<double> bump(0, 2);
  for (int k = 0; k < n; ++k, ++res.cases) {
    DirichletProblem p1 = random_problem(rng, 16);
    DirichletProblem p2 = p1;
    for (std::size_t j : p2.strip.gamma_eps) p2.data[j] += bump(rng);
    const auto s1 = dp_solve_measurable(p1), s2 = dp_solve_measurable(p2);
    const auto u1 = s1.u.values(), u2 = s2.u.values();
    for (std::size_t i : p1.strip.omega_eps) {
      if (u1[i] > u2[i] + 1e-9) {
        res.fail("node " + std::to_string(i));
        break;
      }
    }
  }
  return res;
}

inline PropertyResult dilatation_order(int n = kPropertyCases) {
  PropertyResult res{"lip <= Lip"};
  std::mt19937_64 rng(kPropertySeed + 7);
  std::uniform_real_distribution<double> xs(-2, 2), r0(0.05, 1.0);
  for (int k = 0; k < n; ++k, ++res.cases) {
    const auto s = random_line(rng);
    const auto f = random_function(rng);
    std::vector<double> radii;
    double r = r0(rng);
    for (int i = 0; i < 9; ++i, r *= 0.5) radii.push_back(r);
    const auto d = pointwise_dilatation(s, f, xs(rng), radii, 32);
    if (!(d.lip <= d.upper_lip)) res.fail("lip > Lip");
  }
  return res;
}

/// Iterates nondecreasing and bounded by sup |F| (criteria 5-6 problems).
inline PropertyResult dp_monotone_bounded(const std::vector<DirichletProblem>& problems) {
  PropertyResult res{"DP monotone and bounded"};
  for (const auto& p : problems) {
    ++res.cases;
    double sup_f = 0;
    for (std::size_t j : p.strip.gamma_eps) sup_f = std::max(sup_f, std::abs(p.data[j]));
    const double slack = 8 * std::numeric_limits<double>::epsilon() * std::max(1.0, sup_f);
    SolveOptions o;
    o.keep_iterates = true;
    const auto sol = dp_solve_measurable(p, o);
    const auto& it = sol.trace.iterates;
    bool bad = false;
    for (std::size_t n = 0; n < it.size() && !bad; ++n) {
      for (std::size_t i : p.strip.omega_eps) {
        if (std::abs(it[n][i]) > sup_f + slack) bad = true;
        if (n > 0 && it[n][i] < it[n - 1][i] - slack) bad = true;
      }
    }
    if (bad) res.fail("problem " + std::to_string(res.cases));
  }
  return res;
}

inline std::vector<PropertyResult> all_properties() {
  return {defect_linearity(),          defect_shift(),
          convex_composition(),        symmetric_difference_containment(),
          ball_average_range(),        modification_monotonicity(),
          dp_comparison(),             dilatation_order()};
}

}  // namespace hmvp::testing
