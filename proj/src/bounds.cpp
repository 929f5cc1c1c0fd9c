#include "wpvol/bounds.hpp"

#include <cmath>
#include <limits>
#include <set>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "wpvol/ribbon_graph.hpp"

namespace wpvol {

namespace {

namespace mp = boost::multiprecision;
using Real = mp::cpp_bin_float_50;

void check_surface(int g, int n) {
  if (g < 0) throw PreconditionError("genus must be non-negative");
  if (n < 1) throw PreconditionError("at least one puncture is required");
  if (2 * g + n < 3) throw PreconditionError("need 2g + n >= 3");
}

void check_one_puncture_genus(int g) {
  if (g < 1) throw PreconditionError("one-puncture formulas need genus >= 1");
}

Real factorial(int m) {
  mp::cpp_int f = 1;
  for (int k = 2; k <= m; ++k) f *= k;
  return Real(f);
}

Real power(Real base, Real exponent) { return mp::pow(base, exponent); }
Real power(Real base, int exponent) { return mp::pow(base, exponent); }

const Real& euler_e() {
  static const Real e = mp::exp(Real(1));
  return e;
}

const Real& ln4() {
  static const Real v = mp::log(Real(4));
  return v;
}

BoundValue finish(const Real& x, std::string formula) {
  BoundValue b;
  b.value = x.convert_to<double>();
  b.ln_value = mp::log(x).convert_to<double>();
  b.formula = std::move(formula);
  return b;
}

Real per_graph_real(int g, int n) {
  const int N = trivalent_edge_count(g, n), V = trivalent_vertex_count(g, n);
  return power(Real(2), N) * power(Real(3), V) * power(Real(N), n) *
         power(Real(8) / 3, Real(N - 1) / 2) * power(Real(2 * V), n);
}

Real per_graph_n1_real(int g) {
  const int N = trivalent_edge_count(g, 1), V = trivalent_vertex_count(g, 1);
  return power(Real(2), 4 * g - 2) * power(Real(3), V) * power(Real(8) / 3, Real(N - 1) / 2) *
         Real(N);
}

Real six_over_e(int g) { return power(Real(6) / euler_e(), 2 * g); }

Real cell_count_real(int g) {
  return factorial(2 * g) / Real(trivalent_edge_count(g, 1)) * six_over_e(g);
}

Real triangulation_real(int g, int n) {
  const int N = trivalent_edge_count(g, n);
  return factorial(2 * g) * power(Real(N), 2 * n - 3) / power(Real(2), n - 1) * six_over_e(g);
}

Real total_real(int g, int n, BoundVariant variant) {
  switch (variant) {
    case BoundVariant::Assembled:
      if (n == 1) return cell_count_real(g) * per_graph_n1_real(g);
      return triangulation_real(g, n) * per_graph_real(g, n);
    case BoundVariant::ConclusionN1:
      if (n != 1) throw PreconditionError("the conclusion-n1 variant needs n = 1");
      return factorial(2 * g) * power(Real(2), 4 * g - 2) * power(Real(3), 4 * g - 2) *
             power(ln4(), 6 * g - 3) * six_over_e(g);
    case BoundVariant::GeneralN: {
      const int N = trivalent_edge_count(g, n), V = trivalent_vertex_count(g, n);
      return triangulation_real(g, n) * power(Real(2), N) * power(Real(3), V) *
             power(Real(N), n) * power(Real(8) / 3, Real(N) / 2) * power(Real(2 * V), n);
    }
  }
  throw PreconditionError("unknown bound variant");
}

const char* total_formula(BoundVariant variant, int n) {
  switch (variant) {
    case BoundVariant::Assembled:
      return n == 1 ? "[(2g)!/N (6/e)^{2g}] * [2^{4g-2} 3^V (8/3)^{(N-1)/2} N]"
                    : "[(2g)! N^{2n-3}/2^{n-1} (6/e)^{2g}] * [2^N 3^V N^n (8/3)^{(N-1)/2} (2V)^n]";
    case BoundVariant::ConclusionN1:
      return "(2g)! 2^{4g-2} 3^{4g-2} (ln 4)^{6g-3} (6/e)^{2g}";
    case BoundVariant::GeneralN:
      return "(2g)! N^{2n-3}/2^{n-1} (6/e)^{2g} 2^N 3^V N^n (8/3)^{N/2} (2V)^n";
  }
  return "";
}

}  // namespace

BoundValue per_graph_bound(int g, int n) {
  check_surface(g, n);
  return finish(per_graph_real(g, n), "2^N 3^V N^n (8/3)^{(N-1)/2} (2V)^n");
}

BoundValue per_graph_bound_n1(int g) {
  check_one_puncture_genus(g);
  return finish(per_graph_n1_real(g), "2^{4g-2} 3^V (8/3)^{(N-1)/2} N");
}

BoundValue cell_count_asymptotic(int g) {
  check_one_puncture_genus(g);
  return finish(cell_count_real(g), "(2g)!/N (6/e)^{2g}");
}

BoundValue triangulation_bound(int g, int n) {
  check_surface(g, n);
  return finish(triangulation_real(g, n), "(2g)! N^{2n-3}/2^{n-1} (6/e)^{2g}");
}

BoundValue penner_lower_bound(int g) {
  check_one_puncture_genus(g);
  const Real x = power(Real(8) * euler_e() * euler_e() / 9, 2 * g) * factorial(2 * g) /
                 (Real(2) * power(Real(6 * g - 3), 2));
  return finish(x, "(8e^2/9)^{2g} (2g)!/(2 (6g-3)^2)");
}

const char* variant_name(BoundVariant v) {
  switch (v) {
    case BoundVariant::Assembled: return "assembled";
    case BoundVariant::ConclusionN1: return "conclusion-n1";
    case BoundVariant::GeneralN: return "general-n";
  }
  return "unknown";
}

BoundVariant parse_variant(const std::string& name) {
  for (BoundVariant v : {BoundVariant::Assembled, BoundVariant::ConclusionN1, BoundVariant::GeneralN})
    if (name == variant_name(v)) return v;
  throw PreconditionError("unknown bound variant '" + name +
                          "' (expected assembled, conclusion-n1 or general-n)");
}

BoundValue total_upper_bound(int g, int n, BoundVariant variant) {
  check_surface(g, n);
  if (n == 1) check_one_puncture_genus(g);
  return finish(total_real(g, n, variant), total_formula(variant, n));
}

double conclusion_over_assembled_ln(int g) {
  check_one_puncture_genus(g);
  return ((6 * g - 3) * mp::log(ln4()) - (3 * g - 2) * mp::log(Real(8) / 3)).convert_to<double>();
}

double stated_growth_constant() {
  return (power(Real(2), 17) * 27 / (euler_e() * euler_e())).convert_to<double>();
}

double effective_growth_constant(int g, int n) {
  check_surface(g, n);
  if (g < 1) throw PreconditionError("growth constant needs genus >= 1");
  const Real ratio = total_real(g, n, BoundVariant::GeneralN) / factorial(2 * g);
  return mp::pow(ratio, Real(1) / g).convert_to<double>();
}

std::vector<LimitRow> limit_report(int g_max, int n, BoundVariant variant) {
  if (g_max < 2) throw PreconditionError("limit report needs g_max >= 2");
  std::vector<LimitRow> rows;
  for (int g = 2; g <= g_max; ++g) {
    LimitRow r;
    r.genus = g;
    r.ln_total = total_upper_bound(g, n, variant).ln_value;
    r.ratio = r.ln_total / (g * std::log(static_cast<double>(g)));
    rows.push_back(r);
  }
  return rows;
}

RatioTrend ratio_trend(BoundVariant variant, int g_low, int g_high) {
  if (g_low < 2 || g_high <= g_low) throw PreconditionError("need 2 <= g_low < g_high");
  auto ratio = [&](int g) {
    return total_upper_bound(g, 1, variant).ln_value / (g * std::log(static_cast<double>(g)));
  };
  RatioTrend t;
  t.ratio_low = ratio(g_low);
  t.ratio_high = ratio(g_high);
  t.below_three = t.ratio_low < 3.0;
  t.decreasing = t.ratio_high < t.ratio_low;
  return t;
}

BoundReport bound_report(int g, int n, BoundVariant variant, bool include_exact) {
  check_surface(g, n);
  if (g < 1) throw PreconditionError("bound report needs genus >= 1");
  BoundReport r;
  r.genus = g;
  r.punctures = n;
  r.variant = variant;
  r.per_graph = per_graph_bound(g, n);
  if (n == 1) {
    r.per_graph_n1 = per_graph_bound_n1(g);
    r.penner_lower = penner_lower_bound(g);
  }
  r.cell_count_asymptotic = cell_count_asymptotic(g);
  r.triangulation = triangulation_bound(g, n);
  r.total_upper = total_upper_bound(g, n, variant);
  r.limit_ratio = g > 1 ? r.total_upper.ln_value / (g * std::log(static_cast<double>(g)))
                        : std::numeric_limits<double>::quiet_NaN();
  if (include_exact && trivalent_vertex_count(g, n) <= EnumerationOptions{}.max_vertices) {
    const auto classes = enumerate_trivalent(g, n);
    r.cell_count_exact = static_cast<std::int64_t>(classes.size());
    double w = 0;
    for (const auto& c : classes) w += 1.0 / c.aut_order;
    r.aut_weighted_count = w;
  }
  return r;
}

std::int64_t count_triangulations_exact(int g, int n) {
  check_surface(g, n);
  return static_cast<std::int64_t>(enumerate_trivalent(g, n).size());
}

CountingCheck verify_counting_recursion(int g, int n) {
  check_surface(g, n);
  if (n < 2 || 2 * g + n - 1 < 3)
    throw PreconditionError("the counting recursion needs (g, n-1) to be a valid surface");
  const auto upper = enumerate_trivalent(g, n);
  const auto lower = enumerate_trivalent(g, n - 1);
  const int N = trivalent_edge_count(g, n);

  CountingCheck c;
  c.count = static_cast<std::int64_t>(upper.size());
  c.count_previous = static_cast<std::int64_t>(lower.size());
  c.limit = static_cast<double>(N) * N / 2.0 * static_cast<double>(c.count_previous);
  c.inequality = static_cast<double>(c.count) < c.limit;

  std::set<std::pair<std::vector<int>, std::vector<int>>> catalog;
  for (const auto& iso : lower) catalog.emplace(iso.canonical.sigma(), iso.canonical.alpha());

  for (const auto& iso : upper) {
    const RibbonGraph t = dual(iso.canonical);
    const auto edges = non_loop_edges(t);
    if (edges.empty()) c.every_graph_has_non_loop = false;
    for (int e : edges) {
      ++c.contractions;
      const RibbonGraph contracted = dual(contract_puncture_pair(t, e));
      if (!contracted.is_trivalent() || contracted.genus() != g ||
          contracted.num_faces() != n - 1)
        continue;
      const IsoClass k = canonical_form(contracted);
      if (catalog.count({k.canonical.sigma(), k.canonical.alpha()})) ++c.contractions_in_catalog;
    }
  }
  return c;
}

}  // namespace wpvol
