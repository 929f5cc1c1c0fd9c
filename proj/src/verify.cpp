#include "wpvol/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "wpvol/bounds.hpp"
#include "wpvol/decomposition.hpp"
#include "wpvol/mc_engine.hpp"
#include "wpvol/penner_coords.hpp"
#include "wpvol/rng.hpp"
#include "wpvol/serialize.hpp"
#include "wpvol/wp_form.hpp"

namespace wpvol {

using nlohmann::json;

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

json SuiteReport::to_json() const {
  json out = {{"suite", suite}, {"pass", pass()}, {"checks", json::array()}};
  for (const auto& c : checks)
    out["checks"].push_back(
        {{"name", c.name}, {"property", c.property}, {"pass", c.pass}, {"detail", c.detail}});
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"triangle", "lemmas",        "forms",
                                                 "stokes",   "decomposition", "counting"};
  return names;
}

namespace {

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

/// Log-uniform positive lambda in [0.5, 50], keyed by (seed, index).
std::vector<double> random_lambda(std::uint64_t seed, std::int64_t index, int n) {
  CounterRng rng(seed, static_cast<std::uint64_t>(index));
  std::vector<double> l(n);
  for (double& x : l) x = 0.5 * std::exp(std::log(100.0) * rng.uniform());
  return l;
}

std::vector<IsoClass> catalog(int g, int n, const VerifyOptions& o) {
  return load_or_enumerate(g, n, o.cache_dir);
}

void add(SuiteReport& r, std::string name, std::string property, bool pass, json detail) {
  r.checks.push_back({std::move(name), std::move(property), pass, std::move(detail)});
}

// ---------------------------------------------------------------------------

SuiteReport triangle_suite(const VerifyOptions& o) {
  if (o.punctures != 1)
    throw PreconditionError("the triangle suite samples the one-puncture slice; use -n 1");
  SuiteReport r{"triangle", {}};
  const auto classes = catalog(o.genus, 1, o);
  // Spread the sample budget over the classes so larger genera stay bounded.
  const std::int64_t per_graph =
      std::max<std::int64_t>(1, o.samples / static_cast<std::int64_t>(classes.size()));
  std::int64_t points = 0, outside = 0, triangle = 0, small = 0, rho_big = 0, linked_bad = 0;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const RibbonGraph& g = classes[k].canonical;
    for (const auto& lambda : sample_domain_points(g, o.seed + k, per_graph)) {
      ++points;
      const auto d = diagnostics(g, lambda.values(), 1e-9);
      outside += !d.in_domain;
      triangle += !d.triangle_ok;
      small += !d.lambda_above_four;
      rho_big += !d.rho_below_8v_over_mu;
      // the two non-minimal edges at each vertex are linked
      for (const auto& cycle : g.vertex_cycles()) {
        std::array<double, 3> l{lambda[g.edge_of(cycle[0])], lambda[g.edge_of(cycle[1])],
                                lambda[g.edge_of(cycle[2])]};
        std::sort(l.begin(), l.end());
        const double ratio = l[2] / l[1];
        if (ratio > 2.0 || ratio < 0.5) ++linked_bad;
      }
    }
  }
  const json base = {{"genus", o.genus}, {"graphs", classes.size()}, {"points", points}};
  auto with = [&](const char* key, std::int64_t v) {
    json j = base;
    j["violations"] = v;
    j["counted"] = key;
    return j;
  };
  add(r, "samples_in_domain", "sampled_points_lie_in_cell", outside == 0, with("outside", outside));
  add(r, "triangle_inequality", "triangle_inequality_in_cell", triangle == 0,
      with("triangle", triangle));
  add(r, "lambda_above_four", "lambda_exceeds_four_in_cell", small == 0, with("small", small));
  add(r, "rho_below_8v_over_mu", "rho_below_8V_over_min_lambda", rho_big == 0,
      with("rho", rho_big));
  add(r, "linked_ratio", "linked_edges_within_factor_two", linked_bad == 0,
      with("linked", linked_bad));

  // f/g + g/f - e^2/(fg) + 2 has the sign of f + g - e
  std::int64_t mismatches = 0;
  for (std::int64_t i = 0; i < o.samples; ++i) {
    const auto t = random_lambda(o.seed ^ 0x7a11, i, 3);
    const double e = t[0], f = t[1], gg = t[2];
    const double lhs = f / gg + gg / f - e * e / (f * gg) + 2.0;
    if ((lhs > 0) != (f + gg - e > 0)) ++mismatches;
  }
  add(r, "sign_equivalence", "x_term_sign_matches_triangle_sign", mismatches == 0,
      {{"triples", o.samples}, {"mismatches", mismatches}});
  return r;
}

// ---------------------------------------------------------------------------

SuiteReport lemmas_suite(const VerifyOptions&) {
  SuiteReport r{"lemmas", {}};
  auto sweep = [&](Lemma which, double lo, double hi, int count, int m) {
    json rows = json::array();
    bool ok = true;
    for (int i = 0; i < count; ++i) {
      LemmaParams p;
      p.fixed = lo * std::pow(hi / lo, count > 1 ? double(i) / (count - 1) : 0.0);
      p.chain_length = m;
      p.tolerance = 1e-8;
      const LemmaCheck c = verify_lemma(which, p);
      ok = ok && c.pass;
      json row = {{"fixed", p.fixed},     {"numeric", c.numeric}, {"error", c.error},
                  {"tail", c.tail_bound}, {"bound", c.bound},     {"pass", c.pass}};
      if (which == Lemma::MinimalPair) row["series"] = c.series;
      rows.push_back(row);
    }
    std::string name = lemma_name(which);
    if (which == Lemma::ChainProduct || which == Lemma::WheelProduct)
      name += "_m" + std::to_string(m);
    add(r, name, std::string(lemma_name(which)) + "_below_constant", ok, {{"settings", rows}});
  };
  sweep(Lemma::LinkedSingle, 4.5, 1e4, 20, 2);
  sweep(Lemma::LinkedPair, 4.0, 1e4, 20, 2);
  sweep(Lemma::MinimalPair, 4.5, 1e4, 20, 2);
  sweep(Lemma::ChainProduct, 4.5, 1e4, 10, 2);
  sweep(Lemma::ChainProduct, 4.5, 1e4, 10, 3);
  sweep(Lemma::WheelProduct, 4.0, 1e4, 10, 2);
  sweep(Lemma::WheelProduct, 4.0, 1e4, 10, 3);

  const IntoutCheck t = intout_theta_check(12.0, 1e-8);
  add(r, "theta_two_edge_integral", "theta_integral_below_8_3", t.pass,
      {{"mu", 12.0},
       {"numeric", t.numeric},
       {"error", t.error},
       {"tail", t.tail_bound},
       {"bound", t.bound},
       {"margin", t.margin}});
  return r;
}

// ---------------------------------------------------------------------------

SuiteReport forms_suite(const VerifyOptions& o) {
  SuiteReport r{"forms", {}};
  const int g0 = o.genus, n0 = o.punctures;
  const auto classes = catalog(g0, n0, o);

  bool matrix_ok = true;
  int worst_entry = 0;
  for (const auto& c : classes) {
    const TwoFormMatrix b = two_form_matrix(c.canonical);
    for (int j = 0; j < b.size(); ++j)
      for (int k = 0; k < b.size(); ++k) {
        worst_entry = std::max(worst_entry, std::abs(b(j, k)));
        if (b(j, k) != -b(k, j) || b(j, k) % 2 != 0 || std::abs(b(j, k)) > 4) matrix_ok = false;
      }
  }
  add(r, "two_form_matrix", "two_form_even_antisymmetric_bounded", matrix_ok,
      {{"graphs", classes.size()}, {"max_abs_entry", worst_entry}});

  const int N = trivalent_edge_count(g0, n0);
  if (N <= kMaxExactExpansionEdges) {
    std::int64_t worst = 0, coefficients = 0;
    bool n1_pattern = true;
    for (const auto& c : classes) {
      const auto expansion = volume_form_coeffs(c.canonical);
      for (const auto& [omitted, a] : expansion.coefficients) {
        ++coefficients;
        worst = std::max(worst, std::abs(a));
        if (n0 == 1 && std::abs(a) != (std::int64_t{1} << (4 * g0 - 2))) n1_pattern = false;
      }
      if (n0 == 1 && static_cast<int>(expansion.coefficients.size()) != N) n1_pattern = false;
    }
    add(r, "coefficient_bound", "volume_coefficients_at_most_2_pow_N", worst <= (1LL << N),
        {{"coefficients", coefficients}, {"max_abs", worst}, {"limit", 1LL << N}});
    if (n0 == 1)
      add(r, "one_puncture_coefficients", "one_puncture_coefficients_are_2_pow_4g_minus_2",
          n1_pattern, {{"expected_abs", 1LL << (4 * g0 - 2)}});
  }

  if (n0 == 1) {
    const std::int64_t per_graph = std::max<std::int64_t>(
        1, std::min<std::int64_t>(o.samples, 1000) / static_cast<std::int64_t>(classes.size()));
    double worst_density = 0, worst_pf = 0;
    std::int64_t points = 0;
    for (std::size_t k = 0; k < classes.size(); ++k) {
      const RibbonGraph& g = classes[k].canonical;
      const TwoFormMatrix b = two_form_matrix(g);
      for (const auto& lambda : sample_domain_points(g, o.seed + k, per_graph)) {
        ++points;
        std::vector<double> u(lambda.values().begin(), lambda.values().end());
        const double total = std::accumulate(u.begin(), u.end(), 0.0);
        for (double& x : u) x /= total;
        const SliceMap map = slice_map_simplex(g, u, JacobianMode::Analytic);
        const double pf = density_at(b, map.lambda, map.jacobian);
        const double ex = explicit_density_n1(g, map.lambda, map.jacobian);
        worst_density = std::max(worst_density, rel_err(std::abs(pf), std::abs(ex)));
        // Pf^2 = det on the restricted form
        Eigen::MatrixXd m = b.to_dense();
        for (int j = 0; j < m.rows(); ++j)
          for (int l = 0; l < m.cols(); ++l) m(j, l) /= map.lambda[j] * map.lambda[l];
        const Eigen::MatrixXd restricted = map.jacobian.transpose() * m * map.jacobian;
        worst_pf = std::max(worst_pf, rel_err(pf * pf, restricted.determinant()));
      }
    }
    add(r, "pfaffian_vs_explicit", "pfaffian_density_equals_explicit_form", worst_density <= 1e-9,
        {{"points", points}, {"max_rel_err", worst_density}, {"tolerance", 1e-9}});
    add(r, "pfaffian_squared", "pfaffian_squared_equals_determinant", worst_pf <= 1e-9,
        {{"points", points}, {"max_rel_err", worst_pf}, {"tolerance", 1e-9}});
  }
  return r;
}

// ---------------------------------------------------------------------------

SuiteReport stokes_suite(const VerifyOptions& o) {
  SuiteReport r{"stokes", {}};
  const auto classes = catalog(o.genus, o.punctures, o);
  double worst_total = 0, worst_face = 0, worst_scale = 0, worst_fd = 0, worst_ratio = 0;
  std::int64_t identity_points = 0, derivative_points = 0, bound_violations = 0;
  int loop_graphs = 0;
  const std::int64_t per_graph =
      std::max<std::int64_t>(1, o.samples / static_cast<std::int64_t>(classes.size()));
  const std::int64_t per_graph_d = std::max<std::int64_t>(
      1, std::min<std::int64_t>(o.samples, 1000) / static_cast<std::int64_t>(classes.size()));

  for (std::size_t k = 0; k < classes.size(); ++k) {
    const RibbonGraph& g = classes[k].canonical;
    const int N = g.num_edges();
    for (std::int64_t i = 0; i < per_graph; ++i) {
      auto lambda = random_lambda(o.seed + k, i, N);
      ++identity_points;
      const auto x = simplicial_coordinates(g, lambda);
      const double xs = std::accumulate(x.begin(), x.end(), 0.0);
      double rho_sum = 0;
      for (int f = 0; f < g.num_faces(); ++f) {
        const FaceSum s = rho_face(g, lambda, f);
        worst_face = std::max(worst_face, rel_err(s.path, s.sector));
        rho_sum += s.value();
      }
      worst_total = std::max(worst_total, rel_err(rho_sum, 2 * xs));
      const double t = 1.0 + 3.0 * CounterRng(o.seed + k, i).uniform();
      std::vector<double> scaled(lambda);
      for (double& v : scaled) v *= t;
      worst_scale = std::max(worst_scale, rel_err(rho_total(g, scaled) * t, rho_total(g, lambda)));
    }

    // The derivative bound needs every face corner to involve a given edge
    // at most once, which fails at a loop; loop graphs are reported apart.
    const bool loops = g.has_loop();
    loop_graphs += loops;
    for (std::int64_t i = 0; i < per_graph_d; ++i) {
      auto lambda = random_lambda(o.seed + 7919 + k, i, N);
      ++derivative_points;
      for (int f = 0; f < g.num_faces(); ++f) {
        const double rho = rho_face(g, lambda, f).value();
        for (int e = 0; e < N; ++e) {
          const double d = drho_dlambda(g, lambda, f, e);
          const double scale_ref = rho / lambda[e];
          const double ratio = std::abs(d) / scale_ref;
          if (!loops) {
            worst_ratio = std::max(worst_ratio, ratio);
            if (ratio > 1.0 + 1e-12) ++bound_violations;
          }
          const double h = 1e-5 * lambda[e];
          std::vector<double> p(lambda), m(lambda);
          p[e] += h;
          m[e] -= h;
          const double fd = (rho_face(g, p, f).value() - rho_face(g, m, f).value()) / (2 * h);
          worst_fd = std::max(worst_fd, std::abs(fd - d) / scale_ref);
        }
      }
    }
  }
  add(r, "rho_total_identity", "rho_total_equals_twice_sum_x", worst_total <= 1e-12,
      {{"points", identity_points}, {"max_rel_err", worst_total}});
  add(r, "rho_path_vs_sector", "face_path_sum_equals_sector_sum", worst_face <= 1e-12,
      {{"points", identity_points}, {"max_rel_err", worst_face}});
  add(r, "rho_homogeneity", "rho_has_degree_minus_one", worst_scale <= 1e-12,
      {{"points", identity_points}, {"max_rel_err", worst_scale}});
  add(r, "derivative_bound", "drho_bounded_by_rho_over_lambda", bound_violations == 0,
      {{"points", derivative_points},
       {"loop_free_graphs", static_cast<int>(classes.size()) - loop_graphs},
       {"graphs_with_loops_skipped", loop_graphs},
       {"max_ratio", worst_ratio},
       {"violations", bound_violations}});
  add(r, "derivative_finite_difference", "analytic_drho_matches_central_difference",
      worst_fd <= 1e-6, {{"points", derivative_points}, {"max_rel_err", worst_fd}});
  return r;
}

// ---------------------------------------------------------------------------

SuiteReport decomposition_suite(const VerifyOptions& o) {
  SuiteReport r{"decomposition", {}};
  const auto classes = catalog(o.genus, o.punctures, o);
  std::int64_t runs = 0, failures = 0;
  json first_failure;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const RibbonGraph& g = classes[k].canonical;
    const bool exhaustive = g.num_vertices() <= 4;
    const std::uint64_t total = LinkingChoice::count(g);
    const std::uint64_t choices = exhaustive ? total : 100;
    for (std::uint64_t c = 0; c < choices; ++c) {
      const std::uint64_t index =
          exhaustive ? c : CounterRng(o.seed + k, static_cast<std::uint64_t>(c)).next_u64() % total;
      const LinkingChoice choice = LinkingChoice::from_index(g, index);
      for (int mu = 0; mu < g.num_edges(); ++mu) {
        ++runs;
        std::string why;
        try {
          if (!decompose(g, choice, mu).partitions_edges(g.num_edges())) why = "not a partition";
        } catch (const DecompositionError& e) {
          why = e.what();
        }
        if (!why.empty()) {
          if (failures == 0)
            first_failure = {{"graph", graph_to_json(g)}, {"choice", index}, {"mu", mu},
                             {"reason", why}};
          ++failures;
        }
      }
    }
  }
  json detail = {{"graphs", classes.size()}, {"runs", runs}, {"failures", failures}};
  if (failures) detail["first_failure"] = first_failure;
  add(r, "decomposition_total", "decomposition_partitions_edges", failures == 0, detail);
  return r;
}

// ---------------------------------------------------------------------------

SuiteReport counting_suite(const VerifyOptions& o) {
  SuiteReport r{"counting", {}};
  const int g = o.genus;
  const int n = std::max({o.punctures, 2, 4 - 2 * g});
  const CountingCheck c = verify_counting_recursion(g, n);
  add(r, "counting_recursion", "count_below_half_N_squared_times_previous", c.inequality,
      {{"genus", g},
       {"punctures", n},
       {"count", c.count},
       {"count_previous", c.count_previous},
       {"limit", c.limit}});
  add(r, "contraction_closure", "contractions_land_in_previous_catalog",
      c.contractions == c.contractions_in_catalog && c.every_graph_has_non_loop,
      {{"contractions", c.contractions},
       {"in_catalog", c.contractions_in_catalog},
       {"every_graph_has_non_loop_edge", c.every_graph_has_non_loop}});

  if (g >= 1) {
    // exact arithmetic of the closed forms at genus 1
    const double pg = per_graph_bound(1, 1).value, pg1 = per_graph_bound_n1(1).value;
    const double cc = cell_count_asymptotic(1).value, pl = penner_lower_bound(1).value;
    const double cc_expected = 24.0 / std::exp(2.0);
    const bool ok = std::abs(pg - 2304) < 1e-9 && std::abs(pg1 - 288) < 1e-9 &&
                    rel_err(cc, cc_expected) <= 1e-12 && std::abs(pl - 4.794) <= 1e-3;
    add(r, "bound_arithmetic", "bound_formulas_at_genus_one", ok,
        {{"per_graph_bound", pg},
         {"per_graph_bound_n1", pg1},
         {"cell_count_asymptotic", cc},
         {"penner_lower_bound", pl}});

    double worst = 0;
    for (int k = 1; k <= 10; ++k) {
      const double direct = total_upper_bound(k, 1, BoundVariant::ConclusionN1).ln_value -
                            total_upper_bound(k, 1, BoundVariant::Assembled).ln_value;
      worst = std::max(worst, std::abs(direct - conclusion_over_assembled_ln(k)));
    }
    add(r, "variant_ratio", "conclusion_over_assembled_closed_form", worst <= 1e-9,
        {{"max_abs_log_err", worst}});

    bool lower_ok = true;
    for (int k = 1; k <= 20; ++k)
      lower_ok = lower_ok && penner_lower_bound(k).ln_value <
                                 total_upper_bound(k, 1, BoundVariant::ConclusionN1).ln_value;
    add(r, "lower_below_upper", "lower_bound_below_upper_bound", lower_ok, {{"genera", "1..20"}});

    json rows = json::array();
    const double c_stated = stated_growth_constant();
    for (int k : {10, 20, 30}) {
      const double c_eff = effective_growth_constant(k, o.punctures);
      rows.push_back({{"genus", k}, {"effective", c_eff}, {"ratio_to_stated", c_eff / c_stated}});
    }
    const double d10 = std::abs(std::log(rows[0]["ratio_to_stated"].get<double>()));
    const double d30 = std::abs(std::log(rows[2]["ratio_to_stated"].get<double>()));
    add(r, "growth_constant", "effective_constant_approaches_stated", d30 < d10,
        {{"stated", c_stated}, {"punctures", o.punctures}, {"rows", rows}});
  }
  return r;
}

}  // namespace

SuiteReport run_suite(const std::string& name, const VerifyOptions& options) {
  if (options.samples <= 0) throw PreconditionError("sample count must be positive");
  if (name == "triangle") return triangle_suite(options);
  if (name == "lemmas") return lemmas_suite(options);
  if (name == "forms") return forms_suite(options);
  if (name == "stokes") return stokes_suite(options);
  if (name == "decomposition") return decomposition_suite(options);
  if (name == "counting") return counting_suite(options);
  throw PreconditionError("unknown suite '" + name + "'");
}

}  // namespace wpvol
