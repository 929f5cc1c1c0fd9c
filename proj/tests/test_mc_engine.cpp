#include <doctest.h>

#include <numeric>
#include <set>

#include "fixtures.hpp"
#include "wpvol/mc_engine.hpp"

using namespace wpvol;

namespace {

bool within_joint_sigma(const McEstimate& a, const McEstimate& b, double k) {
  return std::abs(a.mean - b.mean) <= k * std::hypot(a.std_error, b.std_error);
}

}  // namespace

TEST_CASE("counter streams are deterministic and in the open unit interval") {
  CounterRng a(5, 17), b(5, 17), c(5, 18);
  std::set<double> seen;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x > 0.0);
    CHECK(x < 1.0);
    seen.insert(x);
  }
  CHECK(seen.size() == 1000);
  CHECK(CounterRng(5, 17).next_u64() != c.next_u64());
}

TEST_CASE("directions lie on the open simplex") {
  for (std::int64_t i = 0; i < 100; ++i) {
    const auto u = DomainSampler::direction(3, i, 9);
    CHECK(std::accumulate(u.begin(), u.end(), 0.0) == doctest::Approx(1.0));
    for (double x : u) CHECK(x > 0);
    CHECK(u == DomainSampler::direction(3, i, 9));
  }
}

TEST_CASE("the barycenter of theta maps to twelves") {
  const RibbonGraph g = fixtures::theta();
  const std::vector<double> u{1.0 / 3, 1.0 / 3, 1.0 / 3};
  const SliceMap m = slice_map_simplex(g, u, JacobianMode::Analytic);
  for (double l : m.lambda) CHECK(l == doctest::Approx(12.0));
  CHECK(rho_total(g, m.lambda) == doctest::Approx(1.0));
}

TEST_CASE("analytic and finite-difference Jacobians agree") {
  for (const auto& c : enumerate_trivalent(2, 1)) {
    const RibbonGraph& g = c.canonical;
    DomainSampler s(g, 9);
    for (int trial = 0; trial < 5; ++trial) {
      const auto l = s.next();
      REQUIRE(l);
      std::vector<double> u(l->values().begin(), l->values().end());
      const double total = std::accumulate(u.begin(), u.end(), 0.0);
      for (double& x : u) x /= total;
      const SliceMap a = slice_map_simplex(g, u, JacobianMode::Analytic);
      const SliceMap f = slice_map_simplex(g, u, JacobianMode::FiniteDifference);
      const double scale = a.jacobian.cwiseAbs().maxCoeff();
      CHECK((a.jacobian - f.jacobian).cwiseAbs().maxCoeff() < 1e-6 * scale);
      // rho stays at one along every column
      for (int k = 0; k < a.jacobian.cols(); ++k) {
        std::vector<double> grad(g.num_edges());
        rho_total_gradient(g, a.lambda, grad);
        double d = 0;
        for (int j = 0; j < g.num_edges(); ++j) d += grad[j] * a.jacobian(j, k);
        CHECK(std::abs(d) < 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("domain points are in the cell and follow draw order") {
  for (const auto& c : enumerate_trivalent(2, 1)) {
    const RibbonGraph& g = c.canonical;
    const auto pts = sample_domain_points(g, 4, 30);
    REQUIRE(pts.size() == 30);
    DomainSampler serial(g, 4);
    for (const auto& p : pts) {
      const auto d = diagnostics(g, p.values(), 1e-9);
      CHECK(d.in_domain);
      CHECK(d.triangle_ok);
      CHECK(d.lambda_above_four);
      const auto q = serial.next();
      REQUIRE(q);
      CHECK(std::vector<double>(q->values().begin(), q->values().end()) ==
            std::vector<double>(p.values().begin(), p.values().end()));
    }
  }
  CHECK_THROWS_AS(DomainSampler(fixtures::planar_theta(), 1), PreconditionError);
}

TEST_CASE("estimates do not depend on the shard count") {
  const RibbonGraph g = fixtures::theta();
  SamplerConfig cfg;
  cfg.samples = 50000;
  cfg.seed = 77;
  const McEstimate serial = estimate_cell_volume_n1_serial(g, cfg);
  for (int shards : {1, 2, 4, 7}) {
    cfg.shards = shards;
    const McEstimate p = estimate_cell_volume_n1(g, cfg);
    CHECK(p.mean == serial.mean);
    CHECK(p.std_error == serial.std_error);
    CHECK(p.accepted == serial.accepted);
  }
}

TEST_CASE("theta cell volume is positive and below the per-graph bound") {
  const RibbonGraph g = fixtures::theta();
  SamplerConfig cfg;
  cfg.samples = 200000;
  const McEstimate e = estimate_cell_volume_n1(g, cfg);
  CHECK(e.mean - 3 * e.std_error > 0);
  CHECK(e.mean + 3 * e.std_error < 288);
  CHECK(e.accept_rate > 0.05);
  CHECK(e.tail_fraction >= 0);
  CHECK(e.mean_without_tail <= e.mean);
}

TEST_CASE("gauges and proposals agree") {
  const RibbonGraph g = fixtures::theta();
  SamplerConfig cfg;
  cfg.samples = 200000;
  const McEstimate simplex = estimate_cell_volume_n1(g, cfg);
  cfg.gauge = Gauge::MaxNorm;
  cfg.seed = 2;
  const McEstimate cube = estimate_cell_volume_n1(g, cfg);
  CHECK(within_joint_sigma(simplex, cube, 3));
  cfg.gauge = Gauge::Simplex;
  cfg.jacobian = JacobianMode::FiniteDifference;
  cfg.seed = 3;
  const McEstimate fd = estimate_cell_volume_n1(g, cfg);
  CHECK(within_joint_sigma(simplex, fd, 3));
  cfg.jacobian = JacobianMode::Analytic;
  cfg.proposal = Proposal::LogUniform;
  cfg.cutoff = 1e4;
  cfg.samples = 1000000;
  cfg.seed = 4;
  const McEstimate shell = estimate_cell_volume_n1(g, cfg);
  MESSAGE("simplex " << simplex.mean << " +- " << simplex.std_error << ", shell " << shell.mean
                     << " +- " << shell.std_error);
  CHECK(within_joint_sigma(simplex, shell, 3));
}

TEST_CASE("relabeled theta gives the same volume") {
  const RibbonGraph g = fixtures::theta();
  const std::vector<int> perm{1, 2, 0, 5, 3, 4};
  const RibbonGraph r = relabel(g, perm);
  SamplerConfig cfg;
  cfg.samples = 200000;
  const McEstimate a = estimate_cell_volume_n1(g, cfg);
  cfg.seed = 11;
  const McEstimate b = estimate_cell_volume_n1(r, cfg);
  CHECK(within_joint_sigma(a, b, 3));
}

TEST_CASE("standard error scales like one over root n") {
  const RibbonGraph g = fixtures::theta();
  double ratio_sum = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SamplerConfig cfg;
    cfg.seed = seed;
    cfg.samples = 40000;
    const double s1 = estimate_cell_volume_n1(g, cfg).std_error;
    cfg.samples = 80000;
    const double s2 = estimate_cell_volume_n1(g, cfg).std_error;
    ratio_sum += s2 / s1;
  }
  const double ratio = ratio_sum / 5;
  CHECK(ratio > 0.8 / std::sqrt(2.0));
  CHECK(ratio < 1.2 / std::sqrt(2.0));
}

TEST_CASE("estimator preconditions") {
  const RibbonGraph g = fixtures::theta();
  SamplerConfig cfg;
  cfg.samples = 0;
  CHECK_THROWS_AS(estimate_cell_volume_n1(g, cfg), PreconditionError);
  cfg.samples = 10;
  cfg.proposal = Proposal::LogUniform;
  cfg.cutoff = 3.0;
  CHECK_THROWS_AS(estimate_cell_volume_n1(g, cfg), PreconditionError);
  CHECK_THROWS_AS(estimate_cell_volume_n1(fixtures::planar_theta(), SamplerConfig{}),
                  PreconditionError);

  // a single rejected proposal has nothing to average
  SamplerConfig one;
  one.samples = 1;
  const TwoFormMatrix b = two_form_matrix(g);
  for (one.seed = 1; sample_weight(g, b, one, 0).accepted; ++one.seed) {
  }
  CHECK_THROWS_AS(estimate_cell_volume_n1(g, one), Error);
}
