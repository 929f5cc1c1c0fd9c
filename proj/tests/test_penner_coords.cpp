#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "wpvol/penner_coords.hpp"

using namespace wpvol;

namespace {

std::vector<RibbonGraph> sample_graphs() {
  std::vector<RibbonGraph> out{fixtures::theta(), fixtures::planar_theta(), fixtures::dumbbell()};
  for (const auto& [g, n] : std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {0, 4}})
    for (const auto& c : enumerate_trivalent(g, n)) out.push_back(c.canonical);
  return out;
}

}  // namespace

TEST_CASE("theta at the symmetric point") {
  const RibbonGraph g = fixtures::theta();
  const std::vector<double> l{12, 12, 12};
  for (int e = 0; e < 3; ++e) CHECK(simplicial_coordinate(g, l, e) == doctest::Approx(1.0 / 6));
  for (int h = 0; h < 6; ++h) CHECK(alpha_length(g, l, h) == doctest::Approx(1.0 / 12));
  const FaceSum f = rho_face(g, l, 0);
  CHECK(f.path == doctest::Approx(1.0));
  CHECK(f.sector == doctest::Approx(1.0));
  CHECK(rho_total(g, std::vector<double>{24, 24, 24}) == doctest::Approx(0.5));
  const auto d = diagnostics(g, l, 1e-12);
  CHECK(d.in_domain);
  CHECK(d.triangle_ok);
  CHECK(d.lambda_above_four);
  CHECK(d.rho_below_8v_over_mu);
}

TEST_CASE("a long edge makes its coordinate negative") {
  const RibbonGraph g = fixtures::theta();
  const std::vector<double> l{10, 1, 1};
  CHECK(simplicial_coordinate(g, l, 0) < 0);
  const auto d = diagnostics(g, l, 1e-9);
  CHECK_FALSE(d.x_positive);
  CHECK_FALSE(d.triangle_ok);
  CHECK_FALSE(d.in_domain);
}

TEST_CASE("points off the slice are not in the domain") {
  const RibbonGraph g = fixtures::theta();
  const auto d = diagnostics(g, std::vector<double>{3.9, 3.9, 3.9}, 1e-9);
  CHECK(d.x_positive);
  CHECK_FALSE(d.in_domain);
  CHECK_FALSE(d.lambda_above_four);
  CHECK_THROWS_AS(diagnostics(g, std::vector<double>{1, 1}, 1e-9), PreconditionError);
  CHECK_THROWS_AS(diagnostics(g, std::vector<double>{1, 1, 1}, -1), PreconditionError);
}

TEST_CASE("simplicial coordinates agree with the edge-level formula") {
  std::mt19937_64 rng(11);
  for (const auto& g : sample_graphs())
    for (int trial = 0; trial < 50; ++trial) {
      const auto l = fixtures::random_lambda(rng, g.num_edges());
      for (int e = 0; e < g.num_edges(); ++e)
        CHECK(std::abs(simplicial_coordinate(g, l, e) - oracle::x_edge(g, l, e)) < 1e-10);
    }
}

TEST_CASE("alpha-lengths sum to the simplicial coordinates") {
  std::mt19937_64 rng(12);
  for (const auto& g : sample_graphs())
    for (int trial = 0; trial < 20; ++trial) {
      const auto l = fixtures::random_lambda(rng, g.num_edges());
      double alphas = 0, xs = 0;
      for (int h = 0; h < g.num_half_edges(); ++h) alphas += alpha_length(g, l, h);
      for (double x : simplicial_coordinates(g, l)) xs += x;
      CHECK(alphas == doctest::Approx(xs).epsilon(1e-12));
    }
}

TEST_CASE("rho by path and by sector agree and sum to the total") {
  std::mt19937_64 rng(13);
  for (const auto& g : sample_graphs())
    for (int trial = 0; trial < 50; ++trial) {
      const auto l = fixtures::random_lambda(rng, g.num_edges());
      double sum = 0;
      for (int f = 0; f < g.num_faces(); ++f) {
        const FaceSum s = rho_face(g, l, f);
        CHECK(s.path == doctest::Approx(s.sector).epsilon(1e-12));
        sum += s.value();
      }
      CHECK(sum == doctest::Approx(rho_total(g, l)).epsilon(1e-12));
    }
}

TEST_CASE("coordinates are homogeneous of degree -1") {
  std::mt19937_64 rng(14);
  for (const auto& g : sample_graphs()) {
    const auto l = fixtures::random_lambda(rng, g.num_edges());
    for (double t : {0.1, 3.0, 250.0}) {
      std::vector<double> s = l;
      for (double& x : s) x *= t;
      for (int e = 0; e < g.num_edges(); ++e)
        CHECK(simplicial_coordinate(g, s, e) ==
              doctest::Approx(simplicial_coordinate(g, l, e) / t).epsilon(1e-12));
      CHECK(rho_total(g, s) == doctest::Approx(rho_total(g, l) / t).epsilon(1e-12));
    }
  }
}

TEST_CASE("normalization to the slice") {
  const RibbonGraph g = fixtures::theta();
  const LambdaAssignment n = normalize_to_slice(g, LambdaAssignment({1, 1, 1}));
  for (int e = 0; e < 3; ++e) CHECK(n[e] == doctest::Approx(12.0));
  const LambdaAssignment twice = normalize_to_slice(g, n);
  for (int e = 0; e < 3; ++e) CHECK(twice[e] == doctest::Approx(12.0));
  std::mt19937_64 rng(15);
  for (const auto& c : enumerate_trivalent(2, 1)) {
    const LambdaAssignment l(fixtures::random_lambda(rng, c.canonical.num_edges()));
    CHECK(rho_total(c.canonical, normalize_to_slice(c.canonical, l).values()) ==
          doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(normalize_to_slice(fixtures::planar_theta(), LambdaAssignment({1, 1, 1})),
                  PreconditionError);
}

TEST_CASE("lambda assignments reject non-positive values") {
  CHECK_THROWS_AS(LambdaAssignment({1, 0, 1}), PreconditionError);
  CHECK_THROWS_AS(LambdaAssignment({1, -2, 1}), PreconditionError);
  CHECK_THROWS_AS(LambdaAssignment({1, std::nan(""), 1}), PreconditionError);
  CHECK_THROWS_AS(scale(LambdaAssignment({1, 1, 1}), 0.0), PreconditionError);
}

TEST_CASE("alpha-length of an edge at a vertex") {
  const RibbonGraph g = fixtures::dumbbell();
  const std::vector<double> l{2, 3, 5};
  // vertex 0 carries loop e0 and bridge e1; the loop gives the same value in
  // both of its slots
  const int v = g.vertex_of(0);
  const int loop = g.edge_of(0);
  const int bridge = g.edge_of(2);
  CHECK(alpha_length(g, l, loop, v) == doctest::Approx(l[loop] / (l[loop] * l[bridge])));
  CHECK(alpha_length(g, l, bridge, v) == doctest::Approx(l[bridge] / (l[loop] * l[loop])));
  CHECK_THROWS_AS(alpha_length(g, l, g.edge_of(4), v), PreconditionError);
}

TEST_CASE("analytic rho derivatives match central differences") {
  std::mt19937_64 rng(16);
  for (const auto& g : sample_graphs())
    for (int trial = 0; trial < 10; ++trial) {
      const auto l = fixtures::random_lambda(rng, g.num_edges(), 1.0, 20.0);
      std::vector<double> grad(g.num_edges());
      rho_total_gradient(g, l, grad);
      for (int e = 0; e < g.num_edges(); ++e) {
        const double h = 1e-5 * l[e];
        auto lp = l, lm = l;
        lp[e] += h;
        lm[e] -= h;
        double total = 0;
        for (int f = 0; f < g.num_faces(); ++f) {
          const double fd =
              (rho_face(g, lp, f).value() - rho_face(g, lm, f).value()) / (2 * h);
          const double an = drho_dlambda(g, l, f, e);
          const double scale = rho_face(g, l, f).value() / l[e] + 1e-300;
          CHECK(std::abs(fd - an) / scale < 1e-6);
          total += an;
        }
        CHECK(grad[e] == doctest::Approx(total).epsilon(1e-12));
      }
    }
}

TEST_CASE("derivative bound on loop-free graphs") {
  std::mt19937_64 rng(17);
  for (const auto& g : sample_graphs()) {
    if (g.has_loop()) continue;
    for (int trial = 0; trial < 100; ++trial) {
      const auto l = fixtures::random_lambda(rng, g.num_edges());
      for (int f = 0; f < g.num_faces(); ++f) {
        const double r = rho_face(g, l, f).value();
        for (int e = 0; e < g.num_edges(); ++e)
          CHECK(std::abs(drho_dlambda(g, l, f, e)) <= r / l[e] * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("a monogon face exceeds the derivative bound") {
  // The face inside a loop has rho = 2 lambda_bridge / lambda_loop^2, so its
  // derivative in the loop length is -2 rho / lambda_loop.
  const RibbonGraph g = fixtures::dumbbell();
  const std::vector<double> l{2, 3, 5};
  double worst = 0;
  for (int f = 0; f < g.num_faces(); ++f) {
    const double r = rho_face(g, l, f).value();
    for (int e = 0; e < g.num_edges(); ++e)
      worst = std::max(worst, std::abs(drho_dlambda(g, l, f, e)) * l[e] / r);
  }
  CHECK(worst == doctest::Approx(2.0));
}

TEST_CASE("positive coordinates imply the triangle inequalities") {
  std::mt19937_64 rng(18);
  int positive = 0;
  for (const auto& g : sample_graphs())
    for (int trial = 0; trial < 2000; ++trial) {
      const auto l = fixtures::random_lambda(rng, g.num_edges(), 1.0, 4.0);
      const auto d = diagnostics(g, l, 0);
      if (!d.x_positive) continue;
      ++positive;
      CHECK(d.triangle_ok);
    }
  CHECK(positive > 100);
}
