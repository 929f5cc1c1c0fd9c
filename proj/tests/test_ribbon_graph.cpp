#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "wpvol/ribbon_graph.hpp"

using namespace wpvol;

TEST_CASE("theta has one face of length six and genus one") {
  const RibbonGraph g = fixtures::theta();
  CHECK(g.num_vertices() == 2);
  CHECK(g.num_edges() == 3);
  REQUIRE(g.num_faces() == 1);
  CHECK(g.faces()[0].size() == 6);
  CHECK(g.genus() == 1);
  CHECK(g.is_trivalent());
  CHECK_FALSE(g.has_loop());
}

TEST_CASE("planar theta has three faces and genus zero") {
  const RibbonGraph g = fixtures::planar_theta();
  CHECK(g.num_faces() == 3);
  CHECK(g.genus() == 0);
  for (const auto& f : g.faces()) CHECK(f.size() == 2);
}

TEST_CASE("faces are orbits of sigma after alpha") {
  const RibbonGraph g = fixtures::dumbbell();
  CHECK(g.has_loop());
  for (int h = 0; h < g.num_half_edges(); ++h) CHECK(g.phi(h) == g.sigma()[g.alpha()[h]]);
  for (const auto& face : g.faces())
    for (std::size_t i = 0; i < face.size(); ++i)
      CHECK(g.phi(face[i]) == face[(i + 1) % face.size()]);
}

TEST_CASE("malformed permutation pairs are rejected") {
  CHECK_THROWS_AS(RibbonGraph({1, 2, 0, 4, 5, 3}, {3, 4, 5, 0, 1, 1}), StructureError);
  CHECK_THROWS_AS(RibbonGraph({1, 2, 0, 4, 5, 3}, {0, 4, 5, 3, 1, 2}), StructureError);
  CHECK_THROWS_AS(RibbonGraph({1, 2, 0, 4, 5}, {3, 4, 5, 0, 1}), StructureError);
  CHECK_THROWS_AS(RibbonGraph({1, 1, 0, 4, 5, 3}, {3, 4, 5, 0, 1, 2}), StructureError);
  // two disjoint figure-eights
  CHECK_THROWS_AS(RibbonGraph({1, 0, 3, 2}, {1, 0, 3, 2}), StructureError);
}

TEST_CASE("non-trivalent graphs are reported as such") {
  // one vertex of degree four with two loops
  const RibbonGraph g({1, 2, 3, 0}, {2, 3, 0, 1});
  CHECK_FALSE(g.is_trivalent());
  CHECK(g.num_vertices() == 1);
  CHECK(g.genus() == 1);
}

TEST_CASE("dual swaps vertices and faces and is an involution") {
  for (const auto& [gg, n] : std::vector<std::pair<int, int>>{{1, 1}, {0, 3}, {1, 2}, {0, 4}}) {
    for (const auto& cls : enumerate_trivalent(gg, n)) {
      const RibbonGraph& g = cls.canonical;
      const RibbonGraph d = dual(g);
      CHECK(d.num_vertices() == g.num_faces());
      CHECK(d.num_faces() == g.num_vertices());
      CHECK(d.genus() == g.genus());
      CHECK(dual(d) == g);
    }
  }
}

TEST_CASE("aut(theta) is six by brute force and by the library") {
  const RibbonGraph g = fixtures::theta();
  CHECK(oracle::brute_force_aut(g.sigma(), g.alpha()) == 6);
  CHECK(aut_order(g) == 6);
  CHECK(oracle::brute_force_aut(fixtures::planar_theta().sigma(),
                                fixtures::planar_theta().alpha()) ==
        aut_order(fixtures::planar_theta()));
  CHECK(oracle::brute_force_aut(fixtures::dumbbell().sigma(), fixtures::dumbbell().alpha()) ==
        aut_order(fixtures::dumbbell()));
}

TEST_CASE("canonical form is invariant under relabeling") {
  std::mt19937_64 rng(7);
  for (const auto& [gg, n] : std::vector<std::pair<int, int>>{{1, 1}, {0, 3}, {1, 2}, {2, 1}}) {
    for (const auto& cls : enumerate_trivalent(gg, n)) {
      const RibbonGraph& g = cls.canonical;
      for (int trial = 0; trial < 100; ++trial) {
        const auto p = fixtures::random_permutation(rng, g.num_half_edges());
        const RibbonGraph r = relabel(g, p);
        const IsoClass c = canonical_form(r);
        REQUIRE(c.canonical == g);
        CHECK(c.aut_order == cls.aut_order);
      }
    }
  }
}

TEST_CASE("isomorphism agrees with the propagation oracle") {
  const auto graphs = enumerate_trivalent(1, 2);
  std::mt19937_64 rng(3);
  for (const auto& a : graphs)
    for (const auto& b : graphs) {
      const auto p = fixtures::random_permutation(rng, b.canonical.num_half_edges());
      const RibbonGraph rb = relabel(b.canonical, p);
      CHECK(is_isomorphic(a.canonical, rb) ==
            oracle::isomorphic(a.canonical.sigma(), a.canonical.alpha(), rb.sigma(), rb.alpha()));
    }
  CHECK_FALSE(is_isomorphic(fixtures::theta(), fixtures::planar_theta()));
}

TEST_CASE("enumeration matches the involution census") {
  for (const auto& [gg, n] : std::vector<std::pair<int, int>>{{1, 1}, {0, 3}, {1, 2}, {0, 4}}) {
    CAPTURE(gg);
    CAPTURE(n);
    const auto census = oracle::enumerate_by_involutions(gg, n);
    const auto graphs = enumerate_trivalent(gg, n);
    REQUIRE(static_cast<int>(graphs.size()) == census.classes);
    std::vector<int> auts;
    double inv_sum = 0;
    for (const auto& c : graphs) {
      auts.push_back(c.aut_order);
      inv_sum += 1.0 / c.aut_order;
      CHECK(c.aut_order == oracle::aut_by_propagation(c.canonical.sigma(), c.canonical.alpha()));
    }
    std::sort(auts.begin(), auts.end());
    CHECK(auts == census.aut_orders);
    // orbit counting: each class is hit 3^V V! / |Aut| times
    const int v = trivalent_vertex_count(gg, n);
    double labelings = 1;
    for (int i = 1; i <= v; ++i) labelings *= 3.0 * i;
    CHECK(static_cast<double>(census.survivors) == doctest::Approx(labelings * inv_sum));
  }
}

TEST_CASE("enumerated graphs have the requested invariants") {
  for (const auto& [gg, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 3}, {0, 5}}) {
    const auto graphs = enumerate_trivalent(gg, n);
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      const auto inv = invariants(graphs[i].canonical);
      CHECK(inv.genus == gg);
      CHECK(inv.punctures == n);
      CHECK(inv.edges == trivalent_edge_count(gg, n));
      CHECK(inv.vertices == trivalent_vertex_count(gg, n));
      CHECK(graphs[i].canonical.is_trivalent());
      CHECK(canonical_form(graphs[i].canonical).canonical == graphs[i].canonical);
      if (i > 0) {
        const auto& a = graphs[i - 1].canonical;
        const auto& b = graphs[i].canonical;
        CHECK(std::tie(a.sigma(), a.alpha()) < std::tie(b.sigma(), b.alpha()));
      }
    }
  }
}

TEST_CASE("known class counts") {
  CHECK(enumerate_trivalent(1, 1).size() == 1);
  CHECK(enumerate_trivalent(0, 3).size() == 2);
  CHECK(enumerate_trivalent(1, 2).size() == 5);
  CHECK(enumerate_trivalent(2, 1).size() == 9);
  CHECK(enumerate_trivalent(0, 4).size() == 6);
  double s = 0;
  for (const auto& c : enumerate_trivalent(2, 1)) s += 1.0 / c.aut_order;
  CHECK(s == doctest::Approx(35.0 / 6.0));
}

TEST_CASE("serial and parallel enumeration agree") {
  for (const auto& [gg, n] : std::vector<std::pair<int, int>>{{2, 1}, {1, 3}, {0, 5}}) {
    const auto a = enumerate_trivalent(gg, n);
    const auto b = enumerate_trivalent_serial(gg, n);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].canonical == b[i].canonical);
      CHECK(a[i].aut_order == b[i].aut_order);
    }
  }
}

TEST_CASE("enumeration preconditions and caps") {
  CHECK_THROWS_AS(enumerate_trivalent(1, 0), PreconditionError);
  CHECK_THROWS_AS(enumerate_trivalent(0, 2), PreconditionError);
  CHECK_THROWS_AS(enumerate_trivalent(-1, 3), PreconditionError);
  try {
    enumerate_trivalent(3, 1);
    FAIL("expected CapExceeded");
  } catch (const CapExceeded& e) {
    CHECK(e.cap() == 8);
  }
  EnumerationOptions small;
  small.max_vertices = 1;
  CHECK_THROWS_AS(enumerate_trivalent(1, 1, small), CapExceeded);
}

TEST_CASE("contracting a puncture pair lowers the puncture count") {
  for (const auto& [gg, n] : std::vector<std::pair<int, int>>{{1, 2}, {0, 4}, {1, 3}}) {
    const auto lower = enumerate_trivalent(gg, n - 1);
    for (const auto& cls : enumerate_trivalent(gg, n)) {
      const RibbonGraph t = dual(cls.canonical);
      const auto edges = non_loop_edges(t);
      CHECK_FALSE(edges.empty());
      for (int e : edges) {
        const RibbonGraph c = dual(contract_puncture_pair(t, e));
        CHECK(c.is_trivalent());
        CHECK(c.genus() == gg);
        CHECK(c.num_faces() == n - 1);
        const auto canon = canonical_form(c).canonical;
        bool found = false;
        for (const auto& l : lower) found = found || l.canonical == canon;
        CHECK(found);
      }
      for (int e = 0; e < t.num_edges(); ++e)
        if (std::find(edges.begin(), edges.end(), e) == edges.end())
          CHECK_THROWS_AS(contract_puncture_pair(t, e), PreconditionError);
    }
  }
}
