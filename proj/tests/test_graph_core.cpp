#include <doctest.h>

#include <numeric>
#include <random>

#include "ergm/errors.hpp"
#include "ergm/graph.hpp"
#include "ergm/homomorphism.hpp"
#include "ergm/motif.hpp"
#include "oracles.hpp"

using namespace ergm;

namespace {

Motif random_motif(std::mt19937_64& rng, int max_order) {
  std::uniform_int_distribution<int> order(2, max_order);
  for (;;) {
    const int l = order(rng);
    std::vector<std::pair<int, int>> edges;
    std::bernoulli_distribution coin(0.5);
    for (int a = 0; a < l; ++a)
      for (int b = a + 1; b < l; ++b)
        if (coin(rng)) edges.emplace_back(a, b);
    if (!edges.empty()) return Motif(l, edges);
  }
}

oracle::Edges edges_of(const Motif& m) { return m.edges(); }

}  // namespace

TEST_CASE("SimpleGraph keeps symmetry and rejects loops") {
  SimpleGraph g(70);
  g.set_edge(3, 65, true);
  CHECK(g.has_edge(65, 3));
  CHECK(g.edge_count() == 1);
  g.set_edge(3, 65, true);
  CHECK(g.edge_count() == 1);
  g.toggle(65, 3);
  CHECK_FALSE(g.has_edge(3, 65));
  CHECK(g.edge_count() == 0);
  CHECK_THROWS_AS(g.set_edge(4, 4, true), ValidationError);
  CHECK_THROWS_AS(g.set_edge(0, 70, true), ValidationError);
  for (int i = 0; i < 70; ++i) CHECK_FALSE(g.has_edge(i, i));
}

TEST_CASE("common neighbors across word boundaries") {
  SimpleGraph g(130);
  for (int v : {1, 63, 64, 100, 129}) {
    g.set_edge(0, v, true);
    g.set_edge(2, v, true);
  }
  g.set_edge(0, 2, true);
  CHECK(g.common_neighbors(0, 2) == 5);
  CHECK(g.degree(0) == 6);
}

TEST_CASE("pair index round trip") {
  for (int n : {2, 5, 9}) {
    long long idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++idx) {
        CHECK(pair_index(n, i, j) == idx);
        CHECK(pair_from_index(n, idx) == std::pair{i, j});
      }
  }
}

TEST_CASE("motif parsing and aliases") {
  const Motif tri = Motif::parse("0-1,1-2,2-0");
  CHECK(tri.order() == 3);
  CHECK(tri.edge_count() == 3);
  CHECK(tri.is_triangle());
  CHECK(Motif::parse("triangle").is_triangle());
  CHECK(Motif::parse("edge").is_edge());
  CHECK(Motif::parse("K4").edge_count() == 6);
  CHECK(Motif::parse("c5").edge_count() == 5);
  CHECK(Motif::parse(" 0-1 , 1-3 ").order() == 4);  // vertex 2 isolated

  CHECK_THROWS_AS(Motif::parse("0-0"), ValidationError);
  CHECK_THROWS_AS(Motif::parse("0-1,1-0"), ValidationError);
  CHECK_THROWS_AS(Motif::parse("0-1,x-2"), ValidationError);
  CHECK_THROWS_AS(Motif::parse("01"), ValidationError);
  CHECK_THROWS_AS(Motif::parse(""), ValidationError);
  CHECK_THROWS_AS(Motif::parse("0-11"), SizeError);
  CHECK_THROWS_AS(Motif::edge().require_h2(), HypothesisError);
  CHECK_NOTHROW(Motif::triangle().require_h2());
}

TEST_CASE("chromatic numbers") {
  CHECK(Motif::triangle().chromatic_number() == 3);
  CHECK(Motif::edge().chromatic_number() == 2);
  CHECK(Motif::clique(4).chromatic_number() == 4);
  CHECK(Motif::cycle(5).chromatic_number() == 3);
  CHECK(Motif::cycle(6).chromatic_number() == 2);
  // Petersen graph: chi = 3 on 10 vertices.
  const Motif petersen = Motif::parse("0-1,1-2,2-3,3-4,4-0,0-5,1-6,2-7,3-8,4-9,5-7,7-9,9-6,6-8,8-5");
  CHECK(petersen.chromatic_number() == 3);
  CHECK(Motif::clique(10).chromatic_number() == 10);
  CHECK_THROWS_AS(chromatic_number(11, {{0, 1}}), SizeError);
}

TEST_CASE("chromatic number matches exhaustive coloring") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const Motif h = random_motif(rng, 7);
    const int l = h.order();
    int best = l;
    std::vector<int> color(l, 0);
    for (int c = 1; c <= l && best == l; ++c) {
      // all c^l colorings
      std::fill(color.begin(), color.end(), 0);
      for (;;) {
        bool ok = true;
        for (auto [a, b] : h.edges()) ok = ok && color[a] != color[b];
        if (ok) {
          best = c;
          break;
        }
        int pos = 0;
        while (pos < l && ++color[pos] == c) color[pos++] = 0;
        if (pos == l) break;
      }
    }
    CHECK(h.chromatic_number() == best);
  }
}

TEST_CASE("hom_count examples") {
  const SimpleGraph k3 = SimpleGraph::complete(3);
  CHECK(hom_count(Motif::edge(), k3) == 6);
  CHECK(hom_count(Motif::triangle(), SimpleGraph::cycle(4)) == 0);
  CHECK(hom_count(Motif::triangle(), k3) == 6);
  CHECK(oracle::hom_count(3, edges_of(Motif::triangle()), oracle::dense_from(k3)) == 6);
  CHECK_THROWS_AS(hom_count(Motif::clique(9), k3), SizeError);
}

TEST_CASE("hom_density examples") {
  const SimpleGraph k3 = SimpleGraph::complete(3);
  CHECK(hom_density(Motif::edge(), k3) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(hom_density(Motif::edge(), SimpleGraph(5)) == 0.0);
  const double tr = oracle::trace_cubed(oracle::dense_from(k3));
  CHECK(hom_density(Motif::triangle(), k3) == doctest::Approx(tr / 27.0).epsilon(1e-15));
  CHECK(hom_density(Motif::triangle(), k3) == doctest::Approx(6.0 / 27.0).epsilon(1e-15));
}

TEST_CASE("edge density equals adjacency-sum oracle; triangle density equals trace oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 5;
    const SimpleGraph g = oracle::random_graph(n, 0.5, rng);
    const auto d = oracle::dense_from(g);
    CHECK(hom_density(Motif::edge(), g) == doctest::Approx(oracle::adjacency_sum(d) / (n * n)).epsilon(1e-15));
    CHECK(hom_density(Motif::edge(), g) ==
          doctest::Approx(2.0 * g.edge_count() / (n * n)).epsilon(1e-15));
    CHECK(hom_density(Motif::triangle(), g) ==
          doctest::Approx(oracle::trace_cubed(d) / (n * n * n)).epsilon(1e-15));
  }
}

TEST_CASE("hom_count matches naive enumeration for random motifs") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 150; ++trial) {
    const Motif h = random_motif(rng, 5);
    const SimpleGraph g = oracle::random_graph(2 + trial % 5, 0.6, rng);
    CHECK(hom_count(h, g) == oracle::hom_count(h.order(), h.edges(), oracle::dense_from(g)));
  }
}

TEST_CASE("edge_toggle_delta examples") {
  std::mt19937_64 rng(17);
  const SimpleGraph any = oracle::random_graph(6, 0.4, rng);
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (!any.has_edge(i, j)) CHECK(edge_toggle_delta(Motif::edge(), any, i, j) == 2);

  // path a-b-c, close the triangle
  const std::vector<std::pair<int, int>> path{{0, 1}, {1, 2}};
  const SimpleGraph p3 = SimpleGraph::from_edges(3, path);
  CHECK(edge_toggle_delta(Motif::triangle(), p3, 0, 2) == 6);
  CHECK(detail::edge_toggle_delta_enumerate(Motif::triangle(), p3, 0, 2) == 6);

  const SimpleGraph k3 = SimpleGraph::complete(3);
  CHECK(edge_toggle_delta(Motif::triangle(), k3, 1, 2) == -6);
  CHECK(detail::edge_toggle_delta_enumerate(Motif::triangle(), k3, 1, 2) == -6);
  CHECK_THROWS_AS(edge_toggle_delta(Motif::triangle(), k3, 1, 1), ValidationError);
}

TEST_CASE("edge_toggle_delta agrees with full recount") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 1000; ++trial) {
    const Motif h = trial % 4 == 0 ? Motif::triangle() : random_motif(rng, 5);
    std::uniform_int_distribution<int> size(2, 8);
    const int n = size(rng);
    SimpleGraph g = oracle::random_graph(n, 0.5, rng);
    std::uniform_int_distribution<int> node(0, n - 1);
    int i = node(rng), j = node(rng);
    while (j == i) j = node(rng);
    const auto before = static_cast<long long>(hom_count(h, g));
    const long long delta = edge_toggle_delta(h, g, i, j);
    const long long generic = detail::edge_toggle_delta_enumerate(h, g, i, j);
    g.toggle(i, j);
    const auto after = static_cast<long long>(hom_count(h, g));
    REQUIRE(delta == after - before);
    REQUIRE(generic == after - before);
  }
}

TEST_CASE("empirical graphon examples") {
  const StepGraphon k2 = empirical_graphon(SimpleGraph::complete(2));
  CHECK(k2.blocks() == 2);
  CHECK(k2(0, 0) == 0.0);
  CHECK(k2(0, 1) == 1.0);
  CHECK(k2(1, 0) == 1.0);
  CHECK(k2(1, 1) == 0.0);
  const StepGraphon e3 = empirical_graphon(SimpleGraph(3));
  for (double v : e3.values()) CHECK(v == 0.0);
  CHECK(t_graphon(Motif::triangle(), empirical_graphon(SimpleGraph::complete(3))) ==
        doctest::Approx(2.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("t of empirical graphon equals hom_density exactly") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const Motif h = random_motif(rng, 4);
    const SimpleGraph g = oracle::random_graph(1 + trial % 7, 0.5, rng);
    CHECK(t_graphon(h, empirical_graphon(g)) == hom_density(h, g));
  }
}

TEST_CASE("hom_density is invariant under relabeling") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const Motif h = random_motif(rng, 5);
    const int n = 3 + trial % 6;
    const SimpleGraph g = oracle::random_graph(n, 0.5, rng);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(hom_density(h, g) == hom_density(h, g.permuted(perm)));
  }
}

TEST_CASE("Strauss parameter bridge") {
  const Params p = from_strauss_densities(1.0, -3.0);
  CHECK(p.beta1 == 0.5);
  CHECK(p.beta2 == doctest::Approx(-0.5));
  // alpha1 E + alpha2 T on n nodes equals n^2 [beta1 t(edge) + beta2 t(triangle)].
  std::mt19937_64 rng(31);
  const int n = 6;
  const SimpleGraph g = oracle::random_graph(n, 0.6, rng);
  const double alpha1 = 0.7, alpha2 = -0.3;
  const Params q = from_strauss_counts(alpha1, alpha2, n);
  const double triangles = static_cast<double>(hom_count(Motif::triangle(), g)) / 6.0;
  const double lhs = alpha1 * g.edge_count() + alpha2 * triangles;
  const double rhs = n * n * (q.beta1 * hom_density(Motif::edge(), g) + q.beta2 * hom_density(Motif::triangle(), g));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}
