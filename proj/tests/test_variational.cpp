#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ergm/errors.hpp"
#include "ergm/exact.hpp"
#include "ergm/variational.hpp"

using namespace ergm;

namespace {
const double kLn2 = std::numbers::ln2;

// Dense-grid maximizer of the scalar problem, refined by golden section on
// the best cell. Independent of the bisection in solve_u_star.
double oracle_u_star(const Params& p, int k) {
  auto f = [&](double u) {
    const double i = 0.5 * u * std::log(u) + 0.5 * (1 - u) * std::log(1 - u);
    return p.beta1 * u + p.beta2 * std::pow(u, k) - i;
  };
  const int grid = 200000;
  int best = 1;
  for (int i = 1; i < grid; ++i)
    if (f(static_cast<double>(i) / grid) > f(static_cast<double>(best) / grid)) best = i;
  // same clipped domain as the solver
  double a = std::max(1e-12, (best - 1.0) / grid), b = std::min(1 - 1e-12, (best + 1.0) / grid);
  const double phi = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 200; ++it) {
    const double c = b - phi * (b - a), d = a + phi * (b - a);
    if (f(c) > f(d)) b = d; else a = c;
  }
  return 0.5 * (a + b);
}
}  // namespace

TEST_CASE("entropy I") {
  CHECK(entropy_I(0.5) == doctest::Approx(-kLn2 / 2).epsilon(1e-15));
  CHECK(entropy_I(0.0) == 0.0);
  CHECK(entropy_I(1.0) == 0.0);
  CHECK(entropy_I(0.25) == doctest::Approx(0.5 * (0.25 * std::log(0.25) + 0.75 * std::log(0.75))).epsilon(1e-15));
  CHECK(entropy_I(0.25) == doctest::Approx(-0.281167572309).epsilon(1e-11));
  CHECK_THROWS_AS(entropy_I(-0.01), DomainError);
  CHECK_THROWS_AS(entropy_I(1.01), DomainError);
  CHECK_THROWS_AS(entropy_I(NAN), DomainError);
  CHECK(entropy_I(0.3) == doctest::Approx(entropy_I(0.7)).epsilon(1e-15));
}

TEST_CASE("u star examples") {
  auto s = solve_u_star({0, 0}, 3);
  CHECK(std::abs(s.u_star - 0.5) < 1e-8);
  CHECK(std::abs(s.value - kLn2 / 2) < 1e-10);
  CHECK(solve_u_star({1, 0}, 3).u_star == doctest::Approx(std::exp(2.0) / (1 + std::exp(2.0))).epsilon(1e-11));
  const auto r = solve_u_star({0, -10}, 3);
  CHECK(r.u_star > 0);
  CHECK(r.u_star < 0.5);
  CHECK(er_free_energy({0.2, -0.5}, 3) == doctest::Approx(0.38850863707917516).epsilon(1e-11));
  CHECK(solve_u_star({0.2, -0.5}, 3).u_star == doctest::Approx(0.44898647888038352).epsilon(1e-12));
}

TEST_CASE("u star matches a dense-grid oracle") {
  for (Params p : {Params{0, -10}, Params{0.5, -3}, Params{-1, 2}, Params{-0.3, 5}, Params{2, -40}, Params{0, -11.38}})
    for (int k : {2, 3, 6}) {
      const double o = oracle_u_star(p, k);
      const auto s = solve_u_star(p, k);
      CHECK(std::abs(scalar_objective(p, k, s.u_star) - scalar_objective(p, k, o)) < 1e-12);
    }
}

TEST_CASE("u star stationarity and strict local maximum") {
  for (double b1 : {-1.0, -0.2, 0.0, 0.4, 1.5})
    for (double b2 : {-30.0, -2.0, -0.3, 0.0, 0.5}) {
      const Params p{b1, b2};
      const auto s = solve_u_star(p, 3);
      const double res = b1 + 3 * b2 * s.u_star * s.u_star - 0.5 * std::log(s.u_star / (1 - s.u_star));
      CHECK(std::abs(res) < 1e-12);
      const double v = scalar_objective(p, 3, s.u_star);
      CHECK(scalar_objective(p, 3, s.u_star + 1e-4) < v);
      CHECK(scalar_objective(p, 3, s.u_star - 1e-4) < v);
    }
}

TEST_CASE("strip derivative identities") {
  const double h = 1e-5;
  for (int k : {3, 6}) {
    const double strip = 2.0 / (k * (k - 1));
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        const Params p{-1.0 + 0.5 * i, -strip * 0.95 + strip * 0.95 * 0.5 * j};
        const double u = solve_u_star(p, k).u_star;
        const double d1 = (er_free_energy({p.beta1 + h, p.beta2}, k) - er_free_energy({p.beta1 - h, p.beta2}, k)) / (2 * h);
        const double d2 = (er_free_energy({p.beta1, p.beta2 + h}, k) - er_free_energy({p.beta1, p.beta2 - h}, k)) / (2 * h);
        CHECK(std::abs(d1 - u) < 1e-6);
        CHECK(std::abs(d2 - std::pow(u, k)) < 1e-6);
      }
  }
  const double u = solve_u_star({0.2, -0.1}, 3).u_star;
  const double d1 = (er_free_energy({0.2 + h, -0.1}, 3) - er_free_energy({0.2 - h, -0.1}, 3)) / (2 * h);
  const double d2 = (er_free_energy({0.2, -0.1 + h}, 3) - er_free_energy({0.2, -0.1 - h}, 3)) / (2 * h);
  CHECK(std::abs(d1 - u) < 1e-6);
  CHECK(std::abs(d2 - u * u * u) < 1e-6);
}

TEST_CASE("multipartite ansatz") {
  const auto t = multipartite_free_energy({0, 0}, Motif::triangle());
  CHECK(t.p_star == 0.5);
  CHECK(t.parts == 2);
  CHECK(t.value == doctest::Approx(kLn2 / 4).epsilon(1e-14));
  CHECK(t.edge_density == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(multipartite_free_energy({0, -7}, Motif::clique(4)).edge_density == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(multipartite_free_energy({0, 0}, Motif::parse("0-1,1-2")), HypothesisError);
  CHECK_THROWS_AS(multipartite_free_energy({0, 0}, Motif::edge()), HypothesisError);
  for (double b1 : {-1.0, 0.0, 1.0})
    for (const Motif& h : {Motif::triangle(), Motif::clique(4)}) {
      const double chi = h.chromatic_number();
      const double e = std::exp(2 * b1);
      CHECK(std::abs(multipartite_free_energy({b1, 0}, h).edge_density - e * (chi - 2) / ((1 + e) * (chi - 1))) < 1e-8);
    }
}

TEST_CASE("ansatz comparison examples") {
  auto a = compare_ansatz({0, -0.1}, Motif::triangle());
  CHECK(a.winner == Phase::disordered);
  CHECK(a.order_parameter_C == 0.0);
  auto b = compare_ansatz({0, -50}, Motif::triangle());
  CHECK(b.winner == Phase::multipartite);
  CHECK(b.order_parameter_C == doctest::Approx(0.015625).epsilon(1e-14));
  CHECK(b.er_value < kLn2 / 4);
  for (const Motif& h : {Motif::triangle(), Motif::clique(4), Motif::cycle(5)})
    CHECK(compare_ansatz({4, 0}, h).winner == Phase::disordered);
  CHECK(to_string(Phase::disordered) == "disordered");
  CHECK(to_string(Phase::multipartite) == "multipartite");
}

TEST_CASE("max of branches is nondecreasing in beta2") {
  for (double b1 : {-1.0, 0.0, 0.7, 3.0}) {
    double prev = -INFINITY;
    for (double b2 = -60; b2 <= 1; b2 += 0.05) {
      const auto c = compare_ansatz({b1, b2}, Motif::triangle());
      const double v = std::max(c.er_value, c.mp_value);
      CHECK(v >= prev - 1e-13);
      prev = v;
    }
  }
}

TEST_CASE("single crossing in beta2") {
  // The beta1 = -1 crossing lies near -216, so its grid is longer.
  for (auto [b1, floor] : {std::pair{-1.0, -300.0}, {0.0, -50.0}, {1.0, -50.0}, {3.0, -50.0}}) {
    int flips = 0;
    Phase last = compare_ansatz({b1, 0}, Motif::triangle()).winner;
    for (int i = 1; i <= static_cast<int>(-floor * 1000); ++i) {
      const Phase w = compare_ansatz({b1, -1e-3 * i}, Motif::triangle()).winner;
      flips += w != last;
      last = w;
    }
    CHECK(flips == 1);
    CHECK(last == Phase::multipartite);
  }
}

TEST_CASE("winner derivative reports") {
  const auto d = compare_ansatz({0.1, -0.2}, Motif::triangle());
  CHECK(d.winner_dbeta1 == doctest::Approx(d.u_star).epsilon(1e-14));
  CHECK(d.winner_dbeta2 == doctest::Approx(std::pow(d.u_star, 3)).epsilon(1e-14));
  const auto m = compare_ansatz({0.1, -80}, Motif::triangle());
  CHECK(m.winner_dbeta1 == doctest::Approx(0.5 * m.p_star).epsilon(1e-14));
  CHECK(m.winner_dbeta2 == 0.0);
}

TEST_CASE("constant ansatz approaches extrapolated exact psi in the strip") {
  const Motif tri = Motif::triangle();
  for (Params p : {Params{0, -0.1}, Params{0.2, -0.2}, Params{-0.3, 0.1}, Params{0.1, 0.25}, Params{-0.2, -0.3}}) {
    std::vector<std::pair<int, double>> seq;
    for (int n = 4; n <= 7; ++n) seq.emplace_back(n, psi_exact(n, tri, p));
    const double est = psi_extrapolate(seq).estimate;
    MESSAGE("p=(" << p.beta1 << "," << p.beta2 << ") extrapolated " << est << " vs er " << er_free_energy(p, 3));
    CHECK(std::abs(est - er_free_energy(p, 3)) < 0.02);
  }
}
