#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ergm/errors.hpp"
#include "ergm/io.hpp"
#include "ergm/scan.hpp"

using namespace ergm;

TEST_CASE("param ranges") {
  const auto v = ParamRange{-0.3, 0.0, 3}.values();
  REQUIRE(v.size() == 3);
  CHECK(v[0] == -0.3);
  CHECK(v[1] == doctest::Approx(-0.2));
  CHECK(v[2] == doctest::Approx(-0.1));
  CHECK(ParamRange{1, 2, 0}.values().empty());
  CHECK(ParamRange::single(4.5).values() == std::vector<double>{4.5});
  CHECK_THROWS_AS((ParamRange{0, 1, -1}.values()), ValidationError);
  CHECK_THROWS_AS((ParamRange{0, INFINITY, 2}.values()), ValidationError);
}

TEST_CASE("scan examples") {
  const auto strip = scan_grid(Motif::triangle(), ParamRange::single(0), {-0.3, 0.0, 30});
  CHECK(strip.size() == 30);
  for (const auto& r : strip) {
    CHECK(r.winner == Phase::disordered);
    CHECK(r.C == 0.0);
  }
  const auto deep = scan_grid(Motif::triangle(), ParamRange::single(0), ParamRange::single(-50));
  REQUIRE(deep.size() == 1);
  CHECK(deep[0].winner == Phase::multipartite);
  CHECK(deep[0].C == doctest::Approx(1.0 / 64).epsilon(1e-14));
  CHECK(scan_grid(Motif::triangle(), ParamRange::single(0), {0, 1, 0}).empty());
  CHECK_THROWS_AS(scan_grid(Motif::parse("0-1,1-2,2-3,3-0"), ParamRange::single(0), ParamRange::single(-1)),
                  HypothesisError);
}

TEST_CASE("scan records are consistent and row-major") {
  ScanOptions opts;
  opts.exact_n = 4;
  opts.workers = 3;
  const auto rows = scan_grid(Motif::triangle(), {-1, 1, 4}, {-20, 0, 5}, opts);
  REQUIRE(rows.size() == 20);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    CHECK(r.beta1 == ParamRange{-1, 1, 4}.values()[i / 5]);
    CHECK(r.beta2 == ParamRange{-20, 0, 5}.values()[i % 5]);
    CHECK(r.C >= 0);
    CHECK((r.winner == Phase::multipartite) == (r.mp_value > r.er_value));
    REQUIRE(r.finite_n_gap.has_value());
    CHECK(*r.finite_n_gap == doctest::Approx(finite_gap(4, Motif::triangle(), {r.beta1, r.beta2})).epsilon(1e-12));
    CHECK_FALSE(r.ascent_objective.has_value());
  }
  opts.workers = 1;
  const auto serial = scan_grid(Motif::triangle(), {-1, 1, 4}, {-20, 0, 5}, opts);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(*serial[i].finite_n_gap == *rows[i].finite_n_gap);
}

TEST_CASE("ascent column never falls below the ansatz") {
  ScanOptions opts;
  opts.ascent_blocks = 4;
  opts.seed = 5;
  const auto rows = scan_grid(Motif::triangle(), {-0.5, 0.5, 2}, {-30, 0, 6}, opts);
  for (const auto& r : rows) {
    REQUIRE(r.ascent_objective.has_value());
    CHECK(*r.ascent_objective >= std::max(r.er_value, r.mp_value) - 1e-6);
  }
  opts.ascent_blocks = 3;
  CHECK_THROWS_AS(scan_grid(Motif::triangle(), ParamRange::single(0), ParamRange::single(-1), opts),
                  ValidationError);
}

TEST_CASE("transition pins") {
  const auto t0 = find_transition(Motif::triangle(), 0, 1e-6);
  CHECK(t0.beta2_critical == doctest::Approx(-11.381200797668367).epsilon(1e-7));
  CHECK(t0.beta2_critical <= -1.0 / 3);
  CHECK(t0.bracket_width <= 1e-6);
  CHECK(t0.bracket_width > 0);
  CHECK(t0.method == "ansatz_crossing");
  CHECK(compare_ansatz({0, t0.bracket_lo}, Motif::triangle()).winner == Phase::multipartite);
  CHECK(compare_ansatz({0, t0.bracket_hi}, Motif::triangle()).winner == Phase::disordered);
  CHECK(t0.dbeta1_multipartite - t0.dbeta1_disordered >= 0.05);

  const auto t5 = find_transition(Motif::triangle(), 5, 1e-6);
  CHECK(t5.beta2_critical == doctest::Approx(-3.91769148300619).epsilon(1e-7));
  const auto k4 = find_transition(Motif::clique(4), 0, 1e-6);
  CHECK(k4.beta2_critical == doctest::Approx(-304.31288799501976).epsilon(1e-7));
  CHECK(k4.beta2_critical <= -1.0 / 15);

  CHECK_THROWS_AS(find_transition(Motif::triangle(), 0, 0), ValidationError);
  CHECK_THROWS_AS(find_transition(Motif::parse("0-1,1-2"), 0, 1e-6), HypothesisError);
  // at very negative beta1 the crossing falls below the search floor
  CHECK_THROWS_AS(find_transition(Motif::triangle(), -4, 1e-6), ConsistencyError);
}

TEST_CASE("transition is stable under tolerance refinement") {
  for (double b1 : {-0.5, 0.0, 1.0, 3.0}) {
    const auto coarse = find_transition(Motif::triangle(), b1, 1e-3);
    const auto fine = find_transition(Motif::triangle(), b1, 5e-4);
    CHECK(std::abs(coarse.beta2_critical - fine.beta2_critical) < coarse.bracket_width);
  }
}

TEST_CASE("verify at zero couplings") {
  VerifyOptions opts;
  opts.n_exact = 5;
  opts.chain.n = 5;
  opts.chain.samples = 20000;
  opts.chain.seed = 3;
  const auto rep = verify_point(Motif::triangle(), {0, 0}, opts);
  CHECK(rep.passed());
  CHECK(rep.exact.has_value());
  CHECK(rep.structure_distance.has_value());
  int hard = 0;
  for (const auto& c : rep.checks) hard += !c.report_only;
  CHECK(hard == 2);
}

TEST_CASE("verify at (0.2, -0.2) with n = 6") {
  VerifyOptions opts;
  opts.n_exact = 6;
  opts.chain.n = 6;
  opts.chain.samples = 40000;
  opts.chain.seed = 17;
  const auto rep = verify_point(Motif::triangle(), {0.2, -0.2}, opts);
  for (const auto& c : rep.checks) CHECK_MESSAGE(c.passed, c.name);
}

TEST_CASE("verify in MCMC-only mode deep in the repulsive regime") {
  VerifyOptions opts;
  opts.chain.n = 40;
  opts.chain.samples = 400;
  opts.chain.seed = 1;
  opts.chain.annealing = geometric_ladder(-20, 200);
  const auto rep = verify_point(Motif::triangle(), {0, -20}, opts);
  CHECK_FALSE(rep.exact.has_value());
  bool saw = false;
  for (const auto& c : rep.checks)
    if (c.name == "mcmc_h2_density") {
      saw = true;
      CHECK(c.passed);
    }
  CHECK(saw);
}

TEST_CASE("JSON output") {
  const Params p{0.2, -0.5};
  const auto m = exact_moments(4, Motif::triangle(), p);
  const auto j = io::exact_json(4, p, m, finite_gap(4, Motif::triangle(), p));
  for (const char* key : {"n", "beta1", "beta2", "psi", "mean_t1", "mean_t2", "var_t1", "var_t2", "gap"})
    CHECK(j.contains(key));
  CHECK(j["psi"].get<double>() == m.psi);

  const auto t = io::transition_json(find_transition(Motif::triangle(), 0, 1e-4));
  CHECK(t["method"] == "ansatz_crossing");
  CHECK(t["bracket_width"].get<double>() > 0);

  ChainConfig cfg;
  cfg.n = 6;
  cfg.samples = 40;
  cfg.seed = 8;
  const auto s = run_chain(cfg);
  const auto c = io::chain_json(cfg, s);
  CHECK(c["final_graph"]["edges"].size() == static_cast<std::size_t>(s.final_graph.edge_count()));
  CHECK(c["seed"].get<std::uint64_t>() == 8);
}

TEST_CASE("CSV output") {
  ScanOptions opts;
  opts.exact_n = 3;
  const auto rows = scan_grid(Motif::triangle(), ParamRange::single(0), {-1, 0, 2}, opts);
  std::ostringstream out;
  io::write_scan_csv(out, rows);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "# ergm-csv v1");
  std::getline(in, line);
  CHECK(line == "beta1,beta2,u_star,er_value,mp_value,p_star,winner,C,ascent_objective,ascent_beats_ansatz,finite_n_gap");
  int count = 0;
  while (std::getline(in, line)) {
    ++count;
    CHECK(std::count(line.begin(), line.end(), ',') == 10);
    CHECK(line.find(",disordered,") != std::string::npos);
    CHECK(line.find(",,,") != std::string::npos);  // empty ascent cells
  }
  CHECK(count == 2);

  ChainConfig cfg;
  cfg.n = 5;
  cfg.samples = 20;
  cfg.seed = 2;
  std::ostringstream trace;
  io::write_trace_csv(trace, run_chain(cfg));
  CHECK(trace.str().rfind("# ergm-csv v1\nsweep,t1,t2\n1,", 0) == 0);
}
