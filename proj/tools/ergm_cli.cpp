#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ergm/errors.hpp"
#include "ergm/exact.hpp"
#include "ergm/graphon.hpp"
#include "ergm/io.hpp"
#include "ergm/mcmc.hpp"
#include "ergm/scan.hpp"
#include "ergm/variational.hpp"

using namespace ergm;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitConsistency = 3;

struct Common {
  std::string motif = "triangle";
  std::string beta1 = "0";
  std::string beta2 = "0";
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  std::string out;
  int workers = 0;
  std::string format;
};

void add_common(CLI::App* app, Common& c, const std::string& default_format, bool ranges) {
  app->add_option("--motif", c.motif, "edge list like 0-1,1-2,2-0 or alias edge|triangle|k4|c5")
      ->capture_default_str();
  const std::string what = ranges ? "value or lo:hi:count" : "value";
  app->add_option("--beta1", c.beta1, "coupling on t(edge); " + what)->capture_default_str();
  app->add_option("--beta2", c.beta2, "coupling on t(H2); " + what)->capture_default_str();
  c.seed_opt = app->add_option("--seed", c.seed, "64-bit seed (required by randomized verbs)");
  app->add_option("--out", c.out, "output file (default stdout)");
  app->add_option("--workers", c.workers, "worker threads, 0 = hardware concurrency")->capture_default_str();
  c.format = default_format;
  app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

double parse_number(const std::string& s, const std::string& flag) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ValidationError(flag + ": '" + s + "' is not a number");
  return v;
}

ParamRange parse_range(const std::string& s, const std::string& flag) {
  const auto first = s.find(':');
  if (first == std::string::npos) return ParamRange::single(parse_number(s, flag));
  const auto second = s.find(':', first + 1);
  if (second == std::string::npos) throw ValidationError(flag + ": range must be lo:hi:count");
  ParamRange r;
  r.lo = parse_number(s.substr(0, first), flag);
  r.hi = parse_number(s.substr(first + 1, second - first - 1), flag);
  const double count = parse_number(s.substr(second + 1), flag);
  if (count < 0 || count != static_cast<int>(count)) throw ValidationError(flag + ": count must be a nonnegative integer");
  r.count = static_cast<int>(count);
  return r;
}

Params point(const Common& c) {
  Params p{parse_number(c.beta1, "--beta1"), parse_number(c.beta2, "--beta2")};
  p.validate();
  return p;
}

std::uint64_t require_seed(const Common& c, const std::string& verb) {
  if (c.seed_opt->count() == 0) throw ValidationError(verb + " is randomized and needs an explicit --seed");
  return c.seed;
}

void require_json(const Common& c, const std::string& verb) {
  if (c.format != "json") throw ValidationError(verb + " writes JSON only");
}

// Writes to --out or stdout.
void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw ValidationError("cannot open output file " + c.out);
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<AnnealStage> parse_ladder(const std::string& s) {
  std::vector<AnnealStage> stages;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ValidationError("--anneal stages must be beta2:sweeps");
    const double sweeps = parse_number(item.substr(colon + 1), "--anneal");
    if (sweeps < 0 || sweeps != static_cast<long long>(sweeps)) throw ValidationError("--anneal sweeps must be a nonnegative integer");
    stages.push_back({parse_number(item.substr(0, colon), "--anneal"), static_cast<long long>(sweeps)});
  }
  return stages;
}

struct ChainFlags {
  int n = 10;
  long long sweeps = 1000;
  long long burn_in = 100;
  long long thinning = 1;
  long long anneal_sweeps = 0;
  std::string anneal;
};

void add_chain_flags(CLI::App* app, ChainFlags& f) {
  app->add_option("--n", f.n, "node count")->capture_default_str();
  app->add_option("--sweeps", f.sweeps, "sampling sweeps (one sweep = C(n,2) steps)")->capture_default_str();
  app->add_option("--burn-in", f.burn_in, "sweeps at the target before sampling")->capture_default_str();
  app->add_option("--thinning", f.thinning, "sweeps between records")->capture_default_str();
  app->add_option("--anneal-sweeps", f.anneal_sweeps,
                  "sweeps per stage of the geometric ladder -1,-2,-4,... to beta2 (0 = none)")
      ->capture_default_str();
  app->add_option("--anneal", f.anneal, "explicit ladder beta2:sweeps,...; the last stage must be at beta2");
}

ChainConfig chain_config(const ChainFlags& f, const Motif& h2, const Params& p, std::uint64_t seed) {
  ChainConfig c;
  c.n = f.n;
  c.motif = h2;
  c.params = p;
  c.burn_in = f.burn_in;
  c.samples = f.sweeps;
  c.thinning = f.thinning;
  c.seed = seed;
  if (!f.anneal.empty() && f.anneal_sweeps > 0) throw ValidationError("use either --anneal or --anneal-sweeps");
  if (!f.anneal.empty()) c.annealing = parse_ladder(f.anneal);
  if (f.anneal_sweeps > 0) c.annealing = geometric_ladder(p.beta2, f.anneal_sweeps);
  return c;
}

json graphon_json(const StepGraphon& g) {
  json rows = json::array();
  for (int a = 0; a < g.blocks(); ++a) {
    json row = json::array();
    for (int b = 0; b < g.blocks(); ++b) row.push_back(g(a, b));
    rows.push_back(row);
  }
  return {{"m", g.blocks()}, {"values", rows}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-parameter exponential random graph models: exact, sampled and variational free energies"};
  app.require_subcommand(1);

  // exact
  Common exact_c;
  int exact_n = 5;
  bool expensive = false;
  auto* exact = app.add_subcommand("exact", "exact enumeration of all graphs on n nodes");
  add_common(exact, exact_c, "json", false);
  exact->add_option("--n", exact_n, "node count (<= 7, 8 with --allow-expensive)")->capture_default_str();
  exact->add_flag("--allow-expensive", expensive, "permit n = 8");

  // sample
  Common sample_c;
  ChainFlags sample_f;
  std::string trace_path;
  auto* sample = app.add_subcommand("sample", "Glauber dynamics sampler");
  add_common(sample, sample_c, "json", false);
  add_chain_flags(sample, sample_f);
  sample->add_option("--trace", trace_path, "per-record CSV (sweep,t1,t2)");

  // variational
  Common var_c;
  auto* variational = app.add_subcommand("variational", "constant and multipartite ansatz values");
  add_common(variational, var_c, "csv", true);

  // graphon
  Common gr_c;
  std::string gr_file, gr_file2;
  int gr_blocks = 2;
  int gr_restarts = 4;
  auto* graphon = app.add_subcommand("graphon", "step-graphon tools");
  graphon->require_subcommand(1);
  auto* density = graphon->add_subcommand("density", "t(edge), t(H2), I, T and T - I of a graphon file");
  add_common(density, gr_c, "json", false);
  density->add_option("file", gr_file, "graphon file")->required();
  auto* cutdist = graphon->add_subcommand("cutdist", "cut norm distance and block-permutation cut distance");
  add_common(cutdist, gr_c, "json", false);
  cutdist->add_option("first", gr_file, "graphon file")->required();
  cutdist->add_option("second", gr_file2, "graphon file")->required();
  auto* ascend = graphon->add_subcommand("ascend", "maximize T - I over m-block step graphons");
  add_common(ascend, gr_c, "json", false);
  ascend->add_option("--blocks", gr_blocks, "block count m")->capture_default_str();
  ascend->add_option("--restarts", gr_restarts, "random restarts besides the seeded starts")->capture_default_str();

  // scan
  Common scan_c;
  ScanOptions scan_o;
  auto* scan = app.add_subcommand("scan", "grid scan of the ansatz free energies");
  add_common(scan, scan_c, "csv", true);
  scan->add_option("--exact-n", scan_o.exact_n, "add the exact finite-n gap column (0 = off)")->capture_default_str();
  scan->add_option("--ascent-blocks", scan_o.ascent_blocks, "add the ascent column with m blocks (0 = off)")
      ->capture_default_str();
  scan->add_option("--ascent-restarts", scan_o.ascent_restarts, "random restarts per grid point")->capture_default_str();

  // transition
  Common tr_c;
  double tolerance = 1e-6;
  auto* transition = app.add_subcommand("transition", "ansatz crossing beta2 = s(beta1)");
  add_common(transition, tr_c, "json", true);
  transition->add_option("--tol", tolerance, "bracket width")->capture_default_str();

  // verify
  Common ver_c;
  ChainFlags ver_f;
  int n_exact = 0;
  int structure_blocks = 4;
  auto* verify = app.add_subcommand("verify", "cross-check exact, sampled and variational evidence at one point");
  add_common(verify, ver_c, "json", false);
  add_chain_flags(verify, ver_f);
  verify->add_option("--n-exact", n_exact, "exact enumeration size (0 = MCMC only)")->capture_default_str();
  verify->add_option("--blocks", structure_blocks, "blocks of the structure diagnostic")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*exact) {
      require_json(exact_c, "exact");
      const Motif h2 = Motif::parse(exact_c.motif);
      h2.require_h2();
      const Params p = point(exact_c);
      const ExactEnsemble ens(exact_n, h2, {expensive, exact_c.workers});
      emit(exact_c, dump(io::exact_json(exact_n, p, ens.moments(p), ens.gap(p))));
    } else if (*sample) {
      require_json(sample_c, "sample");
      const Motif h2 = Motif::parse(sample_c.motif);
      const Params p = point(sample_c);
      const ChainConfig cfg = chain_config(sample_f, h2, p, require_seed(sample_c, "sample"));
      const ChainStats s = run_chain(cfg);
      if (!trace_path.empty()) {
        std::ofstream f(trace_path);
        if (!f) throw ValidationError("cannot open trace file " + trace_path);
        io::write_trace_csv(f, s);
      }
      emit(sample_c, dump(io::chain_json(cfg, s)));
    } else if (*variational) {
      const Motif h2 = Motif::parse(var_c.motif);
      h2.require_h2();
      const auto b1 = parse_range(var_c.beta1, "--beta1").values();
      const auto b2 = parse_range(var_c.beta2, "--beta2").values();
      std::ostringstream out;
      json rows = json::array();
      if (var_c.format == "csv") out << io::kCsvVersionLine << '\n' << io::variational_csv_header() << '\n';
      for (double x : b1)
        for (double y : b2) {
          const Params p{x, y};
          const auto c = compare_ansatz(p, h2);
          if (var_c.format == "csv") {
            out << io::variational_csv_row(p, c) << '\n';
          } else {
            rows.push_back({{"beta1", x}, {"beta2", y}, {"u_star", c.u_star}, {"er_value", c.er_value},
                            {"mp_value", c.mp_value}, {"p_star", c.p_star},
                            {"winner", std::string(to_string(c.winner))}, {"C", c.order_parameter_C}});
          }
        }
      emit(var_c, var_c.format == "csv" ? out.str() : dump(rows));
    } else if (*graphon) {
      require_json(gr_c, "graphon");
      const Motif h2 = Motif::parse(gr_c.motif);
      if (*density) {
        const StepGraphon g = read_graphon_file(gr_file);
        const Params p = point(gr_c);
        const auto f = functionals(g, h2, p);
        emit(gr_c, dump({{"m", g.blocks()}, {"motif", h2.name()}, {"beta1", p.beta1}, {"beta2", p.beta2},
                         {"t_h1", f.t_h1}, {"t_h2", f.t_h2}, {"I", f.I_value}, {"T", f.T_value},
                         {"objective", f.objective}}));
      } else if (*cutdist) {
        const StepGraphon f = read_graphon_file(gr_file);
        const StepGraphon g = read_graphon_file(gr_file2);
        const auto w = cut_norm_witness(f, g);
        const auto d = delta_cut_search(f, g);
        emit(gr_c, dump({{"cut_norm_dist", w.value},
                         {"refinement", w.refinement},
                         {"witness_rows", w.rows},
                         {"witness_cols", w.cols},
                         {"delta_cut", d.value},
                         {"delta_cut_permutation", d.permutation},
                         {"delta_cut_exhaustive", d.exhaustive},
                         {"delta_cut_is_upper_bound", true}}));
      } else {
        const Params p = point(gr_c);
        AscentOptions opts;
        opts.restarts = gr_restarts;
        opts.seed = require_seed(gr_c, "graphon ascend");
        opts.workers = gr_c.workers;
        const auto r = ascend_objective(h2, p, gr_blocks, opts);
        const auto f = functionals(r.graphon, h2, p);
        emit(gr_c, dump({{"m", gr_blocks}, {"motif", h2.name()}, {"beta1", p.beta1}, {"beta2", p.beta2},
                         {"seed", opts.seed}, {"objective", r.objective}, {"iterations", r.iterations},
                         {"converged", r.converged}, {"t_h1", f.t_h1}, {"t_h2", f.t_h2},
                         {"graphon", graphon_json(r.graphon)}}));
      }
    } else if (*scan) {
      const Motif h2 = Motif::parse(scan_c.motif);
      if (scan_o.ascent_blocks > 0) scan_o.seed = require_seed(scan_c, "scan with --ascent-blocks");
      scan_o.workers = scan_c.workers;
      const auto rows = scan_grid(h2, parse_range(scan_c.beta1, "--beta1"), parse_range(scan_c.beta2, "--beta2"), scan_o);
      if (scan_c.format == "csv") {
        std::ostringstream out;
        io::write_scan_csv(out, rows);
        emit(scan_c, out.str());
      } else {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(io::scan_record_json(r));
        emit(scan_c, dump(arr));
      }
    } else if (*transition) {
      const Motif h2 = Motif::parse(tr_c.motif);
      const auto b1 = parse_range(tr_c.beta1, "--beta1").values();
      std::vector<TransitionEstimate> ts(b1.size());
      for (std::size_t i = 0; i < b1.size(); ++i) ts[i] = find_transition(h2, b1[i], tolerance);
      if (tr_c.format == "csv") {
        std::ostringstream out;
        out << io::kCsvVersionLine << '\n'
            << "beta1,beta2_critical,bracket_lo,bracket_hi,bracket_width,method,dbeta1_disordered,dbeta1_multipartite\n";
        out.precision(17);
        for (const auto& t : ts)
          out << t.beta1 << ',' << t.beta2_critical << ',' << t.bracket_lo << ',' << t.bracket_hi << ','
              << t.bracket_width << ',' << t.method << ',' << t.dbeta1_disordered << ',' << t.dbeta1_multipartite
              << '\n';
        emit(tr_c, out.str());
      } else if (ts.size() == 1 && tr_c.beta1.find(':') == std::string::npos) {
        emit(tr_c, dump(io::transition_json(ts[0])));
      } else {
        json arr = json::array();
        for (const auto& t : ts) arr.push_back(io::transition_json(t));
        emit(tr_c, dump(arr));
      }
    } else if (*verify) {
      require_json(ver_c, "verify");
      const Motif h2 = Motif::parse(ver_c.motif);
      const Params p = point(ver_c);
      VerifyOptions opts;
      opts.n_exact = n_exact;
      opts.chain = chain_config(ver_f, h2, p, require_seed(ver_c, "verify"));
      opts.structure_blocks = structure_blocks;
      const auto rep = verify_point(h2, p, opts);
      emit(ver_c, dump(io::verify_json(rep)));
      if (!rep.passed()) return kExitConsistency;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency failure: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitConsistency;
  }
  return 0;
}
