#include "ergm/io.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace ergm::io {

namespace {

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

// JSON has no infinities; encode them as null.
nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); }

}  // namespace

nlohmann::json exact_json(int n, const Params& p, const ExactMoments& m, double gap) {
  return {{"n", n},
          {"beta1", p.beta1},
          {"beta2", p.beta2},
          {"psi", m.psi},
          {"mean_t1", m.mean_t1},
          {"mean_t2", m.mean_t2},
          {"var_t1", m.var_t1},
          {"var_t2", m.var_t2},
          {"gap", gap}};
}

nlohmann::json chain_json(const ChainConfig& cfg, const ChainStats& s) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& st : cfg.annealing) stages.push_back({{"beta2", st.beta2}, {"sweeps", st.sweeps}});
  nlohmann::json edges = nlohmann::json::array();
  const auto& g = s.final_graph;
  for (int i = 0; i < g.size(); ++i)
    for (int j = i + 1; j < g.size(); ++j)
      if (g.has_edge(i, j)) edges.push_back({i, j});
  return {{"n", cfg.n},
          {"motif", cfg.motif.name()},
          {"beta1", cfg.params.beta1},
          {"beta2", cfg.params.beta2},
          {"burn_in", cfg.burn_in},
          {"samples", cfg.samples},
          {"thinning", cfg.thinning},
          {"seed", cfg.seed},
          {"annealing", stages},
          {"mean_t1", s.mean_t1},
          {"mean_t2", s.mean_t2},
          {"se_t1", s.se_t1},
          {"se_t2", s.se_t2},
          {"acceptance_rate", s.acceptance_rate},
          {"steps", s.steps},
          {"final_graph", {{"n", g.size()}, {"edges", edges}}}};
}

nlohmann::json transition_json(const TransitionEstimate& t) {
  return {{"beta1", t.beta1},
          {"beta2_critical", t.beta2_critical},
          {"bracket_lo", t.bracket_lo},
          {"bracket_hi", t.bracket_hi},
          {"bracket_width", t.bracket_width},
          {"method", t.method},
          {"dbeta1_disordered", t.dbeta1_disordered},
          {"dbeta1_multipartite", t.dbeta1_multipartite}};
}

nlohmann::json verify_json(const VerifyReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"report_only", c.report_only},
                      {"value", finite_or_null(c.value)},
                      {"threshold", c.threshold},
                      {"detail", c.detail}});
  nlohmann::json j = {{"beta1", r.params.beta1},
                      {"beta2", r.params.beta2},
                      {"motif", r.motif},
                      {"winner", std::string(to_string(r.ansatz.winner))},
                      {"er_value", r.ansatz.er_value},
                      {"mp_value", r.ansatz.mp_value},
                      {"u_star", r.ansatz.u_star},
                      {"C", r.ansatz.order_parameter_C},
                      {"passed", r.passed()},
                      {"checks", checks}};
  if (r.exact) j["exact"] = exact_json(r.exact->n, r.params, *r.exact, 0.0);
  if (r.chain)
    j["mcmc"] = {{"mean_t1", r.chain->mean_t1},
                 {"mean_t2", r.chain->mean_t2},
                 {"se_t1", r.chain->se_t1},
                 {"se_t2", r.chain->se_t2},
                 {"acceptance_rate", r.chain->acceptance_rate}};
  if (r.structure_distance) j["structure_distance"] = *r.structure_distance;
  return j;
}

nlohmann::json scan_record_json(const ScanRecord& r) {
  nlohmann::json j = {{"beta1", r.beta1},     {"beta2", r.beta2},
                      {"u_star", r.u_star},   {"er_value", r.er_value},
                      {"mp_value", r.mp_value}, {"p_star", r.p_star},
                      {"winner", std::string(to_string(r.winner))}, {"C", r.C}};
  if (r.ascent_objective) {
    j["ascent_objective"] = *r.ascent_objective;
    j["ascent_beats_ansatz"] = r.ascent_beats_ansatz;
  }
  if (r.finite_n_gap) j["finite_n_gap"] = *r.finite_n_gap;
  return j;
}

void write_trace_csv(std::ostream& out, const ChainStats& s) {
  out << kCsvVersionLine << '\n' << "sweep,t1,t2\n";
  for (const auto& row : s.trace) out << row.sweep << ',' << num(row.t1) << ',' << num(row.t2) << '\n';
}

std::string variational_csv_header() { return "beta1,beta2,u_star,er_value,mp_value,p_star,winner,C"; }

std::string variational_csv_row(const Params& p, const AnsatzComparison& c) {
  std::ostringstream s;
  s << num(p.beta1) << ',' << num(p.beta2) << ',' << num(c.u_star) << ',' << num(c.er_value) << ','
    << num(c.mp_value) << ',' << num(c.p_star) << ',' << to_string(c.winner) << ',' << num(c.order_parameter_C);
  return s.str();
}

std::string scan_csv_header() {
  return variational_csv_header() + ",ascent_objective,ascent_beats_ansatz,finite_n_gap";
}

std::string scan_csv_row(const ScanRecord& r) {
  AnsatzComparison c;
  c.u_star = r.u_star;
  c.er_value = r.er_value;
  c.mp_value = r.mp_value;
  c.p_star = r.p_star;
  c.winner = r.winner;
  c.order_parameter_C = r.C;
  std::string row = variational_csv_row({r.beta1, r.beta2}, c);
  row += ',';
  if (r.ascent_objective) row += num(*r.ascent_objective);
  row += ',';
  if (r.ascent_objective) row += r.ascent_beats_ansatz ? "1" : "0";
  row += ',';
  if (r.finite_n_gap) row += num(*r.finite_n_gap);
  return row;
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRecord>& rows) {
  out << kCsvVersionLine << '\n' << scan_csv_header() << '\n';
  for (const auto& r : rows) out << scan_csv_row(r) << '\n';
}

}  // namespace ergm::io
