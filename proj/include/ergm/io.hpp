#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ergm/exact.hpp"
#include "ergm/mcmc.hpp"
#include "ergm/scan.hpp"
#include "ergm/variational.hpp"

namespace ergm::io {

// Leading comment line of every CSV the tools write. Bump on any column
// change.
inline constexpr const char* kCsvVersionLine = "# ergm-csv v1";

nlohmann::json exact_json(int n, const Params& p, const ExactMoments& m, double gap);
nlohmann::json chain_json(const ChainConfig& cfg, const ChainStats& s);
nlohmann::json transition_json(const TransitionEstimate& t);
nlohmann::json verify_json(const VerifyReport& r);
nlohmann::json scan_record_json(const ScanRecord& r);

// Per-sample trace: sweep,t1,t2
void write_trace_csv(std::ostream& out, const ChainStats& s);

// beta1,beta2,u_star,er_value,mp_value,p_star,winner,C
std::string variational_csv_header();
std::string variational_csv_row(const Params& p, const AnsatzComparison& c);

// Variational columns followed by ascent_objective,ascent_beats_ansatz,finite_n_gap
// (empty cells when a column is disabled).
std::string scan_csv_header();
std::string scan_csv_row(const ScanRecord& r);

void write_scan_csv(std::ostream& out, const std::vector<ScanRecord>& rows);

}  // namespace ergm::io
