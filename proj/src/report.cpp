#include "masstransport/report.hpp"

#include <array>
#include <charconv>

namespace mtp {

using nlohmann::json;

std::string format_real(double x) {
  std::array<char, 64> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), result.ptr);
}

void write_identity_csv(std::ostream& out, const IdentityReport& report, bool header) {
  if (header) out << "n,lhs,rhs,lhs_ci_lo,lhs_ci_hi,rhs_ci_lo,rhs_ci_hi,mode,pass\n";
  for (const auto& e : report.entries) {
    out << e.n << ',';
    if (e.mode == Mode::Exact) {
      out << to_string(*e.exact_lhs) << ',' << to_string(*e.exact_rhs) << ",,,,,";
    } else {
      out << format_real(e.mc_lhs->mean) << ',' << format_real(e.mc_rhs->mean) << ','
          << format_real(e.mc_lhs->ci_low) << ',' << format_real(e.mc_lhs->ci_high) << ','
          << format_real(e.mc_rhs->ci_low) << ',' << format_real(e.mc_rhs->ci_high) << ',';
    }
    out << to_string(e.mode) << ',' << (e.pass ? "true" : "false") << '\n';
  }
}

json estimate_json(const EstimateCI& e) {
  return {{"mean", e.mean},
          {"std_error", e.std_error},
          {"trials", e.trials},
          {"ci_low", e.ci_low},
          {"ci_high", e.ci_high}};
}

json identity_json(const IdentityReport& report) {
  json rows = json::array();
  // Cumulative sums are for display; the per-n terms are what is checked.
  Rational exact_lhs = 0;
  Rational exact_rhs = 0;
  double mc_lhs = 0.0;
  double mc_rhs = 0.0;
  for (const auto& e : report.entries) {
    json row{{"n", e.n}, {"mode", std::string(to_string(e.mode))}, {"pass", e.pass}};
    if (e.mode == Mode::Exact) {
      exact_lhs += *e.exact_lhs;
      exact_rhs += *e.exact_rhs;
      row["lhs"] = to_string(*e.exact_lhs);
      row["rhs"] = to_string(*e.exact_rhs);
      row["cumulative_lhs"] = to_string(exact_lhs);
      row["cumulative_rhs"] = to_string(exact_rhs);
    } else {
      mc_lhs += e.mc_lhs->mean;
      mc_rhs += e.mc_rhs->mean;
      row["lhs"] = estimate_json(*e.mc_lhs);
      row["rhs"] = estimate_json(*e.mc_rhs);
      row["cumulative_lhs"] = mc_lhs;
      row["cumulative_rhs"] = mc_rhs;
    }
    rows.push_back(std::move(row));
  }
  return {{"entries", std::move(rows)}, {"all_pass", report.all_pass()}};
}

void write_trajectories_csv(std::ostream& out, const TrajectoryReport& report) {
  out << "trial,component,n,avg\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < report.grid.size(); ++i) {
      out << row.trial << ',' << row.component << ',' << report.grid[i] << ',' << format_real(row.averages[i])
          << '\n';
    }
  }
}

json trajectories_json(const TrajectoryReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"trial", row.trial},
                    {"component", row.component},
                    {"target", row.target},
                    {"avg", row.averages},
                    {"terminal_deviation", row.terminal_deviation}});
  }
  return {{"grid", report.grid}, {"trajectories", std::move(rows)}};
}

}  // namespace mtp
