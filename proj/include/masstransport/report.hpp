#pragma once

#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "masstransport/birkhoff.hpp"
#include "masstransport/estimate.hpp"
#include "masstransport/verify.hpp"

namespace mtp {

/// Shortest decimal form that round-trips to the same double.
std::string format_real(double x);

/// Header: n,lhs,rhs,lhs_ci_lo,lhs_ci_hi,rhs_ci_lo,rhs_ci_hi,mode,pass.
/// Exact rows carry "p/q" values and empty interval columns.
void write_identity_csv(std::ostream& out, const IdentityReport& report, bool header = true);
nlohmann::json identity_json(const IdentityReport& report);

nlohmann::json estimate_json(const EstimateCI& e);

/// Long form: trial,component,n,avg.
void write_trajectories_csv(std::ostream& out, const TrajectoryReport& report);
nlohmann::json trajectories_json(const TrajectoryReport& report);

}  // namespace mtp
