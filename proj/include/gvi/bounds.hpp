#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gvi/schedule.hpp"
#include "gvi/trace.hpp"

namespace gvi {

/// Per-iteration decomposition of the dynamic-coefficient gap bound
///   (2/(1-gamma)) (1/Z_k) ( ||sum_{j<=k} eta_j eps_j||_inf
///       + (eta_{k+1} + eta_0 + sum_{j<=k} |eta_{j+1}-eta_j|) q_max
///       + gamma ln|A| )
/// together with the measured gap and a satisfied flag (slack 1e-9).
/// Entries are NaN at k = 0 where the bound is not defined.
struct BoundReport {
    double horizon_factor = 0.0;  // 2/(1-gamma)
    std::vector<double> weighted_error_norm;  // ||sum eta_j eps_j||_inf / Z_k
    std::vector<double> variation_term;       // sum |eta_{j+1} - eta_j|
    std::vector<double> eta_first;            // eta_0
    std::vector<double> eta_last;             // eta_{k+1}
    std::vector<double> entropy_term;         // gamma ln|A|
    std::vector<double> q_max;                // running max in effect at k
    std::vector<double> total_bound;
    std::vector<double> measured_gap;
    std::vector<char> satisfied;

    int violations() const;
    int checked() const;
};

inline constexpr double kBoundSlack = 1e-9;

/// Constant-coefficient bound (2/(1-gamma)) (1/k) (||sum eps_j|| + 2 q_max +
/// lambda gamma ln|A|) per k >= 1 (NaN at the k = 0 row). Throws
/// MismatchedSchedule when the trace's lambda varied. When q_max_override is
/// empty, the trajectory-wise running max of the recorded q and backup norms
/// is used, recomputed per k.
std::vector<double> theorem1_bound(const IterationTrace& trace,
                                   double lambda_const, double gamma,
                                   int num_actions,
                                   std::optional<double> q_max_override = {});

/// Dynamic-coefficient bound per k >= 1 (NaN at the k = 0 row). The schedule
/// must match the trace's recorded lambdas. eta_{k+1} comes from the next
/// recorded value and reuses eta_k at the final iteration.
std::vector<double> theorem2_bound(const IterationTrace& trace,
                                   const CoefficientSchedule& schedule,
                                   double gamma, int num_actions,
                                   std::optional<double> q_max_override = {});

BoundReport make_bound_report(const IterationTrace& trace,
                              const CoefficientSchedule& schedule);

/// (weighted mean error norm, uniform mean error norm) at the final
/// iteration, the weighted mean normalized by sum_{j>=1} eta_j.
std::pair<double, double> weighted_vs_uniform_error(
    const IterationTrace& trace, const CoefficientSchedule& schedule);

void write_bound_report_csv(const BoundReport& report, const std::string& path);

/// Rebuild a schedule view (alpha parameters unused by the bound arithmetic)
/// from a trace's recorded lambdas.
CoefficientSchedule schedule_from_trace(const IterationTrace& trace);

}  // namespace gvi
