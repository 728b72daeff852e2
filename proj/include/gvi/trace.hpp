#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gvi/error_model.hpp"
#include "gvi/mdp.hpp"

namespace gvi {

/// Per-run record of an iterative scheme. Row i covers the step that produced
/// (pi_{i+1}, q_{i+1}) from (pi_i, q_i):
///   lambdas[i]      coefficient lambda_i used by that step
///   errors          realized eps_{i+1} tables and norms
///   gaps[i]         ||q* - q_{pi_{i+1}}||_inf via exact policy evaluation
///   q_norms[i]      ||q_{i+1}||_inf (after error injection)
///   backup_norms[i] ||q_{i+1} - eps_{i+1}||_inf (the exact backup)
struct IterationTrace {
    std::string scheme;
    double gamma = 0.0;
    int num_actions = 0;
    double q0_norm = 0.0;

    std::vector<double> lambdas;
    ErrorTrace errors;
    std::vector<double> gaps;
    std::vector<double> q_norms;
    std::vector<double> backup_norms;

    // optional recordings
    std::vector<Policy> policies;
    std::vector<QFunction> qs;
    /// For the stable scheme: the change-of-variable iterates
    /// lambda_{k+1}(q_{k+1} - ln pi_{k+1}) comparable to the explicit scheme.
    std::vector<QFunction> transformed_qs;
    /// For the averaged scheme: the smoothed averages h_{k+1}.
    std::vector<QFunction> averaged_hs;

    // filled by bound analysis; NaN where a bound is undefined
    std::vector<double> bound_thm1;
    std::vector<double> bound_thm2;

    int size() const { return static_cast<int>(gaps.size()); }
};

/// Columns: iter,lambda,err_norm,gap,bound_thm2,bound_thm1 (blank = undefined).
void write_trace_csv(const IterationTrace& trace, const std::string& path);

}  // namespace gvi
