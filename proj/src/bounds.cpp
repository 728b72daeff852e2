#include "gvi/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "gvi/csv.hpp"

namespace gvi {

namespace {

const double kNan = std::numeric_limits<double>::quiet_NaN();

void check_schedule(const IterationTrace& trace,
                    const CoefficientSchedule& schedule) {
    if (schedule.history.size() != trace.lambdas.size())
        throw MismatchedSchedule("schedule length does not match trace");
    for (size_t i = 0; i < schedule.history.size(); ++i)
        if (schedule.history[i] != trace.lambdas[i])
            throw MismatchedSchedule("schedule lambdas differ from trace");
}

void check_errors_present(const IterationTrace& trace) {
    if (static_cast<int>(trace.errors.tables.size()) != trace.size())
        throw GviError("trace is missing realized error tables");
}

/// Running max of every q-norm the proofs touch: the post-error iterates and
/// the exact backups feeding the variation term.
std::vector<double> running_q_max(const IterationTrace& trace) {
    std::vector<double> out(trace.size());
    double running = trace.q0_norm;
    for (int i = 0; i < trace.size(); ++i) {
        running = std::max({running, trace.q_norms[i], trace.backup_norms[i]});
        out[i] = running;
    }
    return out;
}

}  // namespace

int BoundReport::violations() const {
    int count = 0;
    for (size_t i = 0; i < satisfied.size(); ++i)
        if (!std::isnan(total_bound[i]) && !satisfied[i]) ++count;
    return count;
}

int BoundReport::checked() const {
    int count = 0;
    for (double b : total_bound)
        if (!std::isnan(b)) ++count;
    return count;
}

std::vector<double> theorem1_bound(const IterationTrace& trace,
                                   double lambda_const, double gamma,
                                   int num_actions,
                                   std::optional<double> q_max_override) {
    for (double l : trace.lambdas)
        if (l != lambda_const)
            throw MismatchedSchedule("theorem1_bound requires a constant lambda");
    check_errors_present(trace);
    const int n = trace.size();
    std::vector<double> bounds(n, kNan);
    if (n == 0) return bounds;
    const std::vector<double> qmax = running_q_max(trace);
    const double horizon = 2.0 / (1.0 - gamma);
    const double log_a = std::log(static_cast<double>(num_actions));
    Eigen::MatrixXd err_sum = Eigen::MatrixXd::Zero(
        trace.errors.tables[0].rows(), trace.errors.tables[0].cols());
    // Bound row k covers the gap of pi_{k+1} using errors eps_1..eps_k; the
    // errors live one row back (errors[i] = eps_{i+1}).
    for (int k = 1; k < n; ++k) {
        err_sum += trace.errors.tables[k - 1];
        const double qm = q_max_override.value_or(qmax[k]);
        bounds[k] = horizon / k *
                    (err_sum.cwiseAbs().maxCoeff() + 2.0 * qm +
                     lambda_const * gamma * log_a);
    }
    return bounds;
}

std::vector<double> theorem2_bound(const IterationTrace& trace,
                                   const CoefficientSchedule& schedule,
                                   double gamma, int num_actions,
                                   std::optional<double> q_max_override) {
    check_schedule(trace, schedule);
    check_errors_present(trace);
    const int n = trace.size();
    std::vector<double> bounds(n, kNan);
    if (n == 0) return bounds;
    const std::vector<double> qmax = running_q_max(trace);
    const double horizon = 2.0 / (1.0 - gamma);
    const double log_a = std::log(static_cast<double>(num_actions));

    auto eta = [&](int j) {  // reuses eta_{n-1} one index past the trace end
        return 1.0 / trace.lambdas[std::min(j, n - 1)];
    };
    Eigen::MatrixXd weighted_err_sum = Eigen::MatrixXd::Zero(
        trace.errors.tables[0].rows(), trace.errors.tables[0].cols());
    double z = eta(0);          // Z_0
    double variation = std::abs(eta(1) - eta(0));  // j = 0 term
    for (int k = 1; k < n; ++k) {
        weighted_err_sum += eta(k) * trace.errors.tables[k - 1];
        z += eta(k);
        variation += std::abs(eta(k + 1) - eta(k));
        const double qm = q_max_override.value_or(qmax[k]);
        bounds[k] = horizon / z *
                    (weighted_err_sum.cwiseAbs().maxCoeff() +
                     (eta(k + 1) + eta(0) + variation) * qm + gamma * log_a);
    }
    return bounds;
}

BoundReport make_bound_report(const IterationTrace& trace,
                              const CoefficientSchedule& schedule) {
    check_schedule(trace, schedule);
    check_errors_present(trace);
    const int n = trace.size();
    BoundReport report;
    report.horizon_factor = 2.0 / (1.0 - trace.gamma);
    report.weighted_error_norm.assign(n, kNan);
    report.variation_term.assign(n, kNan);
    report.eta_first.assign(n, kNan);
    report.eta_last.assign(n, kNan);
    report.entropy_term.assign(n, trace.gamma * std::log(trace.num_actions));
    report.q_max = running_q_max(trace);
    report.total_bound =
        theorem2_bound(trace, schedule, trace.gamma, trace.num_actions);
    report.measured_gap = trace.gaps;
    report.satisfied.assign(n, 1);

    auto eta = [&](int j) { return 1.0 / trace.lambdas[std::min(j, n - 1)]; };
    Eigen::MatrixXd weighted_err_sum = Eigen::MatrixXd::Zero(
        trace.errors.tables[0].rows(), trace.errors.tables[0].cols());
    double z = eta(0);
    double variation = std::abs(eta(1) - eta(0));
    for (int k = 1; k < n; ++k) {
        weighted_err_sum += eta(k) * trace.errors.tables[k - 1];
        z += eta(k);
        variation += std::abs(eta(k + 1) - eta(k));
        report.weighted_error_norm[k] =
            weighted_err_sum.cwiseAbs().maxCoeff() / z;
        report.variation_term[k] = variation;
        report.eta_first[k] = eta(0);
        report.eta_last[k] = eta(k + 1);
    }
    for (int k = 0; k < n; ++k)
        if (!std::isnan(report.total_bound[k]))
            report.satisfied[k] =
                trace.gaps[k] <= report.total_bound[k] + kBoundSlack ? 1 : 0;
    return report;
}

std::pair<double, double> weighted_vs_uniform_error(
    const IterationTrace& trace, const CoefficientSchedule& schedule) {
    check_schedule(trace, schedule);
    check_errors_present(trace);
    const int n = trace.size();
    if (n == 0) throw GviError("empty trace");
    Eigen::MatrixXd weighted = Eigen::MatrixXd::Zero(
        trace.errors.tables[0].rows(), trace.errors.tables[0].cols());
    Eigen::MatrixXd uniform = weighted;
    double eta_sum = 0.0;
    for (int j = 1; j <= n; ++j) {
        // errors[j-1] = eps_j pairs with eta_j = 1/lambda_j; the final error
        // has no recorded successor lambda so eta_{n-1} is reused.
        const double eta_j = 1.0 / trace.lambdas[std::min(j, n - 1)];
        weighted += eta_j * trace.errors.tables[j - 1];
        uniform += trace.errors.tables[j - 1];
        eta_sum += eta_j;
    }
    return {weighted.cwiseAbs().maxCoeff() / eta_sum,
            uniform.cwiseAbs().maxCoeff() / n};
}

void write_bound_report_csv(const BoundReport& report,
                            const std::string& path) {
    std::ofstream out(path);
    if (!out) throw GviError("cannot open " + path + " for writing");
    out << "iter,weighted_error_norm,variation_term,eta0,eta_k_plus_1,"
           "entropy_term,horizon_factor,q_max,bound,gap,satisfied\n";
    for (size_t i = 0; i < report.total_bound.size(); ++i) {
        out << (i + 1) << ',' << csv_double(report.weighted_error_norm[i]) << ','
            << csv_double(report.variation_term[i]) << ','
            << csv_double(report.eta_first[i]) << ','
            << csv_double(report.eta_last[i]) << ','
            << csv_double(report.entropy_term[i]) << ','
            << csv_double(report.horizon_factor) << ','
            << csv_double(report.q_max[i]) << ','
            << csv_double(report.total_bound[i]) << ','
            << csv_double(report.measured_gap[i]) << ','
            << (std::isnan(report.total_bound[i]) ? ""
                                                  : (report.satisfied[i] ? "1" : "0"))
            << '\n';
    }
}

CoefficientSchedule schedule_from_trace(const IterationTrace& trace) {
    CoefficientSchedule schedule;
    schedule.history = trace.lambdas;
    if (!trace.lambdas.empty()) schedule.lambda_init = trace.lambdas.front();
    return schedule;
}

}  // namespace gvi
