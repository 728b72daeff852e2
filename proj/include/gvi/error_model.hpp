#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "gvi/rng.hpp"

namespace gvi {

enum class ErrorKind { none, periodic_uniform, gaussian, custom_table };

/// How a drawn error is turned into a (state, action) table: one scalar added
/// to every entry, or an independent draw per entry.
enum class ErrorApplication { scalar_broadcast, per_entry };

/// Specification of the evaluation-error sequence injected into q updates.
/// periodic_uniform: unif(0, magnitude) whenever the period divides k, zero
/// otherwise. gaussian: N(0, magnitude) at the same cadence (period 1 = every
/// iteration). custom_table: a fixed table at the same cadence.
struct ErrorModel {
    ErrorKind kind = ErrorKind::none;
    int period = 1;
    double magnitude = 0.0;
    ErrorApplication application = ErrorApplication::scalar_broadcast;
    std::uint64_t rng_seed = 0;
    Eigen::MatrixXd table;

    static ErrorModel none_model() { return ErrorModel{}; }
    static ErrorModel periodic(int period, double magnitude,
                               ErrorApplication app = ErrorApplication::scalar_broadcast) {
        ErrorModel m;
        m.kind = ErrorKind::periodic_uniform;
        m.period = period;
        m.magnitude = magnitude;
        m.application = app;
        return m;
    }
    static ErrorModel gaussian_noise(double stddev,
                                     ErrorApplication app = ErrorApplication::per_entry,
                                     int period = 1) {
        ErrorModel m;
        m.kind = ErrorKind::gaussian;
        m.period = period;
        m.magnitude = stddev;
        m.application = app;
        return m;
    }
};

/// Realized error table for iteration k >= 1. Draws from the stream only at
/// shock iterations, so schemes sharing a seeded stream see identical errors.
Eigen::MatrixXd inject_error(const ErrorModel& model, int k, int num_states,
                             int num_actions, Rng& rng);

/// Realized per-iteration error tables and their infinity norms.
struct ErrorTrace {
    std::vector<Eigen::MatrixXd> tables;
    std::vector<double> norms;

    void push(Eigen::MatrixXd table) {
        norms.push_back(table.size() == 0 ? 0.0 : table.cwiseAbs().maxCoeff());
        tables.push_back(std::move(table));
    }
};

}  // namespace gvi
