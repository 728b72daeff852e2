#pragma once

#include <vector>

#include "gvi/errors.hpp"

namespace gvi {

/// Dynamic KL coefficient rule: lambda_k = max(alpha1*||eps_k||_inf,
/// alpha2*lambda_{k-1}). Returns a strictly positive value.
double update_lambda_tabular(double err_norm, double lambda_prev, double alpha1,
                             double alpha2);

/// The dynamic-coefficient state: the rule parameters, the realized history
/// lambda_0..lambda_{N-1}, and the derived eta_k = 1/lambda_k and
/// Z_k = sum_{j<=k} eta_j used by the error bounds.
///
/// alpha1 = 0 together with alpha2 = 1 is the documented degenerate corner
/// that freezes lambda at lambda_init and reduces the scheme to the
/// constant-coefficient iteration.
struct CoefficientSchedule {
    double alpha1 = 2.0;
    double alpha2 = 0.9;
    double lambda_init = 10.0;
    std::vector<double> history;

    CoefficientSchedule() = default;
    CoefficientSchedule(double a1, double a2, double l0)
        : alpha1(a1), alpha2(a2), lambda_init(l0) {
        validate();
    }
    static CoefficientSchedule constant(double lambda) {
        return CoefficientSchedule(0.0, 1.0, lambda);
    }

    void validate() const {
        if (alpha1 < 0.0) throw GviError("alpha1 must be nonnegative");
        if (!(alpha2 > 0.0 && alpha2 <= 1.0)) throw GviError("alpha2 must lie in (0,1]");
        if (!(lambda_init > 0.0)) throw GviError("lambda_init must be positive");
    }

    double eta(int k) const { return 1.0 / history.at(k); }
    /// Z_k = sum_{j=0}^{k} eta_j.
    double z_partial(int k) const {
        double z = 0.0;
        for (int j = 0; j <= k; ++j) z += eta(j);
        return z;
    }
};

}  // namespace gvi
