#include "gvi/error_model.hpp"

#include "gvi/errors.hpp"

namespace gvi {

Eigen::MatrixXd inject_error(const ErrorModel& model, int k, int num_states,
                             int num_actions, Rng& rng) {
    if (k < 1) throw GviError("error injection starts at iteration 1");
    if (model.period < 1) throw GviError("error period must be >= 1");
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(num_states, num_actions);
    if (model.kind == ErrorKind::none || k % model.period != 0) return out;
    switch (model.kind) {
        case ErrorKind::periodic_uniform:
            if (model.application == ErrorApplication::scalar_broadcast) {
                out.setConstant(rng.uniform(0.0, model.magnitude));
            } else {
                for (int s = 0; s < num_states; ++s)
                    for (int a = 0; a < num_actions; ++a)
                        out(s, a) = rng.uniform(0.0, model.magnitude);
            }
            break;
        case ErrorKind::gaussian:
            if (model.application == ErrorApplication::scalar_broadcast) {
                out.setConstant(model.magnitude * rng.normal());
            } else {
                for (int s = 0; s < num_states; ++s)
                    for (int a = 0; a < num_actions; ++a)
                        out(s, a) = model.magnitude * rng.normal();
            }
            break;
        case ErrorKind::custom_table:
            if (model.table.rows() != num_states || model.table.cols() != num_actions)
                throw ShapeMismatch("custom error table shape mismatch");
            out = model.table;
            break;
        case ErrorKind::none:
            break;
    }
    return out;
}

}  // namespace gvi
