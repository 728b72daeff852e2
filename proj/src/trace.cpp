#include "gvi/trace.hpp"

#include <fstream>
#include <limits>

#include "gvi/csv.hpp"
#include "gvi/errors.hpp"

namespace gvi {

void write_trace_csv(const IterationTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw GviError("cannot open " + path + " for writing");
    out << "iter,lambda,err_norm,gap,bound_thm2,bound_thm1\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < trace.size(); ++i) {
        const double b1 =
            i < static_cast<int>(trace.bound_thm1.size()) ? trace.bound_thm1[i] : nan;
        const double b2 =
            i < static_cast<int>(trace.bound_thm2.size()) ? trace.bound_thm2[i] : nan;
        out << (i + 1) << ',' << csv_double(trace.lambdas[i]) << ','
            << csv_double(trace.errors.norms[i]) << ',' << csv_double(trace.gaps[i])
            << ',' << csv_double(b2) << ',' << csv_double(b1) << '\n';
    }
}

}  // namespace gvi
