#include "psilab/iteration.hpp"

#include "psilab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace psilab {

namespace {
void check_eta(double eta) {
    if (!(eta > 0.5 && eta < 1.0))
        throw domain_error("eta must lie in (1/2, 1)");
}
} // namespace

double f_map(double eta, double t) {
    check_eta(eta);
    return 2.0 - 1.0 / eta - t * (1.0 - 1.0 / eta);
}

IterationTrace iterate_trace(double eta, int n_max) {
    check_eta(eta);
    if (n_max < 0)
        throw domain_error("n_max must be >= 0");
    IterationTrace trace;
    trace.eta = eta;
    double t = 2.0 - 1.0 / eta;
    double r = 1.0 / eta - 1.0;  // contraction ratio in (0,1)
    double rpow = r;
    for (int n = 0; n <= n_max; ++n) {
        trace.values.push_back(t);
        double closed = 1.0 - rpow;
        trace.closed_form_check = std::max(trace.closed_form_check, std::abs(t - closed));
        if (trace.n_stop < 0 && t > 0.5)
            trace.n_stop = n;
        t = f_map(eta, t);
        rpow *= r;
    }
    trace.truncated = trace.n_stop < 0;
    return trace;
}

double kappa_update(double eta, double kappa) {
    if (!(kappa > 0.0 && kappa < 0.5))
        throw domain_error("kappa must lie in (0, 1/2)");
    return std::min(0.5, f_map(eta, kappa));
}

} // namespace psilab
