#pragma once

#include <vector>

namespace psilab {

// Trace of the exponent-improvement map f(t) = 2 - 1/eta - t(1 - 1/eta)
// started at t0 = 2 - 1/eta.
struct IterationTrace {
    double eta = 0;
    std::vector<double> values;       // values[n] = f^(n)(t0)
    int n_stop = -1;                  // smallest n with values[n] > 1/2; -1 if not reached
    bool truncated = false;           // n_stop not reached within n_max
    double closed_form_check = 0;     // max |values[n] - (1 - (1/eta - 1)^(n+1))|
};

double f_map(double eta, double t);
IterationTrace iterate_trace(double eta, int n_max);

// min(1/2, f(eta, kappa)) for 0 < kappa < 1/2.
double kappa_update(double eta, double kappa);

} // namespace psilab
