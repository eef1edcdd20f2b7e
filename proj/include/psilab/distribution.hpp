#pragma once

#include "psilab/aggregates.hpp"
#include "psilab/sieve.hpp"
#include "psilab/zerocache.hpp"

#include <vector>

namespace psilab {

enum class RemainderKind { T, Tstar };

// T(e^y;q,a) or T*(e^y;q,a) on a uniform y-grid.
struct LogSampleSeries {
    long long q = 1;
    long long a = 1;
    RemainderKind which = RemainderKind::T;
    std::vector<double> y;       // uniform, strictly increasing
    std::vector<double> values;
    double truncation_bound = 0;  // attached for which = Tstar
};

struct MomentReport {
    double empirical_mean = 0;
    double empirical_variance = 0;
    double theoretical_mean = 0;      // 0 for T*; (2/phi) sum conj(chi(a)) z(chi) for T
    double theoretical_variance = 0;  // V*(q;a) partial sum + tail correction
    double tail_estimate = 0;
};

struct ChebyshevReport {
    double bound = 0;             // 1/Psi^2
    double scaled_threshold = 0;  // Psi phi(q)^{-1/2} (log q)^{1/2}
    double empirical_exceedance = 0;
};

// T route: one streaming sieve pass to e^{y_max}.  T* route: zero sums at
// each grid point (zeros to T_height must be cached for every character).
LogSampleSeries sample_series(long long q, long long a, double y_min, double y_max,
                              int n_samples, RemainderKind which,
                              const ZeroStore* zeros = nullptr, double T_height = 0,
                              const SieveOptions& opt = {});

// Partial V*(q;a) from cached zeros with |gamma| <= T (no tail).
double theoretical_variance_partial(long long q, long long a, double T,
                                    const ZeroStore& zeros);

// Riemann-von Mangoldt density tail: (1/phi^2) sum_{chi != chi0}
// (2/(pi T)) (log(qT/(2 pi)) + 1).
double variance_tail_estimate(long long q, double T);

MomentReport moment_report(const LogSampleSeries& series, double T_height,
                           const ZeroStore& zeros, const CentralStore* central = nullptr);

ChebyshevReport chebyshev_bound(double psi_threshold, long long q, long long a,
                                const LogSampleSeries& series);

// (1/(phi(q)-1)) sum_{chi != chi0} sum_{|gamma|<=T} eta_kappa(gamma log q / (2 pi)),
// eta_kappa(y) = (sin(kappa pi y)/(kappa pi y))^2.
double one_level_density(long long q, double kappa, double T_height, const ZeroStore& zeros);

} // namespace psilab
