#pragma once

#include <string>
#include <vector>

namespace psilab {

inline constexpr long long kPrimeCutoffDefault = 200000000;   // 2e8
inline constexpr long long kEulerProductCutoff = 1000000000;  // 1e9

// A numeric constant together with a certified bound on the truncation
// error of its defining prime sum / product (integral-comparison tails),
// plus a small allowance for floating accumulation.
struct CertifiedConstant {
    std::string name;
    double value = 0;
    double error_bound = 0;
    int digits_requested = 0;  // largest D with error_bound < 10^-D
};

// Partial prime sums at one cutoff, all gathered in a single sieve pass.
struct PrimeSumValues {
    long long cutoff = 0;
    double s_pp1 = 0;      // sum_{p<=P} log p / (p(p-1))
    double s_p2p1 = 0;     // sum_{p<=P} log p / (p^2-p+1)
    double s_logprod = 0;  // sum_{p<=P} log(1 + 1/(p(p-1)))
};

// One segmented pass to max(cutoffs), with compensated partial sums
// snapshotted at each requested cutoff.  Cutoffs need not be sorted.
std::vector<PrimeSumValues> prime_sums(std::vector<long long> cutoffs);

// Certified tail of sum_{p>P} log p/(p(p-1)) via the all-integers
// comparison sum_{n>P} log n/(n(n-1)) <= (log P + 1)/(P - 1).
double prime_sum_tail_bound(long long P);

// C0 = (log 2pi + gamma + sum_p log p/(p(p-1)) + 1) / 2
CertifiedConstant c0(long long prime_cutoff = kPrimeCutoffDefault);
// C1 = zeta(2) zeta(3) / zeta(6), cross-checked against the Euler product
// prod_p (1 + 1/(p(p-1))).
CertifiedConstant c1(long long euler_cutoff = kEulerProductCutoff);
// C2 = C1 (gamma - 1 - sum_p log p/(p^2-p+1))
CertifiedConstant c2(long long prime_cutoff = kPrimeCutoffDefault);
// C3 = C0 - log 2.  (The divergent printed variant with sum log p/(p-1)
// is reported by the CLI as a typo; only this convergent form is computed.)
CertifiedConstant c3(long long prime_cutoff = kPrimeCutoffDefault);

// The two C1 routes individually, for cross-checks.
double c1_zeta_route();
double c1_euler_route(long long euler_cutoff = kEulerProductCutoff);

// From precomputed sums (lets callers reuse one pass for many constants).
CertifiedConstant c0_from(const PrimeSumValues& ps);
CertifiedConstant c2_from(const PrimeSumValues& ps);
CertifiedConstant c3_from(const PrimeSumValues& ps);

// Smallest power-of-two-scaled cutoff whose certified C0 bound is below
// 10^-digits; throws resource_error past the sieve cap.
long long cutoff_for_digits(int digits, long long cap);

} // namespace psilab
