#pragma once

#include "psilab/characters.hpp"
#include "psilab/sieve.hpp"
#include "psilab/zerocache.hpp"

#include <complex>

namespace psilab {

struct ZeroSumConfig {
    double truncation_height = 200.0;
    bool include_real = true;
    double x = 0;
    long long q = 1;
    long long a = 1;
};

// Normalized prime-counting remainders at one x.  truncation_error_bound
// is on the same normalized scale as the values: 4 sqrt(x) log^2(qx) / T.
struct RemainderValue {
    double x = 0;
    long long q = 1;
    long long a = 1;
    double T_value = 0;
    double Tstar_value = 0;
    double truncation_error_bound = 0;
};

// Tail bound of the truncated explicit formula on the psi scale:
// 4 x log^2(qx) / T.
double truncation_bound_psi(double x, long long q, double T);

// -sum over zeros of chi with |gamma| <= T of x^rho / rho, rho = 1/2+i gamma.
// Non-real zeros come from the store (both signs via the conjugate set);
// include_real adds the z_chi central zeros at rho = 1/2 (2 sqrt(x) each).
std::complex<double> zero_sum(double x, const DirichletCharacter& chi_primitive,
                              const ZeroStore& zeros, double T, bool include_real,
                              int z_chi = 0);

// T(x;q,a) = -x^{-1/2} (psi(x;q,a) - psi(x;chi0)/phi(q)), sieve route.
RemainderValue remainder_T(double x, long long q, long long a,
                           const SieveOptions& opt = {});

// T*(x;q,a) = x^{-1/2}/phi(q) sum_{chi != chi0} conj(chi(a)) *
//   [ sum_{rho not real, |gamma|<=T} x^rho/rho  +  imprimitive correction ],
// imprimitive characters routed through their primitive part.
RemainderValue remainder_Tstar(double x, long long q, long long a, double T_height,
                               const ZeroStore& zeros);

// |phi(q) x^{1/2} T*| / (x^{1/2+eps} / q^{1/2}); diagnostic only.
double hypothesis_ratio(double x, long long q, long long a, double T_height, double eps,
                        const ZeroStore& zeros);

// |(psi(x2,chi)-psi(x1,chi)) - (Z(x2)-Z(x1)) - trivial_term(x1,x2,a_chi)|
// where Z is zero_sum and the trivial term carries the closed forms of the
// trivial-zero series (and the -log x term of even characters), so the
// x-independent constant of the full explicit formula cancels.
double differenced_explicit_check(double x1, double x2, const DirichletCharacter& chi,
                                  double T_height, const ZeroStore& zeros,
                                  const SieveOptions& opt = {});

// Closed form of the trivial-zero part between x1 and x2 for parity a.
double trivial_zero_term(double x1, double x2, int parity);

} // namespace psilab
