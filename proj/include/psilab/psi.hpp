#pragma once

#include "psilab/sieve.hpp"

#include <complex>

namespace psilab {

class DirichletCharacter;

// psi(x; q, a), psi(x; chi0) or psi(x, chi), depending on which residue
// marker was requested.
struct PsiValue {
    double x = 0;
    long long q = 1;
    long long a = 1;              // ignored when principal
    bool principal = false;       // true: sum over (n,q)=1
    double value = 0;
};

// Sum of Lambda(n) over n <= x, n = a (mod q).  Requires (a,q) = 1.
PsiValue psi_progression(double x, long long q, long long a,
                         const SieveOptions& opt = {});

// Sum of Lambda(n) over n <= x with (n,q) = 1.
PsiValue psi_principal(double x, long long q, const SieveOptions& opt = {});

// Sum of chi(n) Lambda(n) over n <= x, compensated complex accumulation.
std::complex<double> psi_character(double x, const DirichletCharacter& chi,
                                   const SieveOptions& opt = {});

// Dense-table variants for sweeps that reuse one table across many moduli.
double psi_progression_dense(const DenseLambda& lam, double x, long long q, long long a);
double psi_principal_dense(const DenseLambda& lam, double x, long long q);

} // namespace psilab
