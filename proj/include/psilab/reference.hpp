#pragma once

#include <complex>
#include <vector>

namespace psilab {

class DirichletCharacter;

// Serial reference implementations built straight from definitions
// (trial-division Lambda, plain loops, no segmentation, no OpenMP).
// They are the ground truth the parallel kernels are tested and
// benchmarked against.
namespace reference {

// Lambda(n) by trial division: log p if n = p^k, else 0.
double von_mangoldt(long long n);

double psi_progression(double x, long long q, long long a);
double psi_principal(double x, long long q);
std::complex<double> psi_character(double x, const DirichletCharacter& chi);

// Prime powers in [lo, hi] by trial division.
std::vector<long long> prime_powers(long long lo, long long hi);

} // namespace reference
} // namespace psilab
