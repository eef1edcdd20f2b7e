#include "psilab/reference.hpp"

#include "psilab/characters.hpp"
#include "psilab/sieve.hpp"

#include <cmath>

namespace psilab {
namespace reference {

double von_mangoldt(long long n) {
    if (n < 2)
        return 0.0;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            long long m = n;
            while (m % p == 0)
                m /= p;
            return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
        }
    }
    return std::log(static_cast<double>(n));  // n prime
}

double psi_progression(double x, long long q, long long a) {
    a = ((a % q) + q) % q;
    double s = 0.0;
    for (long long n = 2; n <= static_cast<long long>(std::floor(x)); ++n)
        if (n % q == a)
            s += von_mangoldt(n);
    return s;
}

double psi_principal(double x, long long q) {
    double s = 0.0;
    for (long long n = 2; n <= static_cast<long long>(std::floor(x)); ++n)
        if (gcd_ll(n, q) == 1)
            s += von_mangoldt(n);
    return s;
}

std::complex<double> psi_character(double x, const DirichletCharacter& chi) {
    std::complex<double> s = 0.0;
    for (long long n = 2; n <= static_cast<long long>(std::floor(x)); ++n) {
        double lam = von_mangoldt(n);
        if (lam != 0.0)
            s += chi.value(n) * lam;
    }
    return s;
}

std::vector<long long> prime_powers(long long lo, long long hi) {
    std::vector<long long> out;
    for (long long n = std::max<long long>(2, lo); n <= hi; ++n)
        if (von_mangoldt(n) != 0.0)
            out.push_back(n);
    return out;
}

} // namespace reference
} // namespace psilab
