#include "psilab/psi.hpp"

#include "psilab/characters.hpp"
#include "psilab/errors.hpp"
#include "psilab/kahan.hpp"

#include <algorithm>
#include <cmath>

namespace psilab {

namespace {

// Parallel segmented accumulation: each segment yields a compensated
// partial, partials merge in segment order, so the result is independent
// of the thread schedule.
template <class SegmentFn>
void parallel_segments(long long lo, long long hi, const SieveOptions& opt, SegmentFn fn) {
    if (hi < lo)
        return;
    long long nseg = (hi - lo) / opt.segment_size + 1;
#pragma omp parallel for schedule(dynamic)
    for (long long si = 0; si < nseg; ++si) {
        long long seg_lo = lo + si * opt.segment_size;
        long long seg_hi = std::min(hi, seg_lo + opt.segment_size - 1);
        fn(si, seg_lo, seg_hi);
    }
}

long long floor_x(double x) { return static_cast<long long>(std::floor(x)); }

} // namespace

PsiValue psi_progression(double x, long long q, long long a, const SieveOptions& opt) {
    if (x < 2)
        throw domain_error("psi_progression: x must be >= 2");
    if (q < 1)
        throw domain_error("psi_progression: q must be >= 1");
    a = ((a % q) + q) % q;
    if (gcd_ll(a == 0 ? q : a, q) != 1)
        throw domain_error("psi_progression: gcd(a,q) must be 1");

    long long hi = floor_x(x);
    long long nseg = (hi - 2) / opt.segment_size + 1;
    std::vector<KahanSum> partial(static_cast<size_t>(nseg));
    parallel_segments(2, hi, opt, [&](long long si, long long seg_lo, long long seg_hi) {
        KahanSum s;
        for_each_prime_power(seg_lo, seg_hi, [&](long long n, double lp) {
            if (n % q == a)
                s.add(lp);
        });
        partial[static_cast<size_t>(si)] = s;
    });
    KahanSum total;
    for (const auto& p : partial)
        total.merge(p);
    return {x, q, a, false, total.value()};
}

PsiValue psi_principal(double x, long long q, const SieveOptions& opt) {
    if (x < 2)
        throw domain_error("psi_principal: x must be >= 2");
    if (q < 1)
        throw domain_error("psi_principal: q must be >= 1");
    long long hi = floor_x(x);
    long long nseg = (hi - 2) / opt.segment_size + 1;
    std::vector<KahanSum> partial(static_cast<size_t>(nseg));
    parallel_segments(2, hi, opt, [&](long long si, long long seg_lo, long long seg_hi) {
        KahanSum s;
        for_each_prime_power(seg_lo, seg_hi, [&](long long n, double lp) {
            if (gcd_ll(n % q == 0 ? q : n % q, q) == 1)
                s.add(lp);
        });
        partial[static_cast<size_t>(si)] = s;
    });
    KahanSum total;
    for (const auto& p : partial)
        total.merge(p);
    return {x, q, 0, true, total.value()};
}

std::complex<double> psi_character(double x, const DirichletCharacter& chi,
                                   const SieveOptions& opt) {
    if (x < 2)
        throw domain_error("psi_character: x must be >= 2");
    long long q = chi.modulus();
    const auto table = chi.value_table();  // chi(r) for r = 0..q-1
    long long hi = floor_x(x);
    long long nseg = (hi - 2) / opt.segment_size + 1;
    std::vector<KahanComplex> partial(static_cast<size_t>(nseg));
    parallel_segments(2, hi, opt, [&](long long si, long long seg_lo, long long seg_hi) {
        KahanComplex s;
        for_each_prime_power(seg_lo, seg_hi, [&](long long n, double lp) {
            std::complex<double> c = table[static_cast<size_t>(n % q)];
            if (c.real() != 0.0 || c.imag() != 0.0)
                s.add(c * lp);
        });
        partial[static_cast<size_t>(si)] = s;
    });
    KahanComplex total;
    for (const auto& p : partial)
        total.merge(p);
    return total.value();
}

double psi_progression_dense(const DenseLambda& lam, double x, long long q, long long a) {
    if (q < 1)
        throw domain_error("psi_progression_dense: q must be >= 1");
    a = ((a % q) + q) % q;
    if (gcd_ll(a == 0 ? q : a, q) != 1)
        throw domain_error("psi_progression_dense: gcd(a,q) must be 1");
    long long hi = std::min(floor_x(x), lam.size());
    if (floor_x(x) > lam.size())
        throw resource_error("psi_progression_dense: x beyond table");
    KahanSum s;
    long long start = a >= 2 ? a : a + q * ((2 - a + q - 1) / q);
    for (long long n = start; n <= hi; n += q)
        s.add(lam[n]);
    return s.value();
}

double psi_principal_dense(const DenseLambda& lam, double x, long long q) {
    long long hi = floor_x(x);
    if (hi > lam.size())
        throw resource_error("psi_principal_dense: x beyond table");
    // psi(x;chi0) = psi(x) - contribution of prime powers of p | q
    KahanSum s;
    for (long long n = 2; n <= hi; ++n)
        s.add(lam[n]);
    auto subtract_powers = [&](long long p) {
        if (p > hi)
            return;
        double lp = lam[p];
        for (long long pk = p; pk <= hi; pk *= p) {
            s.add(-lp);
            if (pk > hi / p)
                break;
        }
    };
    long long m = q;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0)
                m /= p;
            subtract_powers(p);
        }
    }
    if (m > 1)
        subtract_powers(m);
    return s.value();
}

} // namespace psilab
