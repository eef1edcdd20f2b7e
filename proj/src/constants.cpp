#include "psilab/constants.hpp"

#include "psilab/errors.hpp"
#include "psilab/hurwitz.hpp"
#include "psilab/kahan.hpp"
#include "psilab/mp.hpp"
#include "psilab/sieve.hpp"

#include <algorithm>
#include <cmath>

namespace psilab {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;
constexpr double kEulerGamma = 0.57721566490153286060651209008240;
constexpr double kFpSlack = 1e-13;  // accumulation allowance on top of tails

int digits_from_bound(double bound) {
    int d = 0;
    while (d < 15 && bound < std::pow(10.0, -(d + 1)))
        ++d;
    return d;
}

double zeta_at(int n) {
    Cplx<Real40> z = hurwitz_zeta(Cplx<Real40>(Real40(n)), Real40(1), 35);
    return static_cast<double>(z.re);
}

} // namespace

double prime_sum_tail_bound(long long P) {
    // sum_{n>P} log n/(n(n-1)) <= integral from P of log t/(t(t-1))
    //                          <= (P/(P-1)) (log P + 1)/P
    return (std::log(static_cast<double>(P)) + 1.0) / static_cast<double>(P - 1);
}

std::vector<PrimeSumValues> prime_sums(std::vector<long long> cutoffs) {
    if (cutoffs.empty())
        return {};
    std::sort(cutoffs.begin(), cutoffs.end());
    cutoffs.erase(std::unique(cutoffs.begin(), cutoffs.end()), cutoffs.end());
    long long maxP = cutoffs.back();
    if (maxP < 2)
        throw domain_error("prime_sums: cutoff must be >= 2");

    SieveOptions opt;
    opt.cap = std::max<long long>(opt.cap, maxP);

    // segments split at the cutoffs so snapshots fall on segment boundaries
    struct Seg {
        long long lo, hi;
        KahanSum a, b, c;
    };
    std::vector<Seg> segs;
    long long lo = 2;
    size_t ci = 0;
    while (lo <= maxP) {
        long long hi = std::min(lo + opt.segment_size - 1, maxP);
        while (ci < cutoffs.size() && cutoffs[ci] < lo)
            ++ci;
        if (ci < cutoffs.size() && cutoffs[ci] >= lo && cutoffs[ci] < hi)
            hi = cutoffs[ci];
        segs.push_back({lo, hi, {}, {}, {}});
        lo = hi + 1;
    }

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t si = 0; si < static_cast<std::int64_t>(segs.size()); ++si) {
        Seg& sg = segs[static_cast<size_t>(si)];
        for_each_prime(sg.lo, sg.hi, [&](long long p) {
            double pd = static_cast<double>(p);
            double lp = std::log(pd);
            double denom = pd * (pd - 1.0);
            sg.a.add(lp / denom);
            sg.b.add(lp / (pd * pd - pd + 1.0));
            sg.c.add(std::log1p(1.0 / denom));
        }, opt);
    }

    std::vector<PrimeSumValues> out;
    KahanSum a, b, c;
    size_t next = 0;
    for (const Seg& sg : segs) {
        a.merge(sg.a);
        b.merge(sg.b);
        c.merge(sg.c);
        while (next < cutoffs.size() && cutoffs[next] <= sg.hi) {
            out.push_back({cutoffs[next], a.value(), b.value(), c.value()});
            ++next;
        }
    }
    return out;
}

CertifiedConstant c0_from(const PrimeSumValues& ps) {
    double tail = prime_sum_tail_bound(ps.cutoff);
    CertifiedConstant c;
    c.name = "C0";
    c.value = 0.5 * (kLog2Pi + kEulerGamma + ps.s_pp1 + 1.0);
    c.error_bound = 0.5 * tail + kFpSlack;
    c.digits_requested = digits_from_bound(c.error_bound);
    return c;
}

CertifiedConstant c2_from(const PrimeSumValues& ps) {
    double c1v = c1_zeta_route();
    double tail = prime_sum_tail_bound(ps.cutoff);  // log p/(p^2-p+1) <= log p/(p(p-1))
    CertifiedConstant c;
    c.name = "C2";
    c.value = c1v * (kEulerGamma - 1.0 - ps.s_p2p1);
    c.error_bound = c1v * tail + kFpSlack;
    c.digits_requested = digits_from_bound(c.error_bound);
    return c;
}

CertifiedConstant c3_from(const PrimeSumValues& ps) {
    CertifiedConstant c0v = c0_from(ps);
    CertifiedConstant c;
    c.name = "C3";
    c.value = c0v.value - std::log(2.0);
    c.error_bound = c0v.error_bound;
    c.digits_requested = digits_from_bound(c.error_bound);
    return c;
}

CertifiedConstant c0(long long prime_cutoff) {
    return c0_from(prime_sums({prime_cutoff}).front());
}

CertifiedConstant c2(long long prime_cutoff) {
    return c2_from(prime_sums({prime_cutoff}).front());
}

CertifiedConstant c3(long long prime_cutoff) {
    return c3_from(prime_sums({prime_cutoff}).front());
}

double c1_zeta_route() {
    static const double v = zeta_at(2) * zeta_at(3) / zeta_at(6);
    return v;
}

double c1_euler_route(long long euler_cutoff) {
    auto ps = prime_sums({euler_cutoff});
    return std::exp(ps.front().s_logprod);
}

CertifiedConstant c1(long long euler_cutoff) {
    double zr = c1_zeta_route();
    double er = c1_euler_route(euler_cutoff);
    // telescoping tail: sum_{n>P} 1/(n(n-1)) = 1/P exactly
    double tail = 1.0 / static_cast<double>(euler_cutoff);
    double bound = 2.0 * zr * tail + kFpSlack;
    if (std::abs(zr - er) > bound)
        throw audit_error("c1: zeta-ratio and Euler-product routes disagree beyond bound");
    CertifiedConstant c;
    c.name = "C1";
    c.value = zr;
    c.error_bound = 1e-13;  // zeta route: certified Euler-Maclaurin at 35 digits
    c.digits_requested = digits_from_bound(c.error_bound);
    return c;
}

long long cutoff_for_digits(int digits, long long cap) {
    double target = std::pow(10.0, -digits);
    long long P = 1 << 20;
    while (0.5 * prime_sum_tail_bound(P) + kFpSlack >= target) {
        if (P > cap / 2)
            throw resource_error("constants: requested digits need a prime cutoff beyond cap");
        P *= 2;
    }
    return P;
}

} // namespace psilab
