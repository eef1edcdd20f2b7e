#include "psilab/aggregates.hpp"

#include "psilab/errors.hpp"
#include "psilab/explicit_formula.hpp"
#include "psilab/kahan.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace psilab {

namespace {
long long floor_ll(double x) { return static_cast<long long>(std::floor(x)); }
} // namespace

AggregateContext::AggregateContext(long long x_max, long long q_max, SieveOptions opt)
    : x_max_(x_max), lam_(x_max, opt), phi_(euler_phi_table(std::max<long long>(q_max, 2))) {
    long long qm = std::max<long long>(q_max, 2);
    spf_.assign(static_cast<size_t>(qm) + 1, 0);
    for (long long i = 2; i <= qm; ++i)
        if (spf_[static_cast<size_t>(i)] == 0)
            for (long long j = i; j <= qm; j += i)
                if (spf_[static_cast<size_t>(j)] == 0)
                    spf_[static_cast<size_t>(j)] = static_cast<int32_t>(i);

    // prefix sums of Lambda every prefix_step_, so psi_full is O(step)
    prefix_step_ = 1 << 16;
    long long nblk = x_max_ / prefix_step_ + 1;
    psi_prefix_.resize(static_cast<size_t>(nblk) + 1, 0.0);
    KahanSum acc;
    for (long long b = 0; b < nblk; ++b) {
        long long lo = b * prefix_step_;
        long long hi = std::min(x_max_, lo + prefix_step_ - 1);
        for (long long n = std::max<long long>(2, lo); n <= hi; ++n)
            acc.add(lam_[n]);
        psi_prefix_[static_cast<size_t>(b) + 1] = acc.value();
    }
}

double AggregateContext::psi_progression(double x, long long q, long long a) const {
    a = ((a % q) + q) % q;
    if (gcd_ll(a == 0 ? q : a, q) != 1)
        throw domain_error("psi_progression: gcd(a,q) must be 1");
    long long hi = std::min(floor_ll(x), x_max_);
    if (floor_ll(x) > x_max_)
        throw resource_error("AggregateContext: x beyond prepared table");
    KahanSum s;
    long long start = a;
    while (start < 2)
        start += q;
    for (long long n = start; n <= hi; n += q)
        s.add(lam_[n]);
    return s.value();
}

double AggregateContext::psi_full(double x) const {
    long long hi = std::min(floor_ll(x), x_max_);
    long long blk = hi / prefix_step_;
    KahanSum s;
    s.add(psi_prefix_[static_cast<size_t>(blk)]);
    for (long long n = std::max<long long>(2, blk * prefix_step_); n <= hi; ++n)
        s.add(lam_[n]);
    return s.value();
}

double AggregateContext::psi_principal(double x, long long q) const {
    long long hi = std::min(floor_ll(x), x_max_);
    KahanSum s;
    s.add(psi_full(x));
    long long m = q;
    while (m > 1) {
        long long p = m <= q_max() ? spf_[static_cast<size_t>(m)] : 0;
        if (p == 0) {  // q beyond spf table: trial-divide
            p = 2;
            while (p * p <= m && m % p != 0)
                ++p;
            if (p * p > m)
                p = m;
        }
        while (m % p == 0)
            m /= p;
        if (p > hi)
            continue;
        double lp = lam_[p];
        for (long long pk = p; pk <= hi; pk *= p) {
            s.add(-lp);
            if (pk > hi / p)
                break;
        }
    }
    return s.value();
}

long long AggregateContext::phi(long long q) const {
    if (q < static_cast<long long>(phi_.size()))
        return phi_[static_cast<size_t>(q)];
    return euler_phi(q);
}

namespace {

void check_sq(double Q, double x) {
    if (!(Q >= 2))
        throw domain_error("S(Q;x): Q must be >= 2");
    if (!(Q < x))
        throw domain_error("S(Q;x): need Q < x");
}

} // namespace

double s_direct(const AggregateContext& ctx, double Q, double x) {
    check_sq(Q, x);
    long long q_lo = floor_ll(Q) + 1;  // q > Q strictly
    long long q_hi = floor_ll(2 * Q);
    if (q_hi < q_lo)
        return 0.0;
    long long nq = q_hi - q_lo + 1;
    std::vector<double> per_q(static_cast<size_t>(nq));
#pragma omp parallel for schedule(dynamic, 64)
    for (long long i = 0; i < nq; ++i) {
        long long q = q_lo + i;
        double t = ctx.psi_progression(x, q, 1) -
                   ctx.psi_principal(x, q) / static_cast<double>(ctx.phi(q));
        per_q[static_cast<size_t>(i)] = t;
    }
    KahanSum s;
    for (double v : per_q)
        s.add(v);
    return -s.value();
}

double term_II_unswitched(const AggregateContext& ctx, double Q, double x) {
    check_sq(Q, x);
    long long q_lo = floor_ll(Q) + 1;
    long long q_hi = floor_ll(x);
    long long nq = q_hi - q_lo + 1;
    std::vector<double> per_q(static_cast<size_t>(std::max<long long>(nq, 0)));
#pragma omp parallel for schedule(dynamic, 256)
    for (long long i = 0; i < nq; ++i)
        per_q[static_cast<size_t>(i)] = ctx.psi_progression(x, q_lo + i, 1);
    KahanSum s;
    for (double v : per_q)
        s.add(v);
    return s.value();
}

SweepResult s_identity(const AggregateContext& ctx, double Q, double x, double c3_value) {
    check_sq(Q, x);
    SweepResult r;
    r.Q = Q;
    r.x = x;

    // I = sum_{2Q<q<=x} psi(x;q,1)
    {
        long long q_lo = floor_ll(2 * Q) + 1;
        long long q_hi = floor_ll(x);
        long long nq = std::max<long long>(q_hi - q_lo + 1, 0);
        std::vector<double> per_q(static_cast<size_t>(nq));
#pragma omp parallel for schedule(dynamic, 256)
        for (long long i = 0; i < nq; ++i)
            per_q[static_cast<size_t>(i)] = ctx.psi_progression(x, q_lo + i, 1);
        KahanSum s;
        for (double v : per_q)
            s.add(v);
        r.term_I = s.value();
    }

    // II = sum_{1<=r<(x-1)/Q} (psi(x;r,1) - psi(rQ+1;r,1))
    {
        double rmax = (x - 1) / Q;
        long long r_hi = floor_ll(rmax);
        if (static_cast<double>(r_hi) >= rmax)
            --r_hi;  // r < (x-1)/Q strictly
        long long nr = std::max<long long>(r_hi, 0);
        std::vector<double> per_r(static_cast<size_t>(nr));
#pragma omp parallel for schedule(dynamic, 8)
        for (long long i = 0; i < nr; ++i) {
            long long rr = i + 1;
            double upper = static_cast<double>(rr) * Q + 1.0;
            per_r[static_cast<size_t>(i)] =
                ctx.psi_progression(x, rr, 1) - ctx.psi_progression(upper, rr, 1);
        }
        KahanSum s;
        for (double v : per_r)
            s.add(v);
        r.term_II = s.value();
    }

    // III = sum_{Q<q<=2Q} psi(x;chi0 mod q)/phi(q)
    {
        long long q_lo = floor_ll(Q) + 1;
        long long q_hi = floor_ll(2 * Q);
        long long nq = std::max<long long>(q_hi - q_lo + 1, 0);
        std::vector<double> per_q(static_cast<size_t>(nq));
#pragma omp parallel for schedule(dynamic, 64)
        for (long long i = 0; i < nq; ++i) {
            long long q = q_lo + i;
            per_q[static_cast<size_t>(i)] =
                ctx.psi_principal(x, q) / static_cast<double>(ctx.phi(q));
        }
        KahanSum s;
        for (double v : per_q)
            s.add(v);
        r.term_III = s.value();
    }

    r.S_direct = s_direct(ctx, Q, x);
    r.main_term = main_term(Q, x, c3_value);
    r.residual = (r.term_I - r.term_II + r.term_III) - r.main_term;
    return r;
}

double term_III_standalone(double Q, double x, const SieveOptions& opt) {
    check_sq(Q, x);
    long long q_lo = floor_ll(Q) + 1;
    long long q_hi = floor_ll(2 * Q);
    if (q_hi < q_lo)
        return 0.0;
    auto phi = euler_phi_table(q_hi);

    // one streaming pass: psi(x) and, per prime p <= 2Q, the total
    // sum_{p^k <= x} log p  (power count times log p)
    double psi_x = 0.0;
    {
        KahanSum s;
        for_each_prime_power(2, floor_ll(x), [&](long long, double lp) { s.add(lp); }, opt);
        psi_x = s.value();
    }
    std::vector<double> prime_part(static_cast<size_t>(q_hi) + 1, 0.0);
    std::vector<int32_t> spf(static_cast<size_t>(q_hi) + 1, 0);
    for (long long p = 2; p <= q_hi; ++p) {
        if (spf[static_cast<size_t>(p)] == 0) {
            for (long long j = p; j <= q_hi; j += p)
                if (spf[static_cast<size_t>(j)] == 0)
                    spf[static_cast<size_t>(j)] = static_cast<int32_t>(p);
            double lp = std::log(static_cast<double>(p));
            double tot = 0.0;
            for (double pk = static_cast<double>(p); pk <= x; pk *= static_cast<double>(p))
                tot += lp;
            prime_part[static_cast<size_t>(p)] = tot;
        }
    }
    KahanSum s;
    for (long long q = q_lo; q <= q_hi; ++q) {
        double correction = 0.0;
        long long m = q;
        while (m > 1) {
            long long p = spf[static_cast<size_t>(m)];
            correction += prime_part[static_cast<size_t>(p)];
            while (m % p == 0)
                m /= p;
        }
        s.add((psi_x - correction) / static_cast<double>(phi[static_cast<size_t>(q)]));
    }
    return s.value();
}

double main_term(double Q, double x, double c3_value) {
    if (!(Q < x))
        throw domain_error("main_term: need Q < x");
    return Q / 2.0 * std::log(x / Q) + c3_value * Q;
}

BfiResult bfi_discrepancy(const AggregateContext& ctx, double Q, double x, long long a,
                          const ZeroStore* zeros, double T_height) {
    check_sq(Q, x);
    BfiResult out;
    long long q_lo = floor_ll(Q) + 1;
    long long q_hi = floor_ll(2 * Q);
    KahanSum abs_sum;
    for (long long q = q_lo; q <= q_hi; ++q) {
        if (gcd_ll(((a % q) + q) % q == 0 ? q : ((a % q) + q) % q, q) != 1)
            continue;
        double t = ctx.psi_progression(x, q, a) -
                   ctx.psi_principal(x, q) / static_cast<double>(ctx.phi(q));
        abs_sum.add(std::abs(t));
    }
    out.with_abs = abs_sum.value();

    if (zeros && T_height > 0) {
        bool covered = true;
        KahanSum zsum;
        try {
            for (long long q = q_lo; q <= q_hi && covered; ++q) {
                long long am = ((a % q) + q) % q;
                if (gcd_ll(am == 0 ? q : am, q) != 1)
                    continue;
                RemainderValue rv = remainder_Tstar(x, q, a, T_height, *zeros);
                // inner quantity on the psi scale: x^{1/2} T*
                zsum.add(std::abs(std::sqrt(x) * rv.Tstar_value));
            }
        } catch (const insufficient_zeros_error&) {
            covered = false;
        }
        if (covered)
            out.zero_route_no_real = zsum.value();
    }
    return out;
}

void CentralStore::add(const CentralValueReport& rep, long long q) {
    if (reports_.insert({rep.label, rep}).second) {
        per_modulus_count_[q] += 1;
        per_modulus_z_[q] += rep.z_chi;
    }
}

int CentralStore::z_of(const std::string& label) const {
    auto it = reports_.find(label);
    if (it == reports_.end())
        throw domain_error("central store: no report for " + label);
    return it->second.z_chi;
}

bool CentralStore::has_modulus(long long q) const {
    auto it = per_modulus_count_.find(q);
    if (it == per_modulus_count_.end())
        return q == 1 || q == 2;  // only principal characters there
    long long expected = euler_phi(q) - 1;  // non-principal count
    return it->second >= expected;
}

int CentralStore::z_total(long long q) const {
    auto it = per_modulus_z_.find(q);
    return it == per_modulus_z_.end() ? 0 : it->second;
}

double z_count_average(double Q, const CentralStore& central) {
    long long q_hi = floor_ll(Q);
    std::ostringstream missing;
    bool any_missing = false;
    long long total = 0;
    for (long long q = 1; q <= q_hi; ++q) {
        if (!central.has_modulus(q)) {
            any_missing = true;
            missing << (any_missing ? " " : "") << q;
            continue;
        }
        total += central.z_total(q);
    }
    if (any_missing)
        throw domain_error("z_count_average: missing central reports for moduli:" +
                           missing.str());
    return static_cast<double>(total) / (Q * Q);
}

} // namespace psilab
