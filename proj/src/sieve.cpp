#include "psilab/sieve.hpp"

#include "psilab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace psilab {

long long gcd_ll(long long a, long long b) {
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

std::vector<long long> primes_up_to(long long n) {
    std::vector<long long> primes;
    if (n < 2)
        return primes;
    std::vector<uint8_t> composite(static_cast<size_t>(n) + 1, 0);
    for (long long i = 2; i * i <= n; ++i)
        if (!composite[static_cast<size_t>(i)])
            for (long long j = i * i; j <= n; j += i)
                composite[static_cast<size_t>(j)] = 1;
    for (long long i = 2; i <= n; ++i)
        if (!composite[static_cast<size_t>(i)])
            primes.push_back(i);
    return primes;
}

long long euler_phi(long long q) {
    if (q < 1)
        throw domain_error("euler_phi: q must be >= 1");
    long long result = q;
    long long m = q;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0)
                m /= p;
        }
    }
    if (m > 1)
        result -= result / m;
    return result;
}

std::vector<long long> euler_phi_table(long long n) {
    std::vector<long long> phi(static_cast<size_t>(n) + 1);
    std::iota(phi.begin(), phi.end(), 0ll);
    for (long long p = 2; p <= n; ++p)
        if (phi[static_cast<size_t>(p)] == p)  // p prime
            for (long long m = p; m <= n; m += p)
                phi[static_cast<size_t>(m)] -= phi[static_cast<size_t>(m)] / p;
    return phi;
}

namespace {

struct BasePrimes {
    std::vector<long long> p;
    std::vector<double> logp;  // one log per prime, shared by all powers
};

BasePrimes base_primes_for(long long hi) {
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(hi)));
    while ((r + 1) * (r + 1) <= hi)
        ++r;
    while (r * r > hi)
        --r;
    BasePrimes bp;
    bp.p = primes_up_to(r);
    bp.logp.reserve(bp.p.size());
    for (long long q : bp.p)
        bp.logp.push_back(std::log(static_cast<double>(q)));
    return bp;
}

// Prime powers p^k (k >= 2) of base primes that land in [lo, hi].
std::vector<SieveEntry> higher_powers_in(const BasePrimes& bp, long long lo, long long hi) {
    std::vector<SieveEntry> out;
    for (size_t i = 0; i < bp.p.size(); ++i) {
        long long p = bp.p[i];
        if (p > hi / p)
            break;
        long long pk = p * p;
        while (pk <= hi) {
            if (pk >= lo)
                out.push_back({pk, bp.logp[i]});
            if (pk > hi / p)
                break;
            pk *= p;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const SieveEntry& a, const SieveEntry& b) { return a.n < b.n; });
    return out;
}

// Marks composites of [seg_lo, seg_hi] into `composite` (offset by seg_lo).
void mark_segment(const BasePrimes& bp, long long seg_lo, long long seg_hi,
                  std::vector<uint8_t>& composite) {
    std::fill(composite.begin(), composite.end(), 0);
    for (long long p : bp.p) {
        if (p * p > seg_hi)
            break;
        long long start = std::max(p * p, ((seg_lo + p - 1) / p) * p);
        for (long long j = start; j <= seg_hi; j += p)
            composite[static_cast<size_t>(j - seg_lo)] = 1;
    }
}

// Prime powers of one segment, ascending: primes from the mark array merged
// with the (few) higher powers.
void segment_entries(const BasePrimes& bp, long long seg_lo, long long seg_hi,
                     std::vector<uint8_t>& scratch, std::vector<SieveEntry>& out) {
    out.clear();
    mark_segment(bp, seg_lo, seg_hi, scratch);
    for (long long n = std::max<long long>(2, seg_lo); n <= seg_hi; ++n)
        if (!scratch[static_cast<size_t>(n - seg_lo)])
            out.push_back({n, std::log(static_cast<double>(n))});
    // Primes below sqrt(hi) recompute their log here; overwrite with the
    // shared per-prime value so powers and the prime itself agree exactly.
    for (auto& e : out) {
        auto it = std::lower_bound(bp.p.begin(), bp.p.end(), e.n);
        if (it != bp.p.end() && *it == e.n)
            e.lambda = bp.logp[static_cast<size_t>(it - bp.p.begin())];
    }
    auto powers = higher_powers_in(bp, seg_lo, seg_hi);
    if (!powers.empty()) {
        size_t mid = out.size();
        out.insert(out.end(), powers.begin(), powers.end());
        std::inplace_merge(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(mid),
                           out.end(),
                           [](const SieveEntry& a, const SieveEntry& b) { return a.n < b.n; });
    }
}

void check_range(long long lo, long long hi, const SieveOptions& opt) {
    if (lo < 2)
        throw domain_error("sieve: range_start must be >= 2");
    if (hi > opt.cap)
        throw resource_error("sieve: range_end exceeds configured cap");
}

} // namespace

void for_each_prime_power(long long lo, long long hi,
                          const std::function<void(long long, double)>& fn,
                          const SieveOptions& opt) {
    if (hi < lo)
        return;
    check_range(lo, hi, opt);
    BasePrimes bp = base_primes_for(hi);
    std::vector<uint8_t> scratch(static_cast<size_t>(std::min(opt.segment_size, hi - lo + 1)));
    std::vector<SieveEntry> seg;
    for (long long seg_lo = lo; seg_lo <= hi; seg_lo += opt.segment_size) {
        long long seg_hi = std::min(hi, seg_lo + opt.segment_size - 1);
        if (static_cast<long long>(scratch.size()) < seg_hi - seg_lo + 1)
            scratch.resize(static_cast<size_t>(seg_hi - seg_lo + 1));
        segment_entries(bp, seg_lo, seg_hi, scratch, seg);
        for (const auto& e : seg)
            fn(e.n, e.lambda);
    }
}

void for_each_prime(long long lo, long long hi,
                    const std::function<void(long long)>& fn,
                    const SieveOptions& opt) {
    if (hi < lo)
        return;
    lo = std::max<long long>(2, lo);
    check_range(lo, hi, opt);
    BasePrimes bp = base_primes_for(hi);
    std::vector<uint8_t> scratch(static_cast<size_t>(std::min(opt.segment_size, hi - lo + 1)));
    for (long long seg_lo = lo; seg_lo <= hi; seg_lo += opt.segment_size) {
        long long seg_hi = std::min(hi, seg_lo + opt.segment_size - 1);
        if (static_cast<long long>(scratch.size()) < seg_hi - seg_lo + 1)
            scratch.resize(static_cast<size_t>(seg_hi - seg_lo + 1));
        mark_segment(bp, seg_lo, seg_hi, scratch);
        for (long long n = seg_lo; n <= seg_hi; ++n)
            if (!scratch[static_cast<size_t>(n - seg_lo)])
                fn(n);
    }
}

SieveTable build_sieve(long long range_start, long long range_end, const SieveOptions& opt) {
    if (range_start < 2 || range_start > range_end)
        throw domain_error("build_sieve: need 2 <= range_start <= range_end");
    check_range(range_start, range_end, opt);
    // ~ (hi/log hi) entries at 16 bytes apiece
    double est_mb = (static_cast<double>(range_end) /
                     std::max(2.0, std::log(static_cast<double>(range_end)))) *
                    16.0 / 1048576.0;
    if (est_mb > static_cast<double>(opt.memory_budget_mb))
        throw resource_error("build_sieve: estimated table exceeds memory budget");

    SieveTable table;
    table.range_start = range_start;
    table.range_end = range_end;
    for_each_prime_power(range_start, range_end,
                         [&](long long n, double lp) { table.entries.push_back({n, lp}); },
                         opt);
    return table;
}

DenseLambda::DenseLambda(long long x_max, const SieveOptions& opt) : x_max_(x_max) {
    if (x_max < 2)
        throw domain_error("DenseLambda: x_max must be >= 2");
    check_range(2, x_max, opt);
    double need_mb = static_cast<double>(x_max + 1) * 8.0 / 1048576.0;
    if (need_mb > static_cast<double>(opt.memory_budget_mb))
        throw resource_error("DenseLambda: table exceeds memory budget");
    lam_.assign(static_cast<size_t>(x_max) + 1, 0.0);

    BasePrimes bp = base_primes_for(x_max);
    long long nseg = (x_max - 2) / opt.segment_size + 1;
#pragma omp parallel
    {
        std::vector<uint8_t> scratch(static_cast<size_t>(opt.segment_size));
        std::vector<SieveEntry> seg;
#pragma omp for schedule(dynamic)
        for (long long si = 0; si < nseg; ++si) {
            long long seg_lo = 2 + si * opt.segment_size;
            long long seg_hi = std::min(x_max, seg_lo + opt.segment_size - 1);
            segment_entries(bp, seg_lo, seg_hi, scratch, seg);
            for (const auto& e : seg)
                lam_[static_cast<size_t>(e.n)] = e.lambda;
        }
    }
}

} // namespace psilab
