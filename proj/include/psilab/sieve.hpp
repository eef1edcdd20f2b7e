#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace psilab {

// One prime power p^k in range, carrying Lambda(p^k) = log p.  The log is
// evaluated once per prime and shared across its powers, so equal primes
// always carry bit-identical Lambda values.
struct SieveEntry {
    long long n;
    double lambda;
};

struct SieveTable {
    long long range_start = 2;
    long long range_end = 1;
    std::vector<SieveEntry> entries;  // ascending n, prime powers only
};

struct SieveOptions {
    long long segment_size = 1 << 22;
    long long cap = 1000000000;          // range_end hard cap
    long long memory_budget_mb = 2048;   // for materialized tables
};

// Exact prime-power table on [range_start, range_end].
SieveTable build_sieve(long long range_start, long long range_end,
                       const SieveOptions& opt = {});

// Streams (n, log p) over every prime power n in [lo, hi] in ascending
// order of n.  Serial; the parallel psi kernels below split on segments
// internally instead of exposing the iteration order.
void for_each_prime_power(long long lo, long long hi,
                          const std::function<void(long long, double)>& fn,
                          const SieveOptions& opt = {});

// Primes up to n (simple Eratosthenes; n is expected to be modest).
std::vector<long long> primes_up_to(long long n);

// Streams every prime in [lo, hi] in ascending order.
void for_each_prime(long long lo, long long hi,
                    const std::function<void(long long)>& fn,
                    const SieveOptions& opt = {});

long long euler_phi(long long q);

// phi(1..n) by linear sieve.
std::vector<long long> euler_phi_table(long long n);

long long gcd_ll(long long a, long long b);

// Dense Lambda table: lam[n] = Lambda(n) for n <= size.  Backs the
// aggregate sweeps, which probe many arithmetic progressions over the
// same range.  Checked against the memory budget.
class DenseLambda {
  public:
    DenseLambda(long long x_max, const SieveOptions& opt = {});
    double operator[](long long n) const { return lam_[static_cast<size_t>(n)]; }
    long long size() const { return x_max_; }

  private:
    long long x_max_;
    std::vector<double> lam_;
};

} // namespace psilab
