#pragma once

#include "psilab/lfunc.hpp"
#include "psilab/sieve.hpp"
#include "psilab/zerocache.hpp"

#include <map>
#include <optional>
#include <vector>

namespace psilab {

struct SweepResult {
    double Q = 0, x = 0;
    double S_direct = 0;
    double term_I = 0, term_II = 0, term_III = 0;
    double main_term = 0;
    double residual = 0;  // S - main_term
};

// Dense-table context for the q-averaged sweeps: one Lambda table, a phi
// table, a smallest-prime-factor table, and psi(x) prefix machinery shared
// across every modulus walked.
class AggregateContext {
  public:
    // x_max: largest x queried;  q_max: largest modulus (>= 2Q and (x-1)/Q).
    AggregateContext(long long x_max, long long q_max, SieveOptions opt = {});

    double psi_progression(double x, long long q, long long a) const;
    // psi(x; chi0 mod q) = psi(x) - sum of Lambda over prime powers of p | q
    double psi_principal(double x, long long q) const;
    double psi_full(double x) const;  // psi(x)
    long long phi(long long q) const;
    long long x_max() const { return x_max_; }
    long long q_max() const { return static_cast<long long>(phi_.size()) - 1; }

  private:
    long long x_max_;
    DenseLambda lam_;
    std::vector<long long> phi_;
    std::vector<int32_t> spf_;        // smallest prime factor up to q_max
    std::vector<double> psi_prefix_;  // psi at segment boundaries for psi_full
    long long prefix_step_;
};

// S(Q;x) = -sum_{Q<q<=2Q} (psi(x;q,1) - psi(x;chi0)/phi(q)), by definition.
double s_direct(const AggregateContext& ctx, double Q, double x);

// The exact I - II + III rearrangement; II in the divisor-switched form
// sum_{1<=r<(x-1)/Q} (psi(x;r,1) - psi(rQ+1;r,1)).
SweepResult s_identity(const AggregateContext& ctx, double Q, double x, double c3_value);

// II in the pre-switch form sum_{Q<q<=x} psi(x;q,1) (test hook: the switch
// is a reindexing and the two must agree to rounding).
double term_II_unswitched(const AggregateContext& ctx, double Q, double x);

// Standalone III = sum_{Q<q<=2Q} psi(x;chi0 mod q)/phi(q) via a streaming
// psi(x) pass (no dense table), for large-x trend tables.
double term_III_standalone(double Q, double x, const SieveOptions& opt = {});

double main_term(double Q, double x, double c3_value);

struct BfiResult {
    double with_abs = 0;
    std::optional<double> zero_route_no_real;  // set when zero caches cover
};
BfiResult bfi_discrepancy(const AggregateContext& ctx, double Q, double x, long long a,
                          const ZeroStore* zeros = nullptr, double T_height = 0);

// Central-value reports keyed by label, with per-modulus completeness.
class CentralStore {
  public:
    void add(const CentralValueReport& rep, long long q);
    int z_of(const std::string& label) const;  // throws domain_error if absent
    bool has_modulus(long long q) const;
    int z_total(long long q) const;            // sum of z over chi mod q

  private:
    std::map<std::string, CentralValueReport> reports_;
    std::map<long long, int> per_modulus_count_;
    std::map<long long, int> per_modulus_z_;
};

// Q^{-2} sum_{q<=Q} sum_{chi mod q} z(chi); throws with the list of
// missing moduli when reports are absent.
double z_count_average(double Q, const CentralStore& central);

} // namespace psilab
