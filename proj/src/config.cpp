#include "psilab/config.hpp"

#include "psilab/errors.hpp"

#include <cstdlib>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace psilab {

void RunConfig::validate() const {
    if (precision_digits < 30)
        throw domain_error("precision_digits must be >= 30 on the L path");
    if (prime_cutoff <= 0 || sieve_cap <= 0 || memory_budget_mb <= 0)
        throw domain_error("config: numeric fields must be positive");
    if (zero_grid_step <= 0 || zero_height_default <= 0 || vanishing_threshold <= 0)
        throw domain_error("config: numeric fields must be positive");
}

std::string RunConfig::canonical_string() const {
    std::ostringstream os;
    os << "precision_digits=" << precision_digits
       << ";prime_cutoff=" << prime_cutoff
       << ";sieve_cap=" << sieve_cap
       << ";zero_grid_step=" << zero_grid_step
       << ";zero_height_default=" << zero_height_default
       << ";vanishing_threshold=" << vanishing_threshold
       << ";cache_path=" << cache_path
       << ";seed=" << seed
       << ";memory_budget_mb=" << memory_budget_mb;
    return os.str();
}

std::uint64_t RunConfig::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical_string()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void apply_env_overrides(RunConfig& cfg) {
    if (const char* p = std::getenv("PSILAB_CACHE"))
        cfg.cache_path = p;
#ifdef _OPENMP
    if (const char* t = std::getenv("PSILAB_THREADS")) {
        int n = std::atoi(t);
        if (n > 0)
            omp_set_num_threads(n);
    }
#endif
}

} // namespace psilab
