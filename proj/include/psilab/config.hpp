#pragma once

#include <cstdint>
#include <string>

namespace psilab {

inline constexpr const char* kVersion = "0.1.0";

// Runtime configuration shared by the CLI subcommands.  The high-precision
// L-evaluation path carries precision_digits as the *requested* accuracy;
// internally it runs on fixed 40- or 80-digit MPFR tiers (>= 10 guard
// digits over the request).
struct RunConfig {
    int precision_digits = 30;        // requested digits on the L path (>= 30)
    long long prime_cutoff = 200000000;  // P for the certified prime sums
    long long sieve_cap = 1000000000;    // hard cap on any sieve range end
    double zero_grid_step = 0.05;     // initial grid step for zero scans
    double zero_height_default = 200.0;
    double vanishing_threshold = 1e-3;
    std::string cache_path = "zeros.jsonl";
    std::string output_path;          // empty = stdout
    std::uint64_t seed = 1;           // randomized property sweeps
    long long memory_budget_mb = 2048;

    void validate() const;            // throws domain_error on bad fields
    std::string canonical_string() const;
    std::uint64_t hash() const;       // FNV-1a over canonical_string()
};

// Applies PSILAB_CACHE / PSILAB_THREADS environment overrides.
void apply_env_overrides(RunConfig& cfg);

} // namespace psilab
