#pragma once

#include <cstdint>
#include <vector>

namespace cclab {

// Runtime knobs shared by the counting and verification pipelines.
struct Config {
    // Explicit primes to try first when sampling point counts; empty means
    // "smallest good primes starting from 2".
    std::vector<std::uint64_t> prime_pool;
    // Guard on the product of Gaussian binomials bounding a subspace
    // enumeration; exceeding it raises BudgetError instead of hanging.
    long long budget = 50'000'000;
    // Worker threads for independent counting jobs.
    int jobs = 1;
    // Seed for randomized property checks.
    std::uint64_t seed = 0;
    // Kronecker catalog caps: preprojective/preinjective ladder height and
    // regular tube length.
    int ladder_cap = 6;
    int tube_cap = 8;
};

} // namespace cclab
