#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace cclab {

// An integer-coefficient polynomial fitted to point counts.
struct FitResult {
    std::vector<mpz_class> coeffs; // ascending degree, trailing zeros trimmed
    mpz_class at(const mpz_class& q) const;
    mpz_class at_one() const;
    int degree() const { return (int)coeffs.size() - 1; } // -1 for the zero polynomial
};

// Lagrange-fits a polynomial of degree <= degree_bound through the first
// degree_bound+1 samples (pairs (q, count) with pairwise distinct q), then
// enforces the integrity contract:
//   - at least one extra sample must be present (held-out check), and every
//     remaining sample must match the fitted polynomial exactly;
//   - all fitted coefficients must be integers.
// Violations throw InterpolationError; too few samples is a ConsistencyError.
FitResult fit_integer_polynomial(
    const std::vector<std::pair<std::uint64_t, mpz_class>>& samples,
    int degree_bound);

} // namespace cclab
