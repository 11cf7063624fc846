#pragma once

#include <vector>

#include "cclab/laurent.hpp"
#include "cclab/quiver.hpp"

namespace cclab {

// All cluster variables of the cluster algebra with trivial coefficients
// attached to Q, generated by iterated Fomin-Zelevinsky exchange
//
//   x_k' = ( prod_i x_i^{[b_ik]_+} + prod_i x_i^{[-b_ik]_+} ) / x_k
//
// from the initial seed (x_1..x_n, B with b_ij = #arrows i->j - #arrows j->i)
// and closed under mutation in every direction until no new seed appears.
// Entirely independent of the representation-theoretic machinery; used as an
// oracle against the character catalog.
//
// Returns the variables sorted by canonical text, duplicates removed.
// UsageError for rank outside [2, 4]; BudgetError if saturation exceeds
// seed_cap seeds (a finite-type input cannot reach the cap).
std::vector<Laurent> fz_mutation_oracle(QuiverPtr Q, int seed_cap = 100000);

} // namespace cclab
