#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cclab/config.hpp"
#include "cclab/interpolate.hpp"
#include "cclab/representation.hpp"

namespace cclab {

// Gaussian binomial coefficient [n choose k]_q, the number of k-dimensional
// subspaces of an n-dimensional space over a field with q elements.
mpz_class gauss_binom(int n, int k, const mpz_class& q);

// Enumerate all k-dimensional subspaces of F_p^n; cb receives each subspace
// once as an n x k column basis in reduced echelon form.
void for_each_subspace(const GF& f, int n, int k,
                       const std::function<void(const Mat<GF>&)>& cb);

// Exact number of subrepresentations of M with dimension vector e: families
// (U_i) of subspaces, dim U_i = e_i, with x_a(U_{s(a)}) contained in U_{t(a)}
// for every arrow.  Enumerates subspaces vertexwise along the admissible
// order, with closed-form factors for source/sink endpoints and a dedicated
// recursion for regular Kronecker tube shapes.  The budget bounds the product
// of Gaussian binomials over enumerated vertices; exceeding it raises
// BudgetError naming the product.
mpz_class count_subreps(const Rep<GF>& M, const DimVec& e, long long budget = 50'000'000);

// Reference implementation: plain enumeration over every vertex, no
// closed-form factors, no tube recursion.  Used to validate the fast paths.
mpz_class count_subreps_reference(const Rep<GF>& M, const DimVec& e,
                                  long long budget = 50'000'000);

// Visit every subrepresentation of M with dimension vector e; cb receives
// one full-column-rank basis matrix (d_i x e_i) per vertex.  Plain
// enumeration over every vertex, budget-guarded like the counters.
void for_each_subrep(const Rep<GF>& M, const DimVec& e,
                     const std::function<void(const std::vector<Mat<GF>>&)>& cb,
                     long long budget = 50'000'000);

// Point counts of the subrepresentation variety at several good primes
// together with the fitted counting polynomial and its value at q = 1.
struct CountProfile {
    DimVec e;
    std::vector<std::pair<std::uint64_t, mpz_class>> counts;
    FitResult poly;
    mpz_class euler;
    std::string to_json() const;
};

// Count at D+2 good primes (D = sum e_i (d_i - e_i)), fit an integer
// polynomial of degree <= D through D+1 of them, check the rest exactly, and
// evaluate at q = 1.  Primes with an arrow-matrix rank drop are skipped and
// replaced; interpolation failures are hard errors.
CountProfile count_profile(const Rep<QQ>& M, const DimVec& e, const Config& cfg = {});

// The Euler characteristic chi(Gr_e(M)) via count_profile.
long euler_grassmannian(const Rep<QQ>& M, const DimVec& e, const Config& cfg = {});

// Euler characteristics for every 0 <= e <= dim M.
struct GrassmannianProfile {
    DimVec dims;
    std::map<DimVec, long> euler;
};
GrassmannianProfile grassmannian_profile(const Rep<QQ>& M, const Config& cfg = {});

// Smallest `count` primes at which every arrow matrix of M keeps its rational
// rank, drawn from cfg.prime_pool first (primes only), then from 2, 3, 5, ...
std::vector<std::uint64_t> good_primes_for(const Rep<QQ>& M, int count, const Config& cfg);

} // namespace cclab
