#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cclab/catalog.hpp"
#include "cclab/ccmap.hpp"
#include "cclab/config.hpp"
#include "cclab/interpolate.hpp"
#include "cclab/laurent.hpp"
#include "cclab/quiver.hpp"
#include "cclab/representation.hpp"

namespace cclab {

// An element of m(M,N) = (+)_a Hom(F^{d_{s(a)}}, F^{d'_{t(a)}}) together
// with the middle term L(m) it determines.  m = 0 gives the split middle
// term N (+) M, and dim L(m) = dim M + dim N always.
struct ExtensionDatum {
    ExtTuple<GF> m;
    Rep<GF> middle;
};

// One isomorphism stratum of a projectivized extension or morphism space:
// the grouping key, the per-prime projectivized point counts, the
// interpolated counting polynomial with its value at q = 1, and the
// stratum's assembled term in the identity under verification.  Unused key
// components stay empty.
struct StratumReport {
    std::string key;        // printable grouping key
    Decomposition middle;   // middle-term type (extension strata)
    Decomposition v_type;   // kernel type
    Decomposition u_type;   // tau^{-1} of the non-injective cokernel part
    Decomposition i_type;   // injective part of the cokernel
    DimVec soc_injective;   // dim soc of that injective part
    Decomposition p_type;   // projective kernel (part-2 strata)
    DimVec top_projective;  // dim top of that kernel
    std::vector<std::pair<std::uint64_t, mpz_class>> counts; // per prime
    FitResult poly;         // interpolated projectivized count
    long euler = 0;         // its value at q = 1
    Laurent contribution;   // assembled term, filled by the verify drivers
};

// Outcome of one identity check: the two sides as Laurent polynomials (or,
// for the high order associativity, one integer row per dimension vector),
// the strata behind them, and the primes sampled.
struct VerificationReport {
    std::string identity; // "thm1" | "thm2" | "ar" | "hoa"
    std::string subject;
    Laurent lhs, rhs;
    bool pass = false;
    std::vector<StratumReport> strata;
    std::vector<std::uint64_t> primes;
    // high order associativity rows: (d, LHS value, RHS value)
    std::vector<std::tuple<DimVec, long, long>> hoa_rows;

    std::string to_text() const;
    std::string to_json() const;
};

// Strata of the projectivized extension space P Ext^1(M, N) by the
// isomorphism type of the middle term (extensions 0 -> N -> L -> M -> 0):
// over each sampled prime, enumerate all of m(M,N), classify decompose(L(m)),
// convert raw counts to class counts by dividing by |ker pi| =
// q^{dim m(M,N) - dim Ext^1(M,N)}, drop the zero class, and divide by (q-1).
// Every division must be exact and the class counts must add up to
// q^{dim Ext^1} - 1 at every prime; violations are ConsistencyErrors.
// Returns an empty list when Ext^1(M, N) = 0.
std::vector<StratumReport> stratify_ext(const Catalog& cat, int m, int n,
                                        const Config& cfg = {});

// Strata of P Hom(N, tau M) by the triple (ker g, U, I) where
// coker g = tau U (+) I with I the maximal injective summand: over each
// sampled prime, enumerate the nonzero g in hom_basis coordinates, classify
// kernel and cokernel against the catalog, projectivize by (q-1), and
// interpolate per stratum.  M must have no projective summands.
std::vector<StratumReport> stratify_hom_tau(const Catalog& cat, int n, int m,
                                            const Config& cfg = {});

// dim Ext^1(M,N) * X_M * X_N  ==  sum over stratify_ext(M,N) of chi * X_L
//   + sum over stratify_hom_tau(N,M) of chi * X_U * X_V * x^{dim soc I},
// checked as an exact Laurent identity.  M must have no projective
// summands (members m, n of the context's catalog).
VerificationReport verify_theorem_part1(CCContext& ctx, int m, int n);

// dim Hom(P,M) * X_M * x^{dim top P}  ==
//     sum over strata of Hom(M, I) of chi * X_V * x^{dim soc I'}
//   + sum over strata of Hom(P, M) of chi * X_U * x^{dim top P'},
// where P = (+) P_i^{m_i} is given as a decomposition of projective members
// and I = (+) I_i^{m_i} matches its multiplicity pattern vertexwise.
VerificationReport verify_theorem_part2(CCContext& ctx, const Decomposition& p,
                                        int m);

// X_M * X_{tau M} == 1 + X_B with B the middle term of the Auslander-Reiten
// sequence ending at the non-projective indecomposable member m.
VerificationReport verify_ar_identity(CCContext& ctx, int m);

// High order associativity: for every dimension vector d in the box
// 0 <= d <= dim M + dim N,
//   sum over stratify_hom_tau(N,M) strata and e1 + e2 + dim M - dim U = d of
//     chi(P Hom stratum) * chi(Gr_{e1}(V)) * chi(Gr_{e2}(U))
// must equal the interpolated value at q = 1 of
//   sum over pairs N1 <= N, M1 <= M with dim N1 + dim M1 = d of
//     (q^{dim Hom(N/N1, tau M1)} - 1)/(q - 1),
// with kernels, cokernels and tau computed over F_q directly.  One report
// row per d; the verdict requires equality at every d.
VerificationReport verify_high_order_assoc(CCContext& ctx, int m, int n);

// Same check restricted to a single dimension vector d.
VerificationReport verify_high_order_assoc(CCContext& ctx, int m, int n,
                                           const DimVec& d);

} // namespace cclab
