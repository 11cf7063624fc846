#pragma once

#include <optional>
#include <vector>

#include "cclab/catalog.hpp"
#include "cclab/config.hpp"
#include "cclab/grassmannian.hpp"
#include "cclab/laurent.hpp"
#include "cclab/representation.hpp"

namespace cclab {

// x^v as a Laurent monomial; v may have negative entries.
Laurent x_to(const DimVec& v);

// The cluster character of a module M over an acyclic quiver with arrow-count
// matrix R (r_ij = #arrows i -> j):
//
//   X_M = sum_e chi(Gr_e(M)) * x^{e R + (dim M - e) R^T - dim M}.
//
// This is the production formulation.  Characters of zero modules are 1.
Laurent cc_module(const Rep<QQ>& M, const Config& cfg = {});

// The same character through the homological exponent formula
//
//   exponent of x_i = -<e, s_i> - <s_i, dim M - e>
//
// with <,> the Euler form of the quiver.  Kept as an independent route; the
// two must agree everywhere and the test suite checks that they do.
Laurent cc_module_eulerform(const Rep<QQ>& M, const Config& cfg = {});

// Characters of shifted projectives and coshifted injectives:
// X_{P[1]} = x^{dim top P} and X_{I[-1]} = x^{dim soc I}.
// UsageError if the argument is not projective (resp. injective).
Laurent cc_shift_projective(const Rep<QQ>& P);
Laurent cc_shift_injective(const Rep<QQ>& I);

// An object of the cluster category presented as M_0 (+) P[1] (+) I[-1]:
// a concrete module part plus shifted projectives and coshifted injectives
// listed by vertex index.
struct ClusterObject {
    QuiverPtr Q;
    Rep<QQ> module_concrete;
    std::vector<int> shifted_projectives;
    std::vector<int> shifted_injectives;

    explicit ClusterObject(QuiverPtr q) : Q(q), module_concrete(q, QQ{}) {}
};

// Product of the characters of the three parts; 1 for the empty object.
Laurent cc_object(const ClusterObject& obj, const Config& cfg = {});

// Memoizing character evaluator over a catalog.  Indecomposable characters
// and Grassmannian profiles are computed once per member; direct sums
// multiply (resp. convolve).
class CCContext {
public:
    explicit CCContext(const Catalog& cat, Config cfg = {});

    const Catalog& catalog() const { return *cat_; }
    const Config& config() const { return cfg_; }
    int nvars() const { return cat_->quiver()->num_vertices(); }
    Laurent one() const { return Laurent::constant(nvars(), 1); }

    const Laurent& cc_member(int idx);
    const GrassmannianProfile& profile_member(int idx);

    Laurent cc(const Decomposition& dec);
    // Classifies M against the catalog first so isomorphic inputs share the
    // memoized character.
    Laurent cc(const Rep<QQ>& M);

private:
    const Catalog* cat_;
    Config cfg_;
    std::vector<std::optional<Laurent>> cc_cache_;
    std::vector<std::optional<GrassmannianProfile>> profile_cache_;
};

} // namespace cclab
