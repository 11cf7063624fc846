#include "cclab/ccmap.hpp"

#include <iostream>

namespace cclab {

namespace {

bool all_zero(const DimVec& v)
{
    for (int x : v)
        if (x != 0) return false;
    return true;
}

// Over a hereditary algebra a module with no extensions against any simple
// has no extensions against anything (induct along a composition series), so
// it is projective.  Dually for injectivity.
bool is_projective_module(const Rep<QQ>& P)
{
    QQ f;
    for (int i = 0; i < P.Q->num_vertices(); ++i)
        if (dim_ext1(P, simple(P.Q, f, i)) != 0) return false;
    return true;
}

bool is_injective_module(const Rep<QQ>& I)
{
    QQ f;
    for (int i = 0; i < I.Q->num_vertices(); ++i)
        if (dim_ext1(simple(I.Q, f, i), I) != 0) return false;
    return true;
}

Laurent assemble(const Rep<QQ>& M, const GrassmannianProfile& prof,
                 const std::function<DimVec(const DimVec&)>& exponent)
{
    int n = M.Q->num_vertices();
    Laurent out = Laurent::zero(n);
    bool warned = false;
    for (const auto& [e, chi] : prof.euler) {
        if (chi == 0) continue;
        if (chi < 0 && !warned) {
            std::cerr << "note: negative Grassmannian Euler characteristic "
                      << chi << " encountered while assembling a character\n";
            warned = true;
        }
        out = out + Laurent::monomial(exponent(e), chi);
    }
    return out;
}

DimVec rmatrix_exponent(const Rep<QQ>& M, const DimVec& e)
{
    const auto& R = M.Q->ext_matrix();
    int n = M.Q->num_vertices();
    DimVec v = dim_sub(M.dims, e);
    DimVec a(n, 0);
    for (int j = 0; j < n; ++j) {
        long s = -(long)M.dims[j];
        for (int i = 0; i < n; ++i) s += (long)e[i] * R[i][j] + (long)v[i] * R[j][i];
        a[j] = (int)s;
    }
    return a;
}

DimVec eulerform_exponent(const Rep<QQ>& M, const DimVec& e)
{
    int n = M.Q->num_vertices();
    DimVec v = dim_sub(M.dims, e);
    DimVec a(n, 0);
    for (int i = 0; i < n; ++i) {
        DimVec s = M.Q->unit_vec(i);
        a[i] = (int)(-M.Q->euler_form(e, s) - M.Q->euler_form(s, v));
    }
    return a;
}

} // namespace

Laurent x_to(const DimVec& v) { return Laurent::monomial(v); }

Laurent cc_module(const Rep<QQ>& M, const Config& cfg)
{
    int n = M.Q->num_vertices();
    if (all_zero(M.dims)) return Laurent::constant(n, 1);
    GrassmannianProfile prof = grassmannian_profile(M, cfg);
    return assemble(M, prof, [&](const DimVec& e) { return rmatrix_exponent(M, e); });
}

Laurent cc_module_eulerform(const Rep<QQ>& M, const Config& cfg)
{
    int n = M.Q->num_vertices();
    if (all_zero(M.dims)) return Laurent::constant(n, 1);
    GrassmannianProfile prof = grassmannian_profile(M, cfg);
    return assemble(M, prof, [&](const DimVec& e) { return eulerform_exponent(M, e); });
}

Laurent cc_shift_projective(const Rep<QQ>& P)
{
    if (!is_projective_module(P)) throw UsageError("cc_shift_projective: module is not projective");
    return x_to(top_dims(P));
}

Laurent cc_shift_injective(const Rep<QQ>& I)
{
    if (!is_injective_module(I)) throw UsageError("cc_shift_injective: module is not injective");
    return x_to(socle_dims(I));
}

Laurent cc_object(const ClusterObject& obj, const Config& cfg)
{
    QQ f;
    Laurent out = cc_module(obj.module_concrete, cfg);
    for (int i : obj.shifted_projectives)
        out = out * cc_shift_projective(projective(obj.Q, f, i));
    for (int i : obj.shifted_injectives)
        out = out * cc_shift_injective(injective(obj.Q, f, i));
    return out;
}

CCContext::CCContext(const Catalog& cat, Config cfg)
    : cat_(&cat),
      cfg_(cfg),
      cc_cache_(cat.size()),
      profile_cache_(cat.size())
{
}

const Laurent& CCContext::cc_member(int idx)
{
    if (idx < 0 || idx >= (int)cc_cache_.size()) throw UsageError("cc_member: index out of range");
    if (!cc_cache_[idx]) {
        const Rep<QQ>& m = cat_->member(idx).rep;
        GrassmannianProfile prof = profile_member(idx);
        cc_cache_[idx] =
            assemble(m, prof, [&](const DimVec& e) { return rmatrix_exponent(m, e); });
    }
    return *cc_cache_[idx];
}

const GrassmannianProfile& CCContext::profile_member(int idx)
{
    if (idx < 0 || idx >= (int)profile_cache_.size())
        throw UsageError("profile_member: index out of range");
    if (!profile_cache_[idx])
        profile_cache_[idx] = grassmannian_profile(cat_->member(idx).rep, cfg_);
    return *profile_cache_[idx];
}

Laurent CCContext::cc(const Decomposition& dec)
{
    Laurent out = one();
    for (const auto& [idx, mult] : dec.parts) out = out * cc_member(idx).pow(mult);
    return out;
}

Laurent CCContext::cc(const Rep<QQ>& M) { return cc(cat_->decompose(M)); }

} // namespace cclab
