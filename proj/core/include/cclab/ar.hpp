#pragma once

#include "cclab/representation.hpp"

namespace cclab {

// The Coxeter functor Phi+ computed vertex-by-vertex along the admissible
// order (sinks first).  At each vertex i we assemble the map
//   A_i : (+)_{a: t(a)=i} M_{s(a)}  (+)  (+)_{b: s(b)=i} E_{t(b)}  ->  M_i
// whose incoming blocks are the original arrow matrices x_a and whose
// outgoing blocks are the maps h_b produced when t(b) was processed.  The
// new space E_i is ker A_i with inclusion K_i; the block rows of K_i at an
// incoming arrow a give h_a : E_i -> M_{s(a)} (consumed later at s(a)), and
// the block rows at an outgoing arrow b give the new arrow matrix
// y_b : E_i -> E_{t(b)}.
template <class F>
struct CoxPlus {
    Rep<F> result;          // Phi+ M
    std::vector<Mat<F>> K;  // kernel inclusion at each vertex, W_i x e_i
    std::vector<Mat<F>> h;  // per arrow b: h_b : E_{t(b)} -> M_{s(b)}
};

template <class F>
CoxPlus<F> coxeter_plus_data(const Rep<F>& M)
{
    const Quiver& Q = *M.Q;
    const F& f = M.f;
    CoxPlus<F> cp;
    cp.result = Rep<F>(M.Q, f);
    cp.K.assign(Q.num_vertices(), Mat<F>());
    cp.h.assign(Q.num_arrows(), Mat<F>());
    DimVec& e = cp.result.dims;
    for (int i : Q.admissible_order()) {
        Mat<F> A(f, M.dims[i], 0);
        for (int a : Q.arrows_into(i)) A = hstack(A, M.mats[a]);
        for (int b : Q.arrows_out_of(i)) A = hstack(A, cp.h[b]);
        Mat<F> K = kernel_basis(A);
        e[i] = K.cols;
        int off = 0;
        for (int a : Q.arrows_into(i)) {
            cp.h[a] = K.block(off, 0, M.dims[Q.arrow(a).src], K.cols);
            off += M.dims[Q.arrow(a).src];
        }
        for (int b : Q.arrows_out_of(i)) {
            cp.result.mats[b] = K.block(off, 0, e[Q.arrow(b).dst], K.cols);
            off += e[Q.arrow(b).dst];
        }
        cp.K[i] = std::move(K);
    }
    return cp;
}

template <class F>
Rep<F> coxeter_plus(const Rep<F>& M)
{
    return coxeter_plus_data(M).result;
}

// tau = T Phi+, where T negates every arrow matrix.
template <class F>
Rep<F> tau(const Rep<F>& M)
{
    Rep<F> t = coxeter_plus(M);
    for (auto& m : t.mats) m = -m;
    return t;
}

// Dual construction: cokernels along the reverse admissible order (sources
// first).  At vertex i the assembled map goes out of M_i,
//   A_i : M_i -> (+)_{b: s(b)=i} M_{t(b)}  (+)  (+)_{a: t(a)=i} E_{s(a)},
// E_i = coker A_i with projection C_i; block columns of C_i at outgoing b
// give g_b : M_{t(b)} -> E_i (consumed at t(b)), block columns at incoming
// a give the new arrow matrix y_a : E_{s(a)} -> E_i.
template <class F>
struct CoxMinus {
    Rep<F> result;          // Phi- M
    std::vector<Mat<F>> C;  // cokernel projection at each vertex, e_i x W_i
    std::vector<Mat<F>> g;  // per arrow b: g_b : M_{t(b)} -> E_{s(b)}
};

template <class F>
CoxMinus<F> coxeter_minus_data(const Rep<F>& M)
{
    const Quiver& Q = *M.Q;
    const F& f = M.f;
    CoxMinus<F> cm;
    cm.result = Rep<F>(M.Q, f);
    cm.C.assign(Q.num_vertices(), Mat<F>());
    cm.g.assign(Q.num_arrows(), Mat<F>());
    DimVec& e = cm.result.dims;
    const auto& ord = Q.admissible_order();
    for (int k = (int)ord.size() - 1; k >= 0; --k) {
        int i = ord[k];
        Mat<F> A(f, 0, M.dims[i]);
        for (int b : Q.arrows_out_of(i)) A = vstack(A, M.mats[b]);
        for (int a : Q.arrows_into(i)) A = vstack(A, cm.g[a]);
        Mat<F> C = complement_projection(A).proj;
        e[i] = C.rows;
        int off = 0;
        for (int b : Q.arrows_out_of(i)) {
            cm.g[b] = C.block(0, off, C.rows, M.dims[Q.arrow(b).dst]);
            off += M.dims[Q.arrow(b).dst];
        }
        for (int a : Q.arrows_into(i)) {
            cm.result.mats[a] = C.block(0, off, C.rows, e[Q.arrow(a).src]);
            off += e[Q.arrow(a).src];
        }
        cm.C[i] = std::move(C);
    }
    return cm;
}

template <class F>
Rep<F> coxeter_minus(const Rep<F>& M)
{
    return coxeter_minus_data(M).result;
}

template <class F>
Rep<F> tau_inverse(const Rep<F>& M)
{
    Rep<F> t = coxeter_minus(M);
    for (auto& m : t.mats) m = -m;
    return t;
}

// Splits off the maximal projective summand: M = Mplus (+) P0 with
// Mplus ~ tau^{-1} tau M realized concretely as the submodule V of M
// generated by the images of all the h_b maps of the Phi+ construction
// (V_i = sum of x_a(V_{s(a)}) over incoming arrows plus sum of im h_b over
// outgoing arrows, filled source-first), and P0 = M / V.
template <class F>
struct ProjSplit {
    Rep<F> p0;         // projective part (as the quotient representation)
    Subrep<F> mplus;   // the submodule V of M, iso to the non-projective part
};

template <class F>
ProjSplit<F> max_projective_summand(const Rep<F>& M)
{
    const Quiver& Q = *M.Q;
    const F& f = M.f;
    CoxPlus<F> cp = coxeter_plus_data(M);
    std::vector<Mat<F>> gen(Q.num_vertices());
    const auto& ord = Q.admissible_order();
    for (int k = (int)ord.size() - 1; k >= 0; --k) {
        int i = ord[k];
        Mat<F> G(f, M.dims[i], 0);
        for (int a : Q.arrows_into(i)) G = hstack(G, M.mats[a] * gen[Q.arrow(a).src]);
        for (int b : Q.arrows_out_of(i)) G = hstack(G, cp.h[b]);
        // column-reduce to a basis
        Rref<F> rr = rref(G);
        std::vector<int> all(G.rows);
        for (int r = 0; r < G.rows; ++r) all[r] = r;
        gen[i] = G.submatrix(all, rr.pivot_cols);
    }
    ProjSplit<F> out;
    Subrep<F> V = subrep_from_basis(M, gen);
    out.p0 = quotient_by(V).quotient;
    out.mplus = std::move(V);
    return out;
}

template <class F>
bool has_projective_summands(const Rep<F>& M)
{
    return !dim_is_zero(max_projective_summand(M).p0.dims);
}

// Functorial action of tau on a submodule (the map g_tau): applies the
// Phi+ construction to the inclusion S -> M, producing a morphism
// tau S -> tau M, and returns its image as a subrepresentation of tau M.
// The component g_i at vertex i is the unique solution of
//   K^M_i g_i = Lambda_i K^S_i,
// where Lambda_i : W^S_i -> W^M_i is assembled from the inclusion
// components (incoming blocks) and the already-built g_{t(b)} (outgoing
// blocks).
template <class F>
Subrep<F> tau_on_submodule(const Rep<F>& M, const Subrep<F>& sub)
{
    const Quiver& Q = *M.Q;
    const F& f = M.f;
    const Rep<F>& S = sub.induced;
    CoxPlus<F> cpM = coxeter_plus_data(M);
    CoxPlus<F> cpS = coxeter_plus_data(S);
    std::vector<Mat<F>> g(Q.num_vertices());
    for (int i : Q.admissible_order()) {
        Mat<F> lam(f, cpM.K[i].rows, cpS.K[i].rows);
        int offM = 0, offS = 0;
        for (int a : Q.arrows_into(i)) {
            int s = Q.arrow(a).src;
            lam.set_block(offM, offS, sub.basis[s]);
            offM += M.dims[s];
            offS += S.dims[s];
        }
        for (int b : Q.arrows_out_of(i)) {
            int t = Q.arrow(b).dst;
            lam.set_block(offM, offS, g[t]);
            offM += cpM.result.dims[t];
            offS += cpS.result.dims[t];
        }
        auto gi = solve_matrix(cpM.K[i], lam * cpS.K[i]);
        if (!gi)
            throw ConsistencyError("tau_on_submodule: induced map does not factor through the kernel");
        g[i] = std::move(*gi);
    }
    Rep<F> tM = cpM.result, tS = cpS.result;
    for (auto& m : tM.mats) m = -m;
    for (auto& m : tS.mats) m = -m;
    return image(Morph<F>(tS, tM, g));
}

} // namespace cclab
