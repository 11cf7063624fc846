#pragma once

#include <vector>

#include "cclab/matrix.hpp"
#include "cclab/quiver.hpp"

namespace cclab {

// A representation of a quiver over the field context F: one space per
// vertex (recorded by dimension) and one matrix per arrow, of shape
// d_{target} x d_{source} (columns are input vectors).
template <class F>
struct Rep {
    QuiverPtr Q;
    F f;
    DimVec dims;
    std::vector<Mat<F>> mats; // indexed like Q->arrows()

    Rep() = default;
    Rep(QuiverPtr q, F field) : Q(q), f(field), dims(q->num_vertices(), 0)
    {
        for (int a = 0; a < q->num_arrows(); ++a) mats.emplace_back(field, 0, 0);
    }

    bool is_zero_rep() const { return dim_is_zero(dims); }

    void validate() const
    {
        if (!Q) throw ConsistencyError("representation without quiver");
        if ((int)dims.size() != Q->num_vertices() || (int)mats.size() != Q->num_arrows())
            throw ConsistencyError("representation data sized inconsistently with quiver");
        for (int a = 0; a < Q->num_arrows(); ++a) {
            const Arrow& ar = Q->arrow(a);
            if (mats[a].rows != dims[ar.dst] || mats[a].cols != dims[ar.src])
                throw ConsistencyError("arrow '" + ar.name + "' matrix is " + mats[a].shape_str()
                                       + ", expected " + std::to_string(dims[ar.dst]) + "x"
                                       + std::to_string(dims[ar.src]));
        }
    }
};

template <class F>
Rep<F> zero_rep(QuiverPtr Q, F f)
{
    return Rep<F>(Q, f);
}

// A morphism of representations: one matrix per vertex, f_i of shape
// d'_i x d_i, intertwining f_{t(a)} x_a = x'_a f_{s(a)} (checked).
template <class F>
struct Morph {
    Rep<F> src, dst;
    std::vector<Mat<F>> comp;

    Morph() = default;
    Morph(Rep<F> s, Rep<F> d, std::vector<Mat<F>> c, bool check = true)
        : src(std::move(s)), dst(std::move(d)), comp(std::move(c))
    {
        if (src.Q != dst.Q) throw ConsistencyError("morphism across different quivers");
        if (!(src.f == dst.f)) throw ConsistencyError("morphism across different fields");
        if ((int)comp.size() != src.Q->num_vertices())
            throw ConsistencyError("morphism component count mismatch");
        for (int i = 0; i < src.Q->num_vertices(); ++i)
            if (comp[i].rows != dst.dims[i] || comp[i].cols != src.dims[i])
                throw ConsistencyError("morphism component at vertex " + std::to_string(i + 1)
                                       + " is " + comp[i].shape_str());
        if (check) {
            for (int a = 0; a < src.Q->num_arrows(); ++a) {
                const Arrow& ar = src.Q->arrow(a);
                if (!(comp[ar.dst] * src.mats[a] == dst.mats[a] * comp[ar.src]))
                    throw ConsistencyError("intertwining fails at arrow '" + ar.name + "'");
            }
        }
    }

    static Morph zero(const Rep<F>& s, const Rep<F>& d)
    {
        std::vector<Mat<F>> c;
        for (int i = 0; i < s.Q->num_vertices(); ++i)
            c.emplace_back(Mat<F>::zero(s.f, d.dims[i], s.dims[i]));
        return Morph(s, d, std::move(c), false);
    }
    static Morph identity(const Rep<F>& m)
    {
        std::vector<Mat<F>> c;
        for (int i = 0; i < m.Q->num_vertices(); ++i)
            c.emplace_back(Mat<F>::identity(m.f, m.dims[i]));
        return Morph(m, m, std::move(c), false);
    }
};

template <class F>
Morph<F> compose(const Morph<F>& g, const Morph<F>& f) // g after f
{
    std::vector<Mat<F>> c;
    for (int i = 0; i < f.src.Q->num_vertices(); ++i) c.push_back(g.comp[i] * f.comp[i]);
    return Morph<F>(f.src, g.dst, std::move(c), false);
}

// ---------------------------------------------------------------- builders

template <class F>
Rep<F> simple(QuiverPtr Q, F f, int i)
{
    if (i < 0 || i >= Q->num_vertices()) throw ConsistencyError("simple: vertex out of range");
    Rep<F> m(Q, f);
    m.dims[i] = 1;
    for (int a = 0; a < Q->num_arrows(); ++a) {
        const Arrow& ar = Q->arrow(a);
        m.mats[a] = Mat<F>::zero(f, m.dims[ar.dst], m.dims[ar.src]);
    }
    return m;
}

namespace detail {

// All paths starting at vertex i, grouped by end vertex, in BFS discovery
// order (arrows taken in file order).  A path is a list of arrow indices.
std::vector<std::vector<std::vector<int>>> paths_from(const Quiver& Q, int i);

} // namespace detail

// P_i: basis at vertex j = paths i ~> j; the arrow map appends the arrow.
template <class F>
Rep<F> projective(QuiverPtr Q, F f, int i)
{
    auto paths = detail::paths_from(*Q, i);
    Rep<F> m(Q, f);
    for (int v = 0; v < Q->num_vertices(); ++v) m.dims[v] = (int)paths[v].size();
    for (int a = 0; a < Q->num_arrows(); ++a) {
        const Arrow& ar = Q->arrow(a);
        Mat<F> x(f, m.dims[ar.dst], m.dims[ar.src]);
        for (int c = 0; c < m.dims[ar.src]; ++c) {
            std::vector<int> ext = paths[ar.src][c];
            ext.push_back(a);
            for (int r = 0; r < m.dims[ar.dst]; ++r)
                if (paths[ar.dst][r] == ext) x.at(r, c) = f.one();
        }
        m.mats[a] = std::move(x);
    }
    return m;
}

// I_i: basis at vertex j = paths j ~> i; the arrow map is the transpose of
// "prepend the arrow".
template <class F>
Rep<F> injective(QuiverPtr Q, F f, int i)
{
    // Paths j ~> i are paths from i in the opposite quiver.
    std::vector<Arrow> opp;
    for (const Arrow& ar : Q->arrows()) opp.push_back({ar.name, ar.dst, ar.src});
    Quiver Qop(Q->num_vertices(), opp);
    auto paths = detail::paths_from(Qop, i); // paths[v] = reversed-arrow lists v ~> i
    Rep<F> m(Q, f);
    for (int v = 0; v < Q->num_vertices(); ++v) m.dims[v] = (int)paths[v].size();
    for (int a = 0; a < Q->num_arrows(); ++a) {
        const Arrow& ar = Q->arrow(a);
        // Precompose-with-a: a path p : t(a) ~> i yields (a then p) : s(a) ~> i;
        // in opposite-quiver coordinates that is p extended by a.
        Mat<F> x(f, m.dims[ar.dst], m.dims[ar.src]);
        for (int r = 0; r < m.dims[ar.dst]; ++r) {
            std::vector<int> ext = paths[ar.dst][r];
            ext.push_back(a);
            for (int c = 0; c < m.dims[ar.src]; ++c)
                if (paths[ar.src][c] == ext) x.at(r, c) = f.one();
        }
        m.mats[a] = std::move(x);
    }
    return m;
}

template <class F>
Rep<F> direct_sum(const Rep<F>& a, const Rep<F>& b)
{
    if (a.Q != b.Q) throw ConsistencyError("direct_sum across different quivers");
    Rep<F> m(a.Q, a.f);
    m.dims = dim_add(a.dims, b.dims);
    for (int k = 0; k < a.Q->num_arrows(); ++k) m.mats[k] = block_diag(a.mats[k], b.mats[k]);
    return m;
}

// ------------------------------------------------------------- Hom spaces

// The intertwining system: unknowns are the entries of all components f_i
// (vec'd row-major, vertices in index order); one equation block per arrow:
// f_{t(a)} x_a - x'_a f_{s(a)} = 0.
template <class F>
Mat<F> hom_system(const Rep<F>& M, const Rep<F>& N)
{
    if (M.Q != N.Q) throw ConsistencyError("hom across different quivers");
    if (!(M.f == N.f)) throw ConsistencyError("hom across different fields");
    const Quiver& Q = *M.Q;
    const F& f = M.f;
    std::vector<int> off(Q.num_vertices() + 1, 0);
    for (int i = 0; i < Q.num_vertices(); ++i)
        off[i + 1] = off[i] + N.dims[i] * M.dims[i];
    int nrows = 0;
    for (int a = 0; a < Q.num_arrows(); ++a)
        nrows += N.dims[Q.arrow(a).dst] * M.dims[Q.arrow(a).src];
    Mat<F> sys(f, nrows, off.back());
    int row0 = 0;
    for (int a = 0; a < Q.num_arrows(); ++a) {
        const Arrow& ar = Q.arrow(a);
        int s = ar.src, t = ar.dst;
        // equation (r, c) over r < N.dims[t], c < M.dims[s]:
        //   sum_k f_t[r,k] * xM[k,c]  -  sum_k xN[r,k] * f_s[k,c]  = 0
        for (int r = 0; r < N.dims[t]; ++r)
            for (int c = 0; c < M.dims[s]; ++c) {
                int row = row0 + r * M.dims[s] + c;
                for (int k = 0; k < M.dims[t]; ++k)
                    sys.at(row, off[t] + r * M.dims[t] + k) =
                        f.add(sys.at(row, off[t] + r * M.dims[t] + k), M.mats[a].at(k, c));
                for (int k = 0; k < N.dims[s]; ++k)
                    sys.at(row, off[s] + k * M.dims[s] + c) =
                        f.sub(sys.at(row, off[s] + k * M.dims[s] + c), N.mats[a].at(r, k));
            }
        row0 += N.dims[t] * M.dims[s];
    }
    return sys;
}

template <class F>
std::vector<Morph<F>> hom_basis(const Rep<F>& M, const Rep<F>& N)
{
    const Quiver& Q = *M.Q;
    Mat<F> K = kernel_basis(hom_system(M, N));
    std::vector<int> off(Q.num_vertices() + 1, 0);
    for (int i = 0; i < Q.num_vertices(); ++i)
        off[i + 1] = off[i] + N.dims[i] * M.dims[i];
    std::vector<Morph<F>> basis;
    for (int j = 0; j < K.cols; ++j) {
        std::vector<Mat<F>> comp;
        for (int i = 0; i < Q.num_vertices(); ++i) {
            Mat<F> c(M.f, N.dims[i], M.dims[i]);
            for (int r = 0; r < N.dims[i]; ++r)
                for (int cc = 0; cc < M.dims[i]; ++cc)
                    c.at(r, cc) = K.at(off[i] + r * M.dims[i] + cc, j);
            comp.push_back(std::move(c));
        }
        basis.emplace_back(M, N, std::move(comp));
    }
    return basis;
}

template <class F>
long dim_hom(const Rep<F>& M, const Rep<F>& N)
{
    Mat<F> sys = hom_system(M, N);
    return sys.cols - rank(sys);
}

// Hereditary path algebra: dim Ext^1 = dim Hom - <dim M, dim N>.
template <class F>
long dim_ext1(const Rep<F>& M, const Rep<F>& N)
{
    return dim_hom(M, N) - M.Q->euler_form(M.dims, N.dims);
}

// -------------------------------------------------- sub/quotient structure

// A subrepresentation given by a basis-matrix per vertex (columns span the
// subspace) together with the induced representation it carries.
template <class F>
struct Subrep {
    Rep<F> ambient;
    std::vector<Mat<F>> basis; // d_i x e_i, full column rank
    Rep<F> induced;

    Morph<F> inclusion() const { return Morph<F>(induced, ambient, basis); }
};

// A quotient representation with its projection matrices.
template <class F>
struct Quot {
    Rep<F> ambient;
    std::vector<Mat<F>> proj; // (d_i - r_i) x d_i
    Rep<F> quotient;

    Morph<F> projection() const { return Morph<F>(ambient, quotient, proj); }
};

// Validates full column rank and closure under the arrow maps (closure is
// exactly solvability of B_t * y = x_a * B_s, which also produces the
// induced arrow matrices).
template <class F>
Subrep<F> subrep_from_basis(const Rep<F>& M, std::vector<Mat<F>> basis)
{
    const Quiver& Q = *M.Q;
    Subrep<F> s;
    s.ambient = M;
    s.induced = Rep<F>(M.Q, M.f);
    for (int i = 0; i < Q.num_vertices(); ++i) {
        if (basis[i].rows != M.dims[i])
            throw ConsistencyError("subrep basis has wrong ambient dimension at vertex "
                                   + std::to_string(i + 1));
        if (rank(basis[i]) != basis[i].cols)
            throw ConsistencyError("subrep basis columns dependent at vertex " + std::to_string(i + 1));
        s.induced.dims[i] = basis[i].cols;
    }
    for (int a = 0; a < Q.num_arrows(); ++a) {
        const Arrow& ar = Q.arrow(a);
        auto y = solve_matrix(basis[ar.dst], M.mats[a] * basis[ar.src]);
        if (!y)
            throw ConsistencyError("subspace family not closed under arrow '" + ar.name + "'");
        s.induced.mats[a] = std::move(*y);
    }
    s.basis = std::move(basis);
    return s;
}

template <class F>
Subrep<F> kernel(const Morph<F>& fm)
{
    std::vector<Mat<F>> basis;
    for (int i = 0; i < fm.src.Q->num_vertices(); ++i) basis.push_back(kernel_basis(fm.comp[i]));
    return subrep_from_basis(fm.src, std::move(basis));
}

template <class F>
Subrep<F> image(const Morph<F>& fm)
{
    std::vector<Mat<F>> basis;
    for (int i = 0; i < fm.src.Q->num_vertices(); ++i) {
        Rref<F> rr = rref(fm.comp[i]);
        basis.push_back(fm.comp[i].submatrix(
            [&] {
                std::vector<int> all(fm.comp[i].rows);
                for (int r = 0; r < fm.comp[i].rows; ++r) all[r] = r;
                return all;
            }(),
            rr.pivot_cols));
    }
    return subrep_from_basis(fm.dst, std::move(basis));
}

// Quotient of the target by the column span of the given generating
// matrices (need not be independent); arrow maps are induced via the
// unit-coordinate sections of the complement projections.
template <class F>
Quot<F> quotient_by_span(const Rep<F>& M, const std::vector<Mat<F>>& gens)
{
    const Quiver& Q = *M.Q;
    Quot<F> q;
    q.ambient = M;
    q.quotient = Rep<F>(M.Q, M.f);
    std::vector<std::vector<int>> secs;
    for (int i = 0; i < Q.num_vertices(); ++i) {
        Complement<F> c = complement_projection(gens[i]);
        q.quotient.dims[i] = c.proj.rows;
        secs.push_back(c.coords);
        q.proj.push_back(std::move(c.proj));
    }
    for (int a = 0; a < Q.num_arrows(); ++a) {
        const Arrow& ar = Q.arrow(a);
        // induced = proj_t . x_a . section_s ; well-defined because the span
        // family is closed under the arrows (checked below).
        Mat<F> sec(M.f, M.dims[ar.src], q.quotient.dims[ar.src]);
        for (int j = 0; j < (int)secs[ar.src].size(); ++j) sec.at(secs[ar.src][j], j) = M.f.one();
        q.quotient.mats[a] = q.proj[ar.dst] * M.mats[a] * sec;
        if (!(q.quotient.mats[a] * q.proj[ar.src] == q.proj[ar.dst] * M.mats[a]))
            throw ConsistencyError("quotient not well-defined: generators not closed under arrow '"
                                   + ar.name + "'");
    }
    return q;
}

template <class F>
Quot<F> cokernel(const Morph<F>& fm)
{
    return quotient_by_span(fm.dst, fm.comp);
}

template <class F>
Quot<F> quotient_by(const Subrep<F>& s)
{
    return quotient_by_span(s.ambient, s.basis);
}

// rad M = sum over arrows of the image of x_a, as a subrepresentation.
template <class F>
Subrep<F> radical(const Rep<F>& M)
{
    const Quiver& Q = *M.Q;
    std::vector<Mat<F>> basis;
    for (int i = 0; i < Q.num_vertices(); ++i) {
        Mat<F> g(M.f, M.dims[i], 0);
        for (int a : Q.arrows_into(i)) g = hstack(g, M.mats[a]);
        Rref<F> rr = rref(g);
        std::vector<int> all(g.rows);
        for (int r = 0; r < g.rows; ++r) all[r] = r;
        basis.push_back(g.submatrix(all, rr.pivot_cols));
    }
    return subrep_from_basis(M, std::move(basis));
}

// soc M = at each vertex the joint kernel of all outgoing arrow maps.
template <class F>
Subrep<F> socle(const Rep<F>& M)
{
    const Quiver& Q = *M.Q;
    std::vector<Mat<F>> basis;
    for (int i = 0; i < Q.num_vertices(); ++i) {
        Mat<F> g(M.f, 0, M.dims[i]);
        for (int a : Q.arrows_out_of(i)) g = vstack(g, M.mats[a]);
        basis.push_back(kernel_basis(g));
    }
    return subrep_from_basis(M, std::move(basis));
}

template <class F>
Quot<F> top(const Rep<F>& M)
{
    return quotient_by(radical(M));
}

template <class F>
DimVec top_dims(const Rep<F>& M)
{
    return dim_sub(M.dims, radical(M).induced.dims);
}

template <class F>
DimVec socle_dims(const Rep<F>& M)
{
    return socle(M).induced.dims;
}

// ------------------------------------------------------------- extensions

// An extension datum m in m(M,N) = the direct sum over arrows of
// Hom(M_{s(a)}, N_{t(a)}); m(a) has shape dN_{t(a)} x dM_{s(a)}.
template <class F>
using ExtTuple = std::vector<Mat<F>>;

// The matrix of delta : (phi_i)_i |-> (N_a phi_{s(a)} - phi_{t(a)} M_a)_a,
// whose cokernel is Ext^1(M,N).  Row layout: arrows in file order, entries
// row-major; column layout: the hom_system unknown layout.
template <class F>
Mat<F> ext_delta_matrix(const Rep<F>& M, const Rep<F>& N)
{
    const Quiver& Q = *M.Q;
    const F& f = M.f;
    std::vector<int> off(Q.num_vertices() + 1, 0);
    for (int i = 0; i < Q.num_vertices(); ++i)
        off[i + 1] = off[i] + N.dims[i] * M.dims[i];
    int nrows = 0;
    for (int a = 0; a < Q.num_arrows(); ++a)
        nrows += N.dims[Q.arrow(a).dst] * M.dims[Q.arrow(a).src];
    Mat<F> delta(f, nrows, off.back());
    int row0 = 0;
    for (int a = 0; a < Q.num_arrows(); ++a) {
        const Arrow& ar = Q.arrow(a);
        int s = ar.src, t = ar.dst;
        for (int r = 0; r < N.dims[t]; ++r)
            for (int c = 0; c < M.dims[s]; ++c) {
                int row = row0 + r * M.dims[s] + c;
                // (N_a phi_s)[r,c] = sum_k N_a[r,k] phi_s[k,c]
                for (int k = 0; k < N.dims[s]; ++k)
                    delta.at(row, off[s] + k * M.dims[s] + c) =
                        f.add(delta.at(row, off[s] + k * M.dims[s] + c), N.mats[a].at(r, k));
                // -(phi_t M_a)[r,c] = - sum_k phi_t[r,k] M_a[k,c]
                for (int k = 0; k < M.dims[t]; ++k)
                    delta.at(row, off[t] + r * M.dims[t] + k) =
                        f.sub(delta.at(row, off[t] + r * M.dims[t] + k), M.mats[a].at(k, c));
            }
        row0 += N.dims[t] * M.dims[s];
    }
    return delta;
}

// Representatives of a basis of Ext^1(M,N) = coker(delta): the unit tuples
// at the complement coordinates of im(delta).  Integer (0/1) entries.
template <class F>
std::vector<ExtTuple<F>> ext1_basis(const Rep<F>& M, const Rep<F>& N)
{
    const Quiver& Q = *M.Q;
    Mat<F> delta = ext_delta_matrix(M, N);
    std::vector<int> cc = complement_coords(delta); // coords in the m-space
    if ((long)cc.size() != dim_ext1(M, N))
        throw ConsistencyError("ext1_basis: cokernel dimension disagrees with Euler form");
    std::vector<int> arrow_off(Q.num_arrows() + 1, 0);
    for (int a = 0; a < Q.num_arrows(); ++a)
        arrow_off[a + 1] = arrow_off[a]
            + N.dims[Q.arrow(a).dst] * M.dims[Q.arrow(a).src];
    std::vector<ExtTuple<F>> basis;
    for (int coord : cc) {
        ExtTuple<F> m;
        for (int a = 0; a < Q.num_arrows(); ++a) {
            const Arrow& ar = Q.arrow(a);
            Mat<F> blk(M.f, N.dims[ar.dst], M.dims[ar.src]);
            if (coord >= arrow_off[a] && coord < arrow_off[a + 1]) {
                // reachable only when the block is nonempty
                int local = coord - arrow_off[a];
                blk.at(local / M.dims[ar.src], local % M.dims[ar.src]) = M.f.one();
            }
            m.push_back(std::move(blk));
        }
        basis.push_back(std::move(m));
    }
    return basis;
}

// L(m): the middle term of the extension of M by N determined by m, with
// arrow matrices [[N_a, m(a)], [0, M_a]] (N occupies the leading block).
template <class F>
Rep<F> extension_middle(const Rep<F>& M, const Rep<F>& N, const ExtTuple<F>& m)
{
    const Quiver& Q = *M.Q;
    Rep<F> L(M.Q, M.f);
    L.dims = dim_add(N.dims, M.dims);
    for (int a = 0; a < Q.num_arrows(); ++a) {
        const Arrow& ar = Q.arrow(a);
        Mat<F> x(M.f, L.dims[ar.dst], L.dims[ar.src]);
        x.set_block(0, 0, N.mats[a]);
        x.set_block(0, N.dims[ar.src], m[a]);
        x.set_block(N.dims[ar.dst], N.dims[ar.src], M.mats[a]);
        L.mats[a] = std::move(x);
    }
    return L;
}

// -------------------------------------------------- field change utilities

bool is_integral(const Rep<QQ>& M);

// Entrywise reduction of an integer-entry representation.  If rank_drop is
// given it is set to true when any arrow matrix has smaller rank over F_p
// than over Q (the "bad prime" flag).
Rep<GF> reduce_mod(const Rep<QQ>& M, std::uint64_t p, bool* rank_drop = nullptr);

// Integer-entry representation isomorphic to the given rational one, found
// by a basis change of each vertex space (lattice closure along paths plus
// Hermite normal form).
Rep<QQ> integralize(const Rep<QQ>& M);

// --------------------------------------------------------------- JSON I/O

// {"quiver": <inline text, optional>, "dims": [..], "matrices": {name: [[..]]}}
std::string rep_to_json(const Rep<QQ>& M, bool inline_quiver = true);
Rep<QQ> rep_from_json(const std::string& text, QuiverPtr fallback = nullptr);

} // namespace cclab
