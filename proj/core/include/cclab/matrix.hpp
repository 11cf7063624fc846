#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cclab/error.hpp"
#include "cclab/field.hpp"

namespace cclab {

// Dense matrix over a field context F (see field.hpp).  Row-major storage.
// All elimination routines are deterministic: columns are scanned left to
// right and the first usable row (top to bottom) becomes the pivot, so two
// runs on equal input produce identical output.
template <class F>
struct Mat {
    using Elt = typename F::Elt;

    F f;
    int rows = 0;
    int cols = 0;
    std::vector<Elt> a;

    Mat() = default;
    Mat(F field, int r, int c) : f(field), rows(r), cols(c), a((size_t)r * c, field.zero()) {}

    static Mat zero(F field, int r, int c) { return Mat(field, r, c); }
    static Mat identity(F field, int n)
    {
        Mat m(field, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = field.one();
        return m;
    }
    static Mat from_rows(F field, const std::vector<std::vector<long>>& rows_in, int ncols = -1)
    {
        int r = (int)rows_in.size();
        int c = ncols >= 0 ? ncols : (r ? (int)rows_in[0].size() : 0);
        Mat m(field, r, c);
        for (int i = 0; i < r; ++i) {
            if ((int)rows_in[i].size() != c) throw ConsistencyError("ragged row list");
            for (int j = 0; j < c; ++j) m.at(i, j) = field.from_int(rows_in[i][j]);
        }
        return m;
    }

    Elt& at(int i, int j) { return a[(size_t)i * cols + j]; }
    const Elt& at(int i, int j) const { return a[(size_t)i * cols + j]; }

    bool operator==(const Mat& o) const
    {
        if (rows != o.rows || cols != o.cols) return false;
        for (size_t k = 0; k < a.size(); ++k)
            if (!f.eq(a[k], o.a[k])) return false;
        return true;
    }

    bool is_zero() const
    {
        for (const Elt& x : a)
            if (!f.is_zero(x)) return false;
        return true;
    }

    Mat transpose() const
    {
        Mat t(f, cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Mat operator+(const Mat& o) const
    {
        require_same_shape(o);
        Mat r = *this;
        for (size_t k = 0; k < a.size(); ++k) r.a[k] = f.add(a[k], o.a[k]);
        return r;
    }
    Mat operator-(const Mat& o) const
    {
        require_same_shape(o);
        Mat r = *this;
        for (size_t k = 0; k < a.size(); ++k) r.a[k] = f.sub(a[k], o.a[k]);
        return r;
    }
    Mat operator-() const
    {
        Mat r = *this;
        for (size_t k = 0; k < a.size(); ++k) r.a[k] = f.neg(a[k]);
        return r;
    }
    Mat operator*(const Mat& o) const
    {
        if (cols != o.rows)
            throw ConsistencyError("matrix product shape mismatch: " + shape_str() + " * " + o.shape_str());
        Mat r(f, rows, o.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                const Elt& x = at(i, k);
                if (f.is_zero(x)) continue;
                for (int j = 0; j < o.cols; ++j)
                    r.at(i, j) = f.add(r.at(i, j), f.mul(x, o.at(k, j)));
            }
        return r;
    }
    Mat scaled(const Elt& c) const
    {
        Mat r = *this;
        for (size_t k = 0; k < a.size(); ++k) r.a[k] = f.mul(a[k], c);
        return r;
    }

    std::vector<Elt> mul_vec(const std::vector<Elt>& v) const
    {
        if ((int)v.size() != cols) throw ConsistencyError("mul_vec shape mismatch");
        std::vector<Elt> r(rows, f.zero());
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r[i] = f.add(r[i], f.mul(at(i, j), v[j]));
        return r;
    }

    Mat submatrix(const std::vector<int>& ri, const std::vector<int>& ci) const
    {
        Mat r(f, (int)ri.size(), (int)ci.size());
        for (int i = 0; i < r.rows; ++i)
            for (int j = 0; j < r.cols; ++j) r.at(i, j) = at(ri[i], ci[j]);
        return r;
    }
    Mat block(int i0, int j0, int r, int c) const
    {
        Mat m(f, r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(i, j) = at(i0 + i, j0 + j);
        return m;
    }
    void set_block(int i0, int j0, const Mat& m)
    {
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) at(i0 + i, j0 + j) = m.at(i, j);
    }
    Mat col(int j) const { return block(0, j, rows, 1); }

    std::string shape_str() const
    {
        return std::to_string(rows) + "x" + std::to_string(cols);
    }
    std::string str() const
    {
        std::ostringstream os;
        os << "[";
        for (int i = 0; i < rows; ++i) {
            os << (i ? "; " : "");
            for (int j = 0; j < cols; ++j) os << (j ? " " : "") << f.str(at(i, j));
        }
        os << "]";
        return os.str();
    }

private:
    void require_same_shape(const Mat& o) const
    {
        if (rows != o.rows || cols != o.cols)
            throw ConsistencyError("matrix shape mismatch: " + shape_str() + " vs " + o.shape_str());
    }
};

template <class F>
Mat<F> hstack(const Mat<F>& a, const Mat<F>& b)
{
    if (a.rows != b.rows) throw ConsistencyError("hstack row mismatch");
    Mat<F> r(a.f, a.rows, a.cols + b.cols);
    r.set_block(0, 0, a);
    r.set_block(0, a.cols, b);
    return r;
}

template <class F>
Mat<F> vstack(const Mat<F>& a, const Mat<F>& b)
{
    if (a.cols != b.cols) throw ConsistencyError("vstack col mismatch");
    Mat<F> r(a.f, a.rows + b.rows, a.cols);
    r.set_block(0, 0, a);
    r.set_block(a.rows, 0, b);
    return r;
}

template <class F>
Mat<F> block_diag(const Mat<F>& a, const Mat<F>& b)
{
    Mat<F> r(a.f, a.rows + b.rows, a.cols + b.cols);
    r.set_block(0, 0, a);
    r.set_block(a.rows, a.cols, b);
    return r;
}

template <class F>
struct Rref {
    Mat<F> m;
    std::vector<int> pivot_cols;
    int rank() const { return (int)pivot_cols.size(); }
};

template <class F>
Rref<F> rref(Mat<F> m)
{
    Rref<F> out;
    const F& f = m.f;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (!f.is_zero(m.at(i, c))) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        typename F::Elt s = f.inv(m.at(r, c));
        for (int j = c; j < m.cols; ++j) m.at(r, j) = f.mul(m.at(r, j), s);
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || f.is_zero(m.at(i, c))) continue;
            typename F::Elt t = m.at(i, c);
            for (int j = c; j < m.cols; ++j)
                m.at(i, j) = f.sub(m.at(i, j), f.mul(t, m.at(r, j)));
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.m = std::move(m);
    return out;
}

template <class F>
int rank(const Mat<F>& m)
{
    return rref(m).rank();
}

// Basis of the right kernel, one column per free column of the RREF: the
// free coordinate is set to 1 and pivot coordinates are filled by back
// substitution.  Columns are ordered by increasing free-column index.
template <class F>
Mat<F> kernel_basis(const Mat<F>& m)
{
    Rref<F> rr = rref(m);
    const F& f = m.f;
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Mat<F> k(f, m.cols, (int)free_cols.size());
    for (int j = 0; j < (int)free_cols.size(); ++j) {
        int fc = free_cols[j];
        k.at(fc, j) = f.one();
        for (int i = 0; i < rr.rank(); ++i)
            k.at(rr.pivot_cols[i], j) = f.neg(rr.m.at(i, fc));
    }
    return k;
}

// Particular solution of A x = b with all free variables set to zero.
template <class F>
std::optional<std::vector<typename F::Elt>> solve(const Mat<F>& A, const std::vector<typename F::Elt>& b)
{
    if ((int)b.size() != A.rows) throw ConsistencyError("solve shape mismatch");
    Mat<F> aug(A.f, A.rows, A.cols + 1);
    aug.set_block(0, 0, A);
    for (int i = 0; i < A.rows; ++i) aug.at(i, A.cols) = b[i];
    Rref<F> rr = rref(aug);
    std::vector<typename F::Elt> x(A.cols, A.f.zero());
    for (int i = 0; i < rr.rank(); ++i) {
        if (rr.pivot_cols[i] == A.cols) return std::nullopt; // inconsistent system
        x[rr.pivot_cols[i]] = rr.m.at(i, A.cols);
    }
    return x;
}

// Columnwise solve of A X = B; nullopt if any column is inconsistent.
template <class F>
std::optional<Mat<F>> solve_matrix(const Mat<F>& A, const Mat<F>& B)
{
    if (A.rows != B.rows) throw ConsistencyError("solve_matrix shape mismatch");
    Mat<F> X(A.f, A.cols, B.cols);
    for (int j = 0; j < B.cols; ++j) {
        std::vector<typename F::Elt> b(B.rows);
        for (int i = 0; i < B.rows; ++i) b[i] = B.at(i, j);
        auto x = solve(A, b);
        if (!x) return std::nullopt;
        for (int i = 0; i < A.cols; ++i) X.at(i, j) = (*x)[i];
    }
    return X;
}

template <class F>
Mat<F> inverse(const Mat<F>& A)
{
    if (A.rows != A.cols) throw ConsistencyError("inverse of non-square matrix");
    Rref<F> rr = rref(hstack(A, Mat<F>::identity(A.f, A.rows)));
    if (rr.rank() != A.rows || (rr.rank() && rr.pivot_cols.back() >= A.rows))
        throw ConsistencyError("matrix is singular");
    return rr.m.block(0, A.rows, A.rows, A.rows);
}

// Coordinates (increasing) whose unit vectors complement span(columns of B)
// in the ambient space F^{B.rows}: the non-pivot columns of rref(B^T).
template <class F>
std::vector<int> complement_coords(const Mat<F>& B)
{
    Rref<F> rr = rref(B.transpose());
    std::vector<bool> piv(B.rows, false);
    for (int c : rr.pivot_cols) piv[c] = true;
    std::vector<int> out;
    for (int c = 0; c < B.rows; ++c)
        if (!piv[c]) out.push_back(c);
    return out;
}

// Projection pi : F^m -> F^(m-r) with kernel exactly span(columns of B),
// normalized so that pi(unit at complement coord k) is the k-th unit vector.
// Returned together with the complement coordinates (whose unit-vector
// inclusion is a section of pi).
template <class F>
struct Complement {
    Mat<F> proj;
    std::vector<int> coords;
};

template <class F>
Complement<F> complement_projection(const Mat<F>& B)
{
    const F& f = B.f;
    Rref<F> rr = rref(B);
    std::vector<int> basis_cols = rr.pivot_cols;
    std::vector<int> cc = complement_coords(B);
    int m = B.rows, r = (int)basis_cols.size();
    if (r + (int)cc.size() != m) throw ConsistencyError("complement dimension mismatch");
    Mat<F> E(f, m, m);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < m; ++i) E.at(i, j) = B.at(i, basis_cols[j]);
    for (int j = 0; j < (int)cc.size(); ++j) E.at(cc[j], r + j) = f.one();
    Mat<F> Einv = inverse(E);
    return {Einv.block(r, 0, m - r, m), cc};
}

// Rank stratum data of a matrix: the rank r, the lexicographically least
// r-subset I of rows that is independent (greedy top-down), and the pivot
// columns J of the row submatrix A[I,:] (greedy left-right).  Row and
// column indices are 0-based.
struct RankStratum {
    int r = 0;
    std::vector<int> I, J;
};

template <class F>
RankStratum matrix_stratum(const Mat<F>& A)
{
    RankStratum s;
    Mat<F> picked(A.f, 0, A.cols);
    for (int i = 0; i < A.rows; ++i) {
        Mat<F> cand = vstack(picked, A.block(i, 0, 1, A.cols));
        if (rank(cand) > picked.rows) {
            picked = cand;
            s.I.push_back(i);
        }
    }
    s.r = picked.rows;
    s.J = rref(picked).pivot_cols;
    return s;
}

namespace detail {

// Permutation matrix built literally as the product of row transpositions
// P_{r,i_r} ... P_{1,i_1} (applied right to left), which moves row I[k]
// into position k for each k.  Used by the stratified kernel/cokernel
// formulas below, which follow this construction verbatim.
template <class F>
Mat<F> transposition_product(F f, int n, const std::vector<int>& I)
{
    Mat<F> P = Mat<F>::identity(f, n);
    for (int k = 0; k < (int)I.size(); ++k) {
        Mat<F> T = Mat<F>::identity(f, n);
        if (k != I[k]) {
            T.at(k, k) = f.zero();
            T.at(I[k], I[k]) = f.zero();
            T.at(k, I[k]) = f.one();
            T.at(I[k], k) = f.one();
        }
        P = T * P;
    }
    return P;
}

} // namespace detail

// Stratified closed-form kernel: for A of shape d' x d and stratum (r,I,J),
// with P_I, P_J the transposition products and
//   P_I A P_J^T = [[A1, A2], [A3, A4]],  A1 = A[I,J] invertible,
// the columns of  P_J^T [[-A1^{-1} A2], [Id_{d-r}]]  are a kernel basis.
// This is kept separate from kernel_basis (generic elimination) on purpose;
// tests cross-check the two.
template <class F>
Mat<F> kernel_basis_stratified(const Mat<F>& A)
{
    const F& f = A.f;
    RankStratum s = matrix_stratum(A);
    Mat<F> PI = detail::transposition_product(f, A.rows, s.I);
    Mat<F> PJ = detail::transposition_product(f, A.cols, s.J);
    Mat<F> At = PI * A * PJ.transpose();
    int r = s.r, d = A.cols;
    Mat<F> A1 = At.block(0, 0, r, r);
    Mat<F> A2 = At.block(0, r, r, d - r);
    Mat<F> top = -(inverse(A1) * A2);
    Mat<F> K(f, d, d - r);
    K.set_block(0, 0, top);
    K.set_block(r, 0, Mat<F>::identity(f, d - r));
    K = PJ.transpose() * K;
    if (!(A * K).is_zero()) throw ConsistencyError("stratified kernel failed A*K = 0");
    return K;
}

// Stratified closed-form cokernel projection: with the same block data,
//   [[-A3 A1^{-1}, Id_{d'-r}]] P_I
// is a projection whose kernel is exactly the column space of A.
template <class F>
Mat<F> cokernel_proj_stratified(const Mat<F>& A)
{
    const F& f = A.f;
    RankStratum s = matrix_stratum(A);
    Mat<F> PI = detail::transposition_product(f, A.rows, s.I);
    Mat<F> PJ = detail::transposition_product(f, A.cols, s.J);
    Mat<F> At = PI * A * PJ.transpose();
    int r = s.r, dp = A.rows;
    Mat<F> A1 = At.block(0, 0, r, r);
    Mat<F> A3 = At.block(r, 0, dp - r, r);
    Mat<F> C(f, dp - r, dp);
    C.set_block(0, 0, -(A3 * inverse(A1)));
    C.set_block(0, r, Mat<F>::identity(f, dp - r));
    C = C * PI;
    if (!(C * A).is_zero()) throw ConsistencyError("stratified cokernel failed C*A = 0");
    return C;
}

} // namespace cclab
