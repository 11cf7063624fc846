#include "cclab/representation.hpp"

#include <deque>

#include <json.hpp>

namespace cclab {

namespace detail {

std::vector<std::vector<std::vector<int>>> paths_from(const Quiver& Q, int i)
{
    std::vector<std::vector<std::vector<int>>> out(Q.num_vertices());
    std::deque<std::pair<int, std::vector<int>>> work; // (end vertex, arrow list)
    work.push_back({i, {}});
    while (!work.empty()) {
        auto [v, p] = work.front();
        work.pop_front();
        out[v].push_back(p);
        for (int a : Q.arrows_out_of(v)) {
            auto ext = p;
            ext.push_back(a);
            work.push_back({Q.arrow(a).dst, std::move(ext)});
        }
    }
    return out;
}

} // namespace detail

bool is_integral(const Rep<QQ>& M)
{
    for (const auto& m : M.mats)
        for (const auto& e : m.a)
            if (e.get_den() != 1) return false;
    return true;
}

Rep<GF> reduce_mod(const Rep<QQ>& M, std::uint64_t p, bool* rank_drop)
{
    if (!is_integral(M))
        throw ConsistencyError("reduce_mod requires an integer master (run integralize first)");
    GF f(p);
    Rep<GF> R(M.Q, f);
    R.dims = M.dims;
    bool drop = false;
    for (int a = 0; a < M.Q->num_arrows(); ++a) {
        Mat<GF> x(f, M.mats[a].rows, M.mats[a].cols);
        for (int i = 0; i < x.rows; ++i)
            for (int j = 0; j < x.cols; ++j)
                x.at(i, j) = f.from_mpz(M.mats[a].at(i, j).get_num());
        if (rank(x) != rank(M.mats[a])) drop = true;
        R.mats[a] = std::move(x);
    }
    if (rank_drop) *rank_drop = drop;
    return R;
}

namespace {

// Column-style Hermite reduction: returns a nonsingular d x d matrix whose
// columns generate the same lattice as the columns of H (H integer, full
// row rank d).
Mat<QQ> hnf_basis(Mat<QQ> H)
{
    QQ f;
    int d = H.rows;
    int col = 0;
    for (int row = 0; row < d; ++row) {
        // gcd-sweep the entries of this row across columns >= col
        for (;;) {
            int nz = -1;
            for (int j = col; j < H.cols; ++j)
                if (H.at(row, j) != 0) { nz = j; break; }
            if (nz < 0) break;
            // move the minimal-|entry| column to position col
            int best = nz;
            for (int j = col; j < H.cols; ++j)
                if (H.at(row, j) != 0 && abs(H.at(row, j).get_num()) < abs(H.at(row, best).get_num()))
                    best = j;
            if (best != col)
                for (int i = 0; i < d; ++i) std::swap(H.at(i, col), H.at(i, best));
            bool clean = true;
            for (int j = col + 1; j < H.cols; ++j) {
                if (H.at(row, j) == 0) continue;
                mpz_class qz = H.at(row, j).get_num() / H.at(row, col).get_num(); // truncated
                mpq_class q(qz);
                for (int i = 0; i < d; ++i)
                    H.at(i, j) = f.sub(H.at(i, j), f.mul(q, H.at(i, col)));
                if (H.at(row, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (col < H.cols && H.at(row, col) != 0) ++col;
    }
    Mat<QQ> B = H.block(0, 0, d, col);
    if (col != d || rank(B) != d) throw ConsistencyError("hnf_basis: lattice not full rank");
    return B;
}

} // namespace

Rep<QQ> integralize(const Rep<QQ>& M)
{
    if (is_integral(M)) return M;
    const Quiver& Q = *M.Q;
    QQ f;
    // Lattice generators per vertex: the standard lattice plus all arrow
    // images of the source lattices, filled in source-first (reverse
    // admissible) order so one pass covers every path.
    std::vector<Mat<QQ>> gen(Q.num_vertices());
    for (int i = 0; i < Q.num_vertices(); ++i) gen[i] = Mat<QQ>::identity(f, M.dims[i]);
    const auto& ord = Q.admissible_order();
    for (int k = (int)ord.size() - 1; k >= 0; --k) {
        int v = ord[k];
        for (int a : Q.arrows_out_of(v)) {
            int t = Q.arrow(a).dst;
            gen[t] = hstack(gen[t], M.mats[a] * gen[v]);
        }
    }
    std::vector<Mat<QQ>> basis(Q.num_vertices()), basis_inv(Q.num_vertices());
    for (int i = 0; i < Q.num_vertices(); ++i) {
        // clear denominators, reduce, then restore the scale
        mpz_class den = 1;
        for (const auto& e : gen[i].a) den = lcm(den, e.get_den());
        Mat<QQ> H = gen[i].scaled(mpq_class(den));
        Mat<QQ> B = hnf_basis(std::move(H)).scaled(mpq_class(1, den));
        basis[i] = B;
        basis_inv[i] = inverse(B);
    }
    Rep<QQ> R(M.Q, f);
    R.dims = M.dims;
    for (int a = 0; a < Q.num_arrows(); ++a) {
        const Arrow& ar = Q.arrow(a);
        R.mats[a] = basis_inv[ar.dst] * M.mats[a] * basis[ar.src];
    }
    if (!is_integral(R)) throw ConsistencyError("integralize failed to clear denominators");
    return R;
}

std::string rep_to_json(const Rep<QQ>& M, bool inline_quiver)
{
    if (!is_integral(M)) throw ConsistencyError("rep_to_json requires integer entries");
    nlohmann::json j;
    if (inline_quiver) j["quiver"] = M.Q->to_text();
    j["dims"] = M.dims;
    nlohmann::json mats = nlohmann::json::object();
    for (int a = 0; a < M.Q->num_arrows(); ++a) {
        nlohmann::json rows = nlohmann::json::array();
        for (int r = 0; r < M.mats[a].rows; ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < M.mats[a].cols; ++c)
                row.push_back((long)M.mats[a].at(r, c).get_num().get_si());
            rows.push_back(row);
        }
        mats[M.Q->arrow(a).name] = rows;
    }
    j["matrices"] = mats;
    return j.dump(2);
}

Rep<QQ> rep_from_json(const std::string& text, QuiverPtr fallback)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("representation JSON: ") + e.what());
    }
    QuiverPtr Q = fallback;
    if (j.contains("quiver") && j["quiver"].is_string()) {
        const std::string qs = j["quiver"].get<std::string>();
        if (qs.find("vertices") != std::string::npos) Q = parse_quiver(qs);
    }
    if (!Q) throw ParseError("representation JSON names no inline quiver and none was supplied");
    if (!j.contains("dims") || !j["dims"].is_array())
        throw ParseError("representation JSON: missing dims");
    QQ f;
    Rep<QQ> M(Q, f);
    if ((int)j["dims"].size() != Q->num_vertices())
        throw ParseError("representation JSON: dims length != vertex count");
    for (int i = 0; i < Q->num_vertices(); ++i) M.dims[i] = j["dims"][i].get<int>();
    for (int a = 0; a < Q->num_arrows(); ++a) {
        const Arrow& ar = Q->arrow(a);
        Mat<QQ> x(f, M.dims[ar.dst], M.dims[ar.src]);
        if (!j.contains("matrices") || !j["matrices"].contains(ar.name)) {
            if (x.rows > 0 && x.cols > 0)
                throw ParseError("representation JSON: missing matrix for arrow '" + ar.name + "'");
        } else {
            auto rows = j["matrices"][ar.name];
            if ((int)rows.size() != x.rows)
                throw ParseError("matrix for arrow '" + ar.name + "' has wrong row count");
            for (int r = 0; r < x.rows; ++r) {
                if ((int)rows[r].size() != x.cols)
                    throw ParseError("matrix for arrow '" + ar.name + "' has wrong column count");
                for (int c = 0; c < x.cols; ++c) x.at(r, c) = mpq_class(rows[r][c].get<long>());
            }
        }
        M.mats[a] = std::move(x);
    }
    M.validate();
    return M;
}

} // namespace cclab
