#include "cclab/grassmannian.hpp"

#include <algorithm>
#include <functional>

#include <json.hpp>

#include "cclab/error.hpp"
#include "cclab/parallel.hpp"
#include "cclab/primes.hpp"

namespace cclab {

mpz_class gauss_binom(int n, int k, const mpz_class& q)
{
    if (k < 0 || k > n) return 0;
    if (k == 0 || k == n) return 1;
    // [n k]_q = prod_{i=1..k} (q^{n-k+i} - 1) / (q^i - 1)
    mpz_class num = 1, den = 1, qp;
    for (int i = 1; i <= k; ++i) {
        mpz_pow_ui(qp.get_mpz_t(), q.get_mpz_t(), (unsigned long)(n - k + i));
        num *= qp - 1;
        mpz_pow_ui(qp.get_mpz_t(), q.get_mpz_t(), (unsigned long)i);
        den *= qp - 1;
    }
    mpz_class out;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return out;
}

void for_each_subspace(const GF& f, int n, int k,
                       const std::function<void(const Mat<GF>&)>& cb)
{
    if (k < 0 || k > n) return;
    if (k == 0) {
        cb(Mat<GF>(f, n, 0));
        return;
    }
    std::vector<int> piv(k);
    for (int i = 0; i < k; ++i) piv[i] = i;
    while (true) {
        std::vector<char> is_piv(n, 0);
        for (int p : piv) is_piv[p] = 1;
        // free slots of the k x n row echelon form, stored transposed
        std::vector<std::pair<int, int>> free_pos; // (row, col)
        for (int r = 0; r < k; ++r)
            for (int c = piv[r] + 1; c < n; ++c)
                if (!is_piv[c]) free_pos.emplace_back(r, c);
        std::vector<std::uint64_t> val(free_pos.size(), 0);
        while (true) {
            Mat<GF> basis(f, n, k);
            for (int r = 0; r < k; ++r) basis.at(piv[r], r) = 1;
            for (std::size_t i = 0; i < free_pos.size(); ++i)
                basis.at(free_pos[i].second, free_pos[i].first) = val[i];
            cb(basis);
            std::size_t i = 0;
            while (i < val.size() && val[i] == f.p - 1) val[i++] = 0;
            if (i == val.size()) break;
            ++val[i];
        }
        int i = k - 1;
        while (i >= 0 && piv[i] == n - k + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
}

namespace {

bool is_identity_mat(const Mat<GF>& m)
{
    if (m.rows != m.cols) return false;
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (m.at(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
}

// A single upper Jordan block: constant diagonal, unit superdiagonal, zero
// elsewhere.
bool is_single_jordan(const Mat<GF>& m)
{
    if (m.rows != m.cols || m.rows == 0) return false;
    std::uint64_t lam = m.at(0, 0);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            std::uint64_t want = (i == j) ? lam : (j == i + 1 ? 1u : 0u);
            if (m.at(i, j) != want) return false;
        }
    return true;
}

// Detect a regular Kronecker tube shape.  For a pair (A, B) with A the
// identity and B a single Jordan block J the subrepresentation conditions
// read U_1 <= U_2 and J U_1 <= U_2; replacing B by B - lambda*A or swapping
// the two arrows does not change them, so one count covers every lambda.
bool tube_shape(const Rep<GF>& M, int& m)
{
    const Quiver& q = *M.Q;
    if (q.num_vertices() != 2 || q.num_arrows() != 2) return false;
    if (q.arrow(0).src != q.arrow(1).src || q.arrow(0).dst != q.arrow(1).dst) return false;
    int s = q.arrow(0).src, t = q.arrow(0).dst;
    if (s == t || M.dims[s] != M.dims[t] || M.dims[s] == 0) return false;
    const Mat<GF>& a = M.mats[0];
    const Mat<GF>& b = M.mats[1];
    if ((is_identity_mat(a) && is_single_jordan(b)) ||
        (is_identity_mat(b) && is_single_jordan(a))) {
        m = M.dims[s];
        return true;
    }
    return false;
}

// Exact count of pairs U_1 <= U_2 in F_q^m with J U_1 <= U_2 and
// dim U_i = e_i, where J is the nilpotent single Jordan block.  The state
// D[f1][f2][b1][b2] counts such pairs at level `lev` with
// b_i = [U_i <= ker J^{lev-1}]; ker J^{lev-1} with the restricted maps is the
// tube one level shorter, which drives the recursion:
//   - both flags set: the pair lives entirely in the shorter tube;
//   - U_2 sticking out: drop a complement line from U_2, q^{lev-f2} choices;
//   - both sticking out: drop the top line from both; the compatibility
//     count for the dropped line contributes q^{f2-f1+b2'}.
mpz_class tube_count(int m, int e1, int e2, const mpz_class& q)
{
    if (e1 < 0 || e2 < 0 || e1 > m || e2 > m) return 0;
    auto make = [](int lev) {
        return std::vector<mpz_class>((std::size_t)(lev + 1) * (lev + 1) * 4, mpz_class(0));
    };
    auto idx = [](int lev, int f1, int f2, int b1, int b2) {
        return (std::size_t)((f1 * (lev + 1) + f2) * 2 + b1) * 2 + b2;
    };
    std::vector<mpz_class> d = make(1);
    d[idx(1, 0, 0, 1, 1)] = 1;
    d[idx(1, 0, 1, 1, 0)] = 1;
    d[idx(1, 1, 1, 0, 0)] = 1;
    mpz_class qp;
    for (int lev = 2; lev <= m; ++lev) {
        std::vector<mpz_class> nd = make(lev);
        auto prev = [&](int f1, int f2, int b1, int b2) -> const mpz_class& {
            static const mpz_class zero = 0;
            if (f1 < 0 || f2 < 0 || f1 > lev - 1 || f2 > lev - 1) return zero;
            return d[idx(lev - 1, f1, f2, b1, b2)];
        };
        for (int f1 = 0; f1 <= lev; ++f1)
            for (int f2 = f1; f2 <= lev; ++f2) {
                mpz_class in11 = 0, in10 = 0, in00 = 0;
                for (int b1 = 0; b1 < 2; ++b1)
                    for (int b2 = 0; b2 < 2; ++b2) {
                        in11 += prev(f1, f2, b1, b2);
                        in10 += prev(f1, f2 - 1, b1, b2);
                        if (!(b1 == 1 && b2 == 1) && f2 - f1 + b2 >= 0) {
                            mpz_pow_ui(qp.get_mpz_t(), q.get_mpz_t(),
                                       (unsigned long)(f2 - f1 + b2));
                            in00 += qp * prev(f1 - 1, f2 - 1, b1, b2);
                        }
                    }
                nd[idx(lev, f1, f2, 1, 1)] = in11;
                mpz_pow_ui(qp.get_mpz_t(), q.get_mpz_t(), (unsigned long)(lev - f2));
                nd[idx(lev, f1, f2, 1, 0)] = qp * in10;
                nd[idx(lev, f1, f2, 0, 0)] = in00;
            }
        d.swap(nd);
    }
    mpz_class total = 0;
    for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2) total += d[idx(m, e1, e2, b1, b2)];
    return total;
}

struct Plan {
    enum Kind { Keep, SourceClosed, SinkDeferred, Isolated };
    std::vector<Kind> kind;                      // per vertex
    std::vector<std::pair<int, Kind>> stages;    // Keep/SourceClosed vertices, admissible order
    std::vector<int> deferred;                   // SinkDeferred vertices
    std::vector<int> isolated;                   // no arrows at all
};

// Decide which vertices to enumerate.  Sources (no incoming arrows) can be
// folded into a Gaussian-binomial factor once their targets are fixed; sinks
// (no outgoing arrows) can be deferred to a closed-form factor once their
// sources are fixed.  Removing a vertex pins its neighbors, so the largest
// candidate Grassmannians are removed first.
Plan make_plan(const Rep<GF>& M, const DimVec& e, bool enumerate_everything)
{
    const Quiver& q = *M.Q;
    int n = q.num_vertices();
    Plan plan;
    plan.kind.assign(n, Plan::Keep);
    if (!enumerate_everything) {
        std::vector<char> has_in(n, 0), has_out(n, 0), pinned(n, 0), removed(n, 0);
        for (int a = 0; a < q.num_arrows(); ++a) {
            has_out[q.arrow(a).src] = 1;
            has_in[q.arrow(a).dst] = 1;
        }
        std::vector<std::pair<mpz_class, int>> cand;
        for (int v = 0; v < n; ++v) {
            if (!has_in[v] && !has_out[v]) {
                plan.kind[v] = Plan::Isolated;
                removed[v] = 1;
            } else if (!has_in[v] || !has_out[v]) {
                cand.emplace_back(gauss_binom(M.dims[v], e[v], 2), v);
            }
        }
        std::sort(cand.begin(), cand.end(),
                  [](const auto& x, const auto& y) { return x.first > y.first; });
        for (const auto& [sz, v] : cand) {
            if (pinned[v]) continue;
            std::vector<int> nbrs;
            for (int a = 0; a < q.num_arrows(); ++a) {
                if (q.arrow(a).src == v) nbrs.push_back(q.arrow(a).dst);
                if (q.arrow(a).dst == v) nbrs.push_back(q.arrow(a).src);
            }
            bool ok = true;
            for (int w : nbrs)
                if (removed[w]) ok = false;
            if (!ok) continue;
            removed[v] = 1;
            plan.kind[v] = has_in[v] ? Plan::SinkDeferred : Plan::SourceClosed;
            for (int w : nbrs) pinned[w] = 1;
        }
    }
    for (int v : q.admissible_order()) {
        switch (plan.kind[v]) {
        case Plan::Keep:
        case Plan::SourceClosed: plan.stages.emplace_back(v, plan.kind[v]); break;
        case Plan::SinkDeferred: plan.deferred.push_back(v); break;
        case Plan::Isolated: plan.isolated.push_back(v); break;
        }
    }
    return plan;
}

mpz_class count_with_plan(const Rep<GF>& M, const DimVec& e, const Plan& plan,
                          long long budget)
{
    const Quiver& q = *M.Q;
    const GF f = M.f;
    const mpz_class qz = (unsigned long)f.p;

    for (int i = 0; i < q.num_vertices(); ++i)
        if (e[i] < 0 || e[i] > M.dims[i]) return 0;

    mpz_class enum_size = 1;
    for (const auto& [v, kind] : plan.stages)
        if (kind == Plan::Keep) enum_size *= gauss_binom(M.dims[v], e[v], qz);
    if (enum_size > mpz_class((long)budget))
        throw BudgetError("subspace enumeration budget exceeded: " + enum_size.get_str() +
                          " tuples at q=" + std::to_string(f.p) + " against a budget of " +
                          std::to_string(budget));

    mpz_class base = 1;
    for (int v : plan.isolated) base *= gauss_binom(M.dims[v], e[v], qz);
    if (base == 0) return 0;

    std::vector<Mat<GF>> chosen(q.num_vertices(), Mat<GF>(f, 0, 0));
    mpz_class total = 0;

    std::function<void(std::size_t, const mpz_class&)> rec =
        [&](std::size_t si, const mpz_class& factor) {
            if (si == plan.stages.size()) {
                mpz_class leaf = factor;
                for (int t : plan.deferred) {
                    // U_t must contain the span of all incoming images
                    Mat<GF> img(f, M.dims[t], 0);
                    for (int a = 0; a < q.num_arrows(); ++a)
                        if (q.arrow(a).dst == t)
                            img = hstack(img, M.mats[a] * chosen[q.arrow(a).src]);
                    int fr = rank(img);
                    leaf *= gauss_binom(M.dims[t] - fr, e[t] - fr, qz);
                    if (leaf == 0) return;
                }
                total += leaf;
                return;
            }
            const auto& [v, kind] = plan.stages[si];
            // subspaces of the intersection of preimages of the fixed targets
            Mat<GF> constraint(f, 0, M.dims[v]);
            for (int a = 0; a < q.num_arrows(); ++a) {
                const Arrow& ar = q.arrow(a);
                if (ar.src != v) continue;
                if (plan.kind[ar.dst] == Plan::SinkDeferred) continue; // counted at the leaf
                Mat<GF> proj = complement_projection(chosen[ar.dst]).proj;
                constraint = vstack(constraint, proj * M.mats[a]);
            }
            Mat<GF> c_basis = kernel_basis(constraint);
            if (kind == Plan::SourceClosed) {
                mpz_class g = gauss_binom(c_basis.cols, e[v], qz);
                if (g != 0) rec(si + 1, factor * g);
                return;
            }
            if (c_basis.cols < e[v]) return;
            for_each_subspace(f, c_basis.cols, e[v], [&](const Mat<GF>& w) {
                chosen[v] = c_basis * w;
                rec(si + 1, factor);
            });
        };
    rec(0, base);
    return total;
}

} // namespace

mpz_class count_subreps(const Rep<GF>& M, const DimVec& e, long long budget)
{
    for (int i = 0; i < M.Q->num_vertices(); ++i)
        if (e[i] < 0 || e[i] > M.dims[i]) return 0;
    int m = 0;
    if (tube_shape(M, m)) {
        int s = M.Q->arrow(0).src, t = M.Q->arrow(0).dst;
        return tube_count(m, e[s], e[t], mpz_class((unsigned long)M.f.p));
    }
    return count_with_plan(M, e, make_plan(M, e, false), budget);
}

mpz_class count_subreps_reference(const Rep<GF>& M, const DimVec& e, long long budget)
{
    return count_with_plan(M, e, make_plan(M, e, true), budget);
}

void for_each_subrep(const Rep<GF>& M, const DimVec& e,
                     const std::function<void(const std::vector<Mat<GF>>&)>& cb,
                     long long budget)
{
    const Quiver& q = *M.Q;
    const GF f = M.f;
    for (int i = 0; i < q.num_vertices(); ++i)
        if (e[i] < 0 || e[i] > M.dims[i]) return;

    // every vertex becomes an enumeration stage, sinks first
    Plan plan = make_plan(M, e, true);
    const mpz_class qz = (unsigned long)f.p;
    mpz_class enum_size = 1;
    for (const auto& [v, kind] : plan.stages) enum_size *= gauss_binom(M.dims[v], e[v], qz);
    if (enum_size > mpz_class((long)budget))
        throw BudgetError("subrepresentation enumeration budget exceeded: " + enum_size.get_str() +
                          " tuples at q=" + std::to_string(f.p) + " against a budget of " +
                          std::to_string(budget));

    std::vector<Mat<GF>> chosen(q.num_vertices(), Mat<GF>(f, 0, 0));
    std::function<void(std::size_t)> rec = [&](std::size_t si) {
        if (si == plan.stages.size()) {
            cb(chosen);
            return;
        }
        int v = plan.stages[si].first;
        // subspaces of the intersection of preimages of the fixed targets;
        // the admissible order guarantees every target is already chosen
        Mat<GF> constraint(f, 0, M.dims[v]);
        for (int a = 0; a < q.num_arrows(); ++a) {
            const Arrow& ar = q.arrow(a);
            if (ar.src != v) continue;
            Mat<GF> proj = complement_projection(chosen[ar.dst]).proj;
            constraint = vstack(constraint, proj * M.mats[a]);
        }
        Mat<GF> c_basis = kernel_basis(constraint);
        if (c_basis.cols < e[v]) return;
        for_each_subspace(f, c_basis.cols, e[v], [&](const Mat<GF>& w) {
            chosen[v] = c_basis * w;
            rec(si + 1);
        });
    };
    rec(0);
}

std::vector<std::uint64_t> good_primes_for(const Rep<QQ>& M, int count, const Config& cfg)
{
    auto good = [&](std::uint64_t p) {
        bool drop = false;
        reduce_mod(M, p, &drop);
        return !drop;
    };
    return select_primes(count, good, cfg.prime_pool);
}

namespace {

int degree_bound_for(const DimVec& dims, const DimVec& e)
{
    int d = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (e[i] < 0 || e[i] > dims[i]) return 0; // empty variety, constant zero count
        d += e[i] * (dims[i] - e[i]);
    }
    return d;
}

} // namespace

CountProfile count_profile(const Rep<QQ>& M0, const DimVec& e, const Config& cfg)
{
    const Rep<QQ> M = is_integral(M0) ? M0 : integralize(M0);
    if ((int)e.size() != M.Q->num_vertices())
        throw UsageError("dimension vector has the wrong length");
    int d = degree_bound_for(M.dims, e);
    int needed = d + 2;
    auto primes = good_primes_for(M, needed, cfg);

    CountProfile prof;
    prof.e = e;
    prof.counts.resize(needed);
    // Largest prime first: if the enumeration budget is going to be exceeded
    // it is exceeded there, before any time is spent on the smaller primes.
    parallel_for(needed, cfg.jobs, [&](int t) {
        int i = needed - 1 - t;
        Rep<GF> mp = reduce_mod(M, primes[i]);
        prof.counts[i] = {primes[i], count_subreps(mp, e, cfg.budget)};
    });
    prof.poly = fit_integer_polynomial(prof.counts, d);
    prof.euler = prof.poly.at_one();
    return prof;
}

long euler_grassmannian(const Rep<QQ>& M, const DimVec& e, const Config& cfg)
{
    CountProfile prof = count_profile(M, e, cfg);
    if (!prof.euler.fits_slong_p())
        throw ConsistencyError("Euler characteristic overflows a machine integer");
    return prof.euler.get_si();
}

GrassmannianProfile grassmannian_profile(const Rep<QQ>& M0, const Config& cfg)
{
    const Rep<QQ> M = is_integral(M0) ? M0 : integralize(M0);
    GrassmannianProfile prof;
    prof.dims = M.dims;

    std::vector<DimVec> es;
    DimVec e = M.Q->zero_vec();
    int n = M.Q->num_vertices();
    while (true) {
        es.push_back(e);
        int i = 0;
        while (i < n && e[i] == M.dims[i]) e[i++] = 0;
        if (i == n) break;
        ++e[i];
    }

    int dmax = 0;
    for (int i = 0; i < n; ++i) dmax += (M.dims[i] / 2) * (M.dims[i] - M.dims[i] / 2);
    auto primes = good_primes_for(M, dmax + 2, cfg);

    std::vector<std::vector<std::pair<std::uint64_t, mpz_class>>> counts(es.size());
    std::vector<std::pair<int, int>> tasks; // (e index, prime index)
    for (std::size_t k = 0; k < es.size(); ++k) {
        counts[k].resize(degree_bound_for(M.dims, es[k]) + 2);
        // Largest prime of each e first so budget overruns surface immediately.
        for (std::size_t j = counts[k].size(); j-- > 0;) tasks.emplace_back((int)k, (int)j);
    }
    parallel_for((int)tasks.size(), cfg.jobs, [&](int t) {
        auto [k, j] = tasks[t];
        Rep<GF> mp = reduce_mod(M, primes[j]);
        counts[k][j] = {primes[j], count_subreps(mp, es[k], cfg.budget)};
    });
    for (std::size_t k = 0; k < es.size(); ++k) {
        FitResult fit = fit_integer_polynomial(counts[k], degree_bound_for(M.dims, es[k]));
        mpz_class chi = fit.at_one();
        if (!chi.fits_slong_p())
            throw ConsistencyError("Euler characteristic overflows a machine integer");
        prof.euler[es[k]] = chi.get_si();
    }

    if (prof.euler.at(M.Q->zero_vec()) != 1 || prof.euler.at(M.dims) != 1)
        throw ConsistencyError("Grassmannian profile endpoints are not 1");
    return prof;
}

std::string CountProfile::to_json() const
{
    nlohmann::ordered_json j;
    j["e"] = e;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [q, n] : counts) {
        auto pair = nlohmann::ordered_json::array();
        pair.push_back(q);
        pair.push_back(n.get_str());
        arr.push_back(pair);
    }
    j["counts"] = arr;
    auto parr = nlohmann::ordered_json::array();
    for (const auto& c : poly.coeffs) parr.push_back(c.get_str());
    j["poly"] = parr;
    j["euler"] = euler.get_str();
    return j.dump(2);
}

} // namespace cclab
