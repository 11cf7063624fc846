#include "cclab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cclab/error.hpp"
#include "cclab/primes.hpp"

namespace cclab {

namespace {

bool is_kronecker(const Quiver& q)
{
    if (q.num_vertices() != 2 || q.num_arrows() != 2) return false;
    const Arrow& a = q.arrow(0);
    const Arrow& b = q.arrow(1);
    return a.src == b.src && a.dst == b.dst && a.src != a.dst;
}

mpq_class det_qq(std::vector<std::vector<mpq_class>> a)
{
    int n = (int)a.size();
    mpq_class det = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (a[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (int r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            mpq_class factor = a[r][c] / a[c][c];
            for (int k = c; k < n; ++k) a[r][k] -= factor * a[c][k];
        }
    }
    return det;
}

// The underlying graph is a simply laced Dynkin diagram iff it is connected,
// has no multiple edges, and the symmetrized Tits form 2I - (R + R^t) is
// positive definite (all leading principal minors positive).
bool is_dynkin_quiver(const Quiver& q)
{
    int n = q.num_vertices();
    const auto& r = q.ext_matrix();
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j && r[i][j] + r[j][i] > 1) return false; // multiple edge
            if (r[i][j] + r[j][i] > 0) adj[i].push_back(j);
        }
    std::vector<char> seen(n, 0);
    std::queue<int> bfs;
    bfs.push(0);
    seen[0] = 1;
    int found = 1;
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++found;
                bfs.push(w);
            }
    }
    if (found != n) return false;
    for (int k = 1; k <= n; ++k) {
        std::vector<std::vector<mpq_class>> c(k, std::vector<mpq_class>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) c[i][j] = (i == j ? 2 : 0) - r[i][j] - r[j][i];
        if (det_qq(std::move(c)) <= 0) return false;
    }
    return true;
}

// Count positive roots of the Tits form exactly: for simply laced Dynkin
// diagrams every positive root has coordinates <= 6, so a box enumeration of
// q(d) = 1 solutions is exhaustive.
long count_positive_roots(const Quiver& q)
{
    int n = q.num_vertices();
    long count = 0;
    DimVec d(n, 0);
    while (true) {
        if (!dim_is_zero(d) && q.euler_form(d, d) == 1) ++count;
        int i = 0;
        while (i < n && d[i] == 6) d[i++] = 0;
        if (i == n) break;
        ++d[i];
    }
    return count;
}

// Isomorphism certificate: a morphism with invertible components.  The hom
// space between the candidates here is one-dimensional whenever they are
// isomorphic indecomposables, so checking basis elements (plus a few small
// combinations) is exhaustive in practice; failure is reported loudly.
template <class F>
bool is_isomorphic(const Rep<F>& a, const Rep<F>& b)
{
    if (a.dims != b.dims) return false;
    if (dim_is_zero(a.dims)) return true;
    auto basis = hom_basis(a, b);
    if (basis.empty()) return false;
    auto invertible = [&](const Morph<F>& m) {
        for (int i = 0; i < a.Q->num_vertices(); ++i)
            if (rank(m.comp[i]) != a.dims[i]) return false;
        return true;
    };
    for (const auto& m : basis)
        if (invertible(m)) return true;
    // small deterministic combinations
    std::mt19937_64 rng(0x1505);
    F f = a.f;
    for (int trial = 0; trial < 32; ++trial) {
        Morph<F> m = Morph<F>::zero(a, b);
        for (const auto& bm : basis) {
            long c = (long)(rng() % 5) - 2;
            if (!c) continue;
            for (int i = 0; i < a.Q->num_vertices(); ++i)
                m.comp[i] = m.comp[i] + bm.comp[i].scaled(f.from_int(c));
        }
        if (invertible(m)) return true;
    }
    return false;
}

Mat<QQ> jordan_block(const QQ& f, int n, int lambda)
{
    Mat<QQ> j(f, n, n);
    for (int i = 0; i < n; ++i) {
        j.at(i, i) = lambda;
        if (i + 1 < n) j.at(i, i + 1) = 1;
    }
    return j;
}

std::string lambda_tag(TubeLambda t)
{
    switch (t) {
    case TubeLambda::zero: return "0";
    case TubeLambda::one: return "1";
    case TubeLambda::infinity: return "inf";
    default: return "?";
    }
}

} // namespace

Catalog Catalog::build(QuiverPtr q, int ladder_cap, int tube_cap)
{
    Catalog cat;
    cat.q_ = q;
    QQ f;

    if (is_kronecker(*q)) {
        if (ladder_cap < 1 || tube_cap < 1)
            throw UsageError("catalog caps must be positive");
        cat.dynkin_ = false;
        int s = q->arrow(0).src, t = q->arrow(0).dst;

        // Preprojective ladder: dims (m, m+1) at (source, sink), window-shift
        // matrices.  m = 0 is the simple projective at the sink, m = 1 the
        // big projective at the source, and tau^- raises m by 2.
        auto preproj = [&](int m) {
            Rep<QQ> r(q, f);
            r.dims[s] = m;
            r.dims[t] = m + 1;
            Mat<QQ> a(f, m + 1, m), b(f, m + 1, m);
            for (int i = 0; i < m; ++i) {
                a.at(i, i) = 1;
                b.at(i + 1, i) = 1;
            }
            r.mats[0] = a;
            r.mats[1] = b;
            return r;
        };
        // Preinjective ladder: dims (m+1, m), truncation matrices; m = 0 is
        // the simple injective at the source, and tau raises m by 2.
        auto preinj = [&](int m) {
            Rep<QQ> r(q, f);
            r.dims[s] = m + 1;
            r.dims[t] = m;
            Mat<QQ> a(f, m, m + 1), b(f, m, m + 1);
            for (int i = 0; i < m; ++i) {
                a.at(i, i) = 1;
                b.at(i, i + 1) = 1;
            }
            r.mats[0] = a;
            r.mats[1] = b;
            return r;
        };

        for (int m = 0; m <= ladder_cap; ++m) {
            CatalogMember mem;
            mem.rep = preproj(m);
            mem.projective = m <= 1;
            int vert = (m % 2 == 0) ? t : s;
            int k = m / 2;
            mem.label = (k == 0) ? "P" + std::to_string(vert + 1)
                                 : "tau^-" + std::to_string(k) + " P" + std::to_string(vert + 1);
            if (m == 0) mem.aliases.push_back("S" + std::to_string(t + 1));
            mem.tau_target = m >= 2 ? m - 2 : -1;
            mem.tau_inv_target = m + 2 <= ladder_cap ? m + 2 : -1;
            cat.members_.push_back(std::move(mem));
        }
        int reg_base = (int)cat.members_.size();
        for (TubeLambda lam : {TubeLambda::zero, TubeLambda::one, TubeLambda::infinity}) {
            for (int n = 1; n <= tube_cap; ++n) {
                CatalogMember mem;
                Rep<QQ> r(q, f);
                r.dims[s] = n;
                r.dims[t] = n;
                if (lam == TubeLambda::infinity) {
                    r.mats[0] = jordan_block(f, n, 0);
                    r.mats[1] = Mat<QQ>::identity(f, n);
                } else {
                    r.mats[0] = Mat<QQ>::identity(f, n);
                    r.mats[1] = jordan_block(f, n, lam == TubeLambda::one ? 1 : 0);
                }
                mem.rep = std::move(r);
                mem.tube = lam;
                mem.tube_len = n;
                mem.label = "u[" + lambda_tag(lam) + "](" + std::to_string(n) + ")";
                if (n == 1) mem.aliases.push_back("u[" + lambda_tag(lam) + "]");
                int self = (int)cat.members_.size();
                mem.tau_target = self;
                mem.tau_inv_target = self;
                cat.members_.push_back(std::move(mem));
            }
        }
        int inj_base = (int)cat.members_.size();
        for (int m = 0; m <= ladder_cap; ++m) {
            CatalogMember mem;
            mem.rep = preinj(m);
            mem.injective = m <= 1;
            int vert = (m % 2 == 0) ? s : t;
            int k = m / 2;
            mem.label = (k == 0) ? "I" + std::to_string(vert + 1)
                                 : "tau^" + std::to_string(k) + " I" + std::to_string(vert + 1);
            if (m == 0) mem.aliases.push_back("S" + std::to_string(s + 1));
            mem.tau_inv_target = m >= 2 ? inj_base + m - 2 : -1;
            mem.tau_target = m + 2 <= ladder_cap ? inj_base + m + 2 : -1;
            cat.members_.push_back(std::move(mem));
        }

        for (int m = 0; m <= ladder_cap; ++m) cat.ar_order_.push_back(m);

        // Validate the explicit models against the translation functors: the
        // ladder members must be the tau-orbits of the projectives and
        // injectives, and regulars must be tau-periodic.
        for (int i = 0; i < (int)cat.members_.size(); ++i) {
            const CatalogMember& mem = cat.members_[i];
            Rep<QQ> tm = tau(mem.rep);
            if (mem.projective) {
                if (!tm.is_zero_rep()) throw ConsistencyError("projective member has nonzero tau");
            } else if (mem.tau_target >= 0) {
                if (!is_isomorphic(integralize(tm), cat.members_[mem.tau_target].rep))
                    throw ConsistencyError("tau link failed for " + mem.label);
            }
            if (mem.injective) {
                if (!tau_inverse(mem.rep).is_zero_rep())
                    throw ConsistencyError("injective member has nonzero tau inverse");
            }
            if (i >= reg_base && i < inj_base) {
                if (dim_hom(mem.rep, mem.rep) != mem.tube_len)
                    throw ConsistencyError("regular member has wrong endomorphism dimension");
            } else if (dim_hom(mem.rep, mem.rep) != 1) {
                throw ConsistencyError("ladder member " + mem.label + " is not indecomposable");
            }
        }
    } else if (is_dynkin_quiver(*q)) {
        // Iterate tau^- from the projectives; for representation-finite
        // quivers every chain terminates at an injective.
        std::vector<DimVec> inj_dims;
        for (int i = 0; i < q->num_vertices(); ++i) inj_dims.push_back(injective(q, f, i).dims);

        std::vector<int> chain; // current member index per start vertex, -1 = finished
        for (int v : q->admissible_order()) {
            CatalogMember mem;
            mem.rep = projective(q, f, v);
            mem.projective = true;
            mem.label = "P" + std::to_string(v + 1);
            chain.push_back((int)cat.members_.size());
            cat.members_.push_back(std::move(mem));
        }
        for (int k = 1; k <= 500; ++k) {
            bool any = false;
            for (auto& idx : chain) {
                if (idx < 0) continue;
                Rep<QQ> next = tau_inverse(cat.members_[idx].rep);
                if (next.is_zero_rep()) {
                    cat.members_[idx].injective = true;
                    idx = -1;
                    continue;
                }
                any = true;
                CatalogMember mem;
                mem.rep = integralize(next);
                std::string base = cat.members_[idx].label;
                std::string pv = base.substr(base.find('P'));
                mem.label = "tau^-" + std::to_string(k) + " " + pv;
                mem.tau_target = idx;
                int self = (int)cat.members_.size();
                cat.members_[idx].tau_inv_target = self;
                idx = self;
                cat.members_.push_back(std::move(mem));
            }
            if (!any) break;
            if (k == 500) throw ConsistencyError("tau^- iteration did not terminate");
        }
        // aliases for simples and injectives
        for (auto& mem : cat.members_) {
            for (int i = 0; i < q->num_vertices(); ++i) {
                if (mem.dims() == q->unit_vec(i)) mem.aliases.push_back("S" + std::to_string(i + 1));
                if (mem.injective && mem.dims() == inj_dims[i])
                    mem.aliases.push_back("I" + std::to_string(i + 1));
            }
        }
        long roots = count_positive_roots(*q);
        if ((long)cat.members_.size() != roots)
            throw ConsistencyError("catalog size " + std::to_string(cat.members_.size()) +
                                   " does not match the positive root count " +
                                   std::to_string(roots));
        for (auto& mem : cat.members_) {
            if (q->euler_form(mem.dims(), mem.dims()) != 1)
                throw ConsistencyError("member dimension vector is not a root");
            if (dim_hom(mem.rep, mem.rep) != 1)
                throw ConsistencyError("member " + mem.label + " is not a brick");
        }
        for (int i = 0; i < (int)cat.members_.size(); ++i) cat.ar_order_.push_back(i);
    } else {
        throw UsageError(
            "unsupported quiver: need a simply laced Dynkin orientation or the Kronecker quiver");
    }

    cat.finalize();
    return cat;
}

void Catalog::finalize()
{
    int n = (int)members_.size();
    hom_.assign(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) hom_[i][j] = dim_hom(members_[i].rep, members_[j].rep);

    QQ f;
    Mat<QQ> h(f, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h.at(i, j) = hom_[i][j];
    if (rank(h) != n)
        throw ConsistencyError("Hom table is singular; catalog members are not distinguishable");

    // members pairwise non-isomorphic: distinct Hom fingerprint columns
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            bool same = true;
            for (int k = 0; k < n; ++k)
                if (hom_[k][i] != hom_[k][j]) {
                    same = false;
                    break;
                }
            if (same)
                throw ConsistencyError("members " + members_[i].label + " and " +
                                       members_[j].label + " have identical Hom fingerprints");
        }

    for (int i = 0; i < n; ++i) {
        auto insert = [&](const std::string& key) {
            auto [_, fresh] = index_.emplace(key, i);
            if (!fresh) throw ConsistencyError("duplicate catalog label " + key);
        };
        insert(members_[i].label);
        for (const auto& a : members_[i].aliases) insert(a);
        if (!is_integral(members_[i].rep))
            throw ConsistencyError("catalog member lacks an integer master model");
    }

    // AR order sanity on the preprojective component
    for (int a = 0; a < (int)ar_order_.size(); ++a)
        for (int b = 0; b < a; ++b)
            if (hom_[ar_order_[a]][ar_order_[b]] != 0 && ar_order_[a] != ar_order_[b])
                throw ConsistencyError("AR order violated by a nonzero backward Hom");
}

int Catalog::find(const std::string& label) const
{
    auto it = index_.find(label);
    return it == index_.end() ? -1 : it->second;
}

Decomposition Catalog::solve_decomposition(const std::vector<long>& b, const DimVec& dims,
                                           long dim_end) const
{
    int n = (int)members_.size();
    QQ f;
    Mat<QQ> h(f, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h.at(i, j) = hom_[i][j];
    std::vector<mpq_class> rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = b[i];
    auto sol = solve(h, rhs);
    if (!sol) throw ConsistencyError("Hom fingerprint system is unsolvable");

    Decomposition d;
    DimVec total = q_->zero_vec();
    for (int k = 0; k < n; ++k) {
        const mpq_class& x = (*sol)[k];
        if (x == 0) continue;
        if (x.get_den() != 1 || x < 0)
            throw ConsistencyError("module is not a sum of catalog members (multiplicity of " +
                                   members_[k].label + " solves to " + x.get_str() + ")");
        int m = (int)x.get_num().get_si();
        d.parts.emplace_back(k, m);
        for (int i = 0; i < (int)total.size(); ++i) total[i] += m * members_[k].dims()[i];
    }
    if (total != dims)
        throw ConsistencyError("decomposition does not reproduce the dimension vector " +
                               dim_str(dims) + " (module outside catalog caps?)");
    long end_check = 0;
    for (const auto& [j, mj] : d.parts)
        for (const auto& [k, mk] : d.parts) end_check += (long)mj * mk * hom_[j][k];
    if (end_check != dim_end)
        throw ConsistencyError(
            "decomposition fails the endomorphism dimension check (module outside catalog caps?)");
    return d;
}

Decomposition Catalog::decompose(const Rep<QQ>& m) const
{
    int n = (int)members_.size();
    std::vector<long> b(n);
    for (int j = 0; j < n; ++j) b[j] = dim_hom(members_[j].rep, m);
    return solve_decomposition(b, m.dims, dim_hom(m, m));
}

Decomposition CatalogModP::decompose(const Rep<GF>& m) const
{
    int n = (int)members.size();
    std::vector<long> b(n);
    for (int j = 0; j < n; ++j) b[j] = dim_hom(members[j], m);
    return parent->solve_decomposition(b, m.dims, dim_hom(m, m));
}

Rep<QQ> Catalog::realize(const Decomposition& d) const
{
    QQ f;
    Rep<QQ> acc = zero_rep(q_, f);
    for (const auto& [idx, mult] : d.parts)
        for (int c = 0; c < mult; ++c) acc = direct_sum(acc, members_.at(idx).rep);
    return acc;
}

std::string Catalog::decomposition_str(const Decomposition& d) const
{
    if (d.parts.empty()) return "0";
    std::string out;
    for (const auto& [idx, mult] : d.parts) {
        if (!out.empty()) out += " + ";
        if (mult != 1) out += std::to_string(mult) + "*";
        out += members_.at(idx).label;
    }
    return out;
}

std::optional<CatalogModP> Catalog::try_reduce(std::uint64_t p) const
{
    CatalogModP red;
    red.parent = this;
    red.f = GF(p);
    for (const auto& mem : members_) {
        bool drop = false;
        red.members.push_back(reduce_mod(mem.rep, p, &drop));
        if (drop) return std::nullopt;
    }
    int n = (int)members_.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (dim_hom(red.members[i], red.members[j]) != hom_[i][j]) return std::nullopt;
    return red;
}

CatalogModP Catalog::reduce(std::uint64_t p) const
{
    auto red = try_reduce(p);
    if (!red)
        throw ConsistencyError("prime " + std::to_string(p) + " is bad for this catalog");
    return std::move(*red);
}

Decomposition Catalog::ar_middle_parts(int idx) const
{
    const CatalogMember& mem = members_.at(idx);
    if (mem.projective)
        throw UsageError("no almost split sequence ends at the projective " + mem.label);

    if (mem.tube != TubeLambda::none) {
        // Regular tube member u_{lambda(n)}: middle is u_{lambda(n-1)} + u_{lambda(n+1)}.
        int n = mem.tube_len;
        int below = -1, above = -1;
        for (int j = 0; j < (int)members_.size(); ++j) {
            if (members_[j].tube != mem.tube) continue;
            if (members_[j].tube_len == n - 1) below = j;
            if (members_[j].tube_len == n + 1) above = j;
        }
        if (above < 0)
            throw ConsistencyError("AR middle of " + mem.label + " lies outside the tube cap");
        Decomposition expect;
        if (below >= 0) expect.parts.emplace_back(below, 1);
        expect.parts.emplace_back(above, 1);
        std::sort(expect.parts.begin(), expect.parts.end());

        // Certify over a good finite field: some extension class of u_(n) by
        // tau u_(n) = u_(n) has the expected middle.
        std::uint64_t p = 2;
        std::optional<CatalogModP> red;
        for (int tries = 0; tries < 25; ++tries, p = next_prime(p))
            if ((red = try_reduce(p))) break;
        if (!red) throw ConsistencyError("no good prime found for the catalog");
        const Rep<GF>& mp = red->members[idx];
        auto basis = ext1_basis(mp, mp);
        long e = (long)basis.size();
        GF gf = red->f;
        auto try_class = [&](const std::vector<std::uint64_t>& coeff) {
            ExtTuple<GF> cls;
            for (int a = 0; a < mp.Q->num_arrows(); ++a) {
                Mat<GF> acc(gf, basis.empty() ? 0 : basis[0][a].rows,
                            basis.empty() ? 0 : basis[0][a].cols);
                for (int k = 0; k < (int)basis.size(); ++k)
                    if (coeff[k]) acc = acc + basis[k][a].scaled(coeff[k]);
                cls.push_back(acc);
            }
            Rep<GF> mid = extension_middle(mp, mp, cls);
            try {
                return red->decompose(mid) == expect;
            } catch (const ConsistencyError&) {
                return false;
            }
        };
        bool found = false;
        double space = std::pow((double)red->f.p, (double)e);
        if (space <= 300000.0) {
            std::vector<std::uint64_t> coeff(e, 0);
            while (!found) {
                int i = 0;
                while (i < e && coeff[i] == red->f.p - 1) coeff[i++] = 0;
                if (i == e) break;
                ++coeff[i];
                found = try_class(coeff);
            }
        } else {
            std::mt19937_64 rng(0xa11);
            for (int t = 0; t < 20000 && !found; ++t) {
                std::vector<std::uint64_t> coeff(e);
                bool nz = false;
                for (auto& c : coeff) nz |= (c = rng() % red->f.p) != 0;
                if (nz) found = try_class(coeff);
            }
        }
        if (!found)
            throw ConsistencyError("failed to certify the almost split sequence for " + mem.label);
        return expect;
    }

    if (mem.tau_target < 0)
        throw ConsistencyError("tau of " + mem.label + " lies outside the catalog caps");
    const Rep<QQ>& m = mem.rep;
    const Rep<QQ>& tm = members_[mem.tau_target].rep;
    if (dim_ext1(m, tm) != 1)
        throw ConsistencyError("the extension group of " + mem.label +
                               " by its translate is not one-dimensional");
    auto basis = ext1_basis(m, tm);
    Rep<QQ> mid = extension_middle(m, tm, basis[0]);
    Decomposition got = decompose(mid);
    Decomposition split;
    if (idx == mem.tau_target) {
        split.parts.emplace_back(idx, 2);
    } else {
        split.parts.emplace_back(std::min(idx, mem.tau_target), 1);
        split.parts.emplace_back(std::max(idx, mem.tau_target), 1);
    }
    if (got == split) throw ConsistencyError("extension class for " + mem.label + " split");
    return got;
}

Rep<QQ> Catalog::ar_middle(int idx) const { return realize(ar_middle_parts(idx)); }

std::string Catalog::to_json() const
{
    nlohmann::ordered_json j;
    j["quiver"] = q_->to_text();
    j["members"] = nlohmann::ordered_json::array();
    for (const auto& mem : members_) {
        nlohmann::ordered_json m;
        m["label"] = mem.label;
        m["aliases"] = mem.aliases;
        m["dims"] = mem.dims();
        m["projective"] = mem.projective;
        m["injective"] = mem.injective;
        if (mem.tube != TubeLambda::none) {
            m["tube"] = lambda_tag(mem.tube);
            m["tube_len"] = mem.tube_len;
        }
        nlohmann::ordered_json mats = nlohmann::ordered_json::object();
        for (int a = 0; a < q_->num_arrows(); ++a) {
            const Mat<QQ>& x = mem.rep.mats[a];
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            for (int r = 0; r < x.rows; ++r) {
                nlohmann::ordered_json row = nlohmann::ordered_json::array();
                for (int c = 0; c < x.cols; ++c)
                    row.push_back((long long)x.at(r, c).get_num().get_si());
                rows.push_back(row);
            }
            mats[q_->arrow(a).name] = rows;
        }
        m["matrices"] = mats;
        j["members"].push_back(m);
    }
    return j.dump(2);
}

Decomposition parse_module_spec(const Catalog& cat, const std::string& text)
{
    Decomposition d;
    std::map<int, int> mult;
    size_t pos = 0;
    int terms = 0;
    while (pos <= text.size()) {
        size_t plus = text.find('+', pos);
        std::string term = text.substr(pos, plus == std::string::npos ? plus : plus - pos);
        size_t a = term.find_first_not_of(" \t");
        size_t b = term.find_last_not_of(" \t");
        if (a == std::string::npos) {
            if (terms > 0 || plus != std::string::npos)
                throw ParseError("empty term in module expression '" + text + "'");
        } else {
            term = term.substr(a, b - a + 1);
            int idx = cat.find(term);
            if (idx < 0) throw ParseError("unknown module label '" + term + "'");
            ++mult[idx];
            ++terms;
        }
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    if (terms == 0) throw ParseError("empty module expression");
    for (const auto& [idx, m] : mult) d.parts.emplace_back(idx, m);
    return d;
}

} // namespace cclab
