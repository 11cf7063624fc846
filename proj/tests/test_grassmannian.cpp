#include <doctest.h>

#include <random>
#include <set>

#include <json.hpp>

#include "cclab/catalog.hpp"
#include "cclab/grassmannian.hpp"

using namespace cclab;

namespace {

QuiverPtr a2() { return parse_quiver("vertices: 2\narrow a: 1 -> 2"); }
QuiverPtr a3() { return parse_quiver("vertices: 3\narrow a: 1 -> 2\narrow b: 2 -> 3"); }
QuiverPtr kron() { return parse_quiver("vertices: 2\narrow a: 1 -> 2\narrow b: 1 -> 2"); }

Rep<QQ> kron_regular(QuiverPtr q, int n, int lambda, bool swapped = false)
{
    QQ f;
    Rep<QQ> m(q, f);
    m.dims = {n, n};
    Mat<QQ> jord(f, n, n);
    for (int i = 0; i < n; ++i) {
        jord.at(i, i) = lambda;
        if (i + 1 < n) jord.at(i, i + 1) = 1;
    }
    m.mats[swapped ? 1 : 0] = Mat<QQ>::identity(f, n);
    m.mats[swapped ? 0 : 1] = jord;
    return m;
}

std::mt19937_64 g_rng(0x96a55);

Rep<QQ> random_rep(QuiverPtr q, int maxdim, int span = 2)
{
    QQ f;
    Rep<QQ> m(q, f);
    for (int i = 0; i < q->num_vertices(); ++i) m.dims[i] = (int)(g_rng() % (maxdim + 1));
    std::uniform_int_distribution<int> d(-span, span);
    for (int a = 0; a < q->num_arrows(); ++a) {
        const Arrow& ar = q->arrow(a);
        Mat<QQ> x(f, m.dims[ar.dst], m.dims[ar.src]);
        for (auto& e : x.a) e = d(g_rng);
        m.mats[a] = std::move(x);
    }
    return m;
}

void for_all_e(const DimVec& dims, const std::function<void(const DimVec&)>& cb)
{
    DimVec e(dims.size(), 0);
    while (true) {
        cb(e);
        std::size_t i = 0;
        while (i < dims.size() && e[i] == dims[i]) e[i++] = 0;
        if (i == dims.size()) break;
        ++e[i];
    }
}

} // namespace

TEST_CASE("gaussian binomials")
{
    mpz_class q = 5;
    CHECK(gauss_binom(2, 1, q) == 6);
    CHECK(gauss_binom(4, 2, 2) == 35);
    CHECK(gauss_binom(3, 0, q) == 1);
    CHECK(gauss_binom(3, 3, q) == 1);
    CHECK(gauss_binom(3, 4, q) == 0);
    CHECK(gauss_binom(3, -1, q) == 0);
    for (int n = 0; n <= 6; ++n)
        for (int k = 0; k <= n; ++k) CHECK(gauss_binom(n, k, 3) == gauss_binom(n, n - k, 3));
}

TEST_CASE("subspace enumeration is complete and duplicate free")
{
    for (std::uint64_t p : {2ull, 3ull}) {
        GF f(p);
        for (int n = 0; n <= 4; ++n)
            for (int k = 0; k <= n; ++k) {
                std::set<std::string> seen;
                long count = 0;
                for_each_subspace(f, n, k, [&](const Mat<GF>& b) {
                    ++count;
                    CHECK(b.rows == n);
                    CHECK(b.cols == k);
                    CHECK(rank(b) == k);
                    seen.insert(b.str());
                });
                CHECK(count == gauss_binom(n, k, mpz_class((unsigned long)p)));
                CHECK((long)seen.size() == count);
            }
    }
}

TEST_CASE("count golden cases")
{
    QQ f;
    auto q = a2();
    auto m = direct_sum(simple(q, f, 0), simple(q, f, 0));
    CHECK(count_subreps(reduce_mod(m, 5), {1, 0}) == 6);
    CHECK(count_subreps(reduce_mod(m, 5), {0, 0}) == 1);
    CHECK(count_subreps(reduce_mod(m, 5), {2, 0}) == 1);
    CHECK(count_subreps(reduce_mod(m, 5), {0, 1}) == 0);

    auto u2 = kron_regular(kron(), 2, 0);
    CHECK(count_subreps(reduce_mod(u2, 3), {1, 1}) == 1);
    CHECK(count_subreps_reference(reduce_mod(u2, 3), {1, 1}) == 1);
}

TEST_CASE("tube profile matches the known small cases")
{
    auto u2 = kron_regular(kron(), 2, 0);
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        mpz_class q((unsigned long)p);
        Rep<GF> mp = reduce_mod(u2, p);
        CHECK(count_subreps(mp, {0, 0}) == 1);
        CHECK(count_subreps(mp, {0, 1}) == q + 1);
        CHECK(count_subreps(mp, {0, 2}) == 1);
        CHECK(count_subreps(mp, {1, 1}) == 1);
        CHECK(count_subreps(mp, {1, 2}) == q + 1);
        CHECK(count_subreps(mp, {2, 2}) == 1);
        CHECK(count_subreps(mp, {1, 0}) == 0);
    }
    auto u3 = kron_regular(kron(), 3, 0);
    for (std::uint64_t p : {2ull, 3ull, 7ull}) {
        mpz_class q((unsigned long)p);
        CHECK(count_subreps(reduce_mod(u3, p), {1, 2}) == 1 + 2 * q + q * q);
    }
}

TEST_CASE("tube fast path agrees with plain enumeration")
{
    for (int lambda : {0, 1}) {
        for (bool swapped : {false, true}) {
            if (lambda == 1 && swapped) continue; // u[inf] is the swapped nilpotent
            for (int n = 1; n <= 4; ++n) {
                auto u = kron_regular(kron(), n, lambda, swapped);
                for (std::uint64_t p : {2ull, 3ull, 5ull}) {
                    Rep<GF> mp = reduce_mod(u, p);
                    for_all_e(u.dims, [&](const DimVec& e) {
                        CAPTURE(lambda);
                        CAPTURE(n);
                        CAPTURE(p);
                        CHECK(count_subreps(mp, e) ==
                              count_subreps_reference(mp, e, 2'000'000'000));
                    });
                }
            }
        }
    }
}

TEST_CASE("endpoint elimination agrees with plain enumeration on random modules")
{
    auto d4 = parse_quiver("vertices: 4\narrow b: 2 -> 1\narrow c: 3 -> 1\narrow d: 4 -> 1");
    for (auto q : {a2(), a3(), kron(), d4}) {
        for (int trial = 0; trial < 12; ++trial) {
            Rep<QQ> m = random_rep(q, 2);
            for (std::uint64_t p : {2ull, 3ull}) {
                Rep<GF> mp = reduce_mod(m, p);
                for_all_e(m.dims, [&](const DimVec& e) {
                    CHECK(count_subreps(mp, e) == count_subreps_reference(mp, e, 2'000'000'000));
                });
            }
        }
    }
}

TEST_CASE("budget guard")
{
    QQ f;
    auto q = a2();
    Rep<QQ> m(q, f);
    m.dims = {8, 8};
    m.mats[0] = Mat<QQ>::identity(f, 8);
    CHECK_THROWS_AS(count_subreps(reduce_mod(m, 5), {4, 4}, 1000), BudgetError);
    try {
        count_subreps(reduce_mod(m, 5), {4, 4}, 1000);
    } catch (const BudgetError& err) {
        CHECK(std::string(err.what()).find("budget") != std::string::npos);
    }
}

TEST_CASE("euler characteristics golden cases")
{
    QQ f;
    auto q = a2();
    auto m = direct_sum(simple(q, f, 0), simple(q, f, 0));
    CHECK(euler_grassmannian(m, {1, 0}) == 2);

    auto u0 = kron_regular(kron(), 1, 0);
    CHECK(euler_grassmannian(u0, {1, 1}) == 1);
    CHECK(euler_grassmannian(u0, {0, 1}) == 1);
    CHECK(euler_grassmannian(u0, {1, 0}) == 0);
}

TEST_CASE("profiles")
{
    QQ f;
    auto q = a2();
    GrassmannianProfile ps = grassmannian_profile(simple(q, f, 0));
    CHECK(ps.euler.size() == 2);
    CHECK(ps.euler.at(DimVec{0, 0}) == 1);
    CHECK(ps.euler.at(DimVec{1, 0}) == 1);

    GrassmannianProfile pp = grassmannian_profile(projective(q, f, 0));
    CHECK(pp.euler.at(DimVec{0, 0}) == 1);
    CHECK(pp.euler.at(DimVec{0, 1}) == 1);
    CHECK(pp.euler.at(DimVec{1, 1}) == 1);
    CHECK(pp.euler.at(DimVec{1, 0}) == 0);

    GrassmannianProfile pu = grassmannian_profile(kron_regular(kron(), 1, 0));
    CHECK(pu.euler.at(DimVec{0, 0}) == 1);
    CHECK(pu.euler.at(DimVec{0, 1}) == 1);
    CHECK(pu.euler.at(DimVec{1, 1}) == 1);
    CHECK(pu.euler.at(DimVec{1, 0}) == 0);
}

TEST_CASE("profile of a long tube via the recursion")
{
    Config cfg;
    cfg.jobs = 2;
    auto u6 = kron_regular(kron(), 6, 1);
    GrassmannianProfile p = grassmannian_profile(u6, cfg);
    CHECK(p.euler.at(DimVec{0, 0}) == 1);
    CHECK(p.euler.at(DimVec{6, 6}) == 1);
    // chi(Gr_(e,e)) of a rank-one tube of length m is 1 for all 0 <= e <= m
    for (int e = 0; e <= 6; ++e) CHECK(p.euler.at(DimVec{e, e}) == 1);
    // subrepresentations need e_1 <= e_2
    CHECK(p.euler.at(DimVec{3, 2}) == 0);
}

TEST_CASE("convolution identity on direct sums")
{
    std::mt19937_64 rng(0xc0);
    Catalog cat = Catalog::build(a3());
    for (int trial = 0; trial < 20; ++trial) {
        const Rep<QQ>& m = cat.member((int)(rng() % cat.size())).rep;
        const Rep<QQ>& n = cat.member((int)(rng() % cat.size())).rep;
        Rep<QQ> sum = direct_sum(m, n);
        GrassmannianProfile pm = grassmannian_profile(m);
        GrassmannianProfile pn = grassmannian_profile(n);
        GrassmannianProfile psum = grassmannian_profile(sum);
        for (const auto& [e, chi] : psum.euler) {
            long expect = 0;
            for (const auto& [e1, chi1] : pm.euler) {
                DimVec e2 = dim_sub(e, e1);
                bool ok = true;
                for (std::size_t i = 0; i < e2.size(); ++i)
                    if (e2[i] < 0 || e2[i] > n.dims[i]) ok = false;
                if (!ok) continue;
                expect += chi1 * pn.euler.at(e2);
            }
            CHECK(chi == expect);
        }
    }
}

TEST_CASE("good primes skip rank drops")
{
    QQ f;
    auto q = a2();
    Rep<QQ> m(q, f);
    m.dims = {1, 1};
    m.mats[0] = Mat<QQ>::from_rows(f, {{6}});
    Config cfg;
    auto primes = good_primes_for(m, 3, cfg);
    REQUIRE(primes.size() == 3);
    CHECK(primes[0] == 5);
    CHECK(primes[1] == 7);
    CHECK(primes[2] == 11);
    // explicit pools are honored
    cfg.prime_pool = {13, 2, 17, 19};
    auto pooled = good_primes_for(m, 3, cfg);
    CHECK(pooled == std::vector<std::uint64_t>{13, 17, 19});
}

TEST_CASE("count profile json")
{
    QQ f;
    auto q = a2();
    auto m = direct_sum(simple(q, f, 0), simple(q, f, 0));
    CountProfile prof = count_profile(m, {1, 0});
    CHECK(prof.euler == 2);
    REQUIRE(prof.counts.size() >= 3); // degree bound 1, two plus held-out
    auto j = nlohmann::json::parse(prof.to_json());
    CHECK(j["e"] == nlohmann::json::array({1, 0}));
    CHECK(j["euler"] == "2");
    CHECK(j["poly"].size() == 2);
    CHECK(j["poly"][0] == "1");
    CHECK(j["poly"][1] == "1");
    CHECK(j["counts"][0][0] == 2);
    CHECK(j["counts"][0][1] == "3");
}

TEST_CASE("rational masters are integralized before counting")
{
    QQ f;
    auto q = a2();
    Rep<QQ> m(q, f);
    m.dims = {1, 1};
    m.mats[0] = Mat<QQ>::from_rows(f, {{1}});
    m.mats[0].at(0, 0) = mpq_class(1, 3);
    // isomorphic to P1 over Q, so the profile matches P1's
    GrassmannianProfile p = grassmannian_profile(m);
    CHECK(p.euler.at(DimVec{0, 1}) == 1);
    CHECK(p.euler.at(DimVec{1, 1}) == 1);
    CHECK(p.euler.at(DimVec{1, 0}) == 0);
}
