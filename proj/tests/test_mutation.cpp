#include <doctest.h>

#include <set>

#include "cclab/catalog.hpp"
#include "cclab/ccmap.hpp"
#include "cclab/mutation.hpp"

using namespace cclab;

namespace {

QuiverPtr a2() { return parse_quiver("vertices: 2\narrow a: 1 -> 2"); }
QuiverPtr a3() { return parse_quiver("vertices: 3\narrow a: 1 -> 2\narrow b: 2 -> 3"); }
QuiverPtr d4()
{
    return parse_quiver("vertices: 4\narrow b: 2 -> 1\narrow c: 3 -> 1\narrow d: 4 -> 1");
}
QuiverPtr kron() { return parse_quiver("vertices: 2\narrow a: 1 -> 2\narrow b: 1 -> 2"); }

std::set<std::string> texts(const std::vector<Laurent>& vars)
{
    std::set<std::string> out;
    for (const Laurent& v : vars) out.insert(v.str());
    return out;
}

std::set<std::string> catalog_side(const Catalog& cat)
{
    CCContext ctx(cat);
    std::set<std::string> out;
    int n = cat.quiver()->num_vertices();
    for (int i = 0; i < n; ++i) out.insert(Laurent::variable(n, i).str());
    for (int i = 0; i < cat.size(); ++i) out.insert(ctx.cc_member(i).str());
    return out;
}

} // namespace

TEST_CASE("exact Laurent division")
{
    Laurent a = Laurent::parse("x1^2*x2 + x1 + x2^-1", 2);
    Laurent b = Laurent::parse("x1*x2^-1 + 3", 2);
    CHECK(*try_divide(a * b, a) == b);
    CHECK(*try_divide(a * b, b) == a);
    CHECK(!try_divide(Laurent::parse("x1 + 1", 2), Laurent::constant(2, 2)).has_value());
    CHECK(!try_divide(a, Laurent::zero(2)).has_value());
    CHECK(try_divide(Laurent::zero(2), a)->is_zero());
    // x1/(x1 + 1) is not Laurent; the step cap must end the division
    CHECK(!try_divide(Laurent::parse("x1", 2), Laurent::parse("x1 + 1", 2), 500).has_value());
}

TEST_CASE("A2 saturates to the five known variables")
{
    auto vars = fz_mutation_oracle(a2());
    REQUIRE(vars.size() == 5);
    std::set<std::string> expect = {
        Laurent::parse("x1", 2).str(),
        Laurent::parse("x2", 2).str(),
        Laurent::parse("x1^-1*x2 + x1^-1", 2).str(),
        Laurent::parse("x1*x2^-1 + x2^-1", 2).str(),
        Laurent::parse("x2^-1 + x1^-1 + x1^-1*x2^-1", 2).str(),
    };
    CHECK(texts(vars) == expect);
}

TEST_CASE("oracle matches initial variables plus the character catalog")
{
    CHECK(texts(fz_mutation_oracle(a2())) == catalog_side(Catalog::build(a2())));

    auto a3_vars = fz_mutation_oracle(a3());
    CHECK(a3_vars.size() == 9); // 3 initial + 6 positive roots
    CHECK(texts(a3_vars) == catalog_side(Catalog::build(a3())));

    auto d4_vars = fz_mutation_oracle(d4());
    CHECK(d4_vars.size() == 16); // 4 initial + 12 positive roots
    CHECK(texts(d4_vars) == catalog_side(Catalog::build(d4())));
}

TEST_CASE("rank guard")
{
    CHECK_THROWS_AS(fz_mutation_oracle(parse_quiver("vertices: 1")), UsageError);
    CHECK_THROWS_AS(fz_mutation_oracle(parse_quiver(
                        "vertices: 5\narrow a: 1 -> 2\narrow b: 2 -> 3\n"
                        "arrow c: 3 -> 4\narrow d: 4 -> 5")),
                    UsageError);
}

TEST_CASE("infinite type hits the saturation cap")
{
    CHECK_THROWS_AS(fz_mutation_oracle(kron(), 40), BudgetError);
}
