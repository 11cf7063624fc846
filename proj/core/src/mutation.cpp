#include "cclab/mutation.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <string>

namespace cclab {

namespace {

struct Seed {
    std::vector<Laurent> vars;
    std::vector<std::vector<int>> b;
};

// Clusters are unordered, so the key sorts the variables by canonical text
// and permutes the exchange matrix the same way.
std::string seed_key(const Seed& s)
{
    int n = (int)s.vars.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::string> texts(n);
    for (int i = 0; i < n; ++i) texts[i] = s.vars[i].str();
    std::sort(perm.begin(), perm.end(),
              [&](int a, int b) { return texts[a] < texts[b]; });
    std::string key;
    for (int i : perm) {
        key += texts[i];
        key += ';';
    }
    key += '|';
    for (int i : perm)
        for (int j : perm) {
            key += std::to_string(s.b[i][j]);
            key += ',';
        }
    return key;
}

Seed mutate(const Seed& s, int k)
{
    int n = (int)s.vars.size();
    Seed out = s;

    Laurent plus = Laurent::constant(n, 1);
    Laurent minus = Laurent::constant(n, 1);
    for (int i = 0; i < n; ++i) {
        if (s.b[i][k] > 0) plus = plus * s.vars[i].pow(s.b[i][k]);
        if (s.b[i][k] < 0) minus = minus * s.vars[i].pow(-s.b[i][k]);
    }
    auto quot = try_divide(plus + minus, s.vars[k]);
    if (!quot)
        throw ConsistencyError("exchange produced a non-Laurent quotient at direction "
                               + std::to_string(k + 1));
    out.vars[k] = *quot;

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == k || j == k)
                out.b[i][j] = -s.b[i][j];
            else
                out.b[i][j] = s.b[i][j]
                    + (std::abs(s.b[i][k]) * s.b[k][j] + s.b[i][k] * std::abs(s.b[k][j])) / 2;
        }
    return out;
}

} // namespace

std::vector<Laurent> fz_mutation_oracle(QuiverPtr Q, int seed_cap)
{
    int n = Q->num_vertices();
    if (n < 2 || n > 4)
        throw UsageError("mutation oracle supports rank 2 to 4, got rank " + std::to_string(n));

    Seed init;
    init.b.assign(n, std::vector<int>(n, 0));
    const auto& R = Q->ext_matrix();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) init.b[i][j] = R[i][j] - R[j][i];
    for (int i = 0; i < n; ++i) init.vars.push_back(Laurent::variable(n, i));

    std::set<std::string> seen_seeds;
    std::set<std::string> seen_vars;
    std::vector<Laurent> vars;
    auto collect = [&](const Seed& s) {
        for (const Laurent& v : s.vars)
            if (seen_vars.insert(v.str()).second) vars.push_back(v);
    };

    std::deque<Seed> frontier;
    seen_seeds.insert(seed_key(init));
    collect(init);
    frontier.push_back(init);
    while (!frontier.empty()) {
        Seed s = std::move(frontier.front());
        frontier.pop_front();
        for (int k = 0; k < n; ++k) {
            Seed next = mutate(s, k);
            if (!seen_seeds.insert(seed_key(next)).second) continue;
            if ((int)seen_seeds.size() > seed_cap)
                throw BudgetError("mutation did not saturate within " + std::to_string(seed_cap)
                                  + " seeds; the input is not of finite type");
            collect(next);
            frontier.push_back(next);
        }
    }

    std::sort(vars.begin(), vars.end(),
              [](const Laurent& a, const Laurent& b) { return a.str() < b.str(); });
    return vars;
}

} // namespace cclab
