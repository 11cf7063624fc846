#include "cclab/interpolate.hpp"

#include <set>

#include "cclab/error.hpp"

namespace cclab {

mpz_class FitResult::at(const mpz_class& q) const
{
    mpz_class v = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * q + *it;
    return v;
}

mpz_class FitResult::at_one() const
{
    mpz_class v = 0;
    for (const mpz_class& c : coeffs) v += c;
    return v;
}

FitResult fit_integer_polynomial(
    const std::vector<std::pair<std::uint64_t, mpz_class>>& samples,
    int degree_bound)
{
    if (degree_bound < 0) throw ConsistencyError("fit: negative degree bound");
    int m = degree_bound + 1;
    if ((int)samples.size() < m + 1)
        throw ConsistencyError("fit: need at least " + std::to_string(m + 1) + " samples (degree bound "
                               + std::to_string(degree_bound) + " plus a held-out point), got "
                               + std::to_string(samples.size()));
    {
        std::set<std::uint64_t> qs;
        for (const auto& s : samples)
            if (!qs.insert(s.first).second)
                throw ConsistencyError("fit: duplicate sample point q=" + std::to_string(s.first));
    }

    // Lagrange: accumulate y_j * prod_{k != j} (x - q_k)/(q_j - q_k) as a
    // rational coefficient vector, low degree first.
    std::vector<mpq_class> acc(m, mpq_class(0));
    for (int j = 0; j < m; ++j) {
        std::vector<mpq_class> basis{mpq_class(1)}; // running product
        mpq_class denom(1);
        mpq_class qj((long)samples[j].first);
        for (int k = 0; k < m; ++k) {
            if (k == j) continue;
            mpq_class qk((long)samples[k].first);
            // multiply basis by (x - q_k)
            std::vector<mpq_class> next(basis.size() + 1, mpq_class(0));
            for (size_t t = 0; t < basis.size(); ++t) {
                next[t + 1] += basis[t];
                next[t] -= basis[t] * qk;
            }
            basis = std::move(next);
            denom *= qj - qk;
        }
        mpq_class scale = mpq_class(samples[j].second) / denom;
        for (size_t t = 0; t < basis.size(); ++t) acc[t] += basis[t] * scale;
    }

    FitResult fit;
    for (int t = 0; t < m; ++t) {
        mpq_class c = acc[t];
        c.canonicalize();
        if (c.get_den() != 1)
            throw InterpolationError("non-integer fitted coefficient " + c.get_str()
                                     + " at degree " + std::to_string(t)
                                     + " — counts are not polynomial of degree <= "
                                     + std::to_string(degree_bound));
        fit.coeffs.push_back(c.get_num());
    }
    while (!fit.coeffs.empty() && fit.coeffs.back() == 0) fit.coeffs.pop_back();

    for (size_t s = m; s < samples.size(); ++s) {
        mpz_class pred = fit.at(mpz_class((unsigned long)samples[s].first));
        if (pred != samples[s].second)
            throw InterpolationError(
                "held-out check failed at q=" + std::to_string(samples[s].first) + ": fitted polynomial gives "
                + pred.get_str() + " but the count is " + samples[s].second.get_str()
                + " — counts are not polynomial of degree <= " + std::to_string(degree_bound));
    }
    return fit;
}

} // namespace cclab
