#include "cclab/primes.hpp"

#include "cclab/error.hpp"

namespace cclab {

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        if (n == d) return true;
        if (n % d == 0) return false;
    }
    // Trial division is plenty: moduli used for point counting stay small.
    for (std::uint64_t d = 17; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t next_prime(std::uint64_t n)
{
    std::uint64_t c = n + 1;
    while (!is_prime(c)) ++c;
    return c;
}

std::vector<std::uint64_t> select_primes(
    int count,
    const std::function<bool(std::uint64_t)>& good,
    const std::vector<std::uint64_t>& pool,
    std::vector<std::uint64_t>* skipped)
{
    std::vector<std::uint64_t> out;
    if (!pool.empty()) {
        for (std::uint64_t p : pool) {
            if (!is_prime(p))
                throw ParseError("prime pool entry " + std::to_string(p) + " is not prime");
            if ((int)out.size() == count) break;
            if (good(p)) out.push_back(p);
            else if (skipped) skipped->push_back(p);
        }
        if ((int)out.size() < count)
            throw ConsistencyError(
                "prime pool exhausted: needed " + std::to_string(count) + " usable primes, got "
                + std::to_string(out.size()));
        return out;
    }
    std::uint64_t p = 1;
    while ((int)out.size() < count) {
        p = next_prime(p);
        if (good(p)) out.push_back(p);
        else if (skipped) skipped->push_back(p);
    }
    return out;
}

} // namespace cclab
