#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cclab {

bool is_prime(std::uint64_t n);

// Smallest prime strictly greater than n.
std::uint64_t next_prime(std::uint64_t n);

// Collects the first `count` primes satisfying `good`, drawn from `pool` if
// non-empty (in the given order) or from 2, 3, 5, ... otherwise.  Rejected
// primes are appended to `*skipped` when provided.  Throws ConsistencyError
// if a non-empty pool is exhausted before `count` primes are accepted, and
// ParseError if the pool contains a composite.
std::vector<std::uint64_t> select_primes(
    int count,
    const std::function<bool(std::uint64_t)>& good,
    const std::vector<std::uint64_t>& pool = {},
    std::vector<std::uint64_t>* skipped = nullptr);

} // namespace cclab
