#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "cclab/error.hpp"

namespace cclab {

// Field contexts.  Generic linear algebra is templated over a context type F
// carrying the element type F::Elt and the arithmetic as member functions,
// so that the prime of a finite field lives in the context object rather
// than in every element.

// The rationals, with GMP-backed exact arithmetic.
struct QQ {
    using Elt = mpq_class;

    Elt zero() const { return Elt(0); }
    Elt one() const { return Elt(1); }
    Elt from_int(long v) const { return Elt(v); }
    Elt add(const Elt& a, const Elt& b) const { return a + b; }
    Elt sub(const Elt& a, const Elt& b) const { return a - b; }
    Elt mul(const Elt& a, const Elt& b) const { return a * b; }
    Elt neg(const Elt& a) const { return -a; }
    Elt inv(const Elt& a) const
    {
        if (a == 0) throw ConsistencyError("division by zero in QQ");
        return Elt(1) / a;
    }
    Elt div(const Elt& a, const Elt& b) const { return mul(a, inv(b)); }
    bool is_zero(const Elt& a) const { return a == 0; }
    bool eq(const Elt& a, const Elt& b) const { return a == b; }
    std::string str(const Elt& a) const { return a.get_str(); }
    bool operator==(const QQ&) const { return true; }
};

// The prime field F_p for p < 2^62, elements stored as canonical residues.
struct GF {
    std::uint64_t p = 0;

    GF() = default;
    explicit GF(std::uint64_t prime) : p(prime)
    {
        if (p < 2 || p >= (1ull << 62))
            throw ConsistencyError("GF modulus out of range: " + std::to_string(p));
    }

    using Elt = std::uint64_t;

    Elt zero() const { return 0; }
    Elt one() const { return p > 1 ? 1 : 0; }
    Elt from_int(long v) const
    {
        long r = v % (long)p;
        if (r < 0) r += (long)p;
        return (Elt)r;
    }
    Elt from_mpz(const mpz_class& v) const
    {
        mpz_class r = v % mpz_class(mpz_class(p));
        if (r < 0) r += mpz_class(p);
        return (Elt)r.get_ui();
    }
    Elt add(Elt a, Elt b) const
    {
        Elt s = a + b;
        return s >= p ? s - p : s;
    }
    Elt sub(Elt a, Elt b) const { return a >= b ? a - b : a + p - b; }
    Elt mul(Elt a, Elt b) const
    {
        return (Elt)(((unsigned __int128)a * b) % p);
    }
    Elt neg(Elt a) const { return a == 0 ? 0 : p - a; }
    Elt pow(Elt a, std::uint64_t e) const
    {
        Elt r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    Elt inv(Elt a) const
    {
        if (a == 0) throw ConsistencyError("division by zero in GF(" + std::to_string(p) + ")");
        return pow(a, p - 2);
    }
    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
    bool is_zero(Elt a) const { return a == 0; }
    bool eq(Elt a, Elt b) const { return a == b; }
    std::string str(Elt a) const { return std::to_string(a); }
    bool operator==(const GF& o) const { return p == o.p; }
};

} // namespace cclab
