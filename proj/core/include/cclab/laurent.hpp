#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cclab/error.hpp"

namespace cclab {

// Term order: graded-lex, highest first.  Total degree decides; ties are
// broken lexicographically on the exponent vector with x1 weighing most and
// larger exponents first.  Map iteration order == canonical print order.
struct GrlexGreater {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const
    {
        long da = 0, db = 0;
        for (int x : a) da += x;
        for (int x : b) db += x;
        if (da != db) return da > db;
        return a > b;
    }
};

// Laurent polynomial in x1..xn over the integers.  Immutable-style value
// type; no zero coefficients are ever stored.  Coefficient arithmetic is
// overflow-checked (Euler characteristics stay tiny, but loudly is better
// than wrongly).
class Laurent {
public:
    using Exp = std::vector<int>;
    using TermMap = std::map<Exp, long long, GrlexGreater>;

    explicit Laurent(int nvars = 0) : n_(nvars) {}

    static Laurent zero(int nvars) { return Laurent(nvars); }
    static Laurent constant(int nvars, long long c);
    static Laurent monomial(const Exp& e, long long c = 1);
    static Laurent variable(int nvars, int i); // x_{i+1}

    int nvars() const { return n_; }
    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_one() const;

    long long coeff(const Exp& e) const;

    Laurent operator+(const Laurent& o) const;
    Laurent operator-(const Laurent& o) const;
    Laurent operator-() const;
    Laurent operator*(const Laurent& o) const;
    Laurent scaled(long long c) const;
    Laurent pow(int k) const; // k >= 0
    bool operator==(const Laurent& o) const { return n_ == o.n_ && t_ == o.t_; }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    // Canonical text, e.g. "x1*x2^-1 + x1^-1*x2 + x1^-1*x2^-1".
    std::string str() const;
    static Laurent parse(const std::string& text, int nvars);

private:
    void add_term(const Exp& e, long long c);
    void require_same(const Laurent& o) const;

    int n_;
    TermMap t_;
};

// Exact quotient num/den, or nullopt if den does not divide num in the
// Laurent ring (leading-term division along the canonical term order; the
// iteration cap only guards against pathological non-divisors).
std::optional<Laurent> try_divide(const Laurent& num, const Laurent& den, int max_steps = 100000);

} // namespace cclab
