#include "cclab/laurent.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace cclab {

namespace {

long long checked_add(long long a, long long b)
{
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw ConsistencyError("laurent coefficient overflow (+)");
    return r;
}

long long checked_mul(long long a, long long b)
{
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw ConsistencyError("laurent coefficient overflow (*)");
    return r;
}

} // namespace

Laurent Laurent::constant(int nvars, long long c)
{
    Laurent p(nvars);
    p.add_term(Exp(nvars, 0), c);
    return p;
}

Laurent Laurent::monomial(const Exp& e, long long c)
{
    Laurent p((int)e.size());
    p.add_term(e, c);
    return p;
}

Laurent Laurent::variable(int nvars, int i)
{
    if (i < 0 || i >= nvars) throw ConsistencyError("laurent variable index out of range");
    Exp e(nvars, 0);
    e[i] = 1;
    return monomial(e);
}

bool Laurent::is_one() const
{
    return t_.size() == 1 && t_.begin()->second == 1
        && t_.begin()->first == Exp(n_, 0);
}

long long Laurent::coeff(const Exp& e) const
{
    auto it = t_.find(e);
    return it == t_.end() ? 0 : it->second;
}

void Laurent::add_term(const Exp& e, long long c)
{
    if ((int)e.size() != n_) throw ConsistencyError("laurent exponent length mismatch");
    if (c == 0) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
        t_.emplace(e, c);
    } else {
        it->second = checked_add(it->second, c);
        if (it->second == 0) t_.erase(it);
    }
}

void Laurent::require_same(const Laurent& o) const
{
    if (n_ != o.n_) throw ConsistencyError("laurent variable count mismatch");
}

Laurent Laurent::operator+(const Laurent& o) const
{
    require_same(o);
    Laurent r = *this;
    for (const auto& [e, c] : o.t_) r.add_term(e, c);
    return r;
}

Laurent Laurent::operator-(const Laurent& o) const
{
    require_same(o);
    Laurent r = *this;
    for (const auto& [e, c] : o.t_) r.add_term(e, checked_mul(c, -1));
    return r;
}

Laurent Laurent::operator-() const
{
    Laurent r(n_);
    for (const auto& [e, c] : t_) r.t_.emplace(e, checked_mul(c, -1));
    return r;
}

Laurent Laurent::operator*(const Laurent& o) const
{
    require_same(o);
    Laurent r(n_);
    for (const auto& [e1, c1] : t_)
        for (const auto& [e2, c2] : o.t_) {
            Exp e(n_);
            for (int i = 0; i < n_; ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, checked_mul(c1, c2));
        }
    return r;
}

Laurent Laurent::scaled(long long c) const
{
    Laurent r(n_);
    if (c == 0) return r;
    for (const auto& [e, k] : t_) r.t_.emplace(e, checked_mul(k, c));
    return r;
}

Laurent Laurent::pow(int k) const
{
    if (k < 0) throw ConsistencyError("laurent pow: negative exponent");
    Laurent r = constant(n_, 1);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

std::string Laurent::str() const
{
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : t_) {
        long long mag = c;
        if (first) {
            if (c < 0) { os << "-"; mag = -c; }
            first = false;
        } else {
            if (c < 0) { os << " - "; mag = -c; }
            else os << " + ";
        }
        std::string factors;
        for (int i = 0; i < n_; ++i) {
            if (e[i] == 0) continue;
            if (!factors.empty()) factors += "*";
            factors += "x" + std::to_string(i + 1);
            if (e[i] != 1) factors += "^" + std::to_string(e[i]);
        }
        if (factors.empty()) {
            os << mag;
        } else {
            if (mag != 1) os << mag << "*";
            os << factors;
        }
    }
    return os.str();
}

namespace {

struct Lexer {
    const std::string& s;
    size_t i = 0;
    explicit Lexer(const std::string& str) : s(str) {}
    void skip_ws()
    {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool done()
    {
        skip_ws();
        return i >= s.size();
    }
    char peek()
    {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    char take() { return s[i++]; }
    long long integer()
    {
        skip_ws();
        bool neg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = (s[i++] == '-');
        if (i >= s.size() || !std::isdigit((unsigned char)s[i]))
            throw ParseError("laurent parse: expected integer at offset " + std::to_string(i));
        long long v = 0;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) {
            v = checked_mul(v, 10);
            v = checked_add(v, s[i++] - '0');
        }
        return neg ? -v : v;
    }
};

} // namespace

Laurent Laurent::parse(const std::string& text, int nvars)
{
    Laurent out(nvars);
    Lexer lx(text);
    if (lx.done()) throw ParseError("laurent parse: empty input");
    bool first = true;
    while (!lx.done()) {
        long long sign = 1;
        char c = lx.peek();
        if (c == '+' || c == '-') {
            lx.take();
            sign = (c == '-') ? -1 : 1;
        } else if (!first) {
            throw ParseError("laurent parse: expected '+' or '-' between terms");
        }
        first = false;
        long long coeff = sign;
        Exp e(nvars, 0);
        bool expect_factor = true;
        while (expect_factor) {
            c = lx.peek();
            if (std::isdigit((unsigned char)c)) {
                coeff = checked_mul(coeff, lx.integer());
            } else if (c == 'x') {
                lx.take();
                long long vi = lx.integer();
                if (vi < 1 || vi > nvars)
                    throw ParseError("laurent parse: variable x" + std::to_string(vi) + " out of range");
                int ex = 1;
                if (lx.peek() == '^') {
                    lx.take();
                    long long p = lx.integer();
                    ex = (int)p;
                }
                e[(int)vi - 1] += ex;
            } else {
                throw ParseError("laurent parse: expected factor at offset " + std::to_string(lx.i));
            }
            if (lx.peek() == '*') {
                lx.take();
            } else {
                expect_factor = false;
            }
        }
        out.add_term(e, coeff);
    }
    return out;
}

std::optional<Laurent> try_divide(const Laurent& num, const Laurent& den, int max_steps)
{
    if (num.nvars() != den.nvars()) throw UsageError("try_divide: variable count mismatch");
    if (den.is_zero()) return std::nullopt;
    int n = num.nvars();
    Laurent quot = Laurent::zero(n);
    Laurent rem = num;
    // The leading term of an exact product is the product of the leading
    // terms, so peeling rem's leading term by den's recovers the quotient
    // term by term and strictly shrinks rem's leading term.
    for (int step = 0; !rem.is_zero(); ++step) {
        if (step >= max_steps) return std::nullopt;
        const auto& [re, rc] = *rem.terms().begin();
        const auto& [de, dc] = *den.terms().begin();
        if (rc % dc != 0) return std::nullopt;
        Laurent::Exp e(n);
        for (int i = 0; i < n; ++i) e[i] = re[i] - de[i];
        Laurent t = Laurent::monomial(e, rc / dc);
        quot = quot + t;
        rem = rem - t * den;
    }
    return quot;
}

} // namespace cclab
