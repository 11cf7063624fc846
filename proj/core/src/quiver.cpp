#include "cclab/quiver.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace cclab {

DimVec dim_add(const DimVec& a, const DimVec& b)
{
    if (a.size() != b.size()) throw ConsistencyError("dimension vector length mismatch");
    DimVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

DimVec dim_sub(const DimVec& a, const DimVec& b)
{
    if (a.size() != b.size()) throw ConsistencyError("dimension vector length mismatch");
    DimVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

bool dim_leq(const DimVec& a, const DimVec& b)
{
    if (a.size() != b.size()) throw ConsistencyError("dimension vector length mismatch");
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

bool dim_is_zero(const DimVec& a)
{
    for (int x : a)
        if (x) return false;
    return true;
}

int dim_total(const DimVec& a)
{
    int s = 0;
    for (int x : a) s += x;
    return s;
}

std::string dim_str(const DimVec& a)
{
    std::string s = "(";
    for (size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s + ")";
}

Quiver::Quiver(int n, std::vector<Arrow> arrows) : n_(n), arrows_(std::move(arrows))
{
    if (n_ < 1) throw ParseError("quiver must have at least one vertex");
    in_.assign(n_, {});
    out_.assign(n_, {});
    std::set<std::string> names;
    for (int a = 0; a < (int)arrows_.size(); ++a) {
        const Arrow& ar = arrows_[a];
        if (ar.src < 0 || ar.src >= n_ || ar.dst < 0 || ar.dst >= n_)
            throw ParseError("arrow '" + ar.name + "' references a vertex outside 1.." + std::to_string(n_));
        if (!names.insert(ar.name).second)
            throw ParseError("duplicate arrow name '" + ar.name + "'");
        out_[ar.src].push_back(a);
        in_[ar.dst].push_back(a);
    }

    // Admissible order by repeated sink extraction (smallest index first).
    // Also serves as the acyclicity certificate.
    std::vector<bool> placed(n_, false);
    pos_.assign(n_, -1);
    for (int step = 0; step < n_; ++step) {
        int pick = -1;
        for (int v = 0; v < n_ && pick < 0; ++v) {
            if (placed[v]) continue;
            bool sink = true;
            for (int a : out_[v])
                if (!placed[arrows_[a].dst]) { sink = false; break; }
            if (sink) pick = v;
        }
        if (pick < 0) {
            // Every remaining vertex has an outgoing arrow into the
            // remaining set; walk forward until a vertex repeats.
            int v = 0;
            while (placed[v]) ++v;
            std::vector<int> path{v};
            std::vector<int> seen(n_, -1);
            seen[v] = 0;
            for (;;) {
                int nxt = -1;
                for (int a : out_[v])
                    if (!placed[arrows_[a].dst]) { nxt = arrows_[a].dst; break; }
                v = nxt;
                if (seen[v] >= 0) {
                    std::string cyc;
                    for (size_t k = seen[v]; k < path.size(); ++k)
                        cyc += std::to_string(path[k] + 1) + " -> ";
                    throw ParseError("cycle detected: " + cyc + std::to_string(v + 1));
                }
                seen[v] = (int)path.size();
                path.push_back(v);
            }
        }
        order_.push_back(pick);
        pos_[pick] = step;
        placed[pick] = true;
    }

    ext_.assign(n_, std::vector<int>(n_, 0));
    for (const Arrow& ar : arrows_) ext_[ar.src][ar.dst]++;
}

long Quiver::euler_form(const DimVec& d, const DimVec& e) const
{
    if ((int)d.size() != n_ || (int)e.size() != n_)
        throw ConsistencyError("euler_form: dimension vector length mismatch");
    long s = 0;
    for (int i = 0; i < n_; ++i) s += (long)d[i] * e[i];
    for (const Arrow& ar : arrows_) s -= (long)d[ar.src] * e[ar.dst];
    return s;
}

DimVec Quiver::unit_vec(int i) const
{
    DimVec v(n_, 0);
    v.at(i) = 1;
    return v;
}

std::string Quiver::to_text() const
{
    std::ostringstream os;
    os << "vertices: " << n_ << "\n";
    for (const Arrow& ar : arrows_)
        os << "arrow " << ar.name << ": " << ar.src + 1 << " -> " << ar.dst + 1 << "\n";
    return os.str();
}

QuiverPtr parse_quiver(const std::string& text)
{
    static const std::regex vertices_re(R"(^\s*vertices\s*:\s*(\d+)\s*$)");
    static const std::regex arrow_re(R"(^\s*arrow\s+([A-Za-z_][A-Za-z0-9_]*)\s*:\s*(\d+)\s*->\s*(\d+)\s*$)");
    static const std::regex blank_re(R"(^\s*$)");

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<Arrow> arrows;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (std::regex_match(line, blank_re)) continue;
        std::smatch m;
        if (n < 0) {
            if (!std::regex_match(line, m, vertices_re))
                throw ParseError("line " + std::to_string(lineno)
                                 + ": expected 'vertices: <n>' as the first directive");
            n = std::stoi(m[1]);
            continue;
        }
        if (!std::regex_match(line, m, arrow_re))
            throw ParseError("line " + std::to_string(lineno) + ": expected 'arrow <name>: <i> -> <j>'");
        arrows.push_back({m[1], std::stoi(m[2]) - 1, std::stoi(m[3]) - 1});
        if (arrows.back().src < 0 || arrows.back().src >= n || arrows.back().dst < 0
            || arrows.back().dst >= n)
            throw ParseError("line " + std::to_string(lineno) + ": vertex index outside 1.."
                             + std::to_string(n));
    }
    if (n < 0) throw ParseError("missing 'vertices: <n>' directive");
    return std::make_shared<Quiver>(n, std::move(arrows));
}

QuiverPtr load_quiver_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open quiver file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_quiver(buf.str());
}

} // namespace cclab
