// cclab: compute cluster characters of quiver representations and verify the
// multiplication identities they satisfy, over exact arithmetic.
//
// Subcommands: quiver-check, cc, catalog, tau, grassmannian,
//              verify {thm1|thm2|ar|hoa|all}, kronecker-demo.
//
// Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or input
// error, 3 budget exceeded or internal consistency abort.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cclab/ar.hpp"
#include "cclab/catalog.hpp"
#include "cclab/ccmap.hpp"
#include "cclab/config.hpp"
#include "cclab/grassmannian.hpp"
#include "cclab/laurent.hpp"
#include "cclab/quiver.hpp"
#include "cclab/verify.hpp"

using namespace cclab;
using nlohmann::ordered_json;

namespace {

struct Options {
    std::string quiver_path;
    std::string module_spec;
    std::string dim_spec;
    std::string format = "text";
    std::string primes_csv;
    long long budget = 50'000'000;
    int jobs = 1;
    std::uint64_t seed = 0;
    int ladder_cap = 6;
    int tube_cap = 8;
    int nmax = 4;

    bool json() const { return format == "json"; }

    Config config() const
    {
        Config cfg;
        if (!primes_csv.empty()) {
            std::istringstream in(primes_csv);
            std::string tok;
            while (std::getline(in, tok, ','))
                if (!tok.empty()) cfg.prime_pool.push_back(std::stoull(tok));
            if (cfg.prime_pool.size() < 2)
                throw UsageError("--primes needs at least two primes");
        }
        if (budget <= 0) throw UsageError("--budget must be positive");
        if (jobs < 1) throw UsageError("--jobs must be at least 1");
        if (ladder_cap < 1 || tube_cap < 1)
            throw UsageError("catalog caps must be at least 1");
        cfg.budget = budget;
        cfg.jobs = jobs;
        cfg.seed = seed;
        cfg.ladder_cap = ladder_cap;
        cfg.tube_cap = tube_cap;
        return cfg;
    }
};

// Registers the shared flags on a subcommand; the quiver path and module
// spec are marked required only where the subcommand cannot run without them.
void add_common(CLI::App* cmd, Options& o, bool needs_quiver, bool has_module)
{
    auto* q = cmd->add_option("--quiver", o.quiver_path, "quiver file")
                  ->envname("CCLAB_QUIVER");
    if (needs_quiver) q->required();
    if (has_module)
        cmd->add_option("--module", o.module_spec,
                        "module spec: catalog labels joined by '+', e.g. 'S1 + P2 + P2'")
            ->envname("CCLAB_MODULE");
    cmd->add_option("--primes", o.primes_csv, "comma-separated primes to try first")
        ->envname("CCLAB_PRIMES");
    cmd->add_option("--budget", o.budget, "enumeration budget guard")
        ->envname("CCLAB_BUDGET");
    cmd->add_option("--format", o.format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}))
        ->envname("CCLAB_FORMAT");
    cmd->add_option("--jobs", o.jobs, "worker threads for per-prime counting")
        ->envname("CCLAB_JOBS");
    cmd->add_option("--seed", o.seed, "seed for randomized checks")
        ->envname("CCLAB_SEED");
    cmd->add_option("--ladder-cap", o.ladder_cap,
                    "Kronecker preprojective/preinjective ladder cap")
        ->envname("CCLAB_LADDER_CAP");
    cmd->add_option("--tube-cap", o.tube_cap, "Kronecker regular tube length cap")
        ->envname("CCLAB_TUBE_CAP");
}

std::string trim(const std::string& s)
{
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

// A pair spec is two module specs separated by a top-level comma.
std::pair<std::string, std::string> split_pair(const std::string& spec)
{
    size_t comma = spec.find(',');
    if (comma == std::string::npos) return {trim(spec), ""};
    if (spec.find(',', comma + 1) != std::string::npos)
        throw UsageError("module pair spec has more than one comma: '" + spec + "'");
    return {trim(spec.substr(0, comma)), trim(spec.substr(comma + 1))};
}

int single_member(const Catalog& cat, const std::string& spec)
{
    Decomposition dec = parse_module_spec(cat, spec);
    if (dec.parts.size() != 1 || dec.parts[0].second != 1)
        throw UsageError("'" + spec + "' must name a single indecomposable here");
    return dec.parts[0].first;
}

DimVec parse_dimvec(const std::string& spec, int n)
{
    DimVec e;
    std::istringstream in(spec);
    std::string tok;
    while (std::getline(in, tok, ','))
        if (!trim(tok).empty()) e.push_back(std::stoi(trim(tok)));
    if ((int)e.size() != n)
        throw UsageError("dimension vector '" + spec + "' needs " + std::to_string(n) +
                         " entries");
    return e;
}

std::string poly_str(const FitResult& fit)
{
    if (fit.coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int d = (int)fit.coeffs.size() - 1; d >= 0; --d) {
        if (fit.coeffs[d] == 0) continue;
        os << (first ? "" : " + ") << fit.coeffs[d].get_str();
        if (d == 1) os << "*q";
        if (d > 1) os << "*q^" << d;
        first = false;
    }
    if (first) return "0";
    return os.str();
}

Catalog load_catalog(const Options& o, const Config& cfg)
{
    if (o.quiver_path.empty()) throw UsageError("--quiver is required");
    return Catalog::build(load_quiver_file(o.quiver_path), cfg.ladder_cap, cfg.tube_cap);
}

bool is_kronecker(const Quiver& q)
{
    return q.num_vertices() == 2 && q.num_arrows() == 2 &&
           q.arrows()[0].src == q.arrows()[1].src;
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_quiver_check(const Options& o)
{
    if (o.quiver_path.empty()) throw UsageError("--quiver is required");
    QuiverPtr q = load_quiver_file(o.quiver_path);
    if (o.json()) {
        ordered_json j;
        j["vertices"] = q->num_vertices();
        ordered_json arrows = ordered_json::array();
        for (const Arrow& ar : q->arrows())
            arrows.push_back({{"name", ar.name}, {"src", ar.src + 1}, {"dst", ar.dst + 1}});
        j["arrows"] = arrows;
        j["acyclic"] = true;
        ordered_json order = ordered_json::array();
        for (int v : q->admissible_order()) order.push_back(v + 1);
        j["admissible_order"] = order;
        j["ext_matrix"] = q->ext_matrix();
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << q->to_text();
    std::cout << "acyclic: yes\n";
    std::cout << "admissible order (sinks first):";
    for (int v : q->admissible_order()) std::cout << " " << v + 1;
    std::cout << "\n";
    std::cout << "ext matrix R (r_ij = #arrows i->j):\n";
    for (int i = 0; i < q->num_vertices(); ++i) {
        std::cout << " ";
        for (int j = 0; j < q->num_vertices(); ++j) std::cout << " " << q->ext_matrix()[i][j];
        std::cout << "\n";
    }
    return 0;
}

int cmd_cc(const Options& o)
{
    Config cfg = o.config();
    Catalog cat = load_catalog(o, cfg);
    if (o.module_spec.empty()) throw UsageError("--module is required");
    Decomposition dec = parse_module_spec(cat, o.module_spec);
    CCContext ctx(cat, cfg);
    Laurent val = ctx.cc(dec);
    if (o.json()) {
        ordered_json j;
        j["module"] = cat.decomposition_str(dec);
        j["cc"] = val.str();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << val.str() << "\n";
    }
    return 0;
}

int cmd_catalog(const Options& o)
{
    Config cfg = o.config();
    Catalog cat = load_catalog(o, cfg);
    if (o.json()) {
        ordered_json arr = ordered_json::array();
        for (int i = 0; i < cat.size(); ++i) {
            const CatalogMember& m = cat.member(i);
            ordered_json j;
            j["label"] = m.label;
            j["aliases"] = m.aliases;
            j["dims"] = m.dims();
            j["projective"] = m.projective;
            j["injective"] = m.injective;
            j["tau"] = m.tau_target >= 0 ? ordered_json(cat.member(m.tau_target).label)
                                         : ordered_json(nullptr);
            arr.push_back(j);
        }
        std::cout << arr.dump(2) << "\n";
        return 0;
    }
    std::cout << cat.size() << " members\n";
    for (int i = 0; i < cat.size(); ++i) {
        const CatalogMember& m = cat.member(i);
        std::cout << "  " << m.label << "  dim " << dim_str(m.dims());
        if (m.projective) std::cout << "  projective";
        if (m.injective) std::cout << "  injective";
        if (m.tau_target >= 0) std::cout << "  tau -> " << cat.member(m.tau_target).label;
        for (const std::string& a : m.aliases) std::cout << "  (= " << a << ")";
        std::cout << "\n";
    }
    return 0;
}

int cmd_tau(const Options& o)
{
    Config cfg = o.config();
    Catalog cat = load_catalog(o, cfg);
    if (o.module_spec.empty()) throw UsageError("--module is required");
    Decomposition dec = parse_module_spec(cat, o.module_spec);
    Rep<QQ> M = cat.realize(dec);
    Rep<QQ> T = tau(M);
    std::string type;
    if (dim_is_zero(T.dims)) {
        type = "0";
    } else {
        try {
            type = cat.decomposition_str(cat.decompose(T));
        } catch (const Error&) {
            type = "(outside catalog caps)";
        }
    }
    if (o.json()) {
        ordered_json j;
        j["module"] = cat.decomposition_str(dec);
        j["tau_dims"] = T.dims;
        j["tau_type"] = type;
        ordered_json mats = ordered_json::array();
        for (int a = 0; a < T.Q->num_arrows(); ++a)
            mats.push_back({{"arrow", T.Q->arrow(a).name}, {"matrix", T.mats[a].str()}});
        j["tau_matrices"] = mats;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "tau(" << cat.decomposition_str(dec) << ")\n";
    std::cout << "  dims: " << dim_str(T.dims) << "\n";
    std::cout << "  type: " << type << "\n";
    for (int a = 0; a < T.Q->num_arrows(); ++a)
        std::cout << "  " << T.Q->arrow(a).name << ": " << T.mats[a].str() << "\n";
    return 0;
}

int cmd_grassmannian(const Options& o)
{
    Config cfg = o.config();
    Catalog cat = load_catalog(o, cfg);
    if (o.module_spec.empty()) throw UsageError("--module is required");
    Decomposition dec = parse_module_spec(cat, o.module_spec);
    Rep<QQ> M = cat.realize(dec);
    if (!o.dim_spec.empty()) {
        DimVec e = parse_dimvec(o.dim_spec, M.Q->num_vertices());
        CountProfile cp = count_profile(M, e, cfg);
        if (o.json()) {
            std::cout << cp.to_json() << "\n";
            return 0;
        }
        std::cout << "chi(Gr_" << dim_str(e) << "(" << cat.decomposition_str(dec)
                  << ")) = " << cp.euler.get_str() << "\n";
        std::cout << "  counts:";
        for (const auto& pc : cp.counts)
            std::cout << " q=" << pc.first << ":" << pc.second.get_str();
        std::cout << "\n  fit: " << poly_str(cp.poly) << "\n";
        return 0;
    }
    GrassmannianProfile prof = grassmannian_profile(M, cfg);
    if (o.json()) {
        ordered_json j;
        j["module"] = cat.decomposition_str(dec);
        j["dims"] = prof.dims;
        ordered_json rows = ordered_json::array();
        for (const auto& kv : prof.euler)
            rows.push_back({{"e", kv.first}, {"euler", kv.second}});
        j["euler"] = rows;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "Grassmannian profile of " << cat.decomposition_str(dec) << ":\n";
    for (const auto& kv : prof.euler)
        std::cout << "  e=" << dim_str(kv.first) << "  chi=" << kv.second << "\n";
    return 0;
}

// The per-identity work lists.  Dynkin quivers sweep exhaustively; the
// Kronecker quiver sweeps the curated feasible set (deeper pairs exceed any
// reasonable budget and must be requested explicitly).
std::vector<VerificationReport> run_verify(const std::string& identity, const Options& o)
{
    Config cfg = o.config();
    Catalog cat = load_catalog(o, cfg);
    CCContext ctx(cat, cfg);
    const bool kron = is_kronecker(*cat.quiver());
    std::vector<VerificationReport> out;

    auto want = [&](const char* id) { return identity == id || identity == "all"; };

    std::string mspec, nspec;
    std::tie(mspec, nspec) = split_pair(o.module_spec);

    if (want("thm1")) {
        std::vector<std::pair<int, int>> pairs;
        if (!mspec.empty()) {
            if (nspec.empty())
                throw UsageError("thm1 needs --module 'M,N' (two members)");
            pairs.emplace_back(single_member(cat, mspec), single_member(cat, nspec));
        } else if (kron) {
            pairs.emplace_back(cat.find("u[0]"), cat.find("u[0]"));
            pairs.emplace_back(cat.find("u[0]"), cat.find("u[0](2)"));
        } else {
            for (int m = 0; m < cat.size(); ++m) {
                if (cat.member(m).projective) continue;
                for (int n = 0; n < cat.size(); ++n) pairs.emplace_back(m, n);
            }
        }
        for (const auto& pr : pairs)
            out.push_back(verify_theorem_part1(ctx, pr.first, pr.second));
    }

    if (want("thm2")) {
        std::vector<std::pair<Decomposition, int>> pairs;
        if (!mspec.empty()) {
            if (nspec.empty())
                throw UsageError("thm2 needs --module 'P,M' (projective part first)");
            pairs.emplace_back(parse_module_spec(cat, mspec), single_member(cat, nspec));
        } else if (kron) {
            // no default sweep: deep Hom spaces exceed any reasonable budget,
            // so explicit pairs are required (and "all" just skips thm2)
            if (identity == "thm2")
                throw UsageError(
                    "the Kronecker quiver has no default thm2 sweep; pass --module 'P,M'");
        } else {
            for (int p = 0; p < cat.size(); ++p) {
                if (!cat.member(p).projective) continue;
                Decomposition dp;
                dp.parts.emplace_back(p, 1);
                for (int m = 0; m < cat.size(); ++m) pairs.emplace_back(dp, m);
            }
        }
        for (const auto& pr : pairs)
            out.push_back(verify_theorem_part2(ctx, pr.first, pr.second));
    }

    if (want("ar")) {
        std::vector<int> members;
        if (!mspec.empty()) {
            members.push_back(single_member(cat, mspec));
        } else if (kron) {
            members.push_back(cat.find("u[0]"));
            members.push_back(cat.find("u[0](2)"));
        } else {
            for (int m = 0; m < cat.size(); ++m)
                if (!cat.member(m).projective) members.push_back(m);
        }
        for (int m : members) out.push_back(verify_ar_identity(ctx, m));
    }

    if (want("hoa")) {
        std::vector<std::pair<int, int>> pairs;
        if (!mspec.empty()) {
            if (nspec.empty())
                throw UsageError("hoa needs --module 'M,N' (two members)");
            pairs.emplace_back(single_member(cat, mspec), single_member(cat, nspec));
        } else if (kron) {
            pairs.emplace_back(cat.find("u[0]"), cat.find("u[0]"));
        } else {
            for (int m = 0; m < cat.size(); ++m) {
                if (cat.member(m).projective) continue;
                for (int n = 0; n < cat.size(); ++n) pairs.emplace_back(m, n);
            }
        }
        for (const auto& pr : pairs) {
            if (!o.dim_spec.empty())
                out.push_back(verify_high_order_assoc(
                    ctx, pr.first, pr.second,
                    parse_dimvec(o.dim_spec, cat.quiver()->num_vertices())));
            else
                out.push_back(verify_high_order_assoc(ctx, pr.first, pr.second));
        }
    }

    return out;
}

int cmd_verify(const std::string& identity, const Options& o)
{
    std::vector<VerificationReport> reports = run_verify(identity, o);
    int failed = 0;
    for (const auto& r : reports)
        if (!r.pass) ++failed;
    if (o.json()) {
        std::cout << "[";
        for (size_t i = 0; i < reports.size(); ++i)
            std::cout << (i ? ",\n" : "\n") << reports[i].to_json();
        std::cout << "\n]\n";
    } else {
        for (const auto& r : reports) std::cout << r.to_text() << "\n";
        std::cout << reports.size() << " check(s), " << failed << " failed\n";
    }
    return failed == 0 ? 0 : 1;
}

int cmd_kronecker_demo(const Options& o)
{
    if (o.nmax < 2) throw UsageError("--nmax must be at least 2");
    Config cfg = o.config();
    cfg.ladder_cap = std::max(2, std::min(cfg.ladder_cap, 3));
    cfg.tube_cap = std::max(o.nmax + 1, 4);
    Catalog cat = Catalog::build(parse_quiver("vertices: 2\narrow a: 1 -> 2\narrow b: 1 -> 2"),
                                 cfg.ladder_cap, cfg.tube_cap);
    CCContext ctx(cat, cfg);

    struct Check {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Check> checks;
    auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
        checks.push_back({name, ok, detail});
    };

    // the neighbouring cluster variables x0 and x3 are the characters of the
    // two simples
    Laurent x0 = ctx.cc_member(cat.find("S2"));
    Laurent x3 = ctx.cc_member(cat.find("S1"));
    check("x0 = cc(S2) = x2^-1*(1 + x1^2)",
          x0 == Laurent::parse("x2^-1 + x1^2*x2^-1", 2), x0.str());
    check("x3 = cc(S1) = x1^-1*(1 + x2^2)",
          x3 == Laurent::parse("x1^-1 + x1^-1*x2^2", 2), x3.str());

    // the quasi-simple character is independent of the tube parameter
    Laurent xu = ctx.cc_member(cat.find("u[0]"));
    check("X_u = x1*x2^-1 + x1^-1*x2 + x1^-1*x2^-1",
          xu == Laurent::parse("x1*x2^-1 + x1^-1*x2 + x1^-1*x2^-1", 2), xu.str());
    check("X_{u_0} = X_{u_1} = X_{u_inf}",
          ctx.cc_member(cat.find("u[1]")) == xu &&
              ctx.cc_member(cat.find("u[inf]")) == xu);

    // r_n = cc(u_0(n)) from the Jordan-block modules, r_0 = 1
    std::vector<Laurent> r;
    r.push_back(ctx.one());
    r.push_back(xu);
    for (int n = 2; n <= o.nmax; ++n)
        r.push_back(ctx.cc_member(cat.find("u[0](" + std::to_string(n) + ")")));

    for (int k = 1; k < o.nmax; ++k)
        check("r_" + std::to_string(k + 1) + " = r_1*r_" + std::to_string(k) + " - r_" +
                  std::to_string(k - 1),
              r[k + 1] == r[1] * r[k] - r[k - 1]);

    check("r_1^2 = r_2 + 1", r[1] * r[1] == r[2] + ctx.one());
    if (o.nmax >= 3)
        check("r_2^2 = r_1*r_3 + 1", r[2] * r[2] == r[1] * r[3] + ctx.one());
    if (o.nmax >= 4) {
        check("2*r_2^2 = r_4 + r_1*r_3 + r_1^2 + 1",
              (r[2] * r[2]).scaled(2) ==
                  r[4] + r[1] * r[3] + r[1] * r[1] + ctx.one());
        check("r_2^2 = r_4 + r_1^2 (difference of the two)",
              r[2] * r[2] == r[4] + r[1] * r[1]);
    }

    // which sign closes the product of a quasi-simple with a tube member:
    // r_1*r_n against X_{u(n+1)} + X_{u(n-1)} and X_{u(n+1)} - X_{u(n-1)}
    for (int n = 1; n < o.nmax; ++n) {
        bool plus = r[1] * r[n] == r[n + 1] + r[n - 1];
        bool minus = r[1] * r[n] == r[n + 1] - r[n - 1];
        check("sign in r_1*r_" + std::to_string(n) + " = X_{u(n+1)} +/- X_{u(n-1)}",
              plus && !minus, plus ? "'+' holds, '-' fails" : "unexpected sign");
    }

    int failed = 0;
    for (const auto& c : checks)
        if (!c.pass) ++failed;

    if (o.json()) {
        ordered_json arr = ordered_json::array();
        for (const auto& c : checks) {
            ordered_json j;
            j["check"] = c.name;
            j["pass"] = c.pass;
            if (!c.detail.empty()) j["detail"] = c.detail;
            arr.push_back(j);
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& c : checks) {
            std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name;
            if (!c.detail.empty()) std::cout << "   [" << c.detail << "]";
            std::cout << "\n";
        }
        std::cout << checks.size() << " check(s), " << failed << " failed\n";
    }
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"cluster character laboratory for acyclic quivers"};
    app.require_subcommand(1);
    Options o;

    auto* qc = app.add_subcommand("quiver-check", "parse and validate a quiver file");
    add_common(qc, o, true, false);

    auto* cc = app.add_subcommand("cc", "cluster character of a module");
    add_common(cc, o, true, true);

    auto* cat = app.add_subcommand("catalog", "list the indecomposable modules");
    add_common(cat, o, true, false);

    auto* tau_cmd = app.add_subcommand("tau", "Auslander-Reiten translate of a module");
    add_common(tau_cmd, o, true, true);

    auto* gr = app.add_subcommand("grassmannian",
                                  "subrepresentation counts and Euler characteristics");
    add_common(gr, o, true, true);
    gr->add_option("--dim", o.dim_spec, "dimension vector e, comma-separated");

    auto* ver = app.add_subcommand("verify", "verify a multiplication identity");
    ver->require_subcommand(1);
    std::vector<CLI::App*> idents;
    for (const char* id : {"thm1", "thm2", "ar", "hoa", "all"}) {
        auto* sub = ver->add_subcommand(id);
        add_common(sub, o, true, true);
        if (std::string(id) == "hoa" || std::string(id) == "all")
            sub->add_option("--dim", o.dim_spec, "restrict hoa to one dimension vector d");
        idents.push_back(sub);
    }

    auto* kd = app.add_subcommand("kronecker-demo",
                                  "reproduce the Kronecker tube identities");
    add_common(kd, o, false, false);
    kd->add_option("--nmax", o.nmax, "verify the recurrence r_{k+1} = r_1 r_k - r_{k-1} for k < nmax")
        ->envname("CCLAB_NMAX");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (qc->parsed()) return cmd_quiver_check(o);
        if (cc->parsed()) return cmd_cc(o);
        if (cat->parsed()) return cmd_catalog(o);
        if (tau_cmd->parsed()) return cmd_tau(o);
        if (gr->parsed()) return cmd_grassmannian(o);
        if (kd->parsed()) return cmd_kronecker_demo(o);
        if (ver->parsed())
            for (CLI::App* sub : idents)
                if (sub->parsed()) return cmd_verify(sub->get_name(), o);
        throw UsageError("no subcommand given");
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const InterpolationError& e) {
        std::cerr << "interpolation integrity failure: " << e.what() << "\n";
        return 3;
    } catch (const ConsistencyError& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
