#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cclab/ar.hpp"
#include "cclab/representation.hpp"

namespace cclab {

// Which regular Kronecker tube a catalog member belongs to, if any.
enum class TubeLambda { none, zero, one, infinity };

struct CatalogMember {
    std::string label;                 // canonical label, e.g. "P1", "tau^-2 P1", "u[0](3)"
    std::vector<std::string> aliases;  // alternative names accepted by find(), e.g. "S2"
    Rep<QQ> rep;                       // integer master model
    bool projective = false;
    bool injective = false;
    int tau_target = -1;      // index of the member isomorphic to tau(rep); -1 if zero or outside caps
    int tau_inv_target = -1;  // index of the member isomorphic to tau^-(rep); -1 if zero or outside caps
    TubeLambda tube = TubeLambda::none;
    int tube_len = 0;         // n for the regular member u_{lambda(n)}
    const DimVec& dims() const { return rep.dims; }
};

// A module expressed as a multiset of catalog members.
struct Decomposition {
    std::vector<std::pair<int, int>> parts; // (member index, multiplicity), sorted by index
    bool empty() const { return parts.empty(); }
    bool operator==(const Decomposition& o) const { return parts == o.parts; }
    bool operator<(const Decomposition& o) const { return parts < o.parts; }
};

class Catalog;

// A catalog reduced modulo a good prime: every member keeps its matrix ranks
// and the full pairwise Hom table, so Hom-count fingerprints identify modules
// over F_p exactly as they do over the rationals.
struct CatalogModP {
    const Catalog* parent = nullptr;
    GF f{2};
    std::vector<Rep<GF>> members;
    Decomposition decompose(const Rep<GF>& m) const;
};

// The list of indecomposable representations of a representation-finite
// (simply laced Dynkin) quiver, or of the Kronecker quiver up to
// configurable caps, with integer master models and a pairwise Hom table.
class Catalog {
public:
    // ladder_cap bounds the Kronecker (pre)projective/(pre)injective ladders
    // by the first dimension-vector entry; tube_cap bounds regular tube
    // length.  Both are ignored for Dynkin quivers.
    static Catalog build(QuiverPtr q, int ladder_cap = 6, int tube_cap = 8);

    QuiverPtr quiver() const { return q_; }
    bool is_dynkin() const { return dynkin_; }
    int size() const { return (int)members_.size(); }
    const std::vector<CatalogMember>& members() const { return members_; }
    const CatalogMember& member(int idx) const { return members_.at(idx); }
    // dim Hom(member i, member j)
    const std::vector<std::vector<long>>& hom_table() const { return hom_; }
    // Member indices of the preprojective component, listed so that
    // Hom(X, Y) != 0 implies X appears no later than Y.
    const std::vector<int>& ar_order() const { return ar_order_; }

    // Label or alias lookup; -1 when absent.
    int find(const std::string& label) const;

    // Identify a module as a multiset of members via Hom-count fingerprints
    // against the catalog; throws ConsistencyError when the module is not a
    // sum of members (e.g. outside the caps).
    Decomposition decompose(const Rep<QQ>& m) const;
    // Shared solver: b[j] = dim Hom(member j, M), plus the module's dimension
    // vector and endomorphism-ring dimension for the a-posteriori checks.
    Decomposition solve_decomposition(const std::vector<long>& b, const DimVec& dims,
                                      long dim_end) const;

    Rep<QQ> realize(const Decomposition& d) const; // direct sum in index order
    std::string decomposition_str(const Decomposition& d) const;

    // Reduce every member mod p; nullopt when p is bad for the catalog
    // (a matrix rank or a Hom dimension changes).
    std::optional<CatalogModP> try_reduce(std::uint64_t p) const;
    CatalogModP reduce(std::uint64_t p) const; // throws ConsistencyError when bad

    // Middle term of the Auslander-Reiten sequence ending at member idx,
    // returned with an integer master.  Requires idx non-projective, and
    // tau(member) within the caps.
    Rep<QQ> ar_middle(int idx) const;

    // The decomposition of the AR middle term as catalog members.
    Decomposition ar_middle_parts(int idx) const;

    std::string to_json() const;

private:
    QuiverPtr q_;
    bool dynkin_ = true;
    std::vector<CatalogMember> members_;
    std::vector<std::vector<long>> hom_;
    std::vector<int> ar_order_;
    std::map<std::string, int> index_; // label and alias lookup

    void finalize(); // hom table, lookup map, invariant checks
};

// Parse a module expression over catalog labels: terms joined by '+', each a
// label or alias ("S1+P2", "u[0](3)", "tau^-2 P1").
Decomposition parse_module_spec(const Catalog& cat, const std::string& text);

} // namespace cclab
