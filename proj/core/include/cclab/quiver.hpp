#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cclab/error.hpp"

namespace cclab {

// Dimension vectors are plain per-vertex integer vectors (0-indexed).
using DimVec = std::vector<int>;

DimVec dim_add(const DimVec& a, const DimVec& b);
DimVec dim_sub(const DimVec& a, const DimVec& b);
bool dim_leq(const DimVec& a, const DimVec& b); // componentwise
bool dim_is_zero(const DimVec& a);
int dim_total(const DimVec& a);
std::string dim_str(const DimVec& a);

struct Arrow {
    std::string name;
    int src = 0; // 0-indexed
    int dst = 0;
};

// An acyclic quiver.  Vertices are 1-indexed in files and messages,
// 0-indexed in every API.  Immutable after construction.
class Quiver {
public:
    // Builds and validates (acyclicity, arrow names, vertex range).
    Quiver(int n, std::vector<Arrow> arrows);

    int num_vertices() const { return n_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const Arrow& arrow(int a) const { return arrows_[a]; }
    int num_arrows() const { return (int)arrows_.size(); }

    // Arrow indices with the given target / source vertex, in file order.
    const std::vector<int>& arrows_into(int v) const { return in_[v]; }
    const std::vector<int>& arrows_out_of(int v) const { return out_[v]; }

    // Total order on vertices in which every arrow's source comes strictly
    // after its target; position 0 is processed first by the Coxeter
    // functor.  Deterministic: the smallest-index available sink wins.
    const std::vector<int>& admissible_order() const { return order_; }
    int order_pos(int v) const { return pos_[v]; }

    // R with R[i][j] = number of arrows i -> j.
    const std::vector<std::vector<int>>& ext_matrix() const { return ext_; }

    // <d,e> = sum_i d_i e_i - sum_arrows d_src * e_dst.
    long euler_form(const DimVec& d, const DimVec& e) const;

    DimVec zero_vec() const { return DimVec(n_, 0); }
    DimVec unit_vec(int i) const;

    std::string to_text() const;

private:
    int n_ = 0;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<int>> in_, out_;
    std::vector<int> order_, pos_;
    std::vector<std::vector<int>> ext_;
};

using QuiverPtr = std::shared_ptr<const Quiver>;

// Parses the quiver file format:
//   # comment
//   vertices: <n>
//   arrow <name>: <i> -> <j>
// Whitespace-insensitive around tokens; vertices are 1-indexed in files.
QuiverPtr parse_quiver(const std::string& text);
QuiverPtr load_quiver_file(const std::string& path);

} // namespace cclab
