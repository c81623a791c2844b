#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mleap/rng.hpp"

namespace mleap {

using Edge = std::pair<int, int>;

/// Undirected, unit-weight simple graph. Edges are stored canonically:
/// u < v, sorted lexicographically.
class Graph {
public:
    /// Throws ParameterError on self-loops, duplicates, out-of-range
    /// endpoints, or n < 2.
    Graph(int n, std::vector<Edge> edges);

    int n() const noexcept { return n_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::vector<int> degrees() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    int n_;
    std::vector<Edge> edges_;
};

/// Partition bits; bits[u] == 1 puts vertex u in S.
using CutAssignment = std::vector<std::uint8_t>;

struct RegularGraphOptions {
    int max_attempts = 10'000;
};

/// Uniform simple `degree`-regular graph from the pairing model, rejecting
/// pairings with loops or multi-edges.
Graph generate_regular(int n, int degree, Rng& rng, RegularGraphOptions opts = {});

int cut_value(const Graph& g, const CutAssignment& bits);

/// Same, for a basis index whose bit u is vertex u.
int cut_value(const Graph& g, std::uint64_t bits) noexcept;

struct MaxCut {
    int f_max = 0;
    CutAssignment witness;
};

struct BruteForceOptions {
    int max_vertices = 26;
};

/// Exact maximum cut by enumeration with vertex 0 pinned to side T. Among
/// optimal assignments the lowest basis index wins, so the witness is
/// deterministic.
MaxCut max_cut_brute_force(const Graph& g, BruteForceOptions opts = {});

/// Edge-list text: vertex count on the first line, then one "u v" per line.
/// Blank lines and lines starting with '#' are skipped.
Graph read_edge_list(std::string_view text);
std::string write_edge_list(const Graph& g);

Graph load_graph(const std::string& path);
void save_graph(const Graph& g, const std::string& path);

/// 64-bit FNV-1a of the canonical edge-list text, as 16 hex digits.
std::string fingerprint(const Graph& g);

}  // namespace mleap
