#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hypershare/errors.hpp"

namespace hypershare {

// Vertex subsets are bitmasks over vertex indices. Subset-valued operations
// therefore require n <= 64; exact-LP graphs are capped far below that.
using VertexSet = std::uint64_t;

inline int popcount(VertexSet s) { return __builtin_popcountll(s); }

enum class Family { Cube, Lattice, Path, Custom };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Undirected graph with integer-tuple coordinate labels. Immutable after
// construction, so any number of concurrent readers is safe.
class Graph {
public:
    // Validates: no self-loops, no duplicate edges, labels match n, and the
    // family-specific invariants (cube adjacency = Hamming distance 1,
    // lattice adjacency = unit step in one coordinate).
    Graph(Family family, int d, int k, std::vector<std::vector<int>> vertices,
          std::vector<std::pair<int, int>> edges);

    Family family() const { return family_; }
    int d() const { return d_; }
    int k() const { return k_; }
    int n() const { return static_cast<int>(vertices_.size()); }

    const std::vector<std::vector<int>>& vertices() const { return vertices_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool adjacent(int u, int v) const;
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    // Neighbor bitmask; requires n <= 64.
    VertexSet neighbor_mask(int v) const;
    VertexSet full_mask() const;

    bool operator==(const Graph&) const = default;

private:
    Family family_;
    int d_, k_;
    std::vector<std::vector<int>> vertices_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<VertexSet> adj_mask_; // empty when n > 64
};

// Two disjoint independent sets partitioning the vertex set.
struct ChessboardSplit {
    VertexSet a = 0;
    VertexSet b = 0;
};

// A 4-cycle v1-v2-v3-v4 whose diagonals are non-edges. Stored canonically:
// v1 is the smallest index and v2 < v4, so face lists are reproducible.
struct TwoFace {
    std::array<int, 4> cycle;
    bool operator==(const TwoFace&) const = default;
};

inline constexpr int kMaxCubeDim = 16;        // vertex indices fit the bitmask width
inline constexpr int kMaxAutomorphismDim = 6; // 2^d * d! stays enumerable

// d-dimensional cube: vertex i is labeled by the binary expansion of i,
// coordinate j = bit j; vertices are adjacent iff they differ in one bit.
Graph hypercube(int d);

// All 2-faces of the d-cube, d >= 2: exactly 2^(d-2)*C(d,2) of them, every
// edge lying in exactly d-1, every vertex in C(d,2).
std::vector<TwoFace> two_faces(int d);

// Finite window of the d-dimensional integer lattice with k vertices per
// axis (coordinates 0..k-1, so |V| = k^d). Vertex index = sum coord_j * k^j.
// d = 1 yields the path on k vertices.
Graph lattice_window(int d, int k);

inline Graph path_graph(int m) { return lattice_window(1, m); }

// Parity bipartition. Coordinate-labeled families split by coordinate sum;
// custom graphs fall back to BFS 2-coloring and raise NotBipartiteError on
// an odd cycle.
ChessboardSplit chessboard_split(const Graph& g);

bool is_independent(const Graph& g, VertexSet s);

struct CubeAutomorphism {
    std::vector<int> coord_perm;  // image bit j comes from source bit coord_perm[j]
    std::uint32_t translation;    // XOR mask applied after permuting
    std::vector<int> vertex_map;  // resulting vertex permutation
};

// The full automorphism group of C^d as (coordinate permutation, translation)
// pairs; 2^d * d! elements. Capped at d <= 6.
std::vector<CubeAutomorphism> cube_automorphisms(int d);

// Subgraph spanned by s: the vertices of s (in increasing index order,
// labels preserved) and every edge of g inside s.
Graph spanned_subgraph(const Graph& g, VertexSet s);

} // namespace hypershare
