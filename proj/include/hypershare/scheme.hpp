#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hypershare/field.hpp"
#include "hypershare/graphs.hpp"

namespace hypershare {

struct Party {
    int vertex;
    MatrixGF rows; // share_v = rows * seed
};

// A linear map from a uniform seed vector over GF(p) to (secret, shares).
// secret = secret_rows * seed has full row rank, so it is itself uniform.
// Immutable once built; deal() is pure given (secret, rng seed).
class LinearScheme {
public:
    // parties must hold one entry per graph vertex. Validates row widths,
    // entry reduction, field agreement, and full secret rank.
    LinearScheme(FieldSpec field, std::size_t seed_dim, MatrixGF secret_rows,
                 std::vector<Party> parties, Graph graph);

    const FieldSpec& field() const { return field_; }
    std::size_t seed_dim() const { return seed_dim_; }
    const MatrixGF& secret_rows() const { return secret_rows_; }
    std::size_t secret_len() const { return secret_rows_.rows(); }
    const std::vector<Party>& parties() const { return parties_; }
    const MatrixGF& share_rows(int vertex) const;
    const Graph& graph() const { return graph_; }

    // FNV-1a over the scheme layout; guards bundles against scheme mixups.
    std::uint64_t id() const { return id_; }

private:
    FieldSpec field_;
    std::size_t seed_dim_;
    MatrixGF secret_rows_;
    std::vector<Party> parties_;
    Graph graph_;
    std::uint64_t id_;
};

struct ShareBundle {
    std::uint64_t scheme_id = 0;
    std::vector<std::uint32_t> secret;
    std::vector<std::vector<std::uint32_t>> shares; // indexed by vertex
};

// One secret element s masked by one random element r: the two endpoints
// hold r and r + s. Both ratios are 1.
LinearScheme build_edge_scheme(FieldSpec f);

// Number of 2-faces of the d-cube, 2^(d-2)*C(d,2).
std::size_t two_face_count(int d);
// Smallest prime admissible for the d-cube scheme.
std::uint32_t default_cube_prime(int d);

inline constexpr int kMaxSchemeDim = 8; // share tables stay in memory

// The 2-face scheme on C^d, d >= 2: seed (s in F^(d-1), r_1..r_m), one r per
// face; the two even-parity corners of face i hold r_i, the two odd-parity
// corners hold r_i + <s, x_i> with x_i from general_position_vectors. Every
// vertex holds C(d,2) elements, the secret d-1, so each ratio is d/2.
LinearScheme build_cube_scheme(int d, FieldSpec f);
LinearScheme build_cube_scheme(int d); // default field

// Seed sampled uniformly among those consistent with the requested secret.
ShareBundle deal(const LinearScheme& s, std::span<const std::uint32_t> secret,
                 std::uint64_t rng_seed);

// Solves the linear system stacking both endpoints' share rows. Throws
// UnqualifiedPairError when (u, v) is not an edge (or the rows do not
// determine the secret) and CorruptShareError on inconsistent shares.
std::vector<std::uint32_t> reconstruct(const LinearScheme& s, std::pair<int, int> edge,
                                       std::span<const std::uint32_t> share_u,
                                       std::span<const std::uint32_t> share_v);
// Bundle convenience; validates the bundle's scheme id and share widths.
std::vector<std::uint32_t> reconstruct(const LinearScheme& s, std::pair<int, int> edge,
                                       const ShareBundle& bundle);

// One sub-construction of an edge cover: a unit cube of dimension dim
// embedded in the target graph. vertices[b] is the target vertex whose
// offset from the piece anchor has bit pattern b over the piece's axes;
// dim == 1 pieces run the single-edge scheme.
struct CoverPiece {
    int dim;
    std::vector<int> vertices;
    std::vector<std::pair<int, int>> covered_edges; // normalized target pairs
};

struct EdgeCover {
    Graph graph;
    std::vector<CoverPiece> pieces;
};

// Edge cover of the lattice window L^d_k, k even: unit d-cubes anchored at
// points with all coordinates even or all odd (these cover every edge not
// touching the boundary exactly once), then recursively one dimension lower
// on each of the 2d boundary facets for the edges still missing, down to
// single-edge pieces. Total cover is complete; interior-interior edges are
// covered exactly once.
EdgeCover build_lattice_cover(int d, int k);

// Smallest prime admissible for every piece of the cover.
std::uint32_t default_cover_prime(const EdgeCover& cover);

// One scheme per piece, all sharing one secret: sub-secrets of length l are
// run L/l times (L = lcm of sub-secret lengths) on disjoint slices of a
// common length-L secret, with independent randomness per run. A vertex's
// share concatenates its rows from every piece containing it, so its ratio
// is the sum of the per-piece ratios.
LinearScheme combine_schemes(const EdgeCover& cover, FieldSpec f);
LinearScheme combine_schemes(const EdgeCover& cover); // default field

// Sum over vertices of the share coordinate count.
std::size_t total_share_size(const LinearScheme& s);

// Closed-form share-sum estimate for the boundary-adjusted window cover:
// d*k^d - (k^d - (k-2)^d)/2. The built cover is measured against this.
std::int64_t lattice_share_size_estimate(int d, int k);

} // namespace hypershare
