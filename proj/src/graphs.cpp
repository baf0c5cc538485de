#include "hypershare/graphs.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <queue>

namespace hypershare {

std::string family_name(Family f) {
    switch (f) {
        case Family::Cube: return "cube";
        case Family::Lattice: return "lattice";
        case Family::Path: return "path";
        case Family::Custom: return "custom";
    }
    throw InvalidArgumentError("unknown graph family");
}

Family family_from_name(const std::string& name) {
    if (name == "cube") return Family::Cube;
    if (name == "lattice") return Family::Lattice;
    if (name == "path") return Family::Path;
    if (name == "custom") return Family::Custom;
    throw ParseError("unknown graph family: " + name);
}

namespace {

int hamming(const std::vector<int>& a, const std::vector<int>& b) {
    int dist = 0;
    for (size_t j = 0; j < a.size(); ++j) dist += (a[j] != b[j]);
    return dist;
}

bool unit_step(const std::vector<int>& a, const std::vector<int>& b) {
    int diff_axes = 0;
    bool unit = true;
    for (size_t j = 0; j < a.size(); ++j) {
        if (a[j] != b[j]) {
            ++diff_axes;
            if (std::abs(a[j] - b[j]) != 1) unit = false;
        }
    }
    return diff_axes == 1 && unit;
}

} // namespace

Graph::Graph(Family family, int d, int k, std::vector<std::vector<int>> vertices,
             std::vector<std::pair<int, int>> edges)
    : family_(family), d_(d), k_(k), vertices_(std::move(vertices)), edges_(std::move(edges)) {
    const int n = static_cast<int>(vertices_.size());
    if (n == 0) throw InvalidArgumentError("graph must have at least one vertex");
    for (const auto& label : vertices_) {
        if (static_cast<int>(label.size()) != d_)
            throw InvalidArgumentError("vertex label length does not match dimension");
    }
    adj_.assign(n, {});
    std::vector<std::pair<int, int>> normalized;
    normalized.reserve(edges_.size());
    for (auto [u, v] : edges_) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw InvalidArgumentError("edge endpoint out of range");
        if (u == v) throw InvalidArgumentError("self-loops are not allowed");
        normalized.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(normalized.begin(), normalized.end());
    if (std::adjacent_find(normalized.begin(), normalized.end()) != normalized.end())
        throw InvalidArgumentError("duplicate edge");
    edges_ = std::move(normalized);
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());

    if (family_ == Family::Cube || family_ == Family::Lattice || family_ == Family::Path) {
        // Adjacency must coincide with the geometric relation on labels.
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                const bool geo = family_ == Family::Cube
                                     ? hamming(vertices_[u], vertices_[v]) == 1
                                     : unit_step(vertices_[u], vertices_[v]);
                if (geo != adjacent(u, v))
                    throw InvalidArgumentError("edges do not match the labeled geometry");
            }
    }

    if (n <= 64) {
        adj_mask_.assign(n, 0);
        for (auto [u, v] : edges_) {
            adj_mask_[u] |= VertexSet{1} << v;
            adj_mask_[v] |= VertexSet{1} << u;
        }
    }
}

bool Graph::adjacent(int u, int v) const {
    const auto& list = adj_[u];
    return std::binary_search(list.begin(), list.end(), v);
}

VertexSet Graph::neighbor_mask(int v) const {
    if (adj_mask_.empty()) throw SizeError("neighbor masks need at most 64 vertices");
    return adj_mask_[v];
}

VertexSet Graph::full_mask() const {
    if (n() > 64) throw SizeError("vertex masks need at most 64 vertices");
    return n() == 64 ? ~VertexSet{0} : (VertexSet{1} << n()) - 1;
}

Graph hypercube(int d) {
    if (d < 1) throw InvalidArgumentError("cube dimension must be at least 1");
    if (d > kMaxCubeDim) throw SizeError("cube dimension capped at 16");
    const int n = 1 << d;
    std::vector<std::vector<int>> labels(n, std::vector<int>(d));
    for (int v = 0; v < n; ++v)
        for (int j = 0; j < d; ++j) labels[v][j] = (v >> j) & 1;
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<size_t>(n / 2) * d);
    for (int v = 0; v < n; ++v)
        for (int j = 0; j < d; ++j) {
            const int u = v ^ (1 << j);
            if (v < u) edges.emplace_back(v, u);
        }
    return Graph(Family::Cube, d, 2, std::move(labels), std::move(edges));
}

std::vector<TwoFace> two_faces(int d) {
    if (d < 2) throw InvalidArgumentError("2-faces need dimension at least 2");
    if (d > kMaxCubeDim) throw SizeError("cube dimension capped at 16");
    std::vector<TwoFace> faces;
    faces.reserve((size_t{1} << (d - 2)) * d * (d - 1) / 2);
    // Pair-major order: for each axis pair i<j, every base vertex with those
    // bits clear. Cycle (base, base^i, base^ij, base^j) starts at its
    // smallest member and v2 < v4 holds since bit i < bit j.
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const int bi = 1 << i, bj = 1 << j;
            for (int base = 0; base < (1 << d); ++base) {
                if (base & (bi | bj)) continue;
                faces.push_back(TwoFace{{base, base | bi, base | bi | bj, base | bj}});
            }
        }
    return faces;
}

Graph lattice_window(int d, int k) {
    if (d < 1) throw InvalidArgumentError("lattice dimension must be at least 1");
    if (k < 2) throw InvalidArgumentError("lattice window needs at least 2 vertices per axis");
    double size = 1;
    for (int j = 0; j < d; ++j) size *= k;
    if (size > 1u << 20) throw SizeError("lattice window capped at 2^20 vertices");
    const int n = static_cast<int>(size);
    std::vector<std::vector<int>> labels(n, std::vector<int>(d));
    for (int v = 0; v < n; ++v) {
        int rest = v;
        for (int j = 0; j < d; ++j) {
            labels[v][j] = rest % k;
            rest /= k;
        }
    }
    std::vector<std::pair<int, int>> edges;
    int stride = 1;
    for (int j = 0; j < d; ++j) {
        for (int v = 0; v < n; ++v)
            if (labels[v][j] + 1 < k) edges.emplace_back(v, v + stride);
        stride *= k;
    }
    return Graph(d == 1 ? Family::Path : Family::Lattice, d, k, std::move(labels),
                 std::move(edges));
}

ChessboardSplit chessboardsplit_bfs(const Graph& g) {
    const int n = g.n();
    std::vector<int> color(n, -1);
    ChessboardSplit split;
    for (int start = 0; start < n; ++start) {
        if (color[start] != -1) continue;
        color[start] = 0;
        std::queue<int> frontier;
        frontier.push(start);
        while (!frontier.empty()) {
            const int u = frontier.front();
            frontier.pop();
            for (int v : g.neighbors(u)) {
                if (color[v] == -1) {
                    color[v] = 1 - color[u];
                    frontier.push(v);
                } else if (color[v] == color[u]) {
                    throw NotBipartiteError("graph contains an odd cycle");
                }
            }
        }
    }
    for (int v = 0; v < n; ++v)
        (color[v] == 0 ? split.a : split.b) |= VertexSet{1} << v;
    return split;
}

ChessboardSplit chessboard_split(const Graph& g) {
    if (g.n() > 64) throw SizeError("chessboard split needs at most 64 vertices");
    if (g.family() == Family::Custom) return chessboardsplit_bfs(g);
    ChessboardSplit split;
    for (int v = 0; v < g.n(); ++v) {
        const auto& label = g.vertices()[v];
        const int sum = std::accumulate(label.begin(), label.end(), 0);
        (sum % 2 == 0 ? split.a : split.b) |= VertexSet{1} << v;
    }
    return split;
}

bool is_independent(const Graph& g, VertexSet s) {
    if (g.n() > 64) throw SizeError("independence checks need at most 64 vertices");
    if (s & ~g.full_mask()) throw InvalidArgumentError("vertex set out of range");
    for (VertexSet rest = s; rest;) {
        const int v = __builtin_ctzll(rest);
        rest &= rest - 1;
        if (g.neighbor_mask(v) & s) return false;
    }
    return true;
}

std::vector<CubeAutomorphism> cube_automorphisms(int d) {
    if (d < 1) throw InvalidArgumentError("cube dimension must be at least 1");
    if (d > kMaxAutomorphismDim) throw SizeError("automorphism enumeration capped at dimension 6");
    const int n = 1 << d;
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<CubeAutomorphism> group;
    do {
        for (std::uint32_t t = 0; t < static_cast<std::uint32_t>(n); ++t) {
            CubeAutomorphism a;
            a.coord_perm = perm;
            a.translation = t;
            a.vertex_map.resize(n);
            for (int v = 0; v < n; ++v) {
                std::uint32_t image = 0;
                for (int j = 0; j < d; ++j)
                    if (v >> perm[j] & 1) image |= 1u << j;
                a.vertex_map[v] = static_cast<int>(image ^ t);
            }
            group.push_back(std::move(a));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return group;
}

Graph spanned_subgraph(const Graph& g, VertexSet s) {
    if (g.n() > 64) throw SizeError("spanned subgraphs need at most 64 vertices");
    if (s & ~g.full_mask()) throw InvalidArgumentError("vertex set out of range");
    if (!s) throw InvalidArgumentError("spanned subgraph needs at least one vertex");
    std::vector<int> old_ids;
    std::vector<int> new_id(g.n(), -1);
    for (int v = 0; v < g.n(); ++v)
        if (s >> v & 1) {
            new_id[v] = static_cast<int>(old_ids.size());
            old_ids.push_back(v);
        }
    std::vector<std::vector<int>> labels;
    labels.reserve(old_ids.size());
    for (int v : old_ids) labels.push_back(g.vertices()[v]);
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges())
        if (new_id[u] != -1 && new_id[v] != -1) edges.emplace_back(new_id[u], new_id[v]);
    return Graph(Family::Custom, g.d(), g.k(), std::move(labels), std::move(edges));
}

} // namespace hypershare
