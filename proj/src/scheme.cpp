#include "hypershare/scheme.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>

#include "hypershare/rng.hpp"

namespace hypershare {

namespace {

std::uint64_t fnv1a_mix(std::uint64_t h, std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xff;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t scheme_hash(const FieldSpec& f, std::size_t seed_dim, const MatrixGF& secret,
                          const std::vector<Party>& parties, const Graph& g) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    h = fnv1a_mix(h, f.p);
    h = fnv1a_mix(h, seed_dim);
    h = fnv1a_mix(h, secret.rows());
    for (std::uint32_t x : secret.data()) h = fnv1a_mix(h, x);
    for (const auto& party : parties) {
        h = fnv1a_mix(h, static_cast<std::uint64_t>(party.vertex));
        h = fnv1a_mix(h, party.rows.rows());
        for (std::uint32_t x : party.rows.data()) h = fnv1a_mix(h, x);
    }
    h = fnv1a_mix(h, static_cast<std::uint64_t>(g.family()));
    h = fnv1a_mix(h, static_cast<std::uint64_t>(g.d()));
    h = fnv1a_mix(h, static_cast<std::uint64_t>(g.k()));
    h = fnv1a_mix(h, static_cast<std::uint64_t>(g.n()));
    for (auto [u, v] : g.edges()) h = fnv1a_mix(h, (std::uint64_t{static_cast<std::uint32_t>(u)} << 32) | static_cast<std::uint32_t>(v));
    return h;
}

void check_reduced(const MatrixGF& m, const FieldSpec& f, const char* what) {
    if (m.field().p != f.p) throw InvalidArgumentError(std::string(what) + ": field mismatch");
    for (std::uint32_t x : m.data())
        if (x >= f.p) throw InvalidArgumentError(std::string(what) + ": entry not reduced mod p");
}

// Row-reduced system of equations row*seed = value over GF(p). Kept in
// reduced echelon form so lookups are a single pass.
class AugmentedSolver {
public:
    AugmentedSolver(std::size_t cols, FieldSpec f) : cols_(cols), field_(f) {}

    void add(std::vector<std::uint32_t> row, std::uint32_t value) {
        reduce(row, value);
        std::size_t lead = leading(row);
        if (lead == cols_) {
            if (value != 0) throw CorruptShareError("shares are mutually inconsistent");
            return;
        }
        const std::uint32_t s = field_.inv(row[lead]);
        for (auto& x : row) x = field_.mul(x, s);
        value = field_.mul(value, s);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const std::uint32_t c = rows_[i][lead];
            if (c == 0) continue;
            for (std::size_t j = 0; j < cols_; ++j)
                rows_[i][j] = field_.sub(rows_[i][j], field_.mul(c, row[j]));
            values_[i] = field_.sub(values_[i], field_.mul(c, value));
        }
        leads_.push_back(lead);
        rows_.push_back(std::move(row));
        values_.push_back(value);
    }

    // Any one solution of the stored system: pivot coordinates take the
    // reduced values, free coordinates stay zero.
    std::vector<std::uint32_t> particular_solution() const {
        std::vector<std::uint32_t> z(cols_, 0);
        for (std::size_t i = 0; i < rows_.size(); ++i) z[leads_[i]] = values_[i];
        return z;
    }

    // Value of row*seed when the stored equations determine it.
    std::optional<std::uint32_t> query(std::vector<std::uint32_t> row) const {
        std::uint32_t value = 0;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const std::uint32_t c = row[leads_[i]];
            if (c == 0) continue;
            for (std::size_t j = 0; j < cols_; ++j)
                row[j] = field_.sub(row[j], field_.mul(c, rows_[i][j]));
            value = field_.add(value, field_.mul(c, values_[i]));
        }
        if (leading(row) != cols_) return std::nullopt;
        return value;
    }

private:
    std::size_t leading(const std::vector<std::uint32_t>& row) const {
        std::size_t j = 0;
        while (j < cols_ && row[j] == 0) ++j;
        return j;
    }

    void reduce(std::vector<std::uint32_t>& row, std::uint32_t& value) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const std::uint32_t c = row[leads_[i]];
            if (c == 0) continue;
            for (std::size_t j = 0; j < cols_; ++j)
                row[j] = field_.sub(row[j], field_.mul(c, rows_[i][j]));
            value = field_.sub(value, field_.mul(c, values_[i]));
        }
    }

    std::size_t cols_;
    FieldSpec field_;
    std::vector<std::size_t> leads_;
    std::vector<std::vector<std::uint32_t>> rows_;
    std::vector<std::uint32_t> values_;
};

std::vector<std::uint32_t> apply_rows(const MatrixGF& m, std::span<const std::uint32_t> seed,
                                      const FieldSpec& f) {
    std::vector<std::uint32_t> out(m.rows(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            acc += std::uint64_t{m.at(r, c)} * seed[c];
            if (acc >> 62) acc %= f.p;
        }
        out[r] = static_cast<std::uint32_t>(acc % f.p);
    }
    return out;
}

} // namespace

LinearScheme::LinearScheme(FieldSpec field, std::size_t seed_dim, MatrixGF secret_rows,
                           std::vector<Party> parties, Graph graph)
    : field_(field),
      seed_dim_(seed_dim),
      secret_rows_(std::move(secret_rows)),
      parties_(std::move(parties)),
      graph_(std::move(graph)),
      id_(0) {
    if (secret_rows_.rows() == 0) throw InvalidArgumentError("scheme needs at least one secret coordinate");
    if (secret_rows_.cols() != seed_dim_) throw InvalidArgumentError("secret rows do not match the seed width");
    check_reduced(secret_rows_, field_, "secret rows");
    if (secret_rows_.rank() != secret_rows_.rows())
        throw InvalidArgumentError("secret rows must have full rank (uniform secret)");
    if (static_cast<int>(parties_.size()) != graph_.n())
        throw InvalidArgumentError("need exactly one party per graph vertex");
    std::sort(parties_.begin(), parties_.end(),
              [](const Party& a, const Party& b) { return a.vertex < b.vertex; });
    for (int v = 0; v < graph_.n(); ++v) {
        if (parties_[v].vertex != v) throw InvalidArgumentError("party vertices must cover the graph");
        if (parties_[v].rows.cols() != seed_dim_)
            throw InvalidArgumentError("share rows do not match the seed width");
        check_reduced(parties_[v].rows, field_, "share rows");
    }
    id_ = scheme_hash(field_, seed_dim_, secret_rows_, parties_, graph_);
}

const MatrixGF& LinearScheme::share_rows(int vertex) const {
    if (vertex < 0 || vertex >= graph_.n()) throw InvalidArgumentError("vertex out of range");
    return parties_[static_cast<std::size_t>(vertex)].rows;
}

LinearScheme build_edge_scheme(FieldSpec f) {
    const std::size_t seed_dim = 2; // (s, r)
    MatrixGF secret(0, seed_dim, f);
    secret.append_row(std::vector<std::uint32_t>{1, 0});
    MatrixGF plain(0, seed_dim, f);
    plain.append_row(std::vector<std::uint32_t>{0, 1}); // r
    MatrixGF masked(0, seed_dim, f);
    masked.append_row(std::vector<std::uint32_t>{1, 1}); // s + r
    std::vector<Party> parties;
    parties.push_back(Party{0, std::move(plain)});
    parties.push_back(Party{1, std::move(masked)});
    return LinearScheme(f, seed_dim, std::move(secret), std::move(parties), hypercube(1));
}

std::size_t two_face_count(int d) {
    if (d < 2) throw InvalidArgumentError("2-faces need dimension at least 2");
    return (std::size_t{1} << (d - 2)) * d * (d - 1) / 2;
}

std::uint32_t default_cube_prime(int d) {
    const std::size_t m = two_face_count(d);
    return smallest_prime_at_least(static_cast<std::uint32_t>(std::max<std::size_t>(m, 2)));
}

LinearScheme build_cube_scheme(int d, FieldSpec f) {
    if (d < 2)
        throw InvalidArgumentError(
            "cube schemes need dimension at least 2 (a single edge already has ratio 1)");
    if (d > kMaxSchemeDim) throw SizeError("cube schemes capped at dimension 8");
    const std::size_t m = two_face_count(d);
    const std::size_t secret_len = static_cast<std::size_t>(d) - 1;
    const std::size_t seed_dim = secret_len + m;
    const MatrixGF mask_vectors = general_position_vectors(m, secret_len, f);
    const auto faces = two_faces(d);

    MatrixGF secret(secret_len, seed_dim, f);
    for (std::size_t i = 0; i < secret_len; ++i) secret.at(i, i) = 1;

    const Graph g = hypercube(d);
    std::vector<MatrixGF> rows_per_vertex(static_cast<std::size_t>(g.n()),
                                          MatrixGF(0, seed_dim, f));
    std::vector<std::uint32_t> plain(seed_dim, 0);
    std::vector<std::uint32_t> masked(seed_dim, 0);
    for (std::size_t i = 0; i < faces.size(); ++i) {
        std::fill(plain.begin(), plain.end(), 0);
        std::fill(masked.begin(), masked.end(), 0);
        plain[secret_len + i] = 1;
        for (std::size_t c = 0; c < secret_len; ++c) masked[c] = mask_vectors.at(i, c);
        masked[secret_len + i] = 1;
        const auto& cyc = faces[i].cycle;
        rows_per_vertex[cyc[0]].append_row(plain);
        rows_per_vertex[cyc[2]].append_row(plain);
        rows_per_vertex[cyc[1]].append_row(masked);
        rows_per_vertex[cyc[3]].append_row(masked);
    }
    std::vector<Party> parties;
    parties.reserve(rows_per_vertex.size());
    for (int v = 0; v < g.n(); ++v) parties.push_back(Party{v, std::move(rows_per_vertex[v])});
    return LinearScheme(f, seed_dim, std::move(secret), std::move(parties), g);
}

LinearScheme build_cube_scheme(int d) {
    if (d < 2)
        throw InvalidArgumentError(
            "cube schemes need dimension at least 2 (a single edge already has ratio 1)");
    return build_cube_scheme(d, FieldSpec(default_cube_prime(d)));
}

ShareBundle deal(const LinearScheme& s, std::span<const std::uint32_t> secret,
                 std::uint64_t rng_seed) {
    const FieldSpec& f = s.field();
    if (secret.size() != s.secret_len())
        throw InvalidArgumentError("secret length mismatch: expected " +
                                   std::to_string(s.secret_len()) + ", got " +
                                   std::to_string(secret.size()));
    for (std::uint32_t x : secret)
        if (x >= f.p) throw InvalidArgumentError("secret entry not reduced mod p");

    Rng rng(rng_seed);
    std::vector<std::uint32_t> seed(s.seed_dim());
    for (auto& x : seed) x = static_cast<std::uint32_t>(rng.below(f.p));

    // Shift the uniform draw onto the fiber of the requested secret.
    const auto current = apply_rows(s.secret_rows(), seed, f);
    AugmentedSolver solver(s.seed_dim(), f);
    for (std::size_t r = 0; r < s.secret_len(); ++r) {
        std::vector<std::uint32_t> row(s.secret_rows().row(r).begin(),
                                       s.secret_rows().row(r).end());
        solver.add(std::move(row), f.sub(secret[r], current[r]));
    }
    const auto shift = solver.particular_solution();
    for (std::size_t j = 0; j < s.seed_dim(); ++j) seed[j] = f.add(seed[j], shift[j]);

    ShareBundle bundle;
    bundle.scheme_id = s.id();
    bundle.secret.assign(secret.begin(), secret.end());
    bundle.shares.reserve(s.parties().size());
    for (const auto& party : s.parties()) bundle.shares.push_back(apply_rows(party.rows, seed, f));
    return bundle;
}

std::vector<std::uint32_t> reconstruct(const LinearScheme& s, std::pair<int, int> edge,
                                       std::span<const std::uint32_t> share_u,
                                       std::span<const std::uint32_t> share_v) {
    const auto [u, v] = edge;
    if (u < 0 || u >= s.graph().n() || v < 0 || v >= s.graph().n())
        throw InvalidArgumentError("edge endpoint out of range");
    if (u == v || !s.graph().adjacent(u, v))
        throw UnqualifiedPairError("vertices " + std::to_string(u) + " and " + std::to_string(v) +
                                   " are not adjacent");
    if (share_u.size() != s.share_rows(u).rows() || share_v.size() != s.share_rows(v).rows())
        throw CorruptShareError("share length does not match the scheme layout");

    AugmentedSolver solver(s.seed_dim(), s.field());
    for (int who = 0; who < 2; ++who) {
        const MatrixGF& rows = s.share_rows(who == 0 ? u : v);
        const auto& values = who == 0 ? share_u : share_v;
        for (std::uint32_t x : values)
            if (x >= s.field().p) throw CorruptShareError("share entry not reduced mod p");
        for (std::size_t r = 0; r < rows.rows(); ++r) {
            std::vector<std::uint32_t> row(rows.row(r).begin(), rows.row(r).end());
            solver.add(std::move(row), values[r]);
        }
    }
    std::vector<std::uint32_t> secret(s.secret_len());
    for (std::size_t r = 0; r < s.secret_len(); ++r) {
        std::vector<std::uint32_t> row(s.secret_rows().row(r).begin(), s.secret_rows().row(r).end());
        const auto value = solver.query(std::move(row));
        if (!value)
            throw UnqualifiedPairError("the pair's shares do not determine the secret");
        secret[r] = *value;
    }
    return secret;
}

std::vector<std::uint32_t> reconstruct(const LinearScheme& s, std::pair<int, int> edge,
                                       const ShareBundle& bundle) {
    if (bundle.scheme_id != s.id())
        throw CorruptShareError("bundle was dealt for a different scheme");
    if (bundle.shares.size() != static_cast<std::size_t>(s.graph().n()))
        throw CorruptShareError("bundle party count does not match the scheme");
    return reconstruct(s, edge, bundle.shares[static_cast<std::size_t>(edge.first)],
                       bundle.shares[static_cast<std::size_t>(edge.second)]);
}

namespace {

// Recursive cover builder over sub-windows of the lattice. A sub-window is
// the set of free axes plus fixed values for the rest; pieces are emitted
// only when they cover at least one still-missing edge.
class CoverBuilder {
public:
    CoverBuilder(const Graph& g, int d, int k) : g_(g), d_(d), k_(k) {}

    std::vector<CoverPiece> run() {
        std::vector<int> base(d_, 0);
        std::vector<int> axes(d_);
        std::iota(axes.begin(), axes.end(), 0);
        cover(base, axes);
        return std::move(pieces_);
    }

    bool complete() const {
        return covered_.size() == g_.edges().size();
    }

private:
    std::int64_t key(int u, int v) const {
        return std::int64_t{std::min(u, v)} * g_.n() + std::max(u, v);
    }

    int index_of(const std::vector<int>& coords) const {
        int idx = 0, stride = 1;
        for (int j = 0; j < d_; ++j) {
            idx += coords[j] * stride;
            stride *= k_;
        }
        return idx;
    }

    void emit_if_fresh(const std::vector<int>& anchor, const std::vector<int>& axes) {
        const int dim = static_cast<int>(axes.size());
        std::vector<int> verts(std::size_t{1} << dim);
        std::vector<int> coords = anchor;
        for (int b = 0; b < (1 << dim); ++b) {
            coords = anchor;
            for (int t = 0; t < dim; ++t)
                if (b >> t & 1) coords[axes[t]] += 1;
            verts[b] = index_of(coords);
        }
        std::vector<std::pair<int, int>> edges;
        edges.reserve((std::size_t{1} << (dim - 1)) * dim);
        for (int b = 0; b < (1 << dim); ++b)
            for (int t = 0; t < dim; ++t)
                if (!(b >> t & 1)) {
                    const int x = verts[b], y = verts[b | (1 << t)];
                    edges.emplace_back(std::min(x, y), std::max(x, y));
                }
        bool fresh = false;
        for (auto [x, y] : edges)
            if (!covered_.contains(key(x, y))) {
                fresh = true;
                break;
            }
        if (!fresh) return;
        for (auto [x, y] : edges) covered_.insert(key(x, y));
        std::sort(edges.begin(), edges.end());
        pieces_.push_back(CoverPiece{dim, std::move(verts), std::move(edges)});
    }

    void emit_parity_cubes(const std::vector<int>& base, const std::vector<int>& axes) {
        const int dim = static_cast<int>(axes.size());
        for (int parity : {0, 1}) {
            std::vector<int> vals;
            for (int v = parity; v <= k_ - 2; v += 2) vals.push_back(v);
            if (vals.empty()) continue;
            std::vector<std::size_t> idx(dim, 0);
            while (true) {
                std::vector<int> anchor = base;
                for (int t = 0; t < dim; ++t) anchor[axes[t]] = vals[idx[t]];
                emit_if_fresh(anchor, axes);
                int t = 0;
                while (t < dim && ++idx[t] == vals.size()) {
                    idx[t] = 0;
                    ++t;
                }
                if (t == dim) break;
            }
        }
    }

    void cover(std::vector<int>& base, const std::vector<int>& axes) {
        if (axes.empty()) return;
        emit_parity_cubes(base, axes);
        if (axes.size() == 1) return; // facets of a line are single vertices
        for (std::size_t i = 0; i < axes.size(); ++i) {
            std::vector<int> sub_axes = axes;
            sub_axes.erase(sub_axes.begin() + static_cast<std::ptrdiff_t>(i));
            for (int c : {0, k_ - 1}) {
                base[axes[i]] = c;
                cover(base, sub_axes);
            }
            base[axes[i]] = 0;
        }
    }

    const Graph& g_;
    int d_, k_;
    std::unordered_set<std::int64_t> covered_;
    std::vector<CoverPiece> pieces_;
};

} // namespace

EdgeCover build_lattice_cover(int d, int k) {
    if (d < 1) throw InvalidArgumentError("lattice dimension must be at least 1");
    if (k < 2 || k % 2 != 0)
        throw InvalidArgumentError("lattice covers need an even window size k >= 2");
    Graph g = lattice_window(d, k);
    CoverBuilder builder(g, d, k);
    std::vector<CoverPiece> pieces = builder.run();
    if (!builder.complete())
        throw IncompleteCoverError("lattice cover construction left edges uncovered");
    return EdgeCover{std::move(g), std::move(pieces)};
}

std::uint32_t default_cover_prime(const EdgeCover& cover) {
    std::size_t need = 2;
    for (const auto& piece : cover.pieces)
        if (piece.dim >= 2) need = std::max(need, two_face_count(piece.dim));
    return smallest_prime_at_least(static_cast<std::uint32_t>(need));
}

LinearScheme combine_schemes(const EdgeCover& cover, FieldSpec f) {
    const Graph& g = cover.graph;
    std::set<std::pair<int, int>> covered;
    for (const auto& piece : cover.pieces)
        covered.insert(piece.covered_edges.begin(), piece.covered_edges.end());
    for (auto e : g.edges())
        if (!covered.contains(e))
            throw IncompleteCoverError("edge (" + std::to_string(e.first) + "," +
                                       std::to_string(e.second) + ") is not covered");

    std::vector<LinearScheme> subs;
    subs.reserve(cover.pieces.size());
    for (const auto& piece : cover.pieces) {
        subs.push_back(piece.dim == 1 ? build_edge_scheme(f) : build_cube_scheme(piece.dim, f));
        const LinearScheme& sub = subs.back();
        if (piece.vertices.size() != static_cast<std::size_t>(sub.graph().n()))
            throw InvalidArgumentError("cover piece vertex list does not match its cube");
        std::set<std::pair<int, int>> mapped;
        for (auto [a, b] : sub.graph().edges()) {
            const int x = piece.vertices[static_cast<std::size_t>(a)];
            const int y = piece.vertices[static_cast<std::size_t>(b)];
            if (!g.adjacent(x, y))
                throw InvalidArgumentError("cover piece is not an embedded cube");
            mapped.emplace(std::min(x, y), std::max(x, y));
        }
        if (!std::ranges::equal(mapped, piece.covered_edges))
            throw InvalidArgumentError("cover piece edge list does not match its embedding");
    }

    std::size_t shared_len = 1;
    for (const auto& sub : subs) shared_len = std::lcm(shared_len, sub.secret_len());

    // Seed layout: shared secret block, then one randomness block per run.
    std::size_t seed_dim = shared_len;
    std::vector<std::vector<std::size_t>> rand_offset(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const std::size_t runs = shared_len / subs[i].secret_len();
        const std::size_t rand_dim = subs[i].seed_dim() - subs[i].secret_len();
        for (std::size_t t = 0; t < runs; ++t) {
            rand_offset[i].push_back(seed_dim);
            seed_dim += rand_dim;
        }
    }

    MatrixGF secret(shared_len, seed_dim, f);
    for (std::size_t i = 0; i < shared_len; ++i) secret.at(i, i) = 1;

    std::vector<MatrixGF> rows_per_vertex(static_cast<std::size_t>(g.n()),
                                          MatrixGF(0, seed_dim, f));
    std::vector<std::uint32_t> row(seed_dim);
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const LinearScheme& sub = subs[i];
        const std::size_t len = sub.secret_len();
        // The builders put the sub-secret on the leading seed coordinates.
        for (std::size_t r = 0; r < len; ++r)
            for (std::size_t c = 0; c < sub.seed_dim(); ++c)
                if (sub.secret_rows().at(r, c) != (c == r ? 1u : 0u))
                    throw InvalidArgumentError("sub-scheme secret is not in leading-identity form");
        for (int lv = 0; lv < sub.graph().n(); ++lv) {
            const int tv = cover.pieces[i].vertices[static_cast<std::size_t>(lv)];
            const MatrixGF& local = sub.share_rows(lv);
            for (std::size_t t = 0; t < rand_offset[i].size(); ++t) {
                for (std::size_t r = 0; r < local.rows(); ++r) {
                    std::fill(row.begin(), row.end(), 0);
                    for (std::size_t c = 0; c < len; ++c) row[t * len + c] = local.at(r, c);
                    for (std::size_t c = len; c < sub.seed_dim(); ++c)
                        row[rand_offset[i][t] + (c - len)] = local.at(r, c);
                    rows_per_vertex[static_cast<std::size_t>(tv)].append_row(row);
                }
            }
        }
    }
    std::vector<Party> parties;
    parties.reserve(rows_per_vertex.size());
    for (int v = 0; v < g.n(); ++v) parties.push_back(Party{v, std::move(rows_per_vertex[v])});
    return LinearScheme(f, seed_dim, std::move(secret), std::move(parties), g);
}

LinearScheme combine_schemes(const EdgeCover& cover) {
    return combine_schemes(cover, FieldSpec(default_cover_prime(cover)));
}

std::size_t total_share_size(const LinearScheme& s) {
    std::size_t total = 0;
    for (const auto& party : s.parties()) total += party.rows.rows();
    return total;
}

std::int64_t lattice_share_size_estimate(int d, int k) {
    if (d < 1 || k < 2 || k % 2 != 0)
        throw InvalidArgumentError("share-size estimate needs d >= 1 and even k >= 2");
    auto ipow = [](std::int64_t b, int e) {
        std::int64_t r = 1;
        while (e-- > 0) r *= b;
        return r;
    };
    const std::int64_t kd = ipow(k, d);
    const std::int64_t inner = ipow(k - 2, d);
    return d * kd - (kd - inner) / 2;
}

} // namespace hypershare
