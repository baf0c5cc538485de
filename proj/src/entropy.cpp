#include "hypershare/entropy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

#include "hypershare/rng.hpp"

namespace hypershare {

PolymatroidFn::PolymatroidFn(int n, std::vector<Rational> values, Source source)
    : n_(n), values_(std::move(values)), source_(source) {
    if (n_ < 1) throw InvalidArgumentError("polymatroid needs at least one vertex");
    if (n_ > kMaxTabulateVertices)
        throw SizeError("polymatroid tabulation capped at 20 vertices");
    if (values_.size() != (std::size_t{1} << n_))
        throw InvalidArgumentError("polymatroid needs one value per subset");
}

const Rational& PolymatroidFn::value(VertexSet a) const {
    if (a >> n_) throw InvalidArgumentError("subset out of range");
    return values_[a];
}

std::string source_name(PolymatroidFn::Source s) {
    switch (s) {
        case PolymatroidFn::Source::SchemeDerived: return "scheme";
        case PolymatroidFn::Source::LpWitness: return "lp-witness";
        case PolymatroidFn::Source::Synthetic: return "synthetic";
    }
    throw InvalidArgumentError("unknown polymatroid source");
}

PolymatroidFn::Source source_from_name(const std::string& name) {
    if (name == "scheme") return PolymatroidFn::Source::SchemeDerived;
    if (name == "lp-witness") return PolymatroidFn::Source::LpWitness;
    if (name == "synthetic") return PolymatroidFn::Source::Synthetic;
    throw ParseError("unknown polymatroid source: " + name);
}

namespace {

void add_share_rows(Eliminator& e, const LinearScheme& s, VertexSet subset) {
    for (VertexSet rest = subset; rest;) {
        const int v = std::countr_zero(rest);
        rest &= rest - 1;
        const MatrixGF& rows = s.share_rows(v);
        for (std::size_t r = 0; r < rows.rows(); ++r) e.add_row(rows.row(r));
    }
}

void add_secret_rows(Eliminator& e, const LinearScheme& s) {
    for (std::size_t r = 0; r < s.secret_len(); ++r) e.add_row(s.secret_rows().row(r));
}

} // namespace

Rational rank_entropy(const LinearScheme& s, VertexSet subset, bool include_secret) {
    if (subset & ~s.graph().full_mask()) throw InvalidArgumentError("subset out of range");
    Eliminator e(s.seed_dim(), s.field());
    add_share_rows(e, s, subset);
    if (include_secret) add_secret_rows(e, s);
    return Rational(static_cast<long>(e.rank()), static_cast<long>(s.secret_len()));
}

PolymatroidFn scheme_polymatroid(const LinearScheme& s) {
    const int n = s.graph().n();
    if (n > kMaxTabulateVertices) throw SizeError("polymatroid tabulation capped at 20 vertices");
    std::vector<Rational> values;
    values.reserve(std::size_t{1} << n);
    for (VertexSet a = 0; a < (VertexSet{1} << n); ++a)
        values.push_back(rank_entropy(s, a, false));
    return PolymatroidFn(n, std::move(values), PolymatroidFn::Source::SchemeDerived);
}

namespace {

// Walks the whole seed space in odometer order; stepping digit j from x to
// x+1 mod p adds column j to the running value vector once, including on
// the wrap p-1 -> 0.
template <typename Key>
double enumerate_entropy(const std::vector<std::vector<std::uint32_t>>& cols,
                         std::size_t n_rows, const FieldSpec& f, std::uint64_t total,
                         unsigned bits) {
    std::vector<std::uint32_t> value(n_rows, 0);
    std::vector<std::uint32_t> digit(cols.size(), 0);
    std::vector<Key> keys;
    keys.reserve(total);
    for (std::uint64_t step = 0;; ++step) {
        Key key = 0;
        for (std::size_t r = 0; r < n_rows; ++r) key = (key << bits) | Key(value[r]);
        keys.push_back(key);
        if (step + 1 == total) break;
        std::size_t j = 0;
        while (true) {
            for (std::size_t r = 0; r < n_rows; ++r) value[r] = f.add(value[r], cols[j][r]);
            if (++digit[j] == f.p) {
                digit[j] = 0;
                ++j;
            } else {
                break;
            }
        }
    }
    std::sort(keys.begin(), keys.end());
    long double weighted = 0; // sum of count*log2(count)
    std::uint64_t run = 1;
    for (std::size_t i = 1; i < keys.size(); ++i) {
        if (keys[i] == keys[i - 1]) {
            ++run;
        } else {
            weighted += static_cast<long double>(run) * std::log2(static_cast<long double>(run));
            run = 1;
        }
    }
    weighted += static_cast<long double>(run) * std::log2(static_cast<long double>(run));
    const long double h = std::log2(static_cast<long double>(total)) -
                          weighted / static_cast<long double>(total);
    return static_cast<double>(h);
}

} // namespace

double distribution_entropy(const LinearScheme& s, VertexSet subset, bool include_secret) {
    if (subset & ~s.graph().full_mask()) throw InvalidArgumentError("subset out of range");
    const FieldSpec f = s.field();
    const double space_log2 = static_cast<double>(s.seed_dim()) * std::log2(double(f.p));
    if (space_log2 > std::log2(kMaxSeedSpace))
        throw SizeError("seed space too large to enumerate");

    std::vector<std::span<const std::uint32_t>> rows;
    for (VertexSet rest = subset; rest;) {
        const int v = std::countr_zero(rest);
        rest &= rest - 1;
        const MatrixGF& m = s.share_rows(v);
        for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
    }
    if (include_secret)
        for (std::size_t r = 0; r < s.secret_len(); ++r) rows.push_back(s.secret_rows().row(r));
    if (rows.empty()) return 0.0;

    std::vector<std::vector<std::uint32_t>> cols(s.seed_dim(),
                                                 std::vector<std::uint32_t>(rows.size()));
    for (std::size_t j = 0; j < s.seed_dim(); ++j)
        for (std::size_t r = 0; r < rows.size(); ++r) cols[j][r] = rows[r][j];

    std::uint64_t total = 1;
    for (std::size_t j = 0; j < s.seed_dim(); ++j) total *= f.p;

    const unsigned bits = std::bit_width(f.p - 1);
    const std::size_t key_bits = rows.size() * bits;
    if (key_bits <= 64) return enumerate_entropy<std::uint64_t>(cols, rows.size(), f, total, bits);
    if (key_bits <= 128)
        return enumerate_entropy<unsigned __int128>(cols, rows.size(), f, total, bits);
    throw SizeError("joint share value too wide to enumerate");
}

namespace {

void bron_kerbosch(const std::vector<VertexSet>& compatible, VertexSet chosen, VertexSet cand,
                   VertexSet excluded, std::vector<VertexSet>& out) {
    if (!cand && !excluded) {
        out.push_back(chosen);
        return;
    }
    int pivot = -1, pivot_gain = -1;
    for (VertexSet rest = cand | excluded; rest;) {
        const int u = std::countr_zero(rest);
        rest &= rest - 1;
        const int gain = popcount(cand & compatible[u]);
        if (gain > pivot_gain) {
            pivot_gain = gain;
            pivot = u;
        }
    }
    for (VertexSet rest = cand & ~compatible[pivot]; rest;) {
        const int v = std::countr_zero(rest);
        rest &= rest - 1;
        const VertexSet bit = VertexSet{1} << v;
        bron_kerbosch(compatible, chosen | bit, cand & compatible[v],
                      excluded & compatible[v], out);
        cand &= ~bit;
        excluded |= bit;
    }
}

} // namespace

std::vector<VertexSet> maximal_independent_sets(const Graph& g) {
    if (g.n() > kMaxIndependenceVertices)
        throw SizeError("maximal independent set enumeration capped at 32 vertices");
    std::vector<VertexSet> compatible(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v)
        compatible[v] = g.full_mask() & ~(g.neighbor_mask(v) | (VertexSet{1} << v));
    std::vector<VertexSet> out;
    bron_kerbosch(compatible, 0, g.full_mask(), 0, out);
    std::sort(out.begin(), out.end());
    return out;
}

PerfectReport check_perfect(const LinearScheme& s) {
    PerfectReport report;
    for (auto edge : s.graph().edges()) {
        Eliminator e(s.seed_dim(), s.field());
        add_share_rows(e, s, (VertexSet{1} << edge.first) | (VertexSet{1} << edge.second));
        const std::size_t share_rank = e.rank();
        add_secret_rows(e, s);
        if (e.rank() != share_rank) report.qualified_failures.push_back(edge);
    }
    for (VertexSet a : maximal_independent_sets(s.graph())) {
        Eliminator e(s.seed_dim(), s.field());
        add_share_rows(e, s, a);
        const std::size_t share_rank = e.rank();
        add_secret_rows(e, s);
        if (e.rank() != share_rank + s.secret_len()) report.independence_failures.push_back(a);
    }
    return report;
}

RatioReport ratio_report(const LinearScheme& s) {
    RatioReport report;
    const int n = s.graph().n();
    report.per_vertex.reserve(static_cast<std::size_t>(n));
    Rational sum = 0;
    Rational worst = 0;
    for (int v = 0; v < n; ++v) {
        Rational r = rank_entropy(s, VertexSet{1} << v, false);
        sum += r;
        worst = std::max(worst, r);
        report.per_vertex.push_back(std::move(r));
    }
    report.average = sum / n;
    report.worst = worst;
    return report;
}

namespace {

struct AxiomChecker {
    const PolymatroidFn& fn;
    std::vector<AxiomViolation>& out;

    const Rational& f(VertexSet a) const { return fn.value(a); }

    void monotone(VertexSet a, VertexSet b) {
        if (f(a) > f(b))
            out.push_back({'b', a, b, f(b), f(a), "monotonicity f(A) <= f(B) fails"});
    }
    void submodular(VertexSet a, VertexSet b) {
        const Rational left = f(a) + f(b);
        const Rational right = f(a | b) + f(a & b);
        if (left < right)
            out.push_back({'c', a, b, left, right, "submodularity fails"});
    }
    void strong_monotone(VertexSet a, VertexSet b) {
        const Rational right = f(a) + 1;
        if (f(b) < right)
            out.push_back({'d', a, b, f(b), right, "strong monotonicity fails"});
    }
    void strong_submodular(VertexSet a, VertexSet b) {
        const Rational left = f(a) + f(b);
        const Rational right = f(a | b) + f(a & b) + 1;
        if (left < right)
            out.push_back({'e', a, b, left, right, "strong submodularity fails"});
    }
};

} // namespace

std::vector<AxiomViolation> verify_axioms(const PolymatroidFn& fn, const Graph& g) {
    if (fn.n() != g.n()) throw InvalidArgumentError("function and graph sizes differ");
    const int n = fn.n();
    if (n > 16) throw SizeError("axiom verification capped at 16 vertices");
    const VertexSet full = g.full_mask();

    std::vector<char> ind(std::size_t{1} << n);
    ind[0] = 1;
    for (VertexSet m = 1; m <= full; ++m) {
        const int v = std::countr_zero(m);
        const VertexSet rest = m & (m - 1);
        ind[m] = ind[rest] && !(g.neighbor_mask(v) & rest);
    }

    std::vector<AxiomViolation> out;
    AxiomChecker check{fn, out};

    if (fn.value(0) != 0)
        out.push_back({'a', 0, 0, fn.value(0), Rational(0), "f(empty) must be 0"});
    for (VertexSet a = 1; a <= full && a != 0; ++a)
        if (fn.value(a) < 0)
            out.push_back({'a', a, 0, fn.value(a), Rational(0), "f must be nonnegative"});

    if (n <= 10) {
        for (VertexSet b = 1; b <= full; ++b) {
            for (VertexSet a = (b - 1) & b;; a = (a - 1) & b) {
                check.monotone(a, b);
                if (ind[a] && !ind[b]) check.strong_monotone(a, b);
                if (!a) break;
            }
        }
        for (VertexSet a = 0; a <= full; ++a) {
            for (VertexSet b = a + 1; b <= full && b != 0; ++b) {
                check.submodular(a, b);
                if (!ind[a] && !ind[b] && ind[a & b]) check.strong_submodular(a, b);
            }
            if (a == full) break;
        }
        return out;
    }

    // Single-element forms, exhaustively.
    for (VertexSet a = 0; a <= full; ++a) {
        for (VertexSet vs = full & ~a; vs;) {
            const int v = std::countr_zero(vs);
            vs &= vs - 1;
            const VertexSet av = a | (VertexSet{1} << v);
            check.monotone(a, av);
            if (ind[a] && !ind[av]) check.strong_monotone(a, av);
            for (VertexSet ws = vs; ws;) {
                const int w = std::countr_zero(ws);
                ws &= ws - 1;
                const VertexSet aw = a | (VertexSet{1} << w);
                check.submodular(av, aw);
                if (ind[a] && !ind[av] && !ind[aw]) check.strong_submodular(av, aw);
            }
        }
        if (a == full) break;
    }

    // Seeded random general-form instances on top of the elemental sweep.
    Rng rng(0x73616d706c6572ULL);
    const std::uint64_t space = std::uint64_t{1} << n;
    const int samples = 10000;
    for (int i = 0; i < samples; ++i) {
        const VertexSet b = rng.below(space);
        check.monotone(b & rng.below(space), b);
        check.submodular(rng.below(space), rng.below(space));
    }
    for (int i = 0; i < samples; ++i) {
        for (int attempt = 0; attempt < 200; ++attempt) {
            const VertexSet b = rng.below(space);
            const VertexSet a = b & rng.below(space);
            if (ind[a] && !ind[b]) {
                check.strong_monotone(a, b);
                break;
            }
        }
    }
    for (int i = 0; i < samples; ++i) {
        for (int attempt = 0; attempt < 200; ++attempt) {
            const VertexSet a = rng.below(space);
            const VertexSet b = rng.below(space);
            if (!ind[a] && !ind[b] && ind[a & b]) {
                check.strong_submodular(a, b);
                break;
            }
        }
    }
    return out;
}

} // namespace hypershare
