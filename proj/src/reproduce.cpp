#include "hypershare/reproduce.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <utility>

#include "hypershare/bounds.hpp"
#include "hypershare/entropy.hpp"
#include "hypershare/rng.hpp"
#include "hypershare/scheme.hpp"

namespace hypershare {

bool ReproReport::all_pass() const {
    for (const ReproRow& r : rows)
        if (!r.pass) return false;
    return true;
}

namespace {

std::string frac(const Rational& r) { return to_fraction_string(r); }

bool close(double x, double y) { return std::abs(x - y) <= 1e-9; }

} // namespace

ReproReport run_reproduction() {
    ReproReport report;

    const Graph c2 = hypercube(2);
    const Graph c3 = hypercube(3);
    const Graph p4 = path_graph(4);

    std::optional<LPSolution> c2_avg, c2_worst, c3_avg, c3_worst, p4_avg, p4_worst;
    auto solved = [](std::optional<LPSolution>& slot, const Graph& g,
                     Objective o) -> LPSolution& {
        if (!slot) slot = solve_entropy_lp(g, o);
        return *slot;
    };

    auto add = [&report](const char* id, const char* description, const char* expected,
                         double limit, auto&& body) {
        ReproRow row;
        row.id = id;
        row.description = description;
        row.expected = expected;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            auto [ok, computed] = body();
            row.pass = ok;
            row.computed = std::move(computed);
        } catch (const std::exception& e) {
            row.pass = false;
            row.computed = std::string("error: ") + e.what();
        }
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (limit > 0 && row.seconds >= limit) {
            row.pass = false;
            row.computed += " [over the time budget]";
        }
        report.rows.push_back(std::move(row));
    };

    add("1", "cube schemes d=2..5: perfect, every vertex ratio d/2", "perfect, ratio d/2", 10.0,
        [&] {
            bool ok = true;
            std::ostringstream out;
            for (int d = 2; d <= 5; ++d) {
                const LinearScheme s = build_cube_scheme(d);
                const bool perfect = check_perfect(s).perfect();
                const RatioReport rr = ratio_report(s);
                const Rational want(d, 2);
                bool ratios = true;
                for (const Rational& r : rr.per_vertex) ratios = ratios && r == want;
                const bool good = perfect && ratios;
                ok = ok && good;
                out << "d=" << d << (good ? " ok" : " FAIL") << (d < 5 ? ", " : "");
            }
            return std::pair(ok, out.str());
        });

    add("2", "average-case LP optimum: C^2 and C^3", "1 and 3/2", 600.0, [&] {
        const Rational& a2 = solved(c2_avg, c2, Objective::Average).optimum;
        const Rational& a3 = solved(c3_avg, c3, Objective::Average).optimum;
        return std::pair(a2 == 1 && a3 == Rational(3, 2), frac(a2) + " and " + frac(a3));
    });

    add("3", "worst-case LP optimum matches average: C^2 and C^3", "equal for both", 600.0, [&] {
        const Rational& a2 = solved(c2_avg, c2, Objective::Average).optimum;
        const Rational& w2 = solved(c2_worst, c2, Objective::Worst).optimum;
        const Rational& a3 = solved(c3_avg, c3, Objective::Average).optimum;
        const Rational& w3 = solved(c3_worst, c3, Objective::Worst).optimum;
        std::ostringstream out;
        out << "C^2 " << frac(w2) << " vs " << frac(a2) << ", C^3 " << frac(w3) << " vs "
            << frac(a3);
        return std::pair(a2 == w2 && a3 == w3, out.str());
    });

    add("4", "worst-case LP optimum for the 4-vertex path", "3/2", 600.0, [&] {
        const Rational& w = solved(p4_worst, p4, Objective::Worst).optimum;
        return std::pair(w == Rational(3, 2), frac(w));
    });

    add("5", "distribution entropy matches rank entropy", "within 1e-9 bits", 300.0, [&] {
        const LinearScheme s2 = build_cube_scheme(2, FieldSpec(3));
        bool ok = true;
        int checked = 0;
        auto agree = [&](const LinearScheme& s, VertexSet subset) {
            const double got = distribution_entropy(s, subset, false);
            const double want =
                rank_entropy(s, subset, false).convert_to<double>() *
                static_cast<double>(s.secret_len()) * std::log2(static_cast<double>(s.field().p));
            ok = ok && close(got, want);
            ++checked;
        };
        for (VertexSet a = 0; a < 16; ++a) agree(s2, a);
        const LinearScheme s3 = build_cube_scheme(3, FieldSpec(7));
        Rng rng(0x6f7261636c65ULL);
        for (int i = 0; i < 50; ++i) agree(s3, rng.below(256));
        std::ostringstream out;
        out << (ok ? "agree" : "DISAGREE") << " on " << checked << " subsets";
        return std::pair(ok, out.str());
    });

    add("6", "axiom sweep on scheme functions: C^2, C^3, L^2_4 composite", "0 violations", 300.0,
        [&] {
            std::size_t total = 0;
            const LinearScheme sc2 = build_cube_scheme(2);
            total += verify_axioms(scheme_polymatroid(sc2), sc2.graph()).size();
            const LinearScheme sc3 = build_cube_scheme(3);
            total += verify_axioms(scheme_polymatroid(sc3), sc3.graph()).size();
            const LinearScheme l24 = combine_schemes(build_lattice_cover(2, 4));
            total += verify_axioms(scheme_polymatroid(l24), l24.graph()).size();
            std::ostringstream out;
            out << total << " violations";
            return std::pair(total == 0, out.str());
        });

    add("7", "inequality certificates on scheme functions and LP witnesses", "all slacks >= 0",
        600.0, [&] {
            std::vector<std::pair<std::string, Certificate>> certs;
            const PolymatroidFn f_c2 = scheme_polymatroid(build_cube_scheme(2));
            const PolymatroidFn f_c3 = scheme_polymatroid(build_cube_scheme(3));
            const PolymatroidFn f_edge = scheme_polymatroid(build_edge_scheme(FieldSpec(2)));
            const PolymatroidFn f_p4 =
                scheme_polymatroid(combine_schemes(build_lattice_cover(1, 4)));
            const PolymatroidFn f_l22 =
                scheme_polymatroid(combine_schemes(build_lattice_cover(2, 2)));
            const PolymatroidFn& w_c2a = solved(c2_avg, c2, Objective::Average).witness;
            const PolymatroidFn& w_c2w = solved(c2_worst, c2, Objective::Worst).witness;
            const PolymatroidFn& w_c3a = solved(c3_avg, c3, Objective::Average).witness;
            const PolymatroidFn& w_c3w = solved(c3_worst, c3, Objective::Worst).witness;
            const PolymatroidFn& w_p4w = solved(p4_worst, p4, Objective::Worst).witness;

            for (const auto& [name, f] :
                 std::initializer_list<std::pair<const char*, const PolymatroidFn*>>{
                     {"scheme C^2", &f_c2}, {"lp C^2 avg", &w_c2a}, {"lp C^2 worst", &w_c2w}})
                certs.emplace_back(std::string("cube-sum d=2 on ") + name, check_lemma1(*f, 2));
            for (const auto& [name, f] :
                 std::initializer_list<std::pair<const char*, const PolymatroidFn*>>{
                     {"scheme C^3", &f_c3}, {"lp C^3 avg", &w_c3a}, {"lp C^3 worst", &w_c3w}}) {
                certs.emplace_back(std::string("cube-sum d=3 on ") + name, check_lemma1(*f, 3));
                const LemmaParts parts{0b00001001, 0, 0b00000110, 0, 0b01100000, 0b10010000};
                certs.emplace_back(std::string("level-split on ") + name,
                                   check_lemma2(*f, c3, parts));
            }
            certs.emplace_back("path-sum k=2 on scheme edge", check_lemma_path(f_edge, 2));
            for (const auto& [name, f] :
                 std::initializer_list<std::pair<const char*, const PolymatroidFn*>>{
                     {"scheme path cover", &f_p4}, {"lp P4 worst", &w_p4w}}) {
                certs.emplace_back(std::string("path-sum k=4 on ") + name,
                                   check_lemma_path(*f, 4));
                certs.emplace_back(std::string("window-sum d=1 k=4 on ") + name,
                                   check_lemma_dk(*f, 1, 4));
            }
            for (const auto& [name, f] :
                 std::initializer_list<std::pair<const char*, const PolymatroidFn*>>{
                     {"scheme C^2", &f_c2},
                     {"scheme L^2_2 cover", &f_l22},
                     {"lp C^2 avg", &w_c2a},
                     {"lp C^2 worst", &w_c2w}})
                certs.emplace_back(std::string("window-sum d=2 k=2 on ") + name,
                                   check_lemma_dk(*f, 2, 2));

            bool ok = true;
            std::size_t bad = 0;
            for (const auto& [name, cert] : certs)
                if (!cert.valid()) {
                    ok = false;
                    ++bad;
                }
            std::ostringstream out;
            out << certs.size() << " certificates, " << bad << " invalid";
            return std::pair(ok, out.str());
        });

    add("8", "L^2_4 window: cover, composite scheme, lower bound", "see column", 300.0, [&] {
        const EdgeCover cover = build_lattice_cover(2, 4);
        std::map<std::pair<int, int>, int> hits;
        for (const CoverPiece& piece : cover.pieces)
            for (const auto& e : piece.covered_edges) ++hits[e];
        bool all_covered = hits.size() == cover.graph.edges().size();
        for (const auto& e : cover.graph.edges()) all_covered = all_covered && hits.count(e) > 0;

        auto interior = [&](int v) {
            for (int c : cover.graph.vertices()[static_cast<std::size_t>(v)])
                if (c == 0 || c == 3) return false;
            return true;
        };
        bool interior_once = true;
        for (const auto& [e, c] : hits)
            if (interior(e.first) && interior(e.second)) interior_once = interior_once && c == 1;

        const LinearScheme composite = combine_schemes(cover);
        const bool perfect = check_perfect(composite).perfect();
        const RatioReport rr = ratio_report(composite);
        bool interior_ratio = true;
        for (int v = 0; v < cover.graph.n(); ++v)
            if (interior(v))
                interior_ratio = interior_ratio && rr.per_vertex[static_cast<std::size_t>(v)] == 2;

        const LowerBoundReport lb = lattice_lower_bound(2, 4);
        const bool bound_ok = lb.value == Rational(3, 2);

        const std::size_t measured = total_share_size(composite);
        const std::int64_t predicted = lattice_share_size_estimate(2, 4);
        const std::int64_t deviation = static_cast<std::int64_t>(measured) - predicted;

        const bool ok = all_covered && interior_once && perfect && interior_ratio && bound_ok;
        std::ostringstream out;
        out << hits.size() << "/24 edges covered, interior edges once=" << (interior_once ? "y" : "n")
            << ", perfect=" << (perfect ? "y" : "n")
            << ", interior ratio 2=" << (interior_ratio ? "y" : "n") << ", bound " << frac(lb.value)
            << ", share total " << measured << " vs formula " << predicted << " (deviation "
            << (deviation >= 0 ? "+" : "") << deviation << ")";
        return std::pair(ok, out.str());
    });

    add("9", "spanned-subgraph monotonicity at the LP level: P4 vs C^3", "P4 <= C^3 twice",
        600.0, [&] {
            const Rational& pa = solved(p4_avg, p4, Objective::Average).optimum;
            const Rational& pw = solved(p4_worst, p4, Objective::Worst).optimum;
            const Rational& ca = solved(c3_avg, c3, Objective::Average).optimum;
            const Rational& cw = solved(c3_worst, c3, Objective::Worst).optimum;
            std::ostringstream out;
            out << "average " << frac(pa) << " <= " << frac(ca) << ", worst " << frac(pw)
                << " <= " << frac(cw);
            return std::pair(pa <= ca && pw <= cw, out.str());
        });

    return report;
}

std::string format_report(const ReproReport& r) {
    std::vector<std::array<std::string, 6>> cells;
    cells.push_back({"#", "check", "expected", "computed", "time", "status"});
    for (const ReproRow& row : r.rows) {
        std::ostringstream t;
        t.precision(2);
        t << std::fixed << row.seconds << "s";
        cells.push_back({row.id, row.description, row.expected, row.computed, t.str(),
                         row.pass ? "pass" : "FAIL"});
    }
    std::array<std::size_t, 6> width{};
    for (const auto& line : cells)
        for (std::size_t i = 0; i < 6; ++i) width[i] = std::max(width[i], line[i].size());
    std::ostringstream out;
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < 6; ++i) {
            out << line[i];
            if (i + 1 < 6) out << std::string(width[i] - line[i].size() + 2, ' ');
        }
        out << "\n";
    }
    out << (r.all_pass() ? "all checks passed\n" : "SOME CHECKS FAILED\n");
    return out.str();
}

} // namespace hypershare
