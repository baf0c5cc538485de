#include <charconv>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hypershare/bounds.hpp"
#include "hypershare/entropy.hpp"
#include "hypershare/reproduce.hpp"
#include "hypershare/scheme.hpp"
#include "hypershare/serialize.hpp"

namespace hs = hypershare;

namespace {

std::string show(const hs::Rational& r, bool decimal) {
    std::string s = hs::to_fraction_string(r);
    if (decimal) {
        std::ostringstream out;
        out << s << " (" << r.convert_to<double>() << ")";
        return out.str();
    }
    return s;
}

std::string hex_id(std::uint64_t id) {
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << id;
    return out.str();
}

std::uint64_t parse_u64(const std::string& text, const char* what) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw hs::ParseError(std::string(what) + " must be an unsigned integer, got '" + text +
                             "'");
    return value;
}

std::uint64_t env_seed() {
    if (const char* env = std::getenv("HYPERSHARE_SEED")) return parse_u64(env, "HYPERSHARE_SEED");
    return 0;
}

std::vector<std::uint32_t> parse_u32_list(const std::string& text, const char* what) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::uint64_t v = parse_u64(item, what);
        if (v > UINT32_MAX) throw hs::ParseError(std::string(what) + " entry out of range");
        out.push_back(static_cast<std::uint32_t>(v));
    }
    if (out.empty()) throw hs::ParseError(std::string(what) + " must not be empty");
    return out;
}

std::pair<int, int> parse_edge(const std::string& text) {
    const auto list = parse_u32_list(text, "edge");
    if (list.size() != 2 || list[0] > INT32_MAX || list[1] > INT32_MAX)
        throw hs::ParseError("edge must be 'u,v' with two vertex indices");
    return {static_cast<int>(list[0]), static_cast<int>(list[1])};
}

hs::Json ratio_json(const hs::RatioReport& rr) {
    hs::Json per = hs::Json::array();
    for (const hs::Rational& r : rr.per_vertex) per.push_back(hs::to_fraction_string(r));
    return hs::Json{{"per_vertex", std::move(per)},
                    {"average", hs::to_fraction_string(rr.average)},
                    {"worst", hs::to_fraction_string(rr.worst)}};
}

void print_ratios(const hs::RatioReport& rr, bool decimal) {
    std::map<hs::Rational, int> histogram;
    for (const hs::Rational& r : rr.per_vertex) ++histogram[r];
    std::cout << "per-vertex ratios:";
    for (const auto& [value, count] : histogram)
        std::cout << " " << show(value, decimal) << " x" << count;
    std::cout << "\naverage ratio: " << show(rr.average, decimal)
              << "\nworst ratio:   " << show(rr.worst, decimal) << "\n";
}

struct PerfectOutcome {
    bool qualified = false;
    bool independent = false;
    bool independence_checked = true;
    std::string summary;

    bool verified() const { return qualified && (!independence_checked || independent); }
};

// Full verification needs the maximal-independent-set sweep, which is capped;
// beyond the cap only edge qualification is checked and that is reported.
PerfectOutcome run_perfect_check(const hs::LinearScheme& s) {
    PerfectOutcome out;
    if (s.graph().n() <= hs::kMaxIndependenceVertices) {
        const hs::PerfectReport report = hs::check_perfect(s);
        out.qualified = report.qualified_failures.empty();
        out.independent = report.independence_failures.empty();
        std::ostringstream text;
        if (report.perfect()) {
            text << "perfect: every edge reconstructs, every independent set learns nothing";
        } else {
            text << "NOT PERFECT:";
            for (const auto& [u, v] : report.qualified_failures)
                text << " edge(" << u << "," << v << ") cannot reconstruct;";
            for (const hs::VertexSet a : report.independence_failures)
                text << " independent set 0x" << std::hex << a << std::dec << " leaks;";
        }
        out.summary = text.str();
    } else {
        out.independence_checked = false;
        out.qualified = true;
        for (const auto& edge : s.graph().edges()) {
            hs::Eliminator e(s.seed_dim(), s.field());
            for (int v : {edge.first, edge.second}) {
                const hs::MatrixGF& rows = s.share_rows(v);
                for (std::size_t r = 0; r < rows.rows(); ++r) e.add_row(rows.row(r));
            }
            const std::size_t share_rank = e.rank();
            for (std::size_t r = 0; r < s.secret_len(); ++r) e.add_row(s.secret_rows().row(r));
            if (e.rank() != share_rank) {
                out.qualified = false;
                break;
            }
        }
        out.summary = out.qualified
                          ? "edges reconstruct; independence sweep skipped above 32 vertices"
                          : "NOT PERFECT: some edge cannot reconstruct";
    }
    return out;
}

int cmd_cube(int d, std::optional<std::uint32_t> prime, const std::string& out_path, bool json,
             bool decimal) {
    const hs::LinearScheme s =
        prime ? hs::build_cube_scheme(d, hs::FieldSpec(*prime)) : hs::build_cube_scheme(d);
    const PerfectOutcome outcome = run_perfect_check(s);
    const hs::RatioReport rr = hs::ratio_report(s);
    if (!out_path.empty()) hs::write_text_file(out_path, hs::to_text(hs::scheme_to_json(s)));
    if (json) {
        hs::Json j{{"scheme", hex_id(s.id())},
                   {"d", d},
                   {"prime", s.field().p},
                   {"seed_dim", s.seed_dim()},
                   {"perfect", outcome.verified()},
                   {"ratios", ratio_json(rr)}};
        if (!out_path.empty()) j["written"] = out_path;
        std::cout << hs::to_text(j);
    } else {
        std::cout << "cube dimension " << d << " over GF(" << s.field().p << "), seed length "
                  << s.seed_dim() << ", scheme id " << hex_id(s.id()) << "\n";
        print_ratios(rr, decimal);
        std::cout << outcome.summary << "\n";
        if (!out_path.empty()) std::cout << "scheme written to " << out_path << "\n";
    }
    return outcome.verified() ? 0 : 1;
}

int cmd_deal(const std::string& scheme_path, const std::string& secret_text,
             std::optional<std::uint64_t> seed, const std::string& out_path, bool json) {
    const hs::LinearScheme s =
        hs::scheme_from_json(hs::parse_text(hs::read_text_file(scheme_path)));
    const std::vector<std::uint32_t> secret = parse_u32_list(secret_text, "secret");
    const hs::ShareBundle bundle = hs::deal(s, secret, seed ? *seed : env_seed());
    const std::string doc = hs::to_text(hs::bundle_to_json(bundle));
    if (out_path.empty()) {
        std::cout << doc;
    } else {
        hs::write_text_file(out_path, doc);
        if (json)
            std::cout << hs::to_text(hs::Json{{"written", out_path}});
        else
            std::cout << "bundle written to " << out_path << "\n";
    }
    return 0;
}

int cmd_reconstruct(const std::string& scheme_path, const std::string& bundle_path,
                    const std::string& edge_text, bool json) {
    const hs::LinearScheme s =
        hs::scheme_from_json(hs::parse_text(hs::read_text_file(scheme_path)));
    const hs::ShareBundle bundle =
        hs::bundle_from_json(hs::parse_text(hs::read_text_file(bundle_path)));
    const std::pair<int, int> edge = parse_edge(edge_text);
    const std::vector<std::uint32_t> secret = hs::reconstruct(s, edge, bundle);
    const bool matches = secret == bundle.secret;
    if (json) {
        std::cout << hs::to_text(hs::Json{{"secret", secret}, {"matches_bundle", matches}});
    } else {
        std::cout << "recovered secret:";
        for (std::uint32_t x : secret) std::cout << " " << x;
        std::cout << "\n";
        if (!matches)
            std::cout << "WARNING: differs from the secret recorded in the bundle\n";
    }
    return matches ? 0 : 1;
}

hs::LowerBoundReport cube_certificate_bound(int d) {
    if (d < 1) throw hs::InvalidArgumentError("cube dimension must be at least 1");
    hs::LowerBoundReport r;
    r.d = d;
    r.k = 0;
    r.value = hs::Rational(d, 2);
    const hs::BigInt half = hs::BigInt(1) << (d - 1);
    std::ostringstream s1, s2, s3, s4;
    s1 << "chessboard split A,B of the 2^d = " << (half * 2)
       << " cube vertices: both sides independent, |A| = |B| = " << half;
    s2 << "a perfect matching between A and B plus strong monotonicity gives [A,B] >= " << half;
    s3 << "cube inequality: sum_v f(v) >= [A,B] + (d-1)*2^(d-1) = [A,B] + " << (half * (d - 1));
    s4 << "combining: sum_v f(v) >= " << (half * d) << ", so the average ratio is >= "
       << hs::to_fraction_string(r.value);
    r.derivation = {s1.str(), s2.str(), s3.str(), s4.str()};
    return r;
}

int cmd_bound(int cube_d, const std::vector<int>& lattice_dk, int path_m,
              const std::string& objective_text, const std::string& method,
              const std::string& out_path, const std::string& export_path, bool json,
              bool decimal) {
    const int selected = (cube_d > 0 ? 1 : 0) + (lattice_dk.empty() ? 0 : 1) + (path_m > 0 ? 1 : 0);
    if (selected != 1)
        throw hs::InvalidArgumentError("choose exactly one of --cube D, --lattice D K, --path M");
    const hs::Objective objective = hs::objective_from_name(objective_text);

    if (method == "lp") {
        hs::Graph g = cube_d > 0      ? hs::hypercube(cube_d)
                      : path_m > 0    ? hs::path_graph(path_m)
                                      : hs::lattice_window(lattice_dk[0], lattice_dk[1]);
        if (g.n() > hs::kMaxLpVertices)
            throw hs::SizeError("graph has " + std::to_string(g.n()) +
                                " vertices, above the LP cap of 12; use --method certificate");
        if (!export_path.empty())
            hs::write_text_file(export_path, hs::export_lp(hs::build_entropy_lp(g, objective)));
        const hs::LPSolution sol = hs::solve_entropy_lp(g, objective);
        if (!out_path.empty())
            hs::write_text_file(out_path, hs::to_text(hs::polymatroid_to_json(sol.witness)));
        if (json) {
            hs::Json j{{"method", "lp"},
                       {"objective", hs::objective_name(objective)},
                       {"value", hs::to_fraction_string(sol.optimum)},
                       {"pivots", sol.iterations},
                       {"escalated", sol.escalated}};
            if (!out_path.empty()) j["witness_written"] = out_path;
            std::cout << hs::to_text(j);
        } else {
            std::cout << hs::objective_name(objective) << "-case lower bound (lp): "
                      << show(sol.optimum, decimal) << "\n"
                      << "pivots: " << sol.iterations
                      << (sol.escalated ? ", solved with the full strong-submodularity set" : "")
                      << "\n";
            if (!out_path.empty()) std::cout << "witness written to " << out_path << "\n";
        }
        return 0;
    }
    if (method != "certificate")
        throw hs::InvalidArgumentError("--method must be lp or certificate");

    const hs::LowerBoundReport r = cube_d > 0 ? cube_certificate_bound(cube_d)
                                   : path_m > 0
                                       ? hs::lattice_lower_bound(1, path_m)
                                       : hs::lattice_lower_bound(lattice_dk[0], lattice_dk[1]);
    std::ostringstream text;
    text << "average-case lower bound (certificate): " << show(r.value, decimal) << "\n";
    if (objective == hs::Objective::Worst)
        text << "note: the certificate bounds the average ratio; the worst-case ratio is at "
                "least that\n";
    for (const std::string& line : r.derivation) text << "  " << line << "\n";
    if (!out_path.empty()) hs::write_text_file(out_path, text.str());
    if (json) {
        std::cout << hs::to_text(hs::Json{{"method", "certificate"},
                                          {"objective", "average"},
                                          {"value", hs::to_fraction_string(r.value)},
                                          {"derivation", r.derivation}});
    } else {
        std::cout << text.str();
    }
    return 0;
}

int cmd_lattice(int d, int k, std::optional<std::uint32_t> prime, const std::string& out_path,
                bool json, bool decimal) {
    const hs::EdgeCover cover = hs::build_lattice_cover(d, k);
    const hs::LinearScheme composite =
        prime ? hs::combine_schemes(cover, hs::FieldSpec(*prime)) : hs::combine_schemes(cover);
    const PerfectOutcome outcome = run_perfect_check(composite);
    const hs::RatioReport rr = hs::ratio_report(composite);
    const std::size_t measured = hs::total_share_size(composite);
    const std::int64_t predicted = hs::lattice_share_size_estimate(d, k);
    const std::int64_t deviation = static_cast<std::int64_t>(measured) - predicted;
    std::map<int, int> pieces_by_dim;
    for (const hs::CoverPiece& piece : cover.pieces) ++pieces_by_dim[piece.dim];
    if (!out_path.empty())
        hs::write_text_file(out_path, hs::to_text(hs::scheme_to_json(composite)));
    if (json) {
        hs::Json dims = hs::Json::object();
        for (const auto& [dim, count] : pieces_by_dim) dims[std::to_string(dim)] = count;
        hs::Json j{{"d", d},
                   {"k", k},
                   {"prime", composite.field().p},
                   {"pieces", cover.pieces.size()},
                   {"pieces_by_dim", std::move(dims)},
                   {"perfect", outcome.verified()},
                   {"independence_checked", outcome.independence_checked},
                   {"ratios", ratio_json(rr)},
                   {"share_total", measured},
                   {"share_formula", predicted},
                   {"share_deviation", deviation}};
        if (!out_path.empty()) j["written"] = out_path;
        std::cout << hs::to_text(j);
    } else {
        std::cout << "window d=" << d << " k=" << k << " over GF(" << composite.field().p
                  << "): " << cover.pieces.size() << " cover pieces (";
        bool first = true;
        for (const auto& [dim, count] : pieces_by_dim) {
            std::cout << (first ? "" : ", ") << count << " of dimension " << dim;
            first = false;
        }
        std::cout << ")\n";
        print_ratios(rr, decimal);
        std::cout << "total share size " << measured << " vs closed-form " << predicted
                  << " (deviation " << (deviation >= 0 ? "+" : "") << deviation << ")\n"
                  << outcome.summary << "\n";
        if (!out_path.empty()) std::cout << "scheme written to " << out_path << "\n";
    }
    return outcome.verified() ? 0 : 1;
}

int cmd_reproduce(bool json) {
    const hs::ReproReport report = hs::run_reproduction();
    if (json) {
        hs::Json rows = hs::Json::array();
        for (const hs::ReproRow& row : report.rows)
            rows.push_back(hs::Json{{"id", row.id},
                                    {"description", row.description},
                                    {"expected", row.expected},
                                    {"computed", row.computed},
                                    {"seconds", row.seconds},
                                    {"pass", row.pass}});
        std::cout << hs::to_text(hs::Json{{"rows", std::move(rows)}, {"pass", report.all_pass()}});
    } else {
        std::cout << hs::format_report(report);
    }
    return report.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"perfect secret sharing on cubes and lattice windows: schemes, exact "
                 "verification, and entropy-method lower bounds"};
    app.require_subcommand(1);

    auto* cube = app.add_subcommand("cube", "build and verify the 2-face scheme on C^d");
    int cube_d = 0;
    std::optional<std::uint32_t> cube_prime;
    std::string cube_out;
    bool cube_json = false, cube_decimal = false;
    cube->add_option("--d", cube_d, "cube dimension, at least 2")->required();
    cube->add_option("--prime", cube_prime, "field prime override");
    cube->add_option("--out", cube_out, "write the scheme document to this path");
    cube->add_flag("--json", cube_json, "machine-readable output");
    cube->add_flag("--decimal", cube_decimal, "append decimal approximations");

    auto* deal = app.add_subcommand("deal", "deal shares for a secret under a stored scheme");
    std::string deal_scheme, deal_secret, deal_out;
    std::optional<std::uint64_t> deal_seed;
    bool deal_json = false;
    deal->add_option("--scheme", deal_scheme, "scheme document path")->required();
    deal->add_option("--secret", deal_secret, "comma-separated field elements")->required();
    deal->add_option("--seed", deal_seed, "rng seed (default: HYPERSHARE_SEED or 0)");
    deal->add_option("--out", deal_out, "bundle output path (default: stdout)");
    deal->add_flag("--json", deal_json, "machine-readable output");

    auto* rec = app.add_subcommand("reconstruct", "recover the secret from one edge's shares");
    std::string rec_scheme, rec_bundle, rec_edge;
    bool rec_json = false;
    rec->add_option("--scheme", rec_scheme, "scheme document path")->required();
    rec->add_option("--bundle", rec_bundle, "share bundle path")->required();
    rec->add_option("--edge", rec_edge, "edge 'u,v' whose shares to combine")->required();
    rec->add_flag("--json", rec_json, "machine-readable output");

    auto* bound = app.add_subcommand("bound", "entropy-method lower bound for a graph");
    int bound_cube = 0, bound_path = 0;
    std::vector<int> bound_lattice;
    std::string bound_objective = "average", bound_method = "lp", bound_out, bound_export;
    bool bound_json = false, bound_decimal = false;
    bound->add_option("--cube", bound_cube, "cube dimension");
    bound->add_option("--lattice", bound_lattice, "window parameters: d k")->expected(2);
    bound->add_option("--path", bound_path, "path vertex count");
    bound->add_option("--objective", bound_objective, "average or worst (default average)");
    bound->add_option("--method", bound_method, "lp or certificate (default lp)");
    bound->add_option("--out", bound_out, "write the witness or certificate here");
    bound->add_option("--export-lp", bound_export, "write the LP in interchange text form");
    bound->add_flag("--json", bound_json, "machine-readable output");
    bound->add_flag("--decimal", bound_decimal, "append decimal approximations");

    auto* lattice = app.add_subcommand("lattice", "cover a window, combine schemes, verify");
    int lattice_d = 0, lattice_k = 0;
    std::optional<std::uint32_t> lattice_prime;
    std::string lattice_out;
    bool lattice_json = false, lattice_decimal = false;
    lattice->add_option("--d", lattice_d, "window dimension")->required();
    lattice->add_option("--k", lattice_k, "vertices per axis, even")->required();
    lattice->add_option("--prime", lattice_prime, "field prime override");
    lattice->add_option("--out", lattice_out, "write the composite scheme document here");
    lattice->add_flag("--json", lattice_json, "machine-readable output");
    lattice->add_flag("--decimal", lattice_decimal, "append decimal approximations");

    auto* repro = app.add_subcommand("reproduce", "recompute the headline results end to end");
    bool repro_json = false;
    repro->add_flag("--json", repro_json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cube->parsed()) return cmd_cube(cube_d, cube_prime, cube_out, cube_json, cube_decimal);
        if (deal->parsed()) return cmd_deal(deal_scheme, deal_secret, deal_seed, deal_out, deal_json);
        if (rec->parsed()) return cmd_reconstruct(rec_scheme, rec_bundle, rec_edge, rec_json);
        if (bound->parsed())
            return cmd_bound(bound_cube, bound_lattice, bound_path, bound_objective, bound_method,
                             bound_out, bound_export, bound_json, bound_decimal);
        if (lattice->parsed())
            return cmd_lattice(lattice_d, lattice_k, lattice_prime, lattice_out, lattice_json,
                               lattice_decimal);
        if (repro->parsed()) return cmd_reproduce(repro_json);
        std::cerr << "usage error: no command selected\n";
        return 2;
    } catch (const hs::InvalidArgumentError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const hs::SizeError& e) {
        std::cerr << "size error: " << e.what() << "\n";
        return 3;
    } catch (const hs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
