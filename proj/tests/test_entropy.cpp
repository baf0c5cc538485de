#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hypershare/entropy.hpp"
#include "hypershare/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using namespace hypershare;

namespace {

Graph custom(int n, std::vector<std::pair<int, int>> edges) {
    std::vector<std::vector<int>> labels;
    for (int v = 0; v < n; ++v) labels.push_back({v});
    return Graph(Family::Custom, 1, 0, std::move(labels), std::move(edges));
}

PolymatroidFn synthetic(int n, std::vector<Rational> values) {
    return PolymatroidFn(n, std::move(values), PolymatroidFn::Source::Synthetic);
}

} // namespace

TEST_CASE("polymatroid function container") {
    const PolymatroidFn f = synthetic(2, {0, 1, 1, 2});
    CHECK(f.n() == 2);
    CHECK(f.value(0) == 0);
    CHECK(f.value(3) == 2);
    CHECK_THROWS_AS(f.value(4), InvalidArgumentError);
    CHECK_THROWS_AS(synthetic(2, {0, 1, 1}), InvalidArgumentError);
    CHECK_THROWS_AS(synthetic(0, {0}), InvalidArgumentError);
    CHECK_THROWS_AS(synthetic(21, {}), SizeError);

    CHECK(source_name(PolymatroidFn::Source::SchemeDerived) == "scheme");
    CHECK(source_from_name("lp-witness") == PolymatroidFn::Source::LpWitness);
    CHECK_THROWS_AS(source_from_name("nope"), ParseError);
}

TEST_CASE("rank profile of the square scheme") {
    // two corners hold r, the other two hold r + s; every pair containing
    // both row types has rank 2, same-type pairs have rank 1
    const LinearScheme s = build_cube_scheme(2);
    const std::vector<Rational> expected = {0, 1, 1, 2, 1, 2, 1, 2,
                                            1, 1, 2, 2, 2, 2, 2, 2};
    const PolymatroidFn f = scheme_polymatroid(s);
    REQUIRE(f.values().size() == 16);
    for (VertexSet m = 0; m < 16; ++m) CHECK(f.value(m) == expected[m]);

    CHECK(rank_entropy(s, 0, false) == 0);
    CHECK(rank_entropy(s, 0, true) == 1);
    // independent pair: adding the secret adds a full unit
    CHECK(rank_entropy(s, 0b1001, true) == rank_entropy(s, 0b1001, false) + 1);
    // edge: the secret is already determined
    CHECK(rank_entropy(s, 0b0011, true) == rank_entropy(s, 0b0011, false));
}

TEST_CASE("rank profile of the 3-cube scheme") {
    const LinearScheme s = build_cube_scheme(3);
    const PolymatroidFn f = scheme_polymatroid(s);
    for (int v = 0; v < 8; ++v) CHECK(f.value(VertexSet{1} << v) == Rational(3, 2));
    CHECK(f.value(s.graph().full_mask()) == 4);
    // even-parity corners jointly hold exactly the six masking values
    CHECK(f.value(0x69) == 3);
    CHECK(rank_entropy(s, 0x69, true) == rank_entropy(s, 0x69, false) + 1);
}

TEST_CASE("distribution entropy equals rank entropy times log2(p)") {
    const LinearScheme s = build_cube_scheme(2, FieldSpec(3));
    const double unit = static_cast<double>(s.secret_len()) * std::log2(3.0);
    for (VertexSet m = 0; m < 16; ++m) {
        for (bool with_secret : {false, true}) {
            const double h = distribution_entropy(s, m, with_secret);
            const double expected =
                rank_entropy(s, m, with_secret).convert_to<double>() * unit;
            CHECK(std::abs(h - expected) < 1e-9);
        }
    }
}

TEST_CASE("distribution entropy exercises the wide-key path") {
    // 24 rows of 3 bits each exceed one 64-bit key word
    const LinearScheme s = build_cube_scheme(3);
    const VertexSet full = s.graph().full_mask();
    const double unit = static_cast<double>(s.secret_len()) * std::log2(7.0);
    const double h = distribution_entropy(s, full, false);
    CHECK(std::abs(h - rank_entropy(s, full, false).convert_to<double>() * unit) < 1e-9);
}

TEST_CASE("distribution entropy refuses oversized seed spaces") {
    const LinearScheme s = build_cube_scheme(4);
    CHECK_THROWS_AS(distribution_entropy(s, 1, false), SizeError);
}

TEST_CASE("maximal independent set counts") {
    CHECK(maximal_independent_sets(hypercube(2)) ==
          std::vector<VertexSet>{0b0110, 0b1001});
    CHECK(maximal_independent_sets(hypercube(3)).size() == 6);
    CHECK(maximal_independent_sets(hypercube(4)).size() == 42);
    CHECK(maximal_independent_sets(hypercube(5)).size() == 1670);
    CHECK(maximal_independent_sets(lattice_window(2, 4)).size() == 42);
    CHECK(maximal_independent_sets(path_graph(4)) ==
          std::vector<VertexSet>{0b0101, 0b1001, 0b1010});

    const auto sets = maximal_independent_sets(hypercube(4));
    const Graph g = hypercube(4);
    for (VertexSet s : sets) {
        CHECK(is_independent(g, s));
        // maximality: every outside vertex has a neighbor inside
        for (int v = 0; v < g.n(); ++v)
            if (!(s >> v & 1)) CHECK((g.neighbor_mask(v) & s) != 0);
    }
}

TEST_CASE("perfectness checker flags an unqualified edge") {
    // both endpoints hold the same masked value, so the edge learns nothing
    const FieldSpec f(3);
    MatrixGF secret(1, 2, f);
    secret.at(0, 0) = 1;
    MatrixGF row(1, 2, f);
    row.at(0, 1) = 1;
    const LinearScheme s(f, 2, secret, {{0, row}, {1, row}}, hypercube(1));
    const PerfectReport rep = check_perfect(s);
    CHECK_FALSE(rep.perfect());
    REQUIRE(rep.qualified_failures.size() == 1);
    CHECK(rep.qualified_failures[0] == std::pair<int, int>{0, 1});
    CHECK(rep.independence_failures.empty());
}

TEST_CASE("perfectness checker flags a leaky vertex") {
    // party 0 holds the secret itself
    const FieldSpec f(3);
    MatrixGF secret(1, 2, f);
    secret.at(0, 0) = 1;
    MatrixGF leak(1, 2, f);
    leak.at(0, 0) = 1;
    MatrixGF mask(1, 2, f);
    mask.at(0, 0) = 1;
    mask.at(0, 1) = 1;
    const LinearScheme s(f, 2, secret, {{0, leak}, {1, mask}}, hypercube(1));
    const PerfectReport rep = check_perfect(s);
    CHECK_FALSE(rep.perfect());
    CHECK(rep.qualified_failures.empty());
    REQUIRE(rep.independence_failures.size() == 1);
    CHECK(rep.independence_failures[0] == VertexSet{0b01});
}

TEST_CASE("ratio report totals") {
    const RatioReport r = ratio_report(build_cube_scheme(3));
    REQUIRE(r.per_vertex.size() == 8);
    for (const Rational& x : r.per_vertex) CHECK(x == Rational(3, 2));
    CHECK(r.average == Rational(3, 2));
    CHECK(r.worst == Rational(3, 2));
}

TEST_CASE("axiom sweep accepts real scheme profiles") {
    for (int d = 2; d <= 3; ++d) {
        const LinearScheme s = build_cube_scheme(d);
        CHECK(verify_axioms(scheme_polymatroid(s), s.graph()).empty());
    }
    const LinearScheme path = combine_schemes(build_lattice_cover(1, 4));
    CHECK(verify_axioms(scheme_polymatroid(path), path.graph()).empty());
}

TEST_CASE("axiom sweep catches a nonzero empty set") {
    const Graph g = custom(1, {});
    const auto violations = verify_axioms(synthetic(1, {1, 1}), g);
    REQUIRE_FALSE(violations.empty());
    CHECK(violations[0].axiom == 'a');
}

TEST_CASE("axiom sweep catches negative values") {
    const Graph g = custom(1, {});
    const auto violations = verify_axioms(synthetic(1, {0, -1}), g);
    REQUIRE_FALSE(violations.empty());
    bool has_a = false;
    for (const auto& v : violations) has_a |= (v.axiom == 'a');
    CHECK(has_a);
}

TEST_CASE("axiom sweep catches non-monotone functions") {
    const Graph g = custom(2, {});
    const auto violations = verify_axioms(synthetic(2, {0, 1, 1, 0}), g);
    REQUIRE_FALSE(violations.empty());
    for (const auto& v : violations) CHECK(v.axiom == 'b');
}

TEST_CASE("axiom sweep catches non-submodular functions") {
    const Graph g = custom(2, {});
    const auto violations = verify_axioms(synthetic(2, {0, 0, 0, 1}), g);
    bool has_b = false, has_c = false;
    for (const auto& v : violations) {
        has_b |= (v.axiom == 'b');
        has_c |= (v.axiom == 'c');
    }
    CHECK(has_c);
    CHECK_FALSE(has_b);
}

TEST_CASE("axiom sweep catches missing secret-entropy jumps") {
    // all-zero profile on an edge: joining the two shares must add a unit
    const auto violations = verify_axioms(synthetic(2, {0, 0, 0, 0}), hypercube(1));
    REQUIRE_FALSE(violations.empty());
    for (const auto& v : violations) CHECK(v.axiom == 'd');

    // on a 3-path the all-zero profile also violates the conditional form:
    // two overlapping edges with an independent intersection
    const auto path_violations = verify_axioms(synthetic(3, std::vector<Rational>(8, 0)),
                                               path_graph(3));
    bool has_d = false, has_e = false;
    for (const auto& v : path_violations) {
        has_d |= (v.axiom == 'd');
        has_e |= (v.axiom == 'e');
    }
    CHECK(has_d);
    CHECK(has_e);
}

TEST_CASE("axiom violations report the failing inequality") {
    const auto violations = verify_axioms(synthetic(2, {0, 0, 0, 0}), hypercube(1));
    REQUIRE_FALSE(violations.empty());
    CHECK(violations[0].left < violations[0].right);
    CHECK_FALSE(violations[0].detail.empty());
}

TEST_CASE("axiom sweep on a 12-vertex window uses sampling and stays deterministic") {
    const LinearScheme s = combine_schemes(build_lattice_cover(1, 12));
    const PolymatroidFn f = scheme_polymatroid(s);
    CHECK(verify_axioms(f, s.graph()).empty());

    // planted violation: shave the top set's value so submodularity breaks
    std::vector<Rational> vals = f.values();
    vals.back() += 5;
    const auto first = verify_axioms(PolymatroidFn(12, vals, PolymatroidFn::Source::Synthetic),
                                     s.graph());
    const auto second = verify_axioms(PolymatroidFn(12, vals, PolymatroidFn::Source::Synthetic),
                                      s.graph());
    REQUIRE_FALSE(first.empty());
    CHECK(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i].axiom == second[i].axiom);
        CHECK(first[i].a == second[i].a);
        CHECK(first[i].b == second[i].b);
    }
}

TEST_CASE("axiom sweep refuses oversized functions") {
    const Graph g = path_graph(17);
    std::vector<Rational> zeros(std::size_t{1} << 17, 0);
    CHECK_THROWS_AS(verify_axioms(synthetic(17, std::move(zeros)), g), SizeError);
}
