#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hypershare/field.hpp"
#include "hypershare/rng.hpp"

#include <vector>

using namespace hypershare;

TEST_CASE("primality helpers") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(7));
    CHECK(is_prime(29));
    CHECK(is_prime(83));
    CHECK(is_prime(2147483647u));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(4));
    CHECK_FALSE(is_prime(91)); // 7 * 13

    CHECK(smallest_prime_at_least(0) == 2);
    CHECK(smallest_prime_at_least(2) == 2);
    CHECK(smallest_prime_at_least(6) == 7);
    CHECK(smallest_prime_at_least(24) == 29);
    CHECK(smallest_prime_at_least(29) == 29);
    CHECK(smallest_prime_at_least(80) == 83);
}

TEST_CASE("FieldSpec rejects composites") {
    CHECK_THROWS_AS(FieldSpec(0), InvalidArgumentError);
    CHECK_THROWS_AS(FieldSpec(1), InvalidArgumentError);
    CHECK_THROWS_AS(FieldSpec(4), InvalidArgumentError);
    CHECK_THROWS_AS(FieldSpec(100), InvalidArgumentError);
    CHECK(FieldSpec(7).p == 7);
}

TEST_CASE("field arithmetic identities") {
    for (std::uint32_t p : {2u, 3u, 7u, 29u, 83u}) {
        const FieldSpec f(p);
        Rng rng(0x66696c64ULL + p);
        for (int i = 0; i < 200; ++i) {
            const auto a = static_cast<std::uint32_t>(rng.below(p));
            const auto b = static_cast<std::uint32_t>(rng.below(p));
            CHECK(f.sub(f.add(a, b), b) == a);
            CHECK(f.add(a, f.neg(a)) == 0);
            CHECK(f.mul(a, b) == f.mul(b, a));
            if (a != 0) {
                CHECK(f.mul(a, f.inv(a)) == 1);
                CHECK(f.pow(a, p - 1) == 1); // Fermat
            }
        }
        CHECK(f.reduce(-1) == p - 1);
        CHECK(f.reduce(static_cast<std::int64_t>(p) * 5 + 3) == 3 % p);
        CHECK(f.pow(0, 0) == 1);
        CHECK_THROWS_AS(f.inv(0), Error);
    }
}

namespace {

// Plain Gaussian elimination, kept separate from the library's eliminator.
std::size_t reference_rank(std::vector<std::vector<std::uint32_t>> rows, const FieldSpec& f) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        const std::uint32_t inv = f.inv(rows[r][c]);
        for (auto& x : rows[r]) x = f.mul(x, inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const std::uint32_t factor = rows[i][c];
            for (std::size_t j = 0; j < cols; ++j)
                rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
        }
        ++r;
    }
    return r;
}

} // namespace

TEST_CASE("matrix rank agrees with a reference elimination") {
    const FieldSpec f(7);
    CHECK(MatrixGF::identity(5, f).rank() == 5);
    CHECK(MatrixGF(3, 4, f).rank() == 0);

    Rng rng(0x72616e6bULL);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t rows = 1 + rng.below(6), cols = 1 + rng.below(7);
        MatrixGF m(rows, cols, f);
        std::vector<std::vector<std::uint32_t>> copy(rows, std::vector<std::uint32_t>(cols));
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                copy[r][c] = m.at(r, c) = static_cast<std::uint32_t>(rng.below(f.p));
        CHECK(m.rank() == reference_rank(copy, f));
    }
}

TEST_CASE("matrix append_row extends the data") {
    const FieldSpec f(3);
    MatrixGF m(1, 3, f);
    m.at(0, 0) = 1;
    const std::vector<std::uint32_t> extra = {2, 1, 0};
    m.append_row(extra);
    CHECK(m.rows() == 2);
    CHECK(m.at(1, 0) == 2);
    CHECK(m.rank() == 2);
}

TEST_CASE("eliminator tracks rank incrementally") {
    const FieldSpec f(7);
    Rng rng(0x656c696dULL);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t cols = 1 + rng.below(8);
        Eliminator elim(cols, f);
        std::vector<std::vector<std::uint32_t>> seen;
        for (int i = 0; i < 12; ++i) {
            std::vector<std::uint32_t> row(cols);
            for (auto& x : row) x = static_cast<std::uint32_t>(rng.below(f.p));
            seen.push_back(row);
            const std::size_t before = elim.rank();
            const bool grew = elim.add_row(row);
            CHECK(elim.rank() == before + (grew ? 1 : 0));
            CHECK(elim.rank() == reference_rank(seen, f));
        }
        // reduce() maps anything in the row space to zero
        std::vector<std::uint32_t> combo(cols, 0);
        for (const auto& row : seen)
            for (std::size_t j = 0; j < cols; ++j)
                combo[j] = f.add(combo[j], f.mul(2, row[j]));
        elim.reduce(combo);
        for (auto x : combo) CHECK(x == 0);
    }
}

TEST_CASE("general position vectors are pairwise independent in dimension 2") {
    const FieldSpec f(7);
    const MatrixGF vecs = general_position_vectors(6, 2, f);
    REQUIRE(vecs.rows() == 6);
    REQUIRE(vecs.cols() == 2);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j) {
            // 2x2 determinant, computed directly
            const std::int64_t det = std::int64_t{vecs.at(i, 0)} * vecs.at(j, 1) -
                                     std::int64_t{vecs.at(i, 1)} * vecs.at(j, 0);
            CHECK(f.reduce(det) != 0);
        }
}

TEST_CASE("general position vectors: every dim-subset has full rank") {
    const FieldSpec f(29);
    const MatrixGF vecs = general_position_vectors(24, 3, f);
    Rng rng(0x67656e70ULL);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::size_t> pick;
        while (pick.size() < 3) {
            const std::size_t c = rng.below(24);
            bool dup = false;
            for (auto x : pick) dup |= (x == c);
            if (!dup) pick.push_back(c);
        }
        std::vector<std::vector<std::uint32_t>> rows;
        for (auto r : pick)
            rows.emplace_back(vecs.row(r).begin(), vecs.row(r).end());
        CHECK(reference_rank(rows, f) == 3);
    }
}

TEST_CASE("general position vectors reject a too-small field") {
    CHECK_THROWS_AS(general_position_vectors(6, 2, FieldSpec(5)), FieldTooSmallError);
    CHECK_THROWS_AS(general_position_vectors(4, 1, FieldSpec(3)), FieldTooSmallError);
    CHECK_THROWS_AS(general_position_vectors(3, 0, FieldSpec(5)), InvalidArgumentError);
    CHECK_NOTHROW(general_position_vectors(7, 2, FieldSpec(7)));
}
