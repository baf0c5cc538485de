#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hypershare/errors.hpp"

namespace hypershare {

bool is_prime(std::uint32_t n);
std::uint32_t smallest_prime_at_least(std::uint32_t n);

// Prime field GF(p), p < 2^31. Elements are uint32_t values reduced mod p.
// All operations are pure; FieldSpec values are freely copyable.
struct FieldSpec {
    std::uint32_t p;

    explicit FieldSpec(std::uint32_t prime);

    bool operator==(const FieldSpec&) const = default;

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : a + p - b;
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    std::uint32_t inv(std::uint32_t a) const; // throws on a == 0
    std::uint32_t reduce(std::int64_t x) const {
        std::int64_t r = x % static_cast<std::int64_t>(p);
        return static_cast<std::uint32_t>(r < 0 ? r + p : r);
    }
};

// Dense row-major matrix over GF(p).
class MatrixGF {
public:
    MatrixGF(std::size_t rows, std::size_t cols, FieldSpec f);
    static MatrixGF identity(std::size_t n, FieldSpec f);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldSpec& field() const { return field_; }

    std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<const std::uint32_t> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }
    const std::vector<std::uint32_t>& data() const { return data_; }

    void append_row(std::span<const std::uint32_t> row);

    std::size_t rank() const;

    bool operator==(const MatrixGF&) const = default;

private:
    std::size_t rows_, cols_;
    FieldSpec field_;
    std::vector<std::uint32_t> data_;
};

// Incremental row-echelon accumulator. add_row reduces the row against the
// pivots seen so far and returns true iff it increased the rank.
class Eliminator {
public:
    Eliminator(std::size_t cols, FieldSpec f);

    bool add_row(std::span<const std::uint32_t> row);
    std::size_t rank() const { return pivots_.size(); }
    std::size_t cols() const { return cols_; }

    // Reduces `row` in place against the stored pivots (no rank change).
    void reduce(std::vector<std::uint32_t>& row) const;

private:
    std::size_t cols_;
    FieldSpec field_;
    std::vector<std::size_t> pivot_col_;            // per stored row
    std::vector<std::vector<std::uint32_t>> pivots_; // normalized echelon rows
};

// Vandermonde family (1, t_i, t_i^2, ..., t_i^(dim-1)) with t_i = i for
// i = 0..count-1. Any dim of the returned rows are linearly independent,
// which is re-verified at construction: exhaustively when C(count, dim) is
// at most 10^5, otherwise on 10^4 deterministically sampled subsets.
MatrixGF general_position_vectors(std::size_t count, std::size_t dim, FieldSpec f);

} // namespace hypershare
