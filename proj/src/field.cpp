#include "hypershare/field.hpp"

#include <algorithm>
#include <string>

#include "hypershare/rng.hpp"

namespace hypershare {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

std::uint32_t smallest_prime_at_least(std::uint32_t n) {
    std::uint32_t c = std::max<std::uint32_t>(n, 2);
    while (!is_prime(c)) ++c;
    return c;
}

FieldSpec::FieldSpec(std::uint32_t prime) : p(prime) {
    if (prime >= (1u << 31)) {
        throw InvalidArgumentError("field modulus must be below 2^31, got " + std::to_string(prime));
    }
    if (!is_prime(prime)) {
        throw InvalidArgumentError("field modulus must be prime, got " + std::to_string(prime));
    }
}

std::uint32_t FieldSpec::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t base = a % p, acc = 1 % p;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

std::uint32_t FieldSpec::inv(std::uint32_t a) const {
    if (a % p == 0) throw InvalidArgumentError("division by zero in GF(" + std::to_string(p) + ")");
    return pow(a, p - 2);
}

MatrixGF::MatrixGF(std::size_t rows, std::size_t cols, FieldSpec f)
    : rows_(rows), cols_(cols), field_(f), data_(rows * cols, 0) {}

MatrixGF MatrixGF::identity(std::size_t n, FieldSpec f) {
    MatrixGF m(n, n, f);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

void MatrixGF::append_row(std::span<const std::uint32_t> row) {
    if (row.size() != cols_) throw InvalidArgumentError("row length mismatch in MatrixGF::append_row");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
}

std::size_t MatrixGF::rank() const {
    Eliminator e(cols_, field_);
    for (std::size_t r = 0; r < rows_; ++r) e.add_row(row(r));
    return e.rank();
}

Eliminator::Eliminator(std::size_t cols, FieldSpec f) : cols_(cols), field_(f) {}

void Eliminator::reduce(std::vector<std::uint32_t>& row) const {
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        const std::uint32_t c = row[pivot_col_[i]];
        if (c == 0) continue;
        const auto& pr = pivots_[i];
        for (std::size_t j = pivot_col_[i]; j < cols_; ++j) {
            if (pr[j]) row[j] = field_.sub(row[j], field_.mul(c, pr[j]));
        }
    }
}

bool Eliminator::add_row(std::span<const std::uint32_t> row) {
    std::vector<std::uint32_t> work(row.begin(), row.end());
    reduce(work);
    auto lead = std::find_if(work.begin(), work.end(), [](std::uint32_t x) { return x != 0; });
    if (lead == work.end()) return false;
    const std::size_t col = static_cast<std::size_t>(lead - work.begin());
    const std::uint32_t scale = field_.inv(work[col]);
    for (std::size_t j = col; j < cols_; ++j) work[j] = field_.mul(work[j], scale);
    pivot_col_.push_back(col);
    pivots_.push_back(std::move(work));
    return true;
}

namespace {

// Exhaustive or sampled verification that every dim-subset of rows spans.
void verify_general_position(const MatrixGF& vecs, std::size_t dim) {
    const std::size_t m = vecs.rows();
    if (m < dim) return; // no dim-subsets to check

    auto subset_full_rank = [&](const std::vector<std::size_t>& idx) {
        Eliminator e(dim, vecs.field());
        for (std::size_t i : idx) e.add_row(vecs.row(i));
        return e.rank() == dim;
    };

    // C(m, dim), saturating well above the exhaustive threshold.
    double combos = 1.0;
    for (std::size_t i = 0; i < dim; ++i) combos *= double(m - i) / double(i + 1);

    if (combos <= 1e5) {
        std::vector<std::size_t> idx(dim);
        for (std::size_t i = 0; i < dim; ++i) idx[i] = i;
        while (true) {
            if (!subset_full_rank(idx)) {
                throw Error("general-position check failed on an exhaustive subset");
            }
            std::size_t i = dim;
            while (i > 0 && idx[i - 1] == m - dim + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < dim; ++j) idx[j] = idx[j - 1] + 1;
        }
    } else {
        Rng rng(0x67656e706f73ULL); // fixed: the check is part of the contract
        for (int trial = 0; trial < 10000; ++trial) {
            std::vector<std::size_t> idx;
            while (idx.size() < dim) {
                std::size_t cand = rng.below(m);
                if (std::find(idx.begin(), idx.end(), cand) == idx.end()) idx.push_back(cand);
            }
            if (!subset_full_rank(idx)) {
                throw Error("general-position check failed on a sampled subset");
            }
        }
    }
}

} // namespace

MatrixGF general_position_vectors(std::size_t count, std::size_t dim, FieldSpec f) {
    if (dim < 1) throw InvalidArgumentError("general_position_vectors: dim must be >= 1");
    if (f.p < count) {
        throw FieldTooSmallError("need p >= " + std::to_string(count) +
                                 " distinct Vandermonde nodes, field has p = " + std::to_string(f.p));
    }
    MatrixGF vecs(count, dim, f);
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint32_t t = static_cast<std::uint32_t>(i % f.p);
        std::uint32_t power = 1;
        for (std::size_t j = 0; j < dim; ++j) {
            vecs.at(i, j) = power;
            power = f.mul(power, t);
        }
    }
    verify_general_position(vecs, dim);
    return vecs;
}

} // namespace hypershare
