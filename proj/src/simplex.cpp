#include <algorithm>
#include <cstddef>

#include "hypershare/bounds.hpp"

// Solves min c.x, Ax >= b, x >= 0 by running the primal simplex method on
// the dual max b.y, A'y <= c, y >= 0. The slack basis is feasible there
// because c >= 0, so no phase-one is needed, and the final simplex
// multipliers are exactly the primal witness. The witness is re-verified
// against every constraint before being returned.

namespace hypershare {

namespace {

struct CanonRow {
    std::vector<LPTerm> terms;
    Rational rhs;
};

CanonRow canonicalize(const LPRow& row, std::size_t var_count) {
    CanonRow out;
    out.rhs = row.rhs;
    out.terms = row.terms;
    for (const LPTerm& t : out.terms)
        if (t.var >= var_count)
            throw InvalidArgumentError("constraint references an unknown variable");
    std::sort(out.terms.begin(), out.terms.end(),
              [](const LPTerm& x, const LPTerm& y) { return x.var < y.var; });
    std::vector<LPTerm> merged;
    for (LPTerm& t : out.terms) {
        if (!merged.empty() && merged.back().var == t.var)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const LPTerm& t) { return t.coeff == 0; });
    out.terms = std::move(merged);
    return out;
}

// Total order on rows: by term list, then right-hand side.
int compare_rows(const CanonRow& x, const CanonRow& y) {
    const std::size_t k = std::min(x.terms.size(), y.terms.size());
    for (std::size_t i = 0; i < k; ++i) {
        if (x.terms[i].var != y.terms[i].var) return x.terms[i].var < y.terms[i].var ? -1 : 1;
        if (x.terms[i].coeff != y.terms[i].coeff) return x.terms[i].coeff < y.terms[i].coeff ? -1 : 1;
    }
    if (x.terms.size() != y.terms.size()) return x.terms.size() < y.terms.size() ? -1 : 1;
    if (x.rhs != y.rhs) return x.rhs < y.rhs ? -1 : 1;
    return 0;
}

bool same_terms(const CanonRow& x, const CanonRow& y) {
    if (x.terms.size() != y.terms.size()) return false;
    for (std::size_t i = 0; i < x.terms.size(); ++i)
        if (x.terms[i].var != y.terms[i].var || x.terms[i].coeff != y.terms[i].coeff)
            return false;
    return true;
}

} // namespace

LPSolution solve_lp(const LPProblem& p) {
    if (p.n < 1) throw InvalidArgumentError("LP needs at least one vertex");
    if (p.n > kMaxLpVertices) throw SizeError("LP capped at 12 vertices");
    const std::size_t n_vars = p.var_count();
    if (p.cost.size() != n_vars) throw InvalidArgumentError("objective vector length mismatch");
    for (const Rational& c : p.cost)
        if (c < 0) throw InvalidArgumentError("solver requires a nonnegative objective");

    std::vector<CanonRow> rows;
    rows.reserve(p.rows.size());
    for (const LPRow& r : p.rows) {
        CanonRow cr = canonicalize(r, n_vars);
        if (cr.terms.empty()) {
            if (cr.rhs > 0) throw SolverError("constraint with empty support and positive bound");
            continue;
        }
        rows.push_back(std::move(cr));
    }
    std::sort(rows.begin(), rows.end(),
              [](const CanonRow& x, const CanonRow& y) { return compare_rows(x, y) < 0; });
    std::vector<CanonRow> dedup;
    for (CanonRow& r : rows) {
        if (!dedup.empty() && same_terms(dedup.back(), r))
            dedup.back().rhs = r.rhs; // rows sorted, so this keeps the largest bound
        else
            dedup.push_back(std::move(r));
    }
    rows = std::move(dedup);

    const std::size_t n_cols = rows.size();

    std::vector<std::vector<Rational>> binv(n_vars, std::vector<Rational>(n_vars));
    for (std::size_t i = 0; i < n_vars; ++i) binv[i][i] = 1;
    std::vector<Rational> xb(p.cost.begin(), p.cost.end());
    std::vector<std::size_t> basis(n_vars);
    std::vector<char> in_basis(n_cols + n_vars, 0);
    for (std::size_t i = 0; i < n_vars; ++i) {
        basis[i] = n_cols + i;
        in_basis[n_cols + i] = 1;
    }

    std::vector<Rational> pi(n_vars);
    std::vector<Rational> u(n_vars);
    std::size_t pivots = 0;
    std::size_t degenerate_streak = 0;
    bool bland = false;
    const std::size_t bland_trigger = 3 * n_vars + 50;
    const std::size_t pivot_cap = 200000;

    while (true) {
        for (std::size_t r = 0; r < n_vars; ++r) pi[r] = 0;
        for (std::size_t i = 0; i < n_vars; ++i) {
            if (basis[i] >= n_cols) continue;
            const Rational& gain = rows[basis[i]].rhs;
            if (gain == 0) continue;
            for (std::size_t r = 0; r < n_vars; ++r)
                if (binv[i][r] != 0) pi[r] += gain * binv[i][r];
        }

        std::ptrdiff_t enter = -1;
        Rational best;
        for (std::size_t j = 0; j < n_cols + n_vars; ++j) {
            if (in_basis[j]) continue;
            Rational d;
            if (j < n_cols) {
                d = rows[j].rhs;
                for (const LPTerm& t : rows[j].terms) d -= t.coeff * pi[t.var];
            } else {
                d = -pi[j - n_cols];
            }
            if (d > 0) {
                if (bland) {
                    enter = static_cast<std::ptrdiff_t>(j);
                    break;
                }
                if (enter < 0 || d > best) {
                    enter = static_cast<std::ptrdiff_t>(j);
                    best = std::move(d);
                }
            }
        }
        if (enter < 0) break;

        const std::size_t e = static_cast<std::size_t>(enter);
        if (e < n_cols) {
            for (std::size_t i = 0; i < n_vars; ++i) {
                u[i] = 0;
                for (const LPTerm& t : rows[e].terms)
                    if (binv[i][t.var] != 0) u[i] += t.coeff * binv[i][t.var];
            }
        } else {
            const std::size_t s = e - n_cols;
            for (std::size_t i = 0; i < n_vars; ++i) u[i] = binv[i][s];
        }

        std::ptrdiff_t leave = -1;
        Rational best_ratio;
        for (std::size_t i = 0; i < n_vars; ++i) {
            if (u[i] <= 0) continue;
            Rational ratio = xb[i] / u[i];
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[static_cast<std::size_t>(leave)])) {
                leave = static_cast<std::ptrdiff_t>(i);
                best_ratio = std::move(ratio);
            }
        }
        if (leave < 0)
            throw SolverError("unbounded dual: the constraint system is infeasible");
        const std::size_t l = static_cast<std::size_t>(leave);

        if (xb[l] == 0) {
            if (++degenerate_streak > bland_trigger) bland = true;
        } else {
            degenerate_streak = 0;
        }
        if (++pivots > pivot_cap) throw SolverError("pivot cap exceeded");

        const Rational piv = u[l];
        for (std::size_t r = 0; r < n_vars; ++r)
            if (binv[l][r] != 0) binv[l][r] /= piv;
        xb[l] /= piv;
        for (std::size_t i = 0; i < n_vars; ++i) {
            if (i == l || u[i] == 0) continue;
            const Rational factor = u[i];
            for (std::size_t r = 0; r < n_vars; ++r)
                if (binv[l][r] != 0) binv[i][r] -= factor * binv[l][r];
            xb[i] -= factor * xb[l];
        }
        in_basis[basis[l]] = 0;
        in_basis[e] = 1;
        basis[l] = e;
    }

    // pi now holds the optimal primal vector
    for (const Rational& v : pi)
        if (v < 0) throw SolverError("witness check failed: negative value");
    for (const CanonRow& r : rows) {
        Rational lhs = 0;
        for (const LPTerm& t : r.terms) lhs += t.coeff * pi[t.var];
        if (lhs < r.rhs) throw SolverError("witness check failed: violated constraint");
    }
    Rational primal_value = 0;
    for (std::size_t j = 0; j < n_vars; ++j)
        if (pi[j] != 0) primal_value += p.cost[j] * pi[j];
    Rational dual_value = 0;
    for (std::size_t i = 0; i < n_vars; ++i)
        if (basis[i] < n_cols) dual_value += rows[basis[i]].rhs * xb[i];
    if (primal_value != dual_value)
        throw SolverError("witness check failed: duality gap");

    std::vector<Rational> values(std::size_t{1} << p.n);
    for (VertexSet mask = 1; mask < (VertexSet{1} << p.n); ++mask)
        values[mask] = pi[mask - 1];
    PolymatroidFn witness(p.n, std::move(values), PolymatroidFn::Source::LpWitness);
    return LPSolution{std::move(primal_value), std::move(witness), pivots, false};
}

} // namespace hypershare
