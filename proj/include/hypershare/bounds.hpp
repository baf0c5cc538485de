#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypershare/entropy.hpp"
#include "hypershare/errors.hpp"
#include "hypershare/graphs.hpp"
#include "hypershare/rational.hpp"

namespace hypershare {

inline constexpr int kMaxLpVertices = 12;

enum class Objective { Average, Worst };

std::string objective_name(Objective o);
Objective objective_from_name(const std::string& name);

// Variables are the values f(S) for nonempty subsets S, indexed S-1; f(empty)
// is fixed to zero and never appears. Worst-case problems add one epigraph
// variable t at index 2^n - 1. All rows have sense >=.
struct LPTerm {
    std::uint32_t var = 0;
    Rational coeff;
};

struct LPRow {
    std::vector<LPTerm> terms;
    Rational rhs;
};

struct LPProblem {
    int n = 0;
    Objective objective = Objective::Average;
    bool epigraph = false;
    std::vector<Rational> cost;
    std::vector<LPRow> rows;

    std::size_t var_count() const {
        return (std::size_t{1} << n) - 1 + (epigraph ? 1 : 0);
    }
    static std::uint32_t var_of(VertexSet mask) {
        if (mask == 0) throw InvalidArgumentError("empty set is not an LP variable");
        return static_cast<std::uint32_t>(mask - 1);
    }
    std::uint32_t epigraph_var() const {
        if (!epigraph) throw InvalidArgumentError("problem has no epigraph variable");
        return static_cast<std::uint32_t>((std::size_t{1} << n) - 1);
    }
};

struct LPSolution {
    Rational optimum;
    PolymatroidFn witness;
    std::size_t iterations = 0;
    bool escalated = false;
};

LPProblem build_entropy_lp(const Graph& g, Objective objective,
                           bool full_strong_submodularity = false);

// Exact rational simplex; deterministic and independent of input row order.
LPSolution solve_lp(const LPProblem& p);

// Solves the elemental relaxation, then re-checks the witness against the
// general axioms and escalates to full strong submodularity if needed.
LPSolution solve_entropy_lp(const Graph& g, Objective objective);

std::string export_lp(const LPProblem& p);

// [A,B] = sum_{b in B} f(A + b) - sum_{a in A} f(A - a); |A| = |B|, disjoint.
Rational bracket(const PolymatroidFn& f, VertexSet a, VertexSet b);

struct CertificateLine {
    std::string instance;
    Rational left;
    Rational right;
    Rational slack;
};

struct Certificate {
    std::string lemma;
    int d = 0;
    int k = 0;
    std::vector<CertificateLine> lines;
    bool valid() const;
};

std::string export_certificate(const Certificate& c);

Certificate check_lemma1(const PolymatroidFn& f, int d);

struct LemmaParts {
    VertexSet a = 0;
    VertexSet a_star = 0;
    VertexSet b = 0;
    VertexSet b_star = 0;
    VertexSet a_prime = 0;
    VertexSet b_prime = 0;
};

Certificate check_lemma2(const PolymatroidFn& f, const Graph& g, const LemmaParts& parts);

Certificate check_lemma_path(const PolymatroidFn& f, int k);

Certificate check_lemma_dk(const PolymatroidFn& f, int d, int k);

struct LowerBoundReport {
    int d = 0;
    int k = 0;
    Rational value;
    std::vector<std::string> derivation;
};

LowerBoundReport lattice_lower_bound(int d, int k);

struct SymmetryReport {
    LPSolution average;
    LPSolution worst;
    bool equal = false;
};

SymmetryReport symmetry_check(int d);

} // namespace hypershare
