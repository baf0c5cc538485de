#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hypershare/graphs.hpp"
#include "hypershare/rational.hpp"
#include "hypershare/scheme.hpp"

namespace hypershare {

// Normalized entropy profile: one rational per vertex subset, with
// H(secret) scaled to 1. Indexed by subset bitmask.
class PolymatroidFn {
public:
    enum class Source { SchemeDerived, LpWitness, Synthetic };

    PolymatroidFn(int n, std::vector<Rational> values, Source source);

    int n() const { return n_; }
    Source source() const { return source_; }
    const Rational& value(VertexSet a) const;
    const std::vector<Rational>& values() const { return values_; }

private:
    int n_;
    std::vector<Rational> values_;
    Source source_;
};

std::string source_name(PolymatroidFn::Source s);
PolymatroidFn::Source source_from_name(const std::string& name);

inline constexpr int kMaxTabulateVertices = 20;     // 2^n rationals
inline constexpr int kMaxIndependenceVertices = 32; // maximal-set enumeration
inline constexpr double kMaxSeedSpace = 1e8;        // distribution enumeration

// rank(stacked share rows of the subset [plus the secret rows]) divided by
// rank(secret rows). For linear maps of a uniform seed this is the joint
// entropy in units of the secret entropy.
Rational rank_entropy(const LinearScheme& s, VertexSet subset, bool include_secret);

// Tabulates rank_entropy over all 2^n subsets.
PolymatroidFn scheme_polymatroid(const LinearScheme& s);

// Shannon entropy (bits) of the joint share distribution, computed by
// enumerating every seed. Independent of the rank oracle: agreement within
// 1e-9 bits of rank_entropy * secret_len * log2(p) is the cross-check.
double distribution_entropy(const LinearScheme& s, VertexSet subset, bool include_secret);

// All maximal independent sets, by pivoting branch-and-bound.
std::vector<VertexSet> maximal_independent_sets(const Graph& g);

struct PerfectReport {
    // Edges whose two shares do not determine the secret.
    std::vector<std::pair<int, int>> qualified_failures;
    // Maximal independent sets whose shares are correlated with the secret.
    std::vector<VertexSet> independence_failures;

    bool perfect() const {
        return qualified_failures.empty() && independence_failures.empty();
    }
};

// Every edge must satisfy rank(shares+secret) = rank(shares); every maximal
// independent set must satisfy rank(shares+secret) = rank(shares) +
// rank(secret). Monotonicity of mutual information makes maximal sets
// sufficient for the independence side.
PerfectReport check_perfect(const LinearScheme& s);

struct RatioReport {
    std::vector<Rational> per_vertex;
    Rational average;
    Rational worst;
};

RatioReport ratio_report(const LinearScheme& s);

struct AxiomViolation {
    char axiom;   // 'a'..'e'
    VertexSet a;  // witness subsets; b is 0 for the unary checks
    VertexSet b;
    Rational left;  // violated inequality: left >= right fails
    Rational right;
    std::string detail;
};

// Positivity, monotonicity, submodularity, strong monotonicity and strong
// submodularity of f with respect to the graph's independence structure.
// Exhaustive over all subset pairs for n <= 10; for 10 < n <= 16 the
// single-element forms are exhausted and 10^4 seeded random general
// instances are sampled per axiom.
std::vector<AxiomViolation> verify_axioms(const PolymatroidFn& f, const Graph& g);

} // namespace hypershare
