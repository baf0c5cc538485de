#include "hypershare/bounds.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>

namespace hypershare {

std::string objective_name(Objective o) {
    return o == Objective::Average ? "average" : "worst";
}

Objective objective_from_name(const std::string& name) {
    if (name == "average") return Objective::Average;
    if (name == "worst") return Objective::Worst;
    throw ParseError("unknown objective: " + name);
}

namespace {

std::vector<char> independence_table(const Graph& g) {
    const VertexSet full = g.full_mask();
    std::vector<char> ind(std::size_t{1} << g.n());
    ind[0] = 1;
    for (VertexSet m = 1; m <= full; ++m) {
        const int v = std::countr_zero(m);
        const VertexSet rest = m & (m - 1);
        ind[m] = ind[rest] && !(g.neighbor_mask(v) & rest);
    }
    return ind;
}

} // namespace

LPProblem build_entropy_lp(const Graph& g, Objective objective, bool full_strong_submodularity) {
    if (g.n() > kMaxLpVertices) throw SizeError("entropy LP capped at 12 vertices");
    const int n = g.n();
    const VertexSet full = g.full_mask();
    const std::vector<char> ind = independence_table(g);

    LPProblem p;
    p.n = n;
    p.objective = objective;
    p.epigraph = objective == Objective::Worst;
    p.cost.assign(p.var_count(), Rational(0));
    if (objective == Objective::Average) {
        for (int v = 0; v < n; ++v) p.cost[LPProblem::var_of(VertexSet{1} << v)] = Rational(1, n);
    } else {
        p.cost[p.epigraph_var()] = 1;
    }

    // f(empty) is identically zero, so empty-set terms are dropped.
    auto push = [&p](std::initializer_list<std::pair<VertexSet, int>> entries, int rhs) {
        LPRow row;
        row.rhs = rhs;
        for (const auto& [mask, coeff] : entries)
            if (mask != 0) row.terms.push_back({LPProblem::var_of(mask), Rational(coeff)});
        p.rows.push_back(std::move(row));
    };

    for (VertexSet a = 0; a <= full; ++a) {
        for (VertexSet vs = full & ~a; vs;) {
            const int v = std::countr_zero(vs);
            vs &= vs - 1;
            const VertexSet av = a | (VertexSet{1} << v);
            push({{av, 1}, {a, -1}}, 0);
            if (ind[a] && !ind[av]) push({{av, 1}, {a, -1}}, 1);
            for (VertexSet ws = vs; ws;) {
                const int w = std::countr_zero(ws);
                ws &= ws - 1;
                const VertexSet aw = a | (VertexSet{1} << w);
                const VertexSet avw = av | (VertexSet{1} << w);
                push({{av, 1}, {aw, 1}, {a, -1}, {avw, -1}}, 0);
                if (ind[a] && !ind[av] && !ind[aw])
                    push({{av, 1}, {aw, 1}, {a, -1}, {avw, -1}}, 1);
            }
        }
        if (a == full) break;
    }

    if (full_strong_submodularity) {
        for (VertexSet s = 1; s < full; ++s) {
            if (ind[s]) continue;
            for (VertexSet t = s + 1; t <= full; ++t) {
                if (ind[t] || !ind[s & t]) continue;
                push({{s, 1}, {t, 1}, {s & t, -1}, {s | t, -1}}, 1);
            }
        }
    }

    if (objective == Objective::Worst) {
        for (int v = 0; v < n; ++v) {
            LPRow row;
            row.rhs = 0;
            row.terms.push_back({p.epigraph_var(), Rational(1)});
            row.terms.push_back({LPProblem::var_of(VertexSet{1} << v), Rational(-1)});
            p.rows.push_back(std::move(row));
        }
    }
    return p;
}

LPSolution solve_entropy_lp(const Graph& g, Objective objective) {
    LPSolution sol = solve_lp(build_entropy_lp(g, objective));
    std::vector<AxiomViolation> bad = verify_axioms(sol.witness, g);
    if (bad.empty()) return sol;
    // Elemental rows imply the general forms of every axiom except strong
    // submodularity, so anything else here is a generator or solver bug.
    for (const AxiomViolation& v : bad)
        if (v.axiom != 'e')
            throw SolverError(std::string("LP witness violates implied axiom (") + v.axiom +
                              "): " + v.detail);
    LPSolution strict = solve_lp(build_entropy_lp(g, objective, true));
    strict.escalated = true;
    if (!verify_axioms(strict.witness, g).empty())
        throw SolverError("LP witness violates axioms even with the full constraint set");
    return strict;
}

namespace {

std::string lp_var_name(const LPProblem& p, std::uint32_t var) {
    if (p.epigraph && var == p.epigraph_var()) return "t";
    std::ostringstream out;
    out << "x" << (var + 1); // variable index back to subset bitmask
    return out.str();
}

void append_term(std::ostream& out, bool& first, const Rational& coeff, const std::string& name) {
    if (coeff == 0) return;
    const Rational mag = coeff < 0 ? Rational(-coeff) : coeff;
    if (first) {
        out << (coeff < 0 ? " -" : " ");
        first = false;
    } else {
        out << (coeff < 0 ? " -" : " +");
    }
    out << ' ' << to_fraction_string(mag) << ' ' << name;
}

} // namespace

std::string export_lp(const LPProblem& p) {
    std::ostringstream out;
    out << "\\ entropy lower-bound program, all coefficients exact rationals (num/den)\n";
    out << "\\ x<k> stands for f(S) where k is the bitmask of the vertex subset S";
    if (p.epigraph) out << "; t bounds every f({v}) from above";
    out << "\nMinimize\n obj:";
    bool first = true;
    for (std::size_t j = 0; j < p.cost.size(); ++j)
        append_term(out, first, p.cost[j], lp_var_name(p, static_cast<std::uint32_t>(j)));
    out << "\nSubject To\n";
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        out << " c" << i << ":";
        first = true;
        for (const LPTerm& t : p.rows[i].terms) append_term(out, first, t.coeff, lp_var_name(p, t.var));
        out << " >= " << to_fraction_string(p.rows[i].rhs) << "\n";
    }
    out << "Bounds\n\\ all variables have default bounds >= 0\nEnd\n";
    return out.str();
}

Rational bracket(const PolymatroidFn& f, VertexSet a, VertexSet b) {
    if (a & b) throw InvalidArgumentError("bracket parts must be disjoint");
    if (popcount(a) != popcount(b)) throw InvalidArgumentError("bracket parts must have equal size");
    Rational acc = 0;
    for (VertexSet rest = b; rest;) {
        const VertexSet bit = rest & (0 - rest);
        rest ^= bit;
        acc += f.value(a | bit);
    }
    for (VertexSet rest = a; rest;) {
        const VertexSet bit = rest & (0 - rest);
        rest ^= bit;
        acc -= f.value(a ^ bit);
    }
    return acc;
}

bool Certificate::valid() const {
    return std::ranges::all_of(lines, [](const CertificateLine& l) { return l.slack >= 0; });
}

std::string export_certificate(const Certificate& c) {
    std::ostringstream out;
    out << "certificate " << c.lemma << " (d=" << c.d << ", k=" << c.k << ")\n";
    for (const CertificateLine& line : c.lines) {
        out << "  " << line.instance << "\n"
            << "    left=" << to_fraction_string(line.left)
            << " right=" << to_fraction_string(line.right)
            << " slack=" << to_fraction_string(line.slack) << "\n";
    }
    out << (c.valid() ? "  valid: every slack is nonnegative\n" : "  INVALID: negative slack\n");
    return out.str();
}

namespace {

Rational vertex_sum(const PolymatroidFn& f) {
    Rational acc = 0;
    for (int v = 0; v < f.n(); ++v) acc += f.value(VertexSet{1} << v);
    return acc;
}

CertificateLine make_line(std::string instance, Rational left, Rational right) {
    Rational slack = left - right;
    return CertificateLine{std::move(instance), std::move(left), std::move(right),
                           std::move(slack)};
}

} // namespace

Certificate check_lemma1(const PolymatroidFn& f, int d) {
    if (d < 1) throw InvalidArgumentError("cube dimension must be at least 1");
    if (d > 20 || f.n() != (1 << d))
        throw InvalidArgumentError("function is not defined on the vertices of a d-cube");
    const Graph g = hypercube(d);
    const ChessboardSplit split = chessboard_split(g);
    const Rational left = vertex_sum(f);
    const long constant = static_cast<long>(d - 1) << (d - 1);
    const Rational right = bracket(f, split.a, split.b) + constant;
    std::ostringstream inst;
    inst << "sum_v f(v) >= [A,B] + (d-1)*2^(d-1) with A=0x" << std::hex << split.a << ", B=0x"
         << split.b << std::dec << ", constant " << constant;
    Certificate c;
    c.lemma = "cube-sum";
    c.d = d;
    c.lines.push_back(make_line(inst.str(), left, right));
    return c;
}

Certificate check_lemma2(const PolymatroidFn& f, const Graph& g, const LemmaParts& parts) {
    if (f.n() != g.n()) throw InvalidArgumentError("function and graph sizes differ");
    const VertexSet full = g.full_mask();
    const std::array<VertexSet, 6> sets = {parts.a,      parts.a_star,  parts.b,
                                           parts.b_star, parts.a_prime, parts.b_prime};
    static const std::array<const char*, 6> names = {"A", "A*", "B", "B*", "A'", "B'"};
    VertexSet seen = 0;
    for (VertexSet s : sets) {
        if (s & ~full) throw LemmaHypothesisError("a part contains vertices outside the graph");
        if (s & seen) throw LemmaHypothesisError("the six parts must be pairwise disjoint");
        seen |= s;
    }
    if (seen != full) throw LemmaHypothesisError("the six parts must cover every vertex");
    const int q = popcount(parts.a);
    if (popcount(parts.b) != q || popcount(parts.a_prime) != q || popcount(parts.b_prime) != q)
        throw LemmaHypothesisError("A, B, A', B' must all have the same size");
    if (popcount(parts.a_star) != popcount(parts.b_star))
        throw LemmaHypothesisError("A* and B* must have the same size");
    if (!is_independent(g, parts.a | parts.a_star | parts.a_prime))
        throw LemmaHypothesisError("A + A* + A' must be independent");
    if (!is_independent(g, parts.b | parts.b_star | parts.b_prime))
        throw LemmaHypothesisError("B + B* + B' must be independent");

    auto part_of = [&sets](int v) {
        const VertexSet bit = VertexSet{1} << v;
        for (int i = 0; i < 6; ++i)
            if (sets[i] & bit) return i;
        throw LemmaHypothesisError("vertex outside every part");
    };

    std::vector<int> matched_a(static_cast<std::size_t>(g.n()), 0);
    std::vector<int> matched_prime(static_cast<std::size_t>(g.n()), 0);
    std::vector<char> b_supported(static_cast<std::size_t>(g.n()), 0);
    std::vector<char> b_prime_supported(static_cast<std::size_t>(g.n()), 0);
    for (auto [u, v] : g.edges()) {
        int pu = part_of(u), pv = part_of(v);
        if (pu > pv) {
            std::swap(u, v);
            std::swap(pu, pv);
        }
        if (pu == 0 && pv == 5) {
            ++matched_a[static_cast<std::size_t>(u)];
            ++matched_a[static_cast<std::size_t>(v)];
        } else if (pu == 2 && pv == 4) {
            ++matched_prime[static_cast<std::size_t>(u)];
            ++matched_prime[static_cast<std::size_t>(v)];
        } else if ((pu == 0 || pu == 1) && (pv == 2 || pv == 3)) {
            if (pv == 2) b_supported[static_cast<std::size_t>(v)] = 1;
        } else if (pu == 4 && pv == 5) {
            b_prime_supported[static_cast<std::size_t>(v)] = 1;
        } else {
            throw LemmaHypothesisError(std::string("edge between ") + names[pu] + " and " +
                                       names[pv] + " is not allowed");
        }
    }
    for (int v = 0; v < g.n(); ++v) {
        const VertexSet bit = VertexSet{1} << v;
        if ((parts.a | parts.b_prime) & bit) {
            if (matched_a[static_cast<std::size_t>(v)] != 1)
                throw LemmaHypothesisError("edges between A and B' must form a perfect matching");
        }
        if ((parts.b | parts.a_prime) & bit) {
            if (matched_prime[static_cast<std::size_t>(v)] != 1)
                throw LemmaHypothesisError("edges between A' and B must form a perfect matching");
        }
        if ((parts.b & bit) && !b_supported[static_cast<std::size_t>(v)])
            throw LemmaHypothesisError("every vertex of B needs a neighbor in A + A*");
        if ((parts.b_prime & bit) && !b_prime_supported[static_cast<std::size_t>(v)])
            throw LemmaHypothesisError("every vertex of B' needs a neighbor in A'");
    }

    const VertexSet aa = parts.a | parts.a_star;
    const VertexSet bb = parts.b | parts.b_star;
    const Rational left = bracket(f, aa, bb) + bracket(f, parts.a_prime, parts.b_prime);
    const Rational right =
        Rational(2 * q) + bracket(f, aa | parts.a_prime, bb | parts.b_prime);
    std::ostringstream inst;
    inst << "[AA*,BB*] + [A',B'] >= 2q + [A'AA*,B'BB*] with q=" << q << ", A=0x" << std::hex
         << parts.a << ", A*=0x" << parts.a_star << ", B=0x" << parts.b << ", B*=0x"
         << parts.b_star << ", A'=0x" << parts.a_prime << ", B'=0x" << parts.b_prime << std::dec;
    Certificate c;
    c.lemma = "level-split";
    c.d = g.d();
    c.k = g.k();
    c.lines.push_back(make_line(inst.str(), left, right));
    return c;
}

Certificate check_lemma_path(const PolymatroidFn& f, int k) {
    if (k < 2 || k % 2 != 0)
        throw InvalidArgumentError("path certificate needs an even vertex count >= 2");
    if (f.n() != k) throw InvalidArgumentError("function is not defined on a k-vertex path");
    const Graph g = path_graph(k);
    const ChessboardSplit split = chessboard_split(g);
    const Rational left = vertex_sum(f);
    const Rational right = bracket(f, split.a, split.b) + Rational(k / 2 - 1);
    std::ostringstream inst;
    inst << "sum_v f(v) >= [A,B] + k/2 - 1 with A=0x" << std::hex << split.a << ", B=0x"
         << split.b << std::dec << ", constant " << (k / 2 - 1);
    Certificate c;
    c.lemma = "path-sum";
    c.k = k;
    c.lines.push_back(make_line(inst.str(), left, right));
    return c;
}

Certificate check_lemma_dk(const PolymatroidFn& f, int d, int k) {
    if (d < 1) throw InvalidArgumentError("window dimension must be at least 1");
    if (k < 2 || k % 2 != 0)
        throw InvalidArgumentError("window certificate needs even k >= 2");
    long size = 1;
    for (int i = 0; i < d; ++i) {
        size *= k;
        if (size > kMaxTabulateVertices)
            throw SizeError("window too large for a tabulated function");
    }
    if (f.n() != size)
        throw InvalidArgumentError("function is not defined on the vertices of the window");
    const Graph g = lattice_window(d, k);
    const ChessboardSplit split = chessboard_split(g);
    const Rational left = vertex_sum(f);
    const long interior = size / k * (k - 1); // k^d - k^(d-1)
    const long constant2 = 2 * d * interior - size; // twice the additive constant
    const Rational constant(constant2, 2);
    const Rational right = bracket(f, split.a, split.b) + constant;
    std::ostringstream inst;
    inst << "sum_v f(v) >= [A,B] + d(k^d - k^(d-1)) - k^d/2 with A=0x" << std::hex << split.a
         << ", B=0x" << split.b << std::dec << ", constant " << to_fraction_string(constant);
    Certificate c;
    c.lemma = "window-sum";
    c.d = d;
    c.k = k;
    c.lines.push_back(make_line(inst.str(), left, right));
    return c;
}

LowerBoundReport lattice_lower_bound(int d, int k) {
    if (d < 1) throw InvalidArgumentError("window dimension must be at least 1");
    if (k < 2 || k % 2 != 0)
        throw InvalidArgumentError("window lower bound needs even k >= 2");
    LowerBoundReport r;
    r.d = d;
    r.k = k;
    r.value = Rational(static_cast<long>(d) * (k - 1), k);
    BigInt total = 1;
    for (int i = 0; i < d; ++i) total *= k;
    const BigInt half = total / 2;
    const BigInt interior = d * (total - total / k);
    std::ostringstream s1, s2, s3, s4;
    s1 << "chessboard split A,B of the k^d = " << total
       << " window vertices: both sides independent, |A| = |B| = " << half;
    s2 << "a perfect matching between A and B plus strong monotonicity gives [A,B] >= " << half;
    s3 << "window inequality: sum_v f(v) >= [A,B] + d(k^d - k^(d-1)) - k^d/2 = [A,B] + "
       << (interior - half);
    s4 << "combining: sum_v f(v) >= " << interior << ", so the average ratio is >= ";
    const std::string reduced = to_fraction_string(r.value);
    std::ostringstream raw;
    raw << interior << "/" << total;
    s4 << raw.str();
    if (raw.str() != reduced) s4 << " = " << reduced;
    r.derivation = {s1.str(), s2.str(), s3.str(), s4.str()};
    return r;
}

SymmetryReport symmetry_check(int d) {
    if (d < 1) throw InvalidArgumentError("cube dimension must be at least 1");
    if (d > 3) throw SizeError("symmetry check solves two LPs; capped at dimension 3");
    const Graph g = hypercube(d);
    SymmetryReport r{solve_entropy_lp(g, Objective::Average),
                     solve_entropy_lp(g, Objective::Worst), false};
    r.equal = r.average.optimum == r.worst.optimum;
    return r;
}

} // namespace hypershare
