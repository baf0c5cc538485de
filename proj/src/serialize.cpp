#include "hypershare/serialize.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace hypershare {

namespace {

const Json& field_of(const Json& j, const char* key) {
    if (!j.is_object())
        throw ParseError(std::string("expected an object carrying '") + key + "'");
    const auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
    return *it;
}

std::int64_t int_of(const Json& j, const char* what) {
    if (!j.is_number_integer() && !j.is_number_unsigned())
        throw ParseError(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

int int_field(const Json& j, const char* key) {
    const std::int64_t v = int_of(field_of(j, key), key);
    if (v < INT32_MIN || v > INT32_MAX) throw ParseError(std::string(key) + " out of range");
    return static_cast<int>(v);
}

std::uint32_t u32_of(const Json& j, const char* what) {
    const std::int64_t v = int_of(j, what);
    if (v < 0 || v > INT32_MAX) throw ParseError(std::string(what) + " out of range");
    return static_cast<std::uint32_t>(v);
}

std::string string_field(const Json& j, const char* key) {
    const Json& v = field_of(j, key);
    if (!v.is_string()) throw ParseError(std::string(key) + " must be a string");
    return v.get<std::string>();
}

const Json& array_field(const Json& j, const char* key) {
    const Json& v = field_of(j, key);
    if (!v.is_array()) throw ParseError(std::string(key) + " must be an array");
    return v;
}

Json matrix_to_json(const MatrixGF& m) {
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

MatrixGF matrix_from_json(const Json& j, FieldSpec f, const char* what) {
    const int rows = int_field(j, "rows");
    const int cols = int_field(j, "cols");
    if (rows < 0 || cols < 0) throw ParseError(std::string(what) + ": negative matrix shape");
    const Json& data = array_field(j, "data");
    if (data.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
        throw ParseError(std::string(what) + ": matrix data length mismatch");
    MatrixGF m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), f);
    std::size_t i = 0;
    for (const Json& cell : data) {
        const std::uint32_t x = u32_of(cell, "matrix entry");
        if (x >= f.p) throw ParseError(std::string(what) + ": matrix entry outside the field");
        m.at(i / cols, i % cols) = x;
        ++i;
    }
    return m;
}

std::string id_to_hex(std::uint64_t id) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << id;
    return out.str();
}

std::uint64_t hex_to_id(const std::string& text) {
    if (text.size() != 16 || text.find_first_not_of("0123456789abcdef") != std::string::npos)
        throw ParseError("scheme id must be 16 lowercase hex digits");
    return std::stoull(text, nullptr, 16);
}

} // namespace

Json graph_to_json(const Graph& g) {
    Json edges = Json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back(Json::array({u, v}));
    return Json{{"family", family_name(g.family())},
                {"d", g.d()},
                {"k", g.k()},
                {"vertices", g.vertices()},
                {"edges", std::move(edges)}};
}

Graph graph_from_json(const Json& j) {
    const Family fam = family_from_name(string_field(j, "family"));
    const int d = int_field(j, "d");
    const int k = int_field(j, "k");
    std::vector<std::vector<int>> vertices;
    for (const Json& label : array_field(j, "vertices")) {
        if (!label.is_array()) throw ParseError("vertex labels must be coordinate arrays");
        std::vector<int> coords;
        for (const Json& c : label) coords.push_back(static_cast<int>(int_of(c, "coordinate")));
        vertices.push_back(std::move(coords));
    }
    std::vector<std::pair<int, int>> edges;
    for (const Json& e : array_field(j, "edges")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("edges must be [u, v] pairs");
        edges.emplace_back(static_cast<int>(int_of(e[0], "edge endpoint")),
                           static_cast<int>(int_of(e[1], "edge endpoint")));
    }
    return Graph(fam, d, k, std::move(vertices), std::move(edges));
}

Json scheme_to_json(const LinearScheme& s) {
    Json parties = Json::array();
    for (const Party& p : s.parties())
        parties.push_back(Json{{"vertex", p.vertex}, {"rows", matrix_to_json(p.rows)}});
    return Json{{"field", s.field().p},
                {"seed_dim", s.seed_dim()},
                {"secret_rows", matrix_to_json(s.secret_rows())},
                {"parties", std::move(parties)},
                {"graph", graph_to_json(s.graph())}};
}

LinearScheme scheme_from_json(const Json& j) {
    const std::uint32_t p = u32_of(field_of(j, "field"), "field");
    FieldSpec f(p);
    const int seed_dim = int_field(j, "seed_dim");
    if (seed_dim < 0) throw ParseError("seed_dim must be nonnegative");
    MatrixGF secret = matrix_from_json(field_of(j, "secret_rows"), f, "secret_rows");
    std::vector<Party> parties;
    for (const Json& pj : array_field(j, "parties")) {
        parties.push_back(
            Party{int_field(pj, "vertex"), matrix_from_json(field_of(pj, "rows"), f, "party")});
    }
    Graph g = graph_from_json(field_of(j, "graph"));
    return LinearScheme(f, static_cast<std::size_t>(seed_dim), std::move(secret),
                        std::move(parties), std::move(g));
}

Json bundle_to_json(const ShareBundle& b) {
    Json shares = Json::array();
    for (std::size_t v = 0; v < b.shares.size(); ++v)
        shares.push_back(Json{{"vertex", v}, {"values", b.shares[v]}});
    return Json{{"scheme", id_to_hex(b.scheme_id)},
                {"secret", b.secret},
                {"shares", std::move(shares)}};
}

ShareBundle bundle_from_json(const Json& j) {
    ShareBundle b;
    b.scheme_id = hex_to_id(string_field(j, "scheme"));
    for (const Json& cell : array_field(j, "secret"))
        b.secret.push_back(u32_of(cell, "secret entry"));
    const Json& shares = array_field(j, "shares");
    b.shares.resize(shares.size());
    std::vector<char> seen(shares.size(), 0);
    for (const Json& sj : shares) {
        const int v = int_field(sj, "vertex");
        if (v < 0 || static_cast<std::size_t>(v) >= b.shares.size())
            throw ParseError("share vertex index out of range");
        if (seen[static_cast<std::size_t>(v)]) throw ParseError("duplicate share vertex");
        seen[static_cast<std::size_t>(v)] = 1;
        std::vector<std::uint32_t> values;
        for (const Json& cell : array_field(sj, "values"))
            values.push_back(u32_of(cell, "share value"));
        b.shares[static_cast<std::size_t>(v)] = std::move(values);
    }
    return b;
}

Json rational_to_json(const Rational& r) {
    return Json::array({numerator(r).str(), denominator(r).str()});
}

Rational rational_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError("rationals must be [numerator, denominator] pairs");
    auto part = [](const Json& cell, const char* what) -> BigInt {
        if (cell.is_string()) {
            try {
                return BigInt(cell.get<std::string>());
            } catch (const std::exception&) {
                throw ParseError(std::string(what) + " is not a decimal integer");
            }
        }
        return BigInt(int_of(cell, what));
    };
    const BigInt num = part(j[0], "numerator");
    const BigInt den = part(j[1], "denominator");
    if (den <= 0) throw ParseError("denominator must be positive");
    return Rational(num, den);
}

Json polymatroid_to_json(const PolymatroidFn& f) {
    Json values = Json::array();
    for (const Rational& v : f.values()) values.push_back(rational_to_json(v));
    return Json{{"n", f.n()}, {"source", source_name(f.source())}, {"values", std::move(values)}};
}

PolymatroidFn polymatroid_from_json(const Json& j) {
    const int n = int_field(j, "n");
    PolymatroidFn::Source source = PolymatroidFn::Source::Synthetic;
    if (j.contains("source")) source = source_from_name(string_field(j, "source"));
    std::vector<Rational> values;
    for (const Json& cell : array_field(j, "values")) values.push_back(rational_from_json(cell));
    return PolymatroidFn(n, std::move(values), source);
}

Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid document: ") + e.what());
    }
}

std::string to_text(const Json& j) { return j.dump(2) + "\n"; }

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    if (in.bad()) throw ParseError("cannot read file: " + path);
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open file for writing: " + path);
    out << content;
    out.flush();
    if (!out) throw Error("cannot write file: " + path);
}

} // namespace hypershare
