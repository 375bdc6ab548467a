#pragma once

// Chain documents (JSON and OFF meshes) and machine-readable reports.
// Serialization is deterministic: sorted keys, floats printed with 17
// significant digits so every double survives a round trip bit for bit.

#include <cinttypes>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ccm/chain.hpp"
#include "ccm/error.hpp"
#include "ccm/vec.hpp"

namespace ccm::io {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Deterministic JSON writer

namespace detail_io {

inline void write_string(const std::string& s, std::string& out) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

inline void write_double(double x, std::string& out) {
    if (!std::isfinite(x)) throw ValidationError("cannot serialize a non-finite number");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s = buf;
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    out += s;
}

inline void write_value(const json& j, std::string& out) {
    switch (j.type()) {
        case json::value_t::null: out += "null"; break;
        case json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
        case json::value_t::number_integer:
            out += std::to_string(j.get<std::int64_t>());
            break;
        case json::value_t::number_unsigned:
            out += std::to_string(j.get<std::uint64_t>());
            break;
        case json::value_t::number_float: write_double(j.get<double>(), out); break;
        case json::value_t::string: write_string(j.get<std::string>(), out); break;
        case json::value_t::array: {
            out += '[';
            bool first = true;
            for (const json& item : j) {
                if (!first) out += ',';
                first = false;
                write_value(item, out);
            }
            out += ']';
            break;
        }
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) { // nlohmann objects iterate sorted
                if (!first) out += ',';
                first = false;
                write_string(it.key(), out);
                out += ':';
                write_value(it.value(), out);
            }
            out += '}';
            break;
        }
        default: throw ValidationError("cannot serialize binary JSON value");
    }
}

} // namespace detail_io

inline std::string dump_json(const json& j) {
    std::string out;
    detail_io::write_value(j, out);
    return out;
}

// ---------------------------------------------------------------------------
// Chain documents

namespace detail_io {

inline double require_number(const json& j, const char* what) {
    if (!j.is_number()) throw ValidationError(std::string(what) + " must be a number");
    return j.get<double>();
}

inline std::int64_t require_integer(const json& j, const char* what) {
    if (!j.is_number_integer() && !j.is_number_unsigned())
        throw ValidationError(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

inline Chain chain_from_json(const json& doc) {
    if (!doc.is_object()) throw ValidationError("chain document must be a JSON object");

    const bool has_polygon = doc.contains("polygon");
    if (has_polygon && (doc.contains("vertices") || doc.contains("simplices")))
        throw ValidationError("polygon shorthand is mutually exclusive with vertices/simplices");

    if (has_polygon) {
        const json& poly = doc.at("polygon");
        if (!poly.is_array() || poly.size() < 3)
            throw ValidationError("polygon needs at least 3 vertices");
        if (doc.contains("dimension") && require_integer(doc["dimension"], "dimension") != 2)
            throw ValidationError("polygon shorthand fixes dimension = 2");
        if (doc.contains("intrinsic_dim") &&
            require_integer(doc["intrinsic_dim"], "intrinsic_dim") != 1)
            throw ValidationError("polygon shorthand fixes intrinsic_dim = 1");
        std::vector<Point> pool;
        for (const json& v : poly) {
            if (!v.is_array() || v.size() != 2)
                throw ValidationError("polygon vertices must be 2D coordinate arrays");
            pool.push_back(Point{require_number(v[0], "coordinate"),
                                 require_number(v[1], "coordinate")});
        }
        std::vector<ChainTerm> edges;
        const std::uint32_t n = static_cast<std::uint32_t>(pool.size());
        for (std::uint32_t i = 0; i < n; ++i) edges.push_back({{i, (i + 1) % n}, 1});
        return Chain(2, 1, std::move(pool), std::move(edges));
    }

    for (const char* key : {"dimension", "intrinsic_dim", "vertices", "simplices"})
        if (!doc.contains(key))
            throw ValidationError(std::string("chain document is missing \"") + key + '"');

    const std::int64_t n = require_integer(doc["dimension"], "dimension");
    const std::int64_t k = require_integer(doc["intrinsic_dim"], "intrinsic_dim");
    if (n < 1) throw ValidationError("dimension must be at least 1");
    if (k < 0 || k > n) throw ValidationError("intrinsic_dim must lie in [0, dimension]");

    std::vector<Point> pool;
    for (const json& v : doc["vertices"]) {
        if (!v.is_array() || static_cast<std::int64_t>(v.size()) != n)
            throw ValidationError("vertex coordinate array has wrong length");
        Point p(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = require_number(v[i], "coordinate");
        pool.push_back(std::move(p));
    }

    std::vector<ChainTerm> terms;
    for (const json& s : doc["simplices"]) {
        if (!s.is_object() || !s.contains("vertices") || !s.contains("coefficient"))
            throw ValidationError("simplex entry needs \"vertices\" and \"coefficient\"");
        ChainTerm t;
        t.coefficient = require_integer(s["coefficient"], "coefficient");
        if (t.coefficient == 0) throw ValidationError("coefficient must be nonzero");
        const json& idx = s["vertices"];
        if (!idx.is_array() || static_cast<std::int64_t>(idx.size()) != k + 1)
            throw ValidationError("simplex vertex list must have intrinsic_dim + 1 indices");
        for (const json& i : idx) {
            const std::int64_t v = require_integer(i, "vertex index");
            if (v < 0 || v >= static_cast<std::int64_t>(pool.size()))
                throw ValidationError("vertex index out of range");
            t.vertices.push_back(static_cast<std::uint32_t>(v));
        }
        std::vector<std::uint32_t> sorted = t.vertices;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ValidationError("simplex entry repeats a vertex");
        terms.push_back(std::move(t));
    }
    return Chain(static_cast<std::size_t>(n), static_cast<std::size_t>(k), std::move(pool),
                 std::move(terms));
}

inline Chain chain_from_off(std::string_view text) {
    std::vector<std::pair<int, std::string>> lines; // (line number, content)
    int lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++lineno;
        std::string line(text.substr(start, end - start));
        if (const std::size_t hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        if (line.find_first_not_of(" \t\r") != std::string::npos) lines.emplace_back(lineno, line);
        start = end + 1;
    }

    std::size_t cursor = 0;
    auto next_line = [&]() -> const std::pair<int, std::string>& {
        if (cursor >= lines.size()) throw ParseError("OFF: unexpected end of file");
        return lines[cursor++];
    };

    {
        const auto& [no, header] = next_line();
        if (header.find("OFF") == std::string::npos)
            throw ParseError("line " + std::to_string(no) + ": expected OFF header");
    }

    long nv = -1, nf = -1, ne = 0;
    {
        const auto& [no, counts] = next_line();
        if (std::sscanf(counts.c_str(), " %ld %ld %ld", &nv, &nf, &ne) < 2 || nv < 0 || nf < 0)
            throw ParseError("line " + std::to_string(no) + ": expected vertex/face counts");
    }

    std::vector<Point> pool;
    pool.reserve(static_cast<std::size_t>(nv));
    for (long i = 0; i < nv; ++i) {
        const auto& [no, line] = next_line();
        double x, y, z;
        if (std::sscanf(line.c_str(), " %lf %lf %lf", &x, &y, &z) != 3)
            throw ParseError("line " + std::to_string(no) + ": expected 3 vertex coordinates");
        pool.push_back(Point{x, y, z});
    }

    std::vector<ChainTerm> terms;
    for (long f = 0; f < nf; ++f) {
        const auto& [no, line] = next_line();
        const char* p = line.c_str();
        int consumed = 0;
        long count = 0;
        if (std::sscanf(p, " %ld%n", &count, &consumed) != 1 || count < 3)
            throw ParseError("line " + std::to_string(no) + ": face needs at least 3 vertices");
        p += consumed;
        std::vector<std::uint32_t> face;
        for (long i = 0; i < count; ++i) {
            long idx = 0;
            if (std::sscanf(p, " %ld%n", &idx, &consumed) != 1)
                throw ParseError("line " + std::to_string(no) + ": missing face vertex index");
            p += consumed;
            if (idx < 0 || idx >= nv)
                throw ValidationError("line " + std::to_string(no) + ": face index out of range");
            face.push_back(static_cast<std::uint32_t>(idx));
        }
        // fan triangulation from the face's first vertex
        for (std::size_t i = 1; i + 1 < face.size(); ++i)
            terms.push_back({{face[0], face[i], face[i + 1]}, 1});
    }
    return Chain(3, 2, std::move(pool), std::move(terms));
}

} // namespace detail_io

// Parses a chain from JSON (leading '{') or ASCII OFF text.
inline Chain parse_chain(std::string_view bytes) {
    const std::size_t first = bytes.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) throw ParseError("empty chain document");
    if (bytes[first] == '{') {
        json doc;
        try {
            doc = json::parse(bytes);
        } catch (const json::parse_error& e) {
            throw ParseError(e.what());
        }
        return detail_io::chain_from_json(doc);
    }
    return detail_io::chain_from_off(bytes);
}

inline json chain_to_json(const Chain& c) {
    json doc = json::object();
    doc["dimension"] = c.ambient_dim();
    doc["intrinsic_dim"] = c.intrinsic_dim();
    json vertices = json::array();
    for (const Point& p : c.pool()) {
        json coords = json::array();
        for (double x : p.coords()) coords.push_back(x);
        vertices.push_back(std::move(coords));
    }
    doc["vertices"] = std::move(vertices);
    json simplices = json::array();
    for (const ChainTerm& t : c.terms()) {
        json entry = json::object();
        entry["coefficient"] = t.coefficient;
        entry["vertices"] = t.vertices;
        simplices.push_back(std::move(entry));
    }
    doc["simplices"] = std::move(simplices);
    return doc;
}

inline std::string serialize_chain(const Chain& c) { return dump_json(chain_to_json(c)); }

// ---------------------------------------------------------------------------
// Reports

struct Report {
    std::string command;
    json inputs = json::object();
    json results = json::object();
    json tolerances = json::object();
    std::string status = "pass"; // pass | fail | error

    friend bool operator==(const Report&, const Report&) = default;
};

inline std::string serialize_report(const Report& r) {
    if (r.status != "pass" && r.status != "fail" && r.status != "error")
        throw ValidationError("report status must be pass, fail or error");
    json doc = json::object();
    doc["command"] = r.command;
    doc["inputs"] = r.inputs;
    doc["results"] = r.results;
    doc["status"] = r.status;
    doc["tolerances"] = r.tolerances;
    return dump_json(doc) + "\n";
}

inline Report parse_report(std::string_view bytes) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    Report r;
    try {
        r.command = doc.at("command").get<std::string>();
        r.inputs = doc.at("inputs");
        r.results = doc.at("results");
        r.tolerances = doc.at("tolerances");
        r.status = doc.at("status").get<std::string>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed report: ") + e.what());
    }
    if (r.status != "pass" && r.status != "fail" && r.status != "error")
        throw ValidationError("report status must be pass, fail or error");
    return r;
}

// pass -> 0, fail -> 1, error -> 2.
inline int exit_code_for(const Report& r) {
    if (r.status == "pass") return 0;
    if (r.status == "fail") return 1;
    return 2;
}

inline json vec_to_json(const Vec& v) {
    json a = json::array();
    for (double x : v.coords()) a.push_back(x);
    return a;
}

} // namespace ccm::io
