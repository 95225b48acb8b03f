#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ucov/boundary.hpp"
#include "ucov/core.hpp"
#include "ucov/facets.hpp"
#include "ucov/screening.hpp"
#include "ucov/realisability.hpp"
#include "ucov/version.hpp"

namespace ucov {

using Json = nlohmann::ordered_json;

// ---- exact scalar (de)serialization ----
// Rationals travel as canonical "p/q" strings; integers may also appear as
// JSON integers. Float literals are rejected outright: silently rationalizing
// a decimal would move points across facets.

inline Rat rat_from_json(const Json& j, const std::string& where) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_number_unsigned()) return Rat(static_cast<unsigned long>(j.get<std::uint64_t>()));
    if (j.is_number_float())
        throw InputError("float literal at " + where +
                         " (decision inputs must be exact rationals like \"1/3\")");
    throw InputError("expected rational at " + where);
}

inline Int int_from_json(const Json& j, const std::string& where) {
    Rat q = rat_from_json(j, where);
    if (!is_integer(q)) throw InputError("expected integer at " + where);
    return q.get_num();
}

inline Json int_to_json(const Int& z) {
    if (z.fits_slong_p()) return Json(z.get_si());
    return Json(z.get_str());
}

// ---- domain types ----

inline Json to_json(const TriArray& t) {
    Json j;
    j["n"] = t.n;
    Json entries = Json::array();
    for (const Rat& q : t.entries) entries.push_back(rat_to_string(q));
    j["entries"] = std::move(entries);
    return j;
}

inline TriArray tri_from_json(const Json& j) {
    if (!j.contains("n") || !j.contains("entries"))
        throw InputError("triangular array needs fields 'n' and 'entries'");
    int n = j.at("n").get<int>();
    std::vector<Rat> entries;
    const Json& arr = j.at("entries");
    if (!arr.is_array()) throw InputError("'entries' must be an array");
    for (std::size_t k = 0; k < arr.size(); ++k)
        entries.push_back(rat_from_json(arr[k], "entries[" + std::to_string(k) + "]"));
    return TriArray(n, std::move(entries));
}

inline Json to_json(const FullMatrix& m) {
    Json j;
    j["n"] = m.n;
    Json rows = Json::array();
    for (int i = 0; i < m.n; ++i) {
        Json row = Json::array();
        for (int c = 0; c < m.n; ++c) row.push_back(rat_to_string(m.at(i, c)));
        rows.push_back(std::move(row));
    }
    j["values"] = std::move(rows);
    return j;
}

inline FullMatrix matrix_from_json(const Json& j) {
    int n = j.at("n").get<int>();
    const Json& rows = j.at("values");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw InputError("'values' must be an n x n array");
    FullMatrix m(n);
    for (int i = 0; i < n; ++i) {
        const Json& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw InputError("'values' must be an n x n array");
        for (int c = 0; c < n; ++c)
            m.at(i, c) = rat_from_json(
                row[c], "values[" + std::to_string(i) + "][" + std::to_string(c) + "]");
    }
    return m;
}

// A matrix file holds either a triangular array ("entries") or a full
// symmetric matrix ("values").
inline std::variant<TriArray, FullMatrix> parse_matrix(const Json& j) {
    if (j.contains("entries")) return tri_from_json(j);
    if (j.contains("values")) {
        FullMatrix m = matrix_from_json(j);
        if (!m.is_symmetric()) throw InputError("matrix input is not symmetric");
        return m;
    }
    throw InputError("matrix file needs 'entries' or 'values'");
}

// Routes a parsed matrix to a covariance point: unit-diagonal inputs embed
// directly; zero-diagonal inputs are covariograms and pass through phi first.
inline TriArray to_covariance_point(const std::variant<TriArray, FullMatrix>& parsed) {
    if (const auto* t = std::get_if<TriArray>(&parsed)) return *t;
    const FullMatrix& m = std::get<FullMatrix>(parsed);
    if (m.has_unit_diagonal()) return embed(m);
    if (m.has_zero_diagonal()) return embed(phi(m));
    throw InputError("matrix diagonal must be all 1 (covariance) or all 0 (covariogram)");
}

inline Json to_json(const SignVector& u) {
    Json arr = Json::array();
    for (int s : u.signs) arr.push_back(s);
    return arr;
}

inline SignVector sign_vector_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) throw InputError("expected sign vector array at " + where);
    std::vector<int> s;
    for (const Json& x : j) {
        if (!x.is_number_integer() && !x.is_number_unsigned())
            throw InputError("sign vector entries must be +1/-1 at " + where);
        s.push_back(x.get<int>());
    }
    return SignVector(std::move(s));
}

inline Json to_json(const Mixture& m) {
    Json j;
    j["n"] = m.n();
    Json atoms = Json::array();
    for (const auto& a : m.atoms) {
        Json atom;
        atom["weight"] = rat_to_string(a.weight);
        atom["state"] = to_json(a.state);
        atoms.push_back(std::move(atom));
    }
    j["atoms"] = std::move(atoms);
    return j;
}

inline Mixture mixture_from_json(const Json& j) {
    Mixture m;
    const Json& atoms = j.at("atoms");
    if (!atoms.is_array()) throw InputError("'atoms' must be an array");
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        const Json& a = atoms[k];
        Rat w = rat_from_json(a.at("weight"), "atoms[" + std::to_string(k) + "].weight");
        SignVector u =
            sign_vector_from_json(a.at("state"), "atoms[" + std::to_string(k) + "].state");
        m.atoms.push_back({std::move(w), std::move(u)});
    }
    std::string problem = mixture_problem(m);
    if (!problem.empty()) throw InputError(problem);
    return m;
}

inline Json to_json(const IntVector& e) {
    Json arr = Json::array();
    for (const Int& x : e.coords) arr.push_back(int_to_json(x));
    return arr;
}

inline Json to_json(const Certificate& c) {
    Json j;
    if (const auto* r = std::get_if<RealisableCert>(&c)) {
        j["type"] = "realisable";
        j["mixture"] = to_json(r->mixture);
    } else {
        const auto& s = std::get<SeparatedCert>(c);
        j["type"] = "separated";
        j["direction"] = to_json(s.direction);
        j["threshold"] = rat_to_string(s.threshold);
    }
    return j;
}

inline Certificate certificate_from_json(const Json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "realisable") return RealisableCert{mixture_from_json(j.at("mixture"))};
    if (type == "separated")
        return SeparatedCert{tri_from_json(j.at("direction")),
                             rat_from_json(j.at("threshold"), "threshold")};
    throw InputError("unknown certificate type '" + type + "'");
}

inline Json to_json(const ScreenReport& r) {
    Json j;
    j["verdict"] = r.verdict == ScreenReport::Verdict::Pass ? "pass" : "violation";
    j["value"] = rat_to_string(r.value);
    j["bound"] = r.bound_used;
    j["en_only"] = r.en_only;
    if (r.witness) j["witness"] = to_json(*r.witness);
    return j;
}

inline Json to_json(const ProductFormResult& r) {
    Json j;
    if (const auto* pf = std::get_if<ProductForm>(&r)) {
        j["product"] = true;
        j["rational_witness"] = pf->rational;
        if (pf->rational) {
            Json w = Json::array();
            for (const Rat& q : pf->witness) w.push_back(rat_to_string(q));
            j["witness"] = std::move(w);
        }
        Json sq = Json::array();
        for (const Rat& q : pf->witness_squared) sq.push_back(rat_to_string(q));
        j["witness_squared"] = std::move(sq);
    } else {
        j["product"] = false;
        j["reason"] = to_string(std::get<NotProductReason>(r));
    }
    return j;
}

inline const char* to_string(BallClass b) {
    switch (b) {
        case BallClass::InInnerBall: return "in_inner_ball";
        case BallClass::BetweenBalls: return "between_balls";
        case BallClass::OutsideOuterBall: return "outside_outer_ball";
    }
    return "?";
}

inline const char* to_string(MembershipResult::Kind k) {
    switch (k) {
        case MembershipResult::Kind::Inside: return "inside";
        case MembershipResult::Kind::Boundary: return "boundary";
        case MembershipResult::Kind::Outside: return "outside";
    }
    return "?";
}

// ---- provenance metadata ----

inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string digest_hex(const std::string& bytes) {
    static const char* hex = "0123456789abcdef";
    std::uint64_t h = fnv1a64(bytes);
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = hex[h & 0xf];
        h >>= 4;
    }
    return s;
}

inline Json make_meta(const std::string& command, const std::string& input_digest,
                      Json parameters, long seed) {
    Json meta;
    meta["tool"] = "ucov";
    meta["version"] = kVersion;
    meta["command"] = command;
    meta["input_digest"] = input_digest;
    meta["parameters"] = std::move(parameters);
    meta["seed"] = seed;
    return meta;
}

} // namespace ucov
