#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ucov/core.hpp"
#include "ucov/hull.hpp"
#include "ucov/screening.hpp"
#include "ucov/vertices.hpp"

namespace ucov {

// Exact H-description: every vertex satisfies every inequality, and each
// facet's incident vertices span an affine set of dimension tri_dim(n)-1.
struct HRep {
    int n = 0;
    std::vector<Facet> facets;
    std::vector<std::vector<int>> incidence; // per facet, ascending vertex indices
};

inline std::string facet_text_line(const Facet& f) {
    std::string line = rat_to_string(f.offset) + " :";
    for (const Int& x : f.normal) {
        line += ' ';
        line += x.get_str();
    }
    return line;
}

inline Facet parse_facet_line(const std::string& line, int expected_dim) {
    std::istringstream in(line);
    std::string offset_text, colon;
    if (!(in >> offset_text >> colon) || colon != ":")
        throw InputError("malformed facet line '" + line + "'");
    Facet f;
    f.offset = parse_rat(offset_text);
    std::string tok;
    while (in >> tok) f.normal.push_back(parse_int(tok));
    if (static_cast<int>(f.normal.size()) != expected_dim)
        throw InputError("facet line has wrong normal length");
    return f;
}

namespace detail {

struct Checkpoint {
    int steps = 0;
    std::vector<Facet> facets;
};

inline std::optional<Checkpoint> read_last_checkpoint(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string line;
    if (!std::getline(in, line)) return std::nullopt;
    if (line != "# ucov facets checkpoint n=" + std::to_string(n))
        throw InputError("checkpoint file is for a different run: " + path);
    std::optional<Checkpoint> last;
    Checkpoint cur;
    bool open = false;
    const int d = tri_dim(n);
    while (std::getline(in, line)) {
        if (line.rfind("BEGIN ", 0) == 0) {
            cur = Checkpoint{};
            try {
                cur.steps = std::stoi(line.substr(6));
            } catch (const std::exception&) {
                throw InputError("malformed checkpoint block header '" + line + "'");
            }
            open = true;
        } else if (line.rfind("END ", 0) == 0) {
            if (open) last = cur; // complete block
            open = false;
        } else if (open && !line.empty()) {
            cur.facets.push_back(parse_facet_line(line, d));
        }
    }
    return last;
}

} // namespace detail

// Converts the V-description into the complete, irredundant facet list by
// incremental insertion. Supported for 3 <= n <= 7; n = 7 is a long run and
// can be checkpointed to an append-only log and resumed.
inline HRep enumerate_facets(int n, const std::string& checkpoint_path = "") {
    if (n < 3 || n > 7)
        throw InputError("facet enumeration supports 3 <= n <= 7");

    std::vector<std::vector<Int>> pts;
    for_each_vertex(n, [&](std::uint64_t, const SignVector&, const std::vector<Int>& tri) {
        pts.push_back(tri);
    });

    HullState st;
    bool resumed = false;
    if (!checkpoint_path.empty()) {
        auto cp = detail::read_last_checkpoint(checkpoint_path, n);
        if (cp) {
            std::vector<HullFacet> facets(cp->facets.size());
            for (std::size_t i = 0; i < cp->facets.size(); ++i) {
                facets[i].normal = cp->facets[i].normal;
                if (!is_integer(cp->facets[i].offset))
                    throw InputError("checkpoint offset is not an integer");
                facets[i].offset = cp->facets[i].offset.get_num();
            }
            st = hull_resume(pts, std::move(facets), cp->steps);
            resumed = true;
        }
    }
    if (!resumed) st = hull_init(pts);

    std::ofstream log;
    if (!checkpoint_path.empty()) {
        bool fresh = !resumed;
        log.open(checkpoint_path, fresh ? std::ios::trunc : std::ios::app);
        if (!log) throw InputError("cannot open checkpoint file " + checkpoint_path);
        if (fresh) log << "# ucov facets checkpoint n=" << n << "\n";
    }
    auto on_step = [&](const HullState& s) {
        if (!log.is_open()) return;
        log << "BEGIN " << s.next << "\n";
        for (const HullFacet& f : s.facets) {
            Facet ff{f.normal, Rat(f.offset)};
            log << facet_text_line(ff) << "\n";
        }
        log << "END " << s.next << " " << s.facets.size() << "\n";
        log.flush();
    };

    std::vector<HullFacet> hull =
        hull_run(pts, st, checkpoint_path.empty() ? nullptr : std::function(on_step));

    HRep h;
    h.n = n;
    for (const HullFacet& f : hull) {
        h.facets.push_back(Facet{f.normal, Rat(f.offset)});
        std::vector<int> inc;
        for (int v = 0; v < static_cast<int>(pts.size()); ++v)
            if ((f.incident >> v) & 1) inc.push_back(v);
        h.incidence.push_back(std::move(inc));
    }
    return h;
}

// True iff the hyperplane <x, normal> <= offset supports the polytope with
// equality attained, and the incident vertices have affine dimension
// tri_dim(n) - 1 (exact rank by fraction-free elimination).
inline bool verify_facet(int n, const std::vector<Int>& normal, const Rat& offset,
                         int cap = kDefaultVertexCap) {
    if (static_cast<int>(normal.size()) != tri_dim(n))
        throw DimensionError("verify_facet: normal has wrong length");
    IntMatrix incident;
    bool supported = true;
    for_each_vertex(
        n,
        [&](std::uint64_t, const SignVector&, const std::vector<Int>& tri) {
            if (!supported) return;
            Rat s = Rat(dot(tri, normal));
            if (s > offset) supported = false;
            else if (s == offset) incident.push_back(tri);
        },
        cap);
    if (!supported || incident.empty()) return false;
    return affine_dim(incident) == tri_dim(n) - 1;
}

struct MembershipResult {
    enum class Kind { Inside, Boundary, Outside };
    Kind kind = Kind::Inside;
    std::vector<int> facets; // tight facets (Boundary) or the violated one (Outside)
};

inline MembershipResult membership_by_facets(const TriArray& rho, const HRep& h) {
    if (rho.n != h.n) throw DimensionError("membership: size mismatch");
    MembershipResult out;
    for (std::size_t i = 0; i < h.facets.size(); ++i) {
        Rat lhs = dot(h.facets[i].normal, rho.entries);
        if (lhs > h.facets[i].offset) {
            out.kind = MembershipResult::Kind::Outside;
            out.facets.assign(1, static_cast<int>(i));
            return out;
        }
        if (lhs == h.facets[i].offset) out.facets.push_back(static_cast<int>(i));
    }
    out.kind = out.facets.empty() ? MembershipResult::Kind::Inside
                                  : MembershipResult::Kind::Boundary;
    return out;
}

// ---- product form ----

struct ProductForm {
    bool rational = false;      // an exact rational witness exists
    std::vector<Rat> witness;   // filled when rational; witness (.) witness == m
    std::vector<Rat> witness_squared; // componentwise squares, always filled
};

enum class NotProductReason { ZeroPattern, SignInconsistency, MinorInconsistency };

inline std::string to_string(NotProductReason r) {
    switch (r) {
        case NotProductReason::ZeroPattern: return "zero-pattern";
        case NotProductReason::SignInconsistency: return "sign-inconsistency";
        case NotProductReason::MinorInconsistency: return "minor-inconsistency";
    }
    return "?";
}

using ProductFormResult = std::variant<ProductForm, NotProductReason>;

// Decides whether a real vector v with v_i v_j = m_ij exists. Nodes touching
// a nonzero entry must carry v_i != 0 and hence be pairwise connected by
// nonzero entries; isolated nodes take v_i = 0. Signs are fixed from the
// star of the smallest node, magnitudes from a triple of entries; the
// remaining entries are verified exactly. The witness is unique up to global
// sign once three or more nodes are involved.
inline ProductFormResult is_product_form(int n, const std::vector<Int>& m) {
    if (static_cast<int>(m.size()) != tri_dim(n))
        throw DimensionError("is_product_form: wrong entry count");
    auto at = [&](int i, int j) -> const Int& { return m[pair_index(n, i, j)]; };

    std::vector<int> comp;
    {
        std::vector<bool> touched(n, false);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (sgn(at(i, j)) != 0) touched[i] = touched[j] = true;
        for (int i = 0; i < n; ++i)
            if (touched[i]) comp.push_back(i);
    }

    ProductForm pf;
    pf.witness_squared.assign(n, Rat(0));
    if (comp.empty()) {
        pf.rational = true;
        pf.witness.assign(n, Rat(0));
        return pf;
    }

    // Every pair of touched nodes needs a nonzero entry (their v's are nonzero).
    for (std::size_t a = 0; a < comp.size(); ++a)
        for (std::size_t b = a + 1; b < comp.size(); ++b)
            if (sgn(at(comp[a], comp[b])) == 0) return NotProductReason::ZeroPattern;

    if (comp.size() == 2) {
        pf.rational = true;
        pf.witness.assign(n, Rat(0));
        pf.witness[comp[0]] = 1;
        pf.witness[comp[1]] = Rat(at(comp[0], comp[1]));
        pf.witness_squared[comp[0]] = 1;
        pf.witness_squared[comp[1]] = pf.witness[comp[1]] * pf.witness[comp[1]];
        return pf;
    }

    const int i0 = comp[0];
    std::vector<int> s(n, 0);
    s[i0] = 1;
    for (std::size_t a = 1; a < comp.size(); ++a) s[comp[a]] = sgn(at(i0, comp[a]));
    for (std::size_t a = 1; a < comp.size(); ++a)
        for (std::size_t b = a + 1; b < comp.size(); ++b)
            if (s[comp[a]] * s[comp[b]] != sgn(at(comp[a], comp[b])))
                return NotProductReason::SignInconsistency;

    // v_{i0}^2 from the first triple; positive after the sign check.
    Rat v0sq = make_rat(at(i0, comp[1]) * at(i0, comp[2]), at(comp[1], comp[2]));
    pf.witness_squared[i0] = v0sq;
    for (std::size_t a = 1; a < comp.size(); ++a) {
        Int num = at(i0, comp[a]) * at(i0, comp[a]);
        pf.witness_squared[comp[a]] = Rat(num) / v0sq;
    }
    for (std::size_t a = 1; a < comp.size(); ++a)
        for (std::size_t b = a + 1; b < comp.size(); ++b) {
            Int mm = at(comp[a], comp[b]) * at(comp[a], comp[b]);
            if (pf.witness_squared[comp[a]] * pf.witness_squared[comp[b]] != Rat(mm))
                return NotProductReason::MinorInconsistency;
        }

    if (auto root = rat_sqrt_exact(v0sq)) {
        pf.rational = true;
        pf.witness.assign(n, Rat(0));
        pf.witness[i0] = *root;
        for (std::size_t a = 1; a < comp.size(); ++a)
            pf.witness[comp[a]] = Rat(at(i0, comp[a])) / *root;
    }
    return pf;
}

// The screening inequality sum_{i,j} rho_ij e_i e_j >= 1 over full matrices,
// rewritten as a half-space in supra-diagonal coordinates:
// <x, -(e (.) e)> <= (sum e_i^2 - 1) / 2.
inline Facet screening_facet(const IntVector& e) {
    const int n = e.n;
    Facet f;
    f.normal.resize(tri_dim(n));
    Int sq = 0;
    for (int i = 0, k = 0; i < n; ++i) {
        sq += e.coords[i] * e.coords[i];
        for (int j = i + 1; j < n; ++j, ++k) f.normal[k] = -(e.coords[i] * e.coords[j]);
    }
    f.offset = Rat(sq - 1) / 2;
    return f;
}

// When the facet inequality is one of the integer-vector screening
// inequalities, returns that vector: normal == -(e (.) e), the subset-sum
// class contains e, and offset == (sum e_i^2 - 1) / 2.
inline std::optional<IntVector> screening_form(int n, const Facet& f) {
    std::vector<Int> neg(f.normal.size());
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -f.normal[i];
    ProductFormResult r = is_product_form(n, neg);
    const ProductForm* pf = std::get_if<ProductForm>(&r);
    if (!pf || !pf->rational) return std::nullopt;
    std::vector<Int> e(n);
    for (int i = 0; i < n; ++i) {
        if (!is_integer(pf->witness[i])) return std::nullopt;
        e[i] = pf->witness[i].get_num();
    }
    IntVector ev(std::move(e));
    if (!in_EN(ev).member) return std::nullopt;
    Int sq = 0;
    for (const Int& x : ev.coords) sq += x * x;
    if (f.offset != Rat(sq - 1) / 2) return std::nullopt;
    return ev;
}

} // namespace ucov
