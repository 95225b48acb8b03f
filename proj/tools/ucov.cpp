// ucov — certified decision tool for realisability of unit covariances on a
// finite index set: membership certificates, mixture decompositions,
// integer-vector screening, exact facet enumeration, boundary analysis.
//
// All verdicts are computed in exact rational arithmetic; every emitted
// certificate is re-verified before it is written.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ucov/boundary.hpp"
#include "ucov/facets.hpp"
#include "ucov/json_io.hpp"
#include "ucov/screening.hpp"
#include "ucov/realisability.hpp"
#include "ucov/vertices.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnexpected = 1;
constexpr int kExitInput = 2;
constexpr int kExitNegative = 3;    // separated / outside / not verified
constexpr int kExitViolation = 4;   // screening violation
constexpr int kExitCap = 5;         // resource cap exceeded

int env_int(const char* name, int fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    return std::atoi(v);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ucov::InputError("cannot read input file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ucov::InputError("cannot write output file " + out_path);
    out << text;
}

// Paths are validated before compute starts, not after an hour of hull work.
void probe_out_path(const std::string& out_path) {
    if (out_path.empty()) return;
    std::ofstream probe(out_path, std::ios::app);
    if (!probe) throw ucov::InputError("cannot write output file " + out_path);
}

struct Options {
    std::string input;
    std::string out;
    std::string resume;
    int n = 0;
    int bound = 2;
    bool en_only = false;
    long seed = 0;
};

ucov::Json load_json(const std::string& bytes) {
    try {
        return ucov::Json::parse(bytes);
    } catch (const std::exception& e) {
        throw ucov::InputError(std::string("JSON parse error: ") + e.what());
    }
}

int run_vertices(const Options& opt) {
    probe_out_path(opt.out);
    int cap = env_int("UCOV_VERTEX_CAP", ucov::kDefaultVertexCap);
    std::ostringstream out;
    ucov::Json meta = ucov::make_meta("vertices", ucov::digest_hex("n=" + std::to_string(opt.n)),
                                      {{"n", opt.n}}, opt.seed);
    out << meta.dump() << "\n";
    ucov::for_each_vertex(
        opt.n,
        [&](std::uint64_t k, const ucov::SignVector& u, const std::vector<ucov::Int>& tri) {
            ucov::Json line;
            line["index"] = k;
            line["state"] = ucov::to_json(u);
            ucov::Json entries = ucov::Json::array();
            for (const ucov::Int& x : tri) entries.push_back(ucov::int_to_json(x));
            line["tri"] = std::move(entries);
            out << line.dump() << "\n";
        },
        cap);
    write_output(opt.out, out.str());
    return kExitOk;
}

int run_check(const Options& opt, bool decompose) {
    probe_out_path(opt.out);
    int lp_cap = env_int("UCOV_LP_CAP", ucov::kDefaultLpCap);
    std::string bytes = read_file(opt.input);
    ucov::TriArray rho = ucov::to_covariance_point(ucov::parse_matrix(load_json(bytes)));
    ucov::Certificate cert = ucov::check_realisable(rho, lp_cap);
    if (!ucov::verify_certificate(rho, cert))
        throw std::logic_error("certificate failed the self-check pass");

    ucov::Json j;
    j["meta"] = ucov::make_meta(decompose ? "decompose" : "check", ucov::digest_hex(bytes),
                                {{"n", rho.n}}, opt.seed);
    j["realisable"] = ucov::is_realisable(cert);
    if (decompose && ucov::is_realisable(cert)) {
        ucov::Mixture reduced =
            ucov::caratheodory_reduce(std::get<ucov::RealisableCert>(cert).mixture);
        if (ucov::reconstruct(reduced) != rho)
            throw std::logic_error("reduced mixture failed the self-check pass");
        j["mixture"] = ucov::to_json(reduced);
    } else {
        j["certificate"] = ucov::to_json(cert);
    }
    write_output(opt.out, j.dump(2) + "\n");
    return ucov::is_realisable(cert) ? kExitOk : kExitNegative;
}

int run_screen(const Options& opt) {
    probe_out_path(opt.out);
    std::string bytes = read_file(opt.input);
    ucov::TriArray rho = ucov::to_covariance_point(ucov::parse_matrix(load_json(bytes)));
    int cap_override = env_int("UCOV_SCREEN_CAP", 0);
    std::uint64_t cap = cap_override > 0 ? static_cast<std::uint64_t>(cap_override)
                                         : ucov::kDefaultScreenCap;
    ucov::FullMatrix full = ucov::complete(rho);
    ucov::ScreenReport report = ucov::screen(full, opt.bound, opt.en_only, cap);
    if (report.witness &&
        (ucov::quad_form(full, *report.witness) != report.value || report.value >= 1))
        throw std::logic_error("screening witness failed the self-check pass");

    ucov::Json j;
    j["meta"] = ucov::make_meta(
        "screen", ucov::digest_hex(bytes),
        {{"n", rho.n}, {"bound", opt.bound}, {"en_only", opt.en_only}}, opt.seed);
    j["report"] = ucov::to_json(report);
    write_output(opt.out, j.dump(2) + "\n");
    return report.verdict == ucov::ScreenReport::Verdict::Pass ? kExitOk : kExitViolation;
}

int run_facets(const Options& opt) {
    probe_out_path(opt.out);
    ucov::HRep h = ucov::enumerate_facets(opt.n, opt.resume);
    for (std::size_t i = 0; i < h.facets.size(); ++i)
        if (!ucov::verify_facet(opt.n, h.facets[i].normal, h.facets[i].offset))
            throw std::logic_error("facet " + std::to_string(i) + " failed the self-check pass");

    std::ostringstream out;
    out << "# ucov facets n=" << opt.n << " version=" << ucov::kVersion
        << " digest=" << ucov::digest_hex("n=" + std::to_string(opt.n))
        << " count=" << h.facets.size() << "\n";
    for (const ucov::Facet& f : h.facets) out << ucov::facet_text_line(f) << "\n";
    write_output(opt.out, out.str());
    return kExitOk;
}

int run_product_form(const Options& opt) {
    probe_out_path(opt.out);
    std::string bytes = read_file(opt.input);
    ucov::TriArray t = ucov::tri_from_json(load_json(bytes));
    std::vector<ucov::Int> m(t.entries.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!ucov::is_integer(t.entries[i]))
            throw ucov::InputError("product-form input must have integer entries");
        m[i] = t.entries[i].get_num();
    }
    ucov::ProductFormResult r = ucov::is_product_form(t.n, m);

    ucov::Json j;
    j["meta"] = ucov::make_meta("product-form", ucov::digest_hex(bytes), {{"n", t.n}}, opt.seed);
    j["result"] = ucov::to_json(r);
    write_output(opt.out, j.dump(2) + "\n");
    return std::holds_alternative<ucov::ProductForm>(r) ? kExitOk : kExitNegative;
}

int run_verify_normal(const Options& opt) {
    probe_out_path(opt.out);
    std::string bytes = read_file(opt.input);
    ucov::Json in = load_json(bytes);
    ucov::TriArray t = ucov::tri_from_json(in);
    if (opt.n != 0 && opt.n != t.n)
        throw ucov::InputError("--n disagrees with the input file");
    std::vector<ucov::Int> normal(t.entries.size());
    for (std::size_t i = 0; i < normal.size(); ++i) {
        if (!ucov::is_integer(t.entries[i]))
            throw ucov::InputError("normal must have integer entries");
        normal[i] = t.entries[i].get_num();
    }

    ucov::Rat offset;
    if (in.contains("offset")) {
        offset = ucov::rat_from_json(in.at("offset"), "offset");
    } else {
        // Supporting value: max of <vertex, normal> over all vertices.
        std::vector<ucov::Rat> neg(normal.size());
        for (std::size_t i = 0; i < normal.size(); ++i) neg[i] = -ucov::Rat(normal[i]);
        offset = -ucov::vertex_min(t.n, neg).value;
    }
    bool ok = ucov::verify_facet(t.n, normal, offset);

    ucov::IntMatrix incident;
    ucov::for_each_vertex(t.n, [&](std::uint64_t, const ucov::SignVector&,
                                   const std::vector<ucov::Int>& tri) {
        if (ucov::Rat(ucov::dot(tri, normal)) == offset) incident.push_back(tri);
    });

    ucov::Json j;
    j["meta"] = ucov::make_meta("verify-normal", ucov::digest_hex(bytes), {{"n", t.n}}, opt.seed);
    j["verified"] = ok;
    j["offset"] = ucov::rat_to_string(offset);
    j["incident_vertices"] = incident.size();
    j["incidence_affine_dim"] = ucov::affine_dim(incident);
    write_output(opt.out, j.dump(2) + "\n");
    return ok ? kExitOk : kExitNegative;
}

int run_boundary(const Options& opt) {
    probe_out_path(opt.out);
    std::string bytes = read_file(opt.input);
    ucov::TriArray rho = ucov::to_covariance_point(ucov::parse_matrix(load_json(bytes)));

    ucov::Json j;
    j["meta"] = ucov::make_meta("boundary", ucov::digest_hex(bytes), {{"n", rho.n}}, opt.seed);
    auto kw = ucov::kernel(rho);
    j["singular"] = kw.has_value();
    if (kw) {
        ucov::Json lam = ucov::Json::array();
        for (const ucov::Rat& q : kw->lambda) lam.push_back(ucov::rat_to_string(q));
        j["kernel"] = std::move(lam);
    }
    j["ball_class"] = ucov::to_string(ucov::ball_bounds_check(rho));
    // Exact facet classification is attached for sizes where the full
    // H-description is quick to build.
    if (rho.n >= 3 && rho.n <= 5) {
        ucov::HRep h = ucov::enumerate_facets(rho.n);
        ucov::MembershipResult mr = ucov::membership_by_facets(rho, h);
        j["facet_class"] = ucov::to_string(mr.kind);
    }
    write_output(opt.out, j.dump(2) + "\n");
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact decision toolkit for realisable unit covariances"};
    app.require_subcommand(1);
    Options opt;

    auto* vertices = app.add_subcommand("vertices", "emit all canonical vertices as JSON lines");
    vertices->add_option("n", opt.n, "index set size")->required();
    vertices->add_option("--out", opt.out, "output path (default stdout)");
    vertices->add_option("--seed", opt.seed, "seed recorded in output metadata");

    auto* check = app.add_subcommand("check", "decide realisability, emit a certificate");
    check->add_option("file", opt.input, "matrix JSON file")->required();
    check->add_option("--out", opt.out, "output path");
    check->add_option("--seed", opt.seed, "seed recorded in output metadata");

    auto* decompose =
        app.add_subcommand("decompose", "emit a reduced realising mixture");
    decompose->add_option("file", opt.input, "matrix JSON file")->required();
    decompose->add_option("--out", opt.out, "output path");
    decompose->add_option("--seed", opt.seed, "seed recorded in output metadata");

    auto* screen = app.add_subcommand("screen", "integer-vector necessary-condition screen");
    screen->add_option("file", opt.input, "matrix JSON file")->required();
    screen->add_option("--bound", opt.bound, "max-norm bound for screening vectors")
        ->default_val(2);
    screen->add_flag("--en-only", opt.en_only, "restrict to the subset-sum class");
    screen->add_option("--out", opt.out, "output path");
    screen->add_option("--seed", opt.seed, "seed recorded in output metadata");

    auto* facets = app.add_subcommand("facets", "enumerate all facets (3 <= n <= 7)");
    facets->add_option("n", opt.n, "index set size")->required();
    facets->add_option("--out", opt.out, "output path");
    facets->add_option("--resume", opt.resume, "checkpoint log to append to and resume from");
    facets->add_option("--seed", opt.seed, "seed recorded in output metadata");

    auto* product = app.add_subcommand("product-form", "test an integer array for product form");
    product->add_option("file", opt.input, "triangular array JSON file")->required();
    product->add_option("--out", opt.out, "output path");
    product->add_option("--seed", opt.seed, "seed recorded in output metadata");

    auto* verify = app.add_subcommand("verify-normal", "verify a facet normal against the polytope");
    verify->add_option("file", opt.input, "normal JSON file (triangular array, optional offset)")
        ->required();
    verify->add_option("--n", opt.n, "expected index set size");
    verify->add_option("--out", opt.out, "output path");
    verify->add_option("--seed", opt.seed, "seed recorded in output metadata");

    auto* boundary = app.add_subcommand("boundary", "singularity, ball and facet classification");
    boundary->add_option("file", opt.input, "matrix JSON file")->required();
    boundary->add_option("--out", opt.out, "output path");
    boundary->add_option("--seed", opt.seed, "seed recorded in output metadata");

    CLI11_PARSE(app, argc, argv);

    try {
        if (vertices->parsed()) return run_vertices(opt);
        if (check->parsed()) return run_check(opt, false);
        if (decompose->parsed()) return run_check(opt, true);
        if (screen->parsed()) return run_screen(opt);
        if (facets->parsed()) return run_facets(opt);
        if (product->parsed()) return run_product_form(opt);
        if (verify->parsed()) return run_verify_normal(opt);
        if (boundary->parsed()) return run_boundary(opt);
    } catch (const ucov::CapExceeded& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kExitCap;
    } catch (const ucov::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnexpected;
    }
    return kExitUnexpected;
}
