// Command-line front end: build the two-weight sets, certify every structural
// claim at the given parameters, and sweep correspondence bijections.
//
// Exit codes: 0 success / certificate passes, 1 verification failure,
// 2 usage error, 3 resource cap exceeded.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twoweight/analysis.hpp"
#include "twoweight/construction.hpp"
#include "twoweight/serialization.hpp"

namespace {

using namespace twoweight;
using ordered_json = nlohmann::ordered_json;

struct RunConfig {
    int64_t p = 0;
    int e = 1;
    int n = 2;
    std::string modulus;              // comma-separated, low degree first; empty = deterministic default
    std::string construction = "both";
    std::string correspondence = "alpha";
    std::string out;
    int threads = 1;
    int64_t vertex_cap = 20000;
    int64_t table_cap = FieldTables::kDefaultTableCap;
    int64_t max_bijections = 1000000;
    int64_t sample = 0;
    bool control_lambda = false;
};

std::vector<int32_t> parse_modulus(const std::string& text) {
    std::vector<int32_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(static_cast<int32_t>(std::stol(item)));
    return out;
}

std::filesystem::path output_dir(const RunConfig& cfg) {
    if (!cfg.out.empty()) return cfg.out;
    if (const char* env = std::getenv("TWOWEIGHT_OUT_DIR")) return env;
    return ".";
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << contents;
}

Correspondence load_correspondence(const RunConfig& cfg, const SingerGeometry& geo) {
    if (cfg.correspondence == "alpha") return alpha_correspondence(geo);
    std::ifstream is(cfg.correspondence);
    if (!is) throw std::invalid_argument("cannot read correspondence file " + cfg.correspondence);
    Correspondence c;
    int32_t v = 0;
    while (is >> v) c.orbit_of_pi.push_back(v);
    c.anti_isomorphic = false;
    if (!is_bijection(c.orbit_of_pi, geo.model().pi_size()))
        throw std::invalid_argument("correspondence file is not a bijection onto 0.." +
                                    std::to_string(geo.model().pi_size() - 1));
    return c;
}

ordered_json singer_structure_json(const SingerGeometry& geo, const GammaSpace& g) {
    const ProjectiveModel& m = geo.model();
    ordered_json j;
    j["quadric_count"] = static_cast<int64_t>(geo.quadrics().size());
    j["quadric_size"] = static_cast<int64_t>(geo.quadrics().front().pts.size());
    j["orbit_count"] = static_cast<int64_t>(geo.orbits().size());
    j["orbit_size"] = static_cast<int64_t>(geo.orbits().front().pts.size());
    std::vector<std::string> shapes;
    std::vector<int64_t> line_counts;
    for (const auto& orb : geo.orbits()) {
        const OrbitStructure st = geo.orbit_structure(orb);
        shapes.push_back(st.shape == OrbitShape::cap ? "cap" : "line_union");
        line_counts.push_back(static_cast<int64_t>(st.lines.size()));
    }
    j["orbit_structure"] = shapes;
    if (m.field().n() % 2 == 1) j["orbit_line_counts"] = line_counts;
    j["quadrics_per_orbit"] = g.quadrics_per_orbit;
    std::vector<std::vector<int>> inc(static_cast<size_t>(g.size), std::vector<int>(static_cast<size_t>(g.size), 0));
    for (int64_t i = 0; i < g.size; ++i)
        for (int64_t k = 0; k < g.size; ++k) inc[static_cast<size_t>(i)][static_cast<size_t>(k)] = g.contains(i, k) ? 1 : 0;
    j["incidence"] = inc;
    return j;
}

int cmd_build(const RunConfig& cfg) {
    const FieldTables f = FieldTables::build(cfg.p, cfg.e, cfg.n, parse_modulus(cfg.modulus), cfg.table_cap);
    const ProjectiveModel m(f);
    const SingerGeometry geo(m);
    const auto dir = output_dir(cfg);
    std::filesystem::create_directories(dir);

    bool equal = true;
    if (cfg.construction == "geometric" || cfg.construction == "both") {
        const TwoWeightSet gs = geometric_set(geo, load_correspondence(cfg, geo));
        std::ostringstream os;
        io::write_point_set(os, m, gs);
        write_file(dir / "set_geometric.txt", os.str());
        std::cout << "geometric set: " << gs.points.size() << " points -> " << (dir / "set_geometric.txt").string()
                  << "\n";
        if (cfg.construction == "both") {
            const TwoWeightSet as = algebraic_set(m);
            std::ostringstream os2;
            io::write_point_set(os2, m, as);
            write_file(dir / "set_algebraic.txt", os2.str());
            equal = sets_equal(gs, as);
            std::cout << "algebraic set: " << as.points.size() << " points -> "
                      << (dir / "set_algebraic.txt").string() << "\n";
            std::cout << "sets equal: " << (equal ? "yes" : "NO") << "\n";
        }
    } else if (cfg.construction == "algebraic") {
        const TwoWeightSet as = algebraic_set(m);
        std::ostringstream os;
        io::write_point_set(os, m, as);
        write_file(dir / "set_algebraic.txt", os.str());
        std::cout << "algebraic set: " << as.points.size() << " points -> " << (dir / "set_algebraic.txt").string()
                  << "\n";
    } else {
        throw std::invalid_argument("unknown construction " + cfg.construction);
    }
    return equal ? 0 : 1;
}

int cmd_certify(const RunConfig& cfg) {
    const FieldTables f = FieldTables::build(cfg.p, cfg.e, cfg.n, parse_modulus(cfg.modulus), cfg.table_cap);
    const ProjectiveModel m(f);
    const SingerGeometry geo(m);
    const GammaSpace gamma = geo.orbit_quadric_incidence();
    const auto dir = output_dir(cfg);
    std::filesystem::create_directories(dir);

    ordered_json cert;
    cert["params"] = {{"p", f.p()}, {"e", f.e()}, {"n", f.n()}, {"q", f.q()}, {"space_dimension", 3 * f.n() - 1}};
    cert["modulus"] = f.modulus();
    cert["derived"] = {{"beta_order", f.order()},
                       {"gamma_exponent", f.gamma_exponent()},
                       {"xi_exponent", f.xi_exponent()},
                       {"eta_exponent", f.eta_exponent()}};
    cert["singer_structure"] = singer_structure_json(geo, gamma);

    const Correspondence corr = load_correspondence(cfg, geo);
    TwoWeightSet set{PointSet{}, Provenance{}};
    bool equal = true;
    if (cfg.control_lambda) {
        set = TwoWeightSet{m.lambda_set(), Provenance{ConstructionKind::geometric, {}, false}};
        cert["construction"] = {{"mode", "control_lambda"}, {"set_size", static_cast<int64_t>(set.points.size())}};
    } else if (cfg.construction == "algebraic") {
        set = algebraic_set(m);
        cert["construction"] = {{"mode", "algebraic"}, {"set_size", static_cast<int64_t>(set.points.size())}};
        std::ostringstream os;
        io::write_point_set(os, m, set);
        write_file(dir / "set_algebraic.txt", os.str());
    } else {
        set = geometric_set(geo, corr);
        if (cfg.construction == "both") equal = sets_equal(set, algebraic_set(m));
        cert["construction"] = {{"mode", cfg.construction},
                                {"correspondence", corr.orbit_of_pi},
                                {"anti_isomorphic", corr.anti_isomorphic},
                                {"sets_equal", equal},
                                {"set_size", static_cast<int64_t>(set.points.size())}};
        std::ostringstream os;
        io::write_point_set(os, m, set);
        write_file(dir / "set_geometric.txt", os.str());
    }

    const SpectrumCertificate spectrum_cert = hyperplane_spectrum(m, set.points, cfg.threads);
    cert["spectrum"] = io::spectrum_json(spectrum_cert);

    const bool default_construction = !cfg.control_lambda && corr.anti_isomorphic;
    if (spectrum_cert.pass && default_construction) {
        cert["proof_cases"] = io::proof_cases_json(proof_case_counts(m, set, cfg.threads));
    } else {
        cert["proof_cases"] = {{"skipped", cfg.control_lambda ? "control set" : "non-default correspondence"}};
    }

    const ContainmentReport cont = geometric_containment(m, set.points);
    cert["containment"] = io::containment_json(cont);

    if (spectrum_cert.pass) {
        const CodeArtifact code = export_code(m, set.points, spectrum_cert);
        cert["code"] = io::code_json(code);
        std::ostringstream os;
        io::write_generator_matrix(os, code);
        write_file(dir / "code_generator.txt", os.str());

        int64_t vertices = 1;
        for (int i = 0; i < 3 * f.n(); ++i) vertices *= f.q();
        if (vertices <= cfg.vertex_cap) {
            const GraphArtifact graph = export_graph(m, set.points, cfg.threads);
            cert["graph"] = io::graph_json(graph);
            std::ostringstream os2;
            io::write_edge_list(os2, f, graph);
            write_file(dir / "graph_edges.txt", os2.str());
        } else {
            cert["graph"] = {{"skipped", "vertex count " + std::to_string(vertices) + " exceeds cap " +
                                             std::to_string(cfg.vertex_cap)}};
        }
    } else {
        cert["code"] = {{"skipped", "spectrum verdict fail"}};
        cert["graph"] = {{"skipped", "spectrum verdict fail"}};
    }

    const bool pass = spectrum_cert.pass && equal;
    cert["verdict"] = pass ? "pass" : "fail";
    const std::string doc = cert.dump(2) + "\n";
    write_file(dir / "certificate.json", doc);
    std::cout << doc;
    return pass ? 0 : 1;
}

int cmd_experiment(const RunConfig& cfg) {
    const FieldTables f = FieldTables::build(cfg.p, cfg.e, cfg.n, parse_modulus(cfg.modulus), cfg.table_cap);
    const ProjectiveModel m(f);
    const SingerGeometry geo(m);
    const int64_t M = m.pi_size();
    int64_t factorial = 1;
    bool overflow = false;
    for (int64_t i = 2; i <= M; ++i) {
        if (factorial > cfg.max_bijections) { overflow = true; break; }
        factorial *= i;
    }
    const bool exhaustive = !overflow && factorial <= cfg.max_bijections;
    if (!exhaustive && cfg.sample <= 0)
        throw ResourceLimitError("(q^n-1)/(q-1)! = " + (overflow ? std::string(">") : std::to_string(factorial)) +
                                 " bijections exceeds --max-bijections; pass --sample K to sample");

    const WeightPair w = expected_weights(f.q(), f.n());
    std::map<std::string, int64_t> support_tally;
    int64_t tested = 0, two_weight = 0;
    auto run_one = [&](const std::vector<int32_t>& perm) {
        Correspondence c{perm, false};
        const SpectrumCertificate cert = bijection_experiment(geo, c, cfg.threads);
        std::string support;
        for (const auto& [k, v] : cert.histogram) {
            if (!support.empty()) support += ",";
            support += std::to_string(k);
        }
        ++support_tally[support];
        ++tested;
        two_weight += cert.pass ? 1 : 0;
    };

    std::vector<int32_t> perm(static_cast<size_t>(M));
    std::iota(perm.begin(), perm.end(), 0);
    if (exhaustive) {
        do {
            run_one(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        std::mt19937_64 rng(0x62696a656374ULL);
        for (int64_t s = 0; s < cfg.sample; ++s) {
            std::shuffle(perm.begin(), perm.end(), rng);
            run_one(perm);
        }
    }

    ordered_json rep;
    rep["params"] = {{"p", f.p()}, {"e", f.e()}, {"n", f.n()}, {"q", f.q()}};
    rep["modulus"] = f.modulus();
    rep["mode"] = exhaustive ? "exhaustive" : "sampled";
    rep["bijections_tested"] = tested;
    rep["two_weight_count"] = two_weight;
    rep["expected_weights"] = {w.w2, w.w1};
    rep["spectrum_supports"] = support_tally;
    const auto dir = output_dir(cfg);
    std::filesystem::create_directories(dir);
    const std::string doc = rep.dump(2) + "\n";
    write_file(dir / "experiment.json", doc);
    std::cout << doc;
    return 0;
}

void add_common(CLI::App* app, RunConfig& cfg) {
    app->add_option("-p", cfg.p, "characteristic (prime)")->required();
    app->add_option("-e", cfg.e, "exponent, q = p^e");
    app->add_option("-n", cfg.n, "extension parameter, the space is PG(3n-1,q)");
    app->add_option("--modulus", cfg.modulus, "modulus coefficients, comma-separated, low degree first");
    app->add_option("--out", cfg.out, "output directory (default $TWOWEIGHT_OUT_DIR or .)");
    app->add_option("--threads", cfg.threads, "worker threads for the enumeration kernels");
    app->add_option("--table-cap", cfg.table_cap, "largest allowed field table (q^2n entries)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-weight point sets in PG(3n-1,q): construction and certification"};
    app.require_subcommand(1);
    RunConfig cfg;

    CLI::App* build = app.add_subcommand("build", "construct the point set(s) and write them out");
    add_common(build, cfg);
    build->add_option("--construction", cfg.construction, "geometric | algebraic | both (default both)");
    build->add_option("--correspondence", cfg.correspondence, "alpha or a permutation file");

    CLI::App* certify = app.add_subcommand("certify", "construct, verify every claim, emit a certificate");
    add_common(certify, cfg);
    certify->add_option("--construction", cfg.construction, "geometric | algebraic | both (default both)");
    certify->add_option("--correspondence", cfg.correspondence, "alpha or a permutation file");
    certify->add_option("--vertex-cap", cfg.vertex_cap, "skip the graph export above this many vertices");
    certify->add_flag("--control-lambda", cfg.control_lambda,
                      "negative control: certify the subspace Lambda instead of the constructed set");

    CLI::App* experiment = app.add_subcommand("experiment", "sweep correspondence bijections and tabulate spectra");
    add_common(experiment, cfg);
    experiment->add_option("--max-bijections", cfg.max_bijections, "cap for the exhaustive sweep");
    experiment->add_option("--sample", cfg.sample, "sample this many random bijections when the sweep is too large");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        if (err.get_exit_code() == 0) return app.exit(err);  // --help
        app.exit(err);
        return 2;
    }

    try {
        if (build->parsed()) return cmd_build(cfg);
        if (certify->parsed()) return cmd_certify(cfg);
        return cmd_experiment(cfg);
    } catch (const twoweight::ResourceLimitError& err) {
        std::cerr << "resource cap: " << err.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& err) {
        std::cerr << "usage error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "verification failure: " << err.what() << "\n";
        return 1;
    }
}
