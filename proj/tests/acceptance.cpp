// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exits nonzero if any fail.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "twoweight/analysis.hpp"
#include "twoweight/construction.hpp"

using namespace twoweight;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int num, const std::string& what, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << num << ": " << what;
    if (!detail.empty()) std::cout << " -- " << detail;
    std::cout << "\n";
    if (!ok) ++failures;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(TWOWEIGHT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::path(TWOWEIGHT_TEST_TMP) / "acceptance" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

struct Instance {
    int64_t p;
    int e, n;
    FieldTables f;
    ProjectiveModel m;
    SingerGeometry geo;
    TwoWeightSet geometric;
    TwoWeightSet algebraic;
    Instance(int64_t p_, int e_, int n_)
        : p(p_), e(e_), n(n_), f(FieldTables::build(p_, e_, n_)), m(f), geo(m),
          geometric(geometric_set(geo, alpha_correspondence(geo))), algebraic(algebraic_set(m)) {}
};

std::string histogram_string(const std::map<int64_t, int64_t>& h) {
    std::string out = "{";
    for (const auto& [k, v] : h) out += std::to_string(k) + ":" + std::to_string(v) + " ";
    if (out.size() > 1) out.pop_back();
    return out + "}";
}

}  // namespace

int main() {
    std::vector<std::unique_ptr<Instance>> instances;
    const auto t_all = std::chrono::steady_clock::now();
    for (const auto& [p, e, n] :
         std::vector<std::tuple<int64_t, int, int>>{{2, 1, 2}, {3, 1, 2}, {2, 2, 2}, {2, 1, 3}, {3, 1, 3}})
        instances.push_back(std::make_unique<Instance>(p, e, n));

    // 1. headline instance through the CLI: spectrum {21,30} with histogram {30:280, 21:84}, under 1 s
    {
        const fs::path dir = fresh_dir("criterion1");
        const auto t0 = std::chrono::steady_clock::now();
        const int rc = run_cli("certify -p 3 -e 1 -n 2 --out " + dir.string());
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = rc == 0 && secs < 1.0;
        std::string detail = "exit " + std::to_string(rc) + ", " + std::to_string(secs) + " s";
        if (ok) {
            const json cert = json::parse(slurp(dir / "certificate.json"));
            ok = cert["spectrum"]["histogram"] == json({{"21", 84}, {"30", 280}}) &&
                 cert["spectrum"]["verdict"] == "pass";
            detail += ", histogram " + cert["spectrum"]["histogram"].dump();
        }
        report(1, "cmd_certify q=3 n=2 gives spectrum {21,30} with histogram {30:280, 21:84} in < 1 s", ok, detail);
    }

    // 2. spectrum support equals the closed-form weights on all five instances, under 30 s total
    {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        std::string detail;
        for (const auto& inst : instances) {
            const SpectrumCertificate cert = hyperplane_spectrum(inst->m, inst->geometric);
            const WeightPair w = expected_weights(inst->f.q(), inst->n);
            const bool here = cert.pass && cert.histogram.size() == 2 && cert.histogram.count(w.w1) &&
                              cert.histogram.count(w.w2);
            ok = ok && here;
            detail += "q=" + std::to_string(inst->f.q()) + ",n=" + std::to_string(inst->n) + " " +
                      histogram_string(cert.histogram) + "; ";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        ok = ok && secs < 30.0;
        report(2, "spectrum support equals expected_weights(q,n) on all instances in < 30 s", ok,
               detail + std::to_string(secs) + " s");
    }

    // 3. the geometric and algebraic constructions agree on every instance
    {
        bool ok = true;
        for (const auto& inst : instances) ok = ok && sets_equal(inst->geometric, inst->algebraic);
        report(3, "geometric_set(alpha) equals algebraic_set on every instance", ok);
    }

    // 4. quadric sizes, orbit sizes, partition, all-or-nothing incidence, cap / line-union structure
    {
        bool ok = true;
        std::string detail;
        for (const auto& inst : instances) {
            try {
                const int64_t expect_quadric =
                    (inst->f.q_pow(inst->n) + 1) * ((inst->f.q_pow(inst->n - 1) - 1) / (inst->f.q() - 1));
                for (const auto& qd : inst->geo.quadrics())
                    if (static_cast<int64_t>(qd.pts.size()) != expect_quadric) ok = false;
                Bitset seen(static_cast<size_t>(inst->m.lambda_size()));
                for (const auto& orb : inst->geo.orbits()) {
                    if (static_cast<int64_t>(orb.pts.size()) != inst->f.q_pow(inst->n) + 1) ok = false;
                    for (int32_t idx : orb.pts.indices()) {
                        if (seen.test(static_cast<size_t>(idx))) ok = false;
                        seen.set(static_cast<size_t>(idx));
                    }
                }
                if (seen.count() != static_cast<size_t>(inst->m.lambda_size())) ok = false;
                inst->geo.orbit_quadric_incidence();  // throws on any partial intersection
                for (const auto& orb : inst->geo.orbits()) {
                    const OrbitStructure st = inst->geo.orbit_structure(orb);
                    if (inst->n == 2 && st.shape != OrbitShape::cap) ok = false;
                    if (inst->n == 3 && inst->f.q() == 3) {
                        if (st.shape != OrbitShape::line_union ||
                            static_cast<int64_t>(st.lines.size()) != (inst->f.q_pow(inst->n) + 1) / (inst->f.q() + 1))
                            ok = false;
                    }
                }
            } catch (const std::exception& err) {
                ok = false;
                detail += std::string(err.what()) + "; ";
            }
        }
        report(4, "quadric/orbit sizes, Lambda partition, all-or-nothing incidence, cap and line-union structure",
               ok, detail);
    }

    // 5. incidence reversal of the correspondence, all 13 x 13 pairs at q=3 n=3
    {
        bool ok = true;
        int64_t checked = 0;
        const Instance& inst = *instances[4];  // (3,1,3)
        for (int64_t i = 0; i < inst.m.pi_size(); ++i) {
            const ProjPoint pi_pt = inst.m.point(static_cast<int32_t>(inst.m.lambda_size() + i));
            for (const auto& qd : inst.geo.quadrics()) {
                const bool on_h = inst.f.trace_to_base(inst.f.mul(qd.a, pi_pt.y), Layer::middle) == FieldTables::kZero;
                const bool inside = inst.geo.orbits()[static_cast<size_t>(i)].pts.mask().is_subset_of(qd.pts.mask());
                ok = ok && (on_h == inside);
                ++checked;
            }
        }
        report(5, "the correspondence reverses incidence on all 13 x 13 pairs at q=3 n=3", ok && checked == 169,
               std::to_string(checked) + " pairs");
    }

    // 6. the only (n-1)-subspace inside the set is Pi, for q in {2,3} at n=2 and q=2 at n=3
    {
        bool ok = true;
        std::string detail;
        for (size_t which : {0, 1, 3}) {  // (2,1,2), (3,1,2), (2,1,3)
            const Instance& inst = *instances[which];
            const ContainmentReport rep = geometric_containment(inst.m, inst.geometric.points);
            detail += "q=" + std::to_string(inst.f.q()) + ",n=" + std::to_string(inst.n) + ": " +
                      std::to_string(rep.count) + (rep.only_pi ? " (only Pi)" : " (not only Pi)") + "; ";
            ok = ok && rep.only_pi;
        }
        report(6, "subspace_contained(C, n-1) returns exactly {Pi} for q in {2,3}, n=2 and q=2, n=3", ok, detail);
    }

    // 7. every bijection yields a two-weight spectrum at n=2 (6 and 24 runs, exhaustive)
    {
        bool ok = true;
        std::string detail;
        for (size_t which : {0, 1}) {  // (2,1,2), (3,1,2)
            const Instance& inst = *instances[which];
            std::vector<int32_t> perm(static_cast<size_t>(inst.m.pi_size()));
            std::iota(perm.begin(), perm.end(), 0);
            int64_t tested = 0, good = 0;
            do {
                const SpectrumCertificate cert = bijection_experiment(inst.geo, Correspondence{perm, false});
                ++tested;
                good += cert.pass ? 1 : 0;
            } while (std::next_permutation(perm.begin(), perm.end()));
            ok = ok && tested == good && tested == (inst.f.q() == 2 ? 6 : 24);
            detail += "q=" + std::to_string(inst.f.q()) + ": " + std::to_string(good) + "/" +
                      std::to_string(tested) + "; ";
        }
        report(7, "all Pi-orbit bijections give two-weight spectra at n=2, q in {2,3}", ok, detail);
    }

    // 8. code export: [84,6] over GF(3) with weights {54:560, 63:168}; [18,6] over GF(2) with {8:45, 12:18}
    {
        bool ok = true;
        std::string detail;
        try {
            const Instance& q3 = *instances[1];
            const CodeArtifact c3 =
                export_code(q3.m, q3.geometric.points, hyperplane_spectrum(q3.m, q3.geometric), 128);
            ok = ok && c3.length == 84 && c3.dimension == 6 && c3.rank == 6 &&
                 c3.weight_enumerator == std::map<int64_t, int64_t>{{54, 560}, {63, 168}} && c3.spot_checks >= 100;
            detail += "[84,6]: " + histogram_string(c3.weight_enumerator) + ", " + std::to_string(c3.spot_checks) +
                      " spot checks; ";
            const Instance& q2 = *instances[0];
            const CodeArtifact c2 =
                export_code(q2.m, q2.geometric.points, hyperplane_spectrum(q2.m, q2.geometric), 128);
            ok = ok && c2.length == 18 && c2.dimension == 6 && c2.rank == 6 &&
                 c2.weight_enumerator == std::map<int64_t, int64_t>{{8, 45}, {12, 18}} && c2.spot_checks >= 100;
            detail += "[18,6]: " + histogram_string(c2.weight_enumerator);
        } catch (const std::exception& err) {
            ok = false;
            detail += err.what();
        }
        report(8, "generator matrices of full rank with the predicted weight enumerators, spot-checked", ok, detail);
    }

    // 9. graph export with brute-force strong-regularity verification over all vertex pairs
    {
        bool ok = true;
        std::string detail;
        try {
            const GraphArtifact g2 = export_graph(instances[0]->m, instances[0]->geometric.points, 2);
            ok = ok && g2.v == 64 && g2.k == 18 && g2.lambda == 2 && g2.mu == 6 && g2.exhaustive;
            detail += "SRG(" + std::to_string(g2.v) + "," + std::to_string(g2.k) + "," + std::to_string(g2.lambda) +
                      "," + std::to_string(g2.mu) + "); ";
            const GraphArtifact g3 = export_graph(instances[1]->m, instances[1]->geometric.points, 2);
            ok = ok && g3.v == 729 && g3.k == 168 && g3.lambda == 27 && g3.mu == 42 && g3.exhaustive;
            detail += "SRG(" + std::to_string(g3.v) + "," + std::to_string(g3.k) + "," + std::to_string(g3.lambda) +
                      "," + std::to_string(g3.mu) + ")";
        } catch (const std::exception& err) {
            ok = false;
            detail += err.what();
        }
        report(9, "strongly regular graphs SRG(64,18,2,6) and SRG(729,168,27,42), all pairs checked", ok, detail);
    }

    // 10. negative control: certifying Lambda fails with spectrum {40:4, 13:360}
    {
        const Instance& inst = *instances[1];
        const SpectrumCertificate cert = hyperplane_spectrum(inst.m, inst.m.lambda_set());
        const bool ok = !cert.pass && cert.histogram == std::map<int64_t, int64_t>{{40, 4}, {13, 360}};
        report(10, "certifying Lambda at q=3 n=2 fails with spectrum {40:4, 13:360}", ok,
               histogram_string(cert.histogram));
    }

    // 11. blow-up weights at d=q match the construction weights as unordered pairs
    {
        bool ok = true;
        for (const auto& inst : instances) {
            const auto [wa, wb] = blowup_weights(inst->f.q(), inst->n, inst->f.q());
            const WeightPair w = expected_weights(inst->f.q(), inst->n);
            ok = ok && std::minmax(wa, wb) == std::minmax(w.w1, w.w2);
        }
        report(11, "blowup_weights(q,n,d=q) equals expected_weights(q,n) on every instance", ok);
    }

    // 12. byte-identical certificates across reruns and thread counts
    {
        const fs::path a = fresh_dir("det_a"), b = fresh_dir("det_b"), c = fresh_dir("det_c");
        bool ok = run_cli("certify -p 3 -e 1 -n 2 --threads 1 --out " + a.string()) == 0;
        ok = ok && run_cli("certify -p 3 -e 1 -n 2 --threads 4 --out " + b.string()) == 0;
        ok = ok && run_cli("certify -p 3 -e 1 -n 2 --threads 1 --out " + c.string()) == 0;
        std::string detail;
        for (const char* name : {"certificate.json", "set_geometric.txt", "code_generator.txt", "graph_edges.txt"}) {
            const bool same = slurp(a / name) == slurp(b / name) && slurp(a / name) == slurp(c / name);
            if (!same) detail += std::string(name) + " differs; ";
            ok = ok && same;
        }
        report(12, "identical run configuration produces byte-identical artifacts, --threads 1 vs N", ok, detail);
    }

    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_all).count();
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion(s) failed")
              << " in " << total << " s\n";
    return failures == 0 ? 0 : 1;
}
