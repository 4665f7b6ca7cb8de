#pragma once

// File formats, bit-exact across platforms and thread counts:
//
//   * point sets: one JSON header line carrying (p, e, n, modulus) and the
//     provenance, then one line per point holding the 3n canonical GF(q)
//     coordinates, each written as its e base-p digits (constant digit first),
//     groups separated by single spaces;
//   * certificates: a single ordered JSON document;
//   * generator matrices: one row per line, GF(q) digits space-separated
//     (single characters for q <= 9, comma-separated otherwise);
//   * graphs: an edge list, one "u v" per line with u < v, vertices indexed by
//     sum digit_i * q^i over the coordinate positions.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "twoweight/analysis.hpp"
#include "twoweight/construction.hpp"
#include "twoweight/field_tower.hpp"
#include "twoweight/projective_model.hpp"

namespace twoweight::io {

using ordered_json = nlohmann::ordered_json;

inline ordered_json tower_header(const FieldTables& f) {
    ordered_json j;
    j["p"] = f.p();
    j["e"] = f.e();
    j["n"] = f.n();
    j["q"] = f.q();
    j["modulus"] = f.modulus();
    return j;
}

inline ordered_json provenance_json(const Provenance& prov) {
    ordered_json j;
    j["construction"] = prov.kind == ConstructionKind::geometric ? "geometric" : "algebraic";
    if (prov.kind == ConstructionKind::geometric) {
        j["correspondence"] = prov.correspondence;
        j["anti_isomorphic"] = prov.anti_isomorphic;
    }
    return j;
}

inline std::string format_digit_group(const FieldTables& f, int32_t digit) {
    std::string out;
    int64_t rest = digit;
    for (int j = 0; j < f.e(); ++j) {
        if (j > 0 && f.p() > 9) out += ',';
        out += std::to_string(rest % f.p());
        rest /= f.p();
    }
    return out;
}

inline std::string format_point_line(const FieldTables& f, const ProjPoint& pt) {
    std::vector<int32_t> digits(static_cast<size_t>(3 * f.n()), 0);
    f.coord_digits(pt.x, pt.y, digits.data());
    std::string line;
    for (size_t i = 0; i < digits.size(); ++i) {
        if (i > 0) line += ' ';
        line += format_digit_group(f, digits[i]);
    }
    return line;
}

inline void write_point_set(std::ostream& os, const ProjectiveModel& m, const PointSet& set,
                            const Provenance* prov = nullptr) {
    ordered_json header = tower_header(m.field());
    if (prov != nullptr) header["provenance"] = provenance_json(*prov);
    os << header.dump() << '\n';
    for (int32_t idx : set.indices()) os << format_point_line(m.field(), m.point(idx)) << '\n';
}

inline void write_point_set(std::ostream& os, const ProjectiveModel& m, const TwoWeightSet& set) {
    write_point_set(os, m, set.points, &set.provenance);
}

inline ordered_json histogram_json(const std::map<int64_t, int64_t>& h) {
    ordered_json j = ordered_json::object();
    for (const auto& [k, v] : h) j[std::to_string(k)] = v;
    return j;
}

inline ordered_json spectrum_json(const SpectrumCertificate& cert) {
    ordered_json j;
    j["histogram"] = histogram_json(cert.histogram);
    j["expected"] = {{"w1", cert.w1}, {"w2", cert.w2}};
    j["verdict"] = cert.pass ? "pass" : "fail";
    j["set_size"] = cert.set_size;
    j["hyperplane_count"] = cert.hyperplane_count;
    j["classes"] = {{"contain_lambda", histogram_json(cert.hist_contain_lambda)},
                    {"contain_pi", histogram_json(cert.hist_contain_pi)},
                    {"mixed", histogram_json(cert.hist_mixed)}};
    return j;
}

inline ordered_json proof_cases_json(const ProofCaseReport& rep) {
    ordered_json j;
    j["parabolic_section_size"] = rep.parabolic_section_size;
    j["cone_section_size"] = rep.cone_section_size;
    j["parabolic_count"] = rep.parabolic_count;
    j["cone_count"] = rep.cone_count;
    j["mixed_total"] = rep.mixed_total;
    j["identity_ok"] = rep.identity_ok;
    j["weights_ok"] = rep.weights_ok;
    return j;
}

inline ordered_json containment_json(const ContainmentReport& rep) {
    ordered_json j;
    j["dimension"] = rep.dimension;
    j["subspace_count"] = rep.count;
    j["only_pi"] = rep.only_pi;
    j["geometric"] = false;  // a single subspace can never partition the set
    return j;
}

inline ordered_json code_json(const CodeArtifact& art) {
    ordered_json j;
    j["length"] = art.length;
    j["dimension"] = art.dimension;
    j["q"] = art.q;
    j["rank"] = art.rank;
    j["weights"] = histogram_json(art.weight_enumerator);
    j["spot_checks"] = art.spot_checks;
    return j;
}

inline ordered_json graph_json(const GraphArtifact& art) {
    ordered_json j;
    j["v"] = art.v;
    j["k"] = art.k;
    j["lambda"] = art.lambda;
    j["mu"] = art.mu;
    j["verification"] = art.exhaustive ? "exhaustive" : "sampled";
    if (!art.exhaustive)
        j["sampled_argument"] =
            "all pairs through a spanning vertex sample were checked; adjacency depends only on the "
            "difference vector, and pairs through the zero vertex realize every difference class";
    return j;
}

inline void write_generator_matrix(std::ostream& os, const CodeArtifact& art) {
    for (const auto& row : art.generator) {
        std::string line;
        for (size_t j = 0; j < row.size(); ++j) {
            if (j > 0) line += art.q <= 9 ? " " : ",";
            line += std::to_string(row[j]);
        }
        os << line << '\n';
    }
}

inline void write_edge_list(std::ostream& os, const FieldTables& f, const GraphArtifact& art) {
    detail::VertexCodec codec(f, 3 * f.n());
    std::vector<int64_t> nbrs;
    for (int64_t u = 0; u < art.v; ++u) {
        nbrs.clear();
        for (int64_t d : art.diff_list) {
            const int64_t w = codec.subtract(u, d);
            if (w > u) nbrs.push_back(w);
        }
        std::sort(nbrs.begin(), nbrs.end());
        for (int64_t w : nbrs) os << u << ' ' << w << '\n';
    }
}

}  // namespace twoweight::io
