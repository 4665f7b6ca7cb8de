#pragma once

// The two-weight set built both ways:
//
//   * geometric: a union of baseless cones, one per point of Pi. The cone at
//     p_i joins p_i to every point of the orbit the correspondence assigns it,
//     keeps the apex, and drops the base points.
//   * algebraic: the orbit of the point (1,1) under the cyclic group generated
//     by (x,y) -> (beta x, gamma y), together with all of Pi.
//
// With the correspondence gamma^i -> I_i (which is verified to reverse
// incidence between Pi and the quadric pencil space) the two constructions
// produce the same canonical point set.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "twoweight/field_tower.hpp"
#include "twoweight/projective_model.hpp"
#include "twoweight/singer_geometry.hpp"

namespace twoweight {

struct Correspondence {
    std::vector<int32_t> orbit_of_pi;  // Pi point index -> orbit index, bijective
    bool anti_isomorphic = false;
};

enum class ConstructionKind { geometric, algebraic };

struct Provenance {
    ConstructionKind kind = ConstructionKind::geometric;
    std::vector<int32_t> correspondence;  // geometric only
    bool anti_isomorphic = false;
};

struct TwoWeightSet {
    PointSet points;
    Provenance provenance;
};

// The correspondence mapping the Pi point with y = gamma^i to the orbit of
// beta^i. Verified exhaustively to reverse incidence: gamma^i lies on the Pi
// hyperplane Tr(a y) = 0 exactly when orbit i is contained in Q_a.
inline Correspondence alpha_correspondence(const SingerGeometry& geo) {
    const ProjectiveModel& m = geo.model();
    const FieldTables& f = m.field();
    const int64_t M = m.pi_size();
    for (int64_t i = 0; i < M; ++i) {
        for (int64_t j = 0; j < M; ++j) {
            const bool on_hyperplane = m.trace_digit_mid((i + j) % f.mid_order()) == 0;
            const bool orbit_inside = geo.orbits()[static_cast<size_t>(i)].pts.mask().is_subset_of(
                geo.quadrics()[static_cast<size_t>(j)].pts.mask());
            if (on_hyperplane != orbit_inside)
                throw VerificationBug("incidence reversal fails at (pi point " + std::to_string(i) +
                                      ", quadric " + std::to_string(j) + ")");
        }
    }
    Correspondence c;
    c.orbit_of_pi.resize(static_cast<size_t>(M));
    std::iota(c.orbit_of_pi.begin(), c.orbit_of_pi.end(), 0);
    c.anti_isomorphic = true;
    return c;
}

inline bool is_bijection(const std::vector<int32_t>& map, int64_t m) {
    if (static_cast<int64_t>(map.size()) != m) return false;
    std::vector<bool> hit(static_cast<size_t>(m), false);
    for (int32_t v : map) {
        if (v < 0 || v >= m || hit[static_cast<size_t>(v)]) return false;
        hit[static_cast<size_t>(v)] = true;
    }
    return true;
}

// Union of baseless cones for an arbitrary bijection Pi -> orbits. Cone points
// are emitted directly as lambda*(orbit point) + apex over lambda in GF(q)^*;
// the apex is kept, the base orbit is not.
inline TwoWeightSet geometric_set(const SingerGeometry& geo, const Correspondence& corr) {
    const ProjectiveModel& m = geo.model();
    const FieldTables& f = m.field();
    const int64_t M = m.pi_size();
    if (!is_bijection(corr.orbit_of_pi, M))
        throw std::invalid_argument("correspondence is not a bijection onto the orbits");
    Bitset used(static_cast<size_t>(m.point_count()));
    std::vector<int32_t> idx;
    idx.reserve(static_cast<size_t>(M * (1 + (f.q() - 1) * (f.q_pow(f.n()) + 1))));
    for (int64_t i = 0; i < M; ++i) {
        const int32_t apex_index = static_cast<int32_t>(m.lambda_size() + i);
        const ProjPoint& apex = m.point(apex_index);
        idx.push_back(apex_index);
        if (used.test(static_cast<size_t>(apex_index))) throw VerificationBug("cones are not disjoint");
        used.set(static_cast<size_t>(apex_index));
        const SingerOrbit& orbit = geo.orbits()[static_cast<size_t>(corr.orbit_of_pi[static_cast<size_t>(i)])];
        for (int32_t base : orbit.pts.indices()) {
            const ProjPoint& u = m.point(base);
            for (Elem lam : m.units()) {
                const int32_t w = m.index_of(f.mul(u.x, lam), apex.y);
                if (w < m.lambda_size())
                    throw VerificationBug("cone point fell into Lambda");
                if (used.test(static_cast<size_t>(w))) throw VerificationBug("cones are not disjoint");
                used.set(static_cast<size_t>(w));
                idx.push_back(w);
            }
        }
    }
    TwoWeightSet out{m.make_set(std::move(idx)),
                     Provenance{ConstructionKind::geometric, corr.orbit_of_pi, corr.anti_isomorphic}};
    const int64_t expect = M + f.q_pow(2 * f.n()) - 1;
    if (static_cast<int64_t>(out.points.size()) != expect)
        throw VerificationBug("geometric set size " + std::to_string(out.points.size()) + ", expected " +
                              std::to_string(expect));
    return out;
}

// Orbit of (1,1) under (x,y) -> (beta x, gamma y), plus Pi. The k -> point map
// is verified injective over a full period (the action on the orbit part is
// sharply transitive).
inline TwoWeightSet algebraic_set(const ProjectiveModel& m) {
    const FieldTables& f = m.field();
    Bitset used(static_cast<size_t>(m.point_count()));
    std::vector<int32_t> idx;
    idx.reserve(static_cast<size_t>(f.order() + m.pi_size()));
    for (int64_t k = 0; k < f.order(); ++k) {
        const int32_t w = m.index_of(f.from_exp(k), f.mid_elem(k % f.mid_order()));
        if (used.test(static_cast<size_t>(w)))
            throw VerificationBug("orbit of (1,1) revisits a point before the full period");
        used.set(static_cast<size_t>(w));
        idx.push_back(w);
    }
    for (int64_t i = 0; i < m.pi_size(); ++i) idx.push_back(static_cast<int32_t>(m.lambda_size() + i));
    return TwoWeightSet{m.make_set(std::move(idx)), Provenance{ConstructionKind::algebraic, {}, false}};
}

inline bool sets_equal(const TwoWeightSet& s1, const TwoWeightSet& s2) {
    if (s1.points.universe() != s2.points.universe())
        throw std::invalid_argument("sets_equal across different instances");
    return s1.points == s2.points;
}

}  // namespace twoweight
