#pragma once

// Structure of Lambda = PG(2n-1,q) under the Singer subgroup <xi>:
//
//   * the elliptic quadrics Q_a = {x : Tr(a x^(q^n+1)) = 0}, one per class of
//     a in GF(q^n)^* modulo GF(q)^*, which form a pencil space isomorphic to
//     PG(n-1,q) in the parameter a;
//   * the <xi>-orbits I_i of size q^n+1, which partition Lambda and are each
//     contained in or disjoint from every Q_a;
//   * the orbit/quadric incidence (the space Gamma), with the projective
//     axioms checked exhaustively.
//
// Everything is verified by enumeration at construction time; a failed check
// throws VerificationBug.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "twoweight/bitset.hpp"
#include "twoweight/field_tower.hpp"
#include "twoweight/gfq_linalg.hpp"
#include "twoweight/projective_model.hpp"

namespace twoweight {

struct Quadric {
    int64_t param_index = 0;  // a = gamma^param_index, minimal exponent in its GF(q)^* coset
    Elem a = FieldTables::kZero;
    PointSet pts;
};

struct SingerOrbit {
    int64_t orbit_index = 0;  // orbit of beta^orbit_index
    PointSet pts;
};

enum class OrbitShape { cap, line_union };

struct OrbitStructure {
    OrbitShape shape = OrbitShape::cap;
    std::vector<std::vector<int32_t>> lines;  // partition into full lines, odd n only
};

struct GammaSpace {
    int64_t size = 0;                       // (q^n-1)/(q-1) points and hyperplanes
    std::vector<uint8_t> incidence;         // [orbit * size + quadric] = 1 iff orbit inside quadric
    int64_t quadrics_per_orbit = 0;         // = (q^(n-1)-1)/(q-1), constant
    int64_t orbits_per_quadric = 0;
    bool contains(int64_t orbit, int64_t quadric) const {
        return incidence[static_cast<size_t>(orbit * size + quadric)] != 0;
    }
};

class SingerGeometry {
public:
    explicit SingerGeometry(const ProjectiveModel& model) : m_(&model) {
        const FieldTables& f = model.field();
        const int64_t L = model.lambda_size();
        const int64_t M = model.pi_size();
        const int64_t mid_ord = f.mid_order();
        const int64_t expect_quadric = (f.q_pow(f.n()) + 1) * ((f.q_pow(f.n() - 1) - 1) / (f.q() - 1));
        const int64_t per_point = (f.q_pow(f.n() - 1) - 1) / (f.q() - 1);

        std::vector<int64_t> cover(static_cast<size_t>(L), 0);
        quadrics_.reserve(static_cast<size_t>(M));
        for (int64_t j = 0; j < M; ++j) {
            std::vector<int32_t> idx;
            for (int64_t i = 0; i < L; ++i) {
                if (model.trace_digit_mid((i + j) % mid_ord) == 0) {
                    idx.push_back(static_cast<int32_t>(i));
                    ++cover[static_cast<size_t>(i)];
                }
            }
            if (static_cast<int64_t>(idx.size()) != expect_quadric)
                throw VerificationBug("quadric size mismatch at a = gamma^" + std::to_string(j));
            quadrics_.push_back(Quadric{j, f.mid_elem(j), model.make_set(std::move(idx))});
        }
        for (int64_t i = 0; i < L; ++i)
            if (cover[static_cast<size_t>(i)] != per_point)
                throw VerificationBug("quadric cover count wrong at Lambda point " + std::to_string(i));

        const int64_t orbit_size = f.q_pow(f.n()) + 1;
        Bitset seen(static_cast<size_t>(L));
        orbits_.reserve(static_cast<size_t>(M));
        for (int64_t i = 0; i < M; ++i) {
            std::vector<int32_t> idx;
            for (int64_t jj = 0; jj <= f.q_pow(f.n()); ++jj)
                idx.push_back(static_cast<int32_t>((i + jj * f.xi_exponent()) % L));
            PointSet pts = model.make_set(std::move(idx));
            if (static_cast<int64_t>(pts.size()) != orbit_size)
                throw VerificationBug("orbit size mismatch at orbit " + std::to_string(i));
            if (pts.mask().intersects(seen))
                throw VerificationBug("orbits do not partition Lambda");
            for (int32_t t : pts.indices()) seen.set(static_cast<size_t>(t));
            orbits_.push_back(SingerOrbit{i, std::move(pts)});
        }
        if (seen.count() != static_cast<size_t>(L)) throw VerificationBug("orbits do not cover Lambda");
    }

    const ProjectiveModel& model() const { return *m_; }
    const std::vector<Quadric>& quadrics() const { return quadrics_; }
    const std::vector<SingerOrbit>& orbits() const { return orbits_; }

    bool quadric_contains(Elem a, int32_t lambda_index) const {
        const FieldTables& f = m_->field();
        const int64_t ma = f.mid_exp(a);
        return m_->trace_digit_mid((ma + lambda_index) % f.mid_order()) == 0;
    }

    // Verifies that the combination lambda*Q_a + mu*Q_b is again a quadric of
    // the pencil: the defining form is pointwise GF(q)-linear in the parameter
    // and Q_a n Q_b is inside Q_(lambda a + mu b).
    bool pencil_check(Elem a, Elem b, Elem lam, Elem mu) const {
        const FieldTables& f = m_->field();
        if (a == FieldTables::kZero || b == FieldTables::kZero)
            throw std::invalid_argument("pencil_check requires nonzero quadric parameters");
        if (!f.in_middle(a) || !f.in_middle(b) || !f.in_base(lam) || !f.in_base(mu))
            throw std::invalid_argument("pencil_check arguments outside their fields");
        if (lam == FieldTables::kZero && mu == FieldTables::kZero)
            throw std::invalid_argument("pencil_check with the zero combination");
        const Elem c = f.add(f.mul(lam, a), f.mul(mu, b));
        if (c == FieldTables::kZero)
            throw std::invalid_argument("combination collapses to the zero parameter (Q_a = Q_b)");
        for (int64_t k = 0; k < f.order(); ++k) {
            const Elem z = f.rel_norm(f.from_exp(k));
            const Elem lhs = f.trace_to_base(f.mul(c, z), Layer::middle);
            const Elem rhs = f.add(f.mul(lam, f.trace_to_base(f.mul(a, z), Layer::middle)),
                                   f.mul(mu, f.trace_to_base(f.mul(b, z), Layer::middle)));
            if (lhs != rhs) return false;
        }
        const int64_t L = m_->lambda_size();
        for (int64_t i = 0; i < L; ++i) {
            const auto li = static_cast<int32_t>(i);
            if (quadric_contains(a, li) && quadric_contains(b, li) && !quadric_contains(c, li)) return false;
        }
        return true;
    }

    // Certifies the orbit as a cap (even n: no 3 points collinear) or as a
    // union of (q^n+1)/(q+1) pairwise disjoint full lines (odd n >= 3). The
    // cap check enumerates triples up to triple_limit points and switches to
    // the pair-with-line-mask method above that.
    OrbitStructure orbit_structure(const SingerOrbit& orbit, size_t triple_limit = 200) const {
        const FieldTables& f = m_->field();
        if (f.n() % 2 == 0) {
            verify_cap(orbit.pts, triple_limit);
            return OrbitStructure{OrbitShape::cap, {}};
        }
        OrbitStructure st{OrbitShape::line_union, full_lines_partition(orbit.pts)};
        return st;
    }

    // Orbit/quadric incidence with the PG(n-1,q) axiom checks.
    GammaSpace orbit_quadric_incidence() const {
        const FieldTables& f = m_->field();
        const int64_t M = m_->pi_size();
        const int64_t orbit_size = f.q_pow(f.n()) + 1;
        const int64_t per = (f.q_pow(f.n() - 1) - 1) / (f.q() - 1);
        GammaSpace g;
        g.size = M;
        g.quadrics_per_orbit = per;
        g.orbits_per_quadric = per;
        g.incidence.assign(static_cast<size_t>(M * M), 0);
        std::vector<int64_t> row(static_cast<size_t>(M), 0), col(static_cast<size_t>(M), 0);
        for (int64_t i = 0; i < M; ++i) {
            for (int64_t j = 0; j < M; ++j) {
                const size_t common = orbits_[static_cast<size_t>(i)].pts.mask().intersection_count(
                    quadrics_[static_cast<size_t>(j)].pts.mask());
                if (common == static_cast<size_t>(orbit_size)) {
                    g.incidence[static_cast<size_t>(i * M + j)] = 1;
                    ++row[static_cast<size_t>(i)];
                    ++col[static_cast<size_t>(j)];
                } else if (common != 0) {
                    throw VerificationBug("orbit " + std::to_string(i) + " partially meets quadric " +
                                          std::to_string(j));
                }
            }
        }
        for (int64_t i = 0; i < M; ++i)
            if (row[static_cast<size_t>(i)] != per || col[static_cast<size_t>(i)] != per)
                throw VerificationBug("Gamma incidence degree mismatch");
        verify_intersection_axiom(g);
        return g;
    }

private:
    void verify_cap(const PointSet& pts, size_t triple_limit) const {
        const auto& idx = pts.indices();
        if (idx.size() <= triple_limit) {
            for (size_t i = 0; i < idx.size(); ++i)
                for (size_t j = i + 1; j < idx.size(); ++j) {
                    const std::vector<int32_t> line = m_->line_through(idx[i], idx[j]);
                    for (size_t k = j + 1; k < idx.size(); ++k)
                        if (std::binary_search(line.begin(), line.end(), idx[k]))
                            throw VerificationBug("orbit is not a cap: 3 collinear points");
                }
        } else {
            for (size_t i = 0; i < idx.size(); ++i)
                for (size_t j = i + 1; j < idx.size(); ++j) {
                    const std::vector<int32_t> line = m_->line_through(idx[i], idx[j]);
                    size_t on = 0;
                    for (int32_t t : line) on += pts.contains(t) ? 1 : 0;
                    if (on >= 3) throw VerificationBug("orbit is not a cap: 3 collinear points");
                }
        }
    }

    std::vector<std::vector<int32_t>> full_lines_partition(const PointSet& pts) const {
        const FieldTables& f = m_->field();
        const auto& idx = pts.indices();
        std::set<std::vector<int32_t>> lines;
        for (size_t i = 0; i < idx.size(); ++i) {
            for (size_t j = i + 1; j < idx.size(); ++j) {
                std::vector<int32_t> line = m_->line_through(idx[i], idx[j]);
                bool inside = true;
                for (int32_t t : line)
                    if (!pts.contains(t)) { inside = false; break; }
                if (inside) lines.insert(std::move(line));
            }
        }
        std::vector<int64_t> on_lines(pts.universe(), 0);
        for (const auto& line : lines)
            for (int32_t t : line) ++on_lines[static_cast<size_t>(t)];
        for (int32_t t : idx)
            if (on_lines[static_cast<size_t>(t)] != 1)
                throw VerificationBug("orbit is not a disjoint union of full lines");
        const int64_t expect = (f.q_pow(f.n()) + 1) / (f.q() + 1);
        if (static_cast<int64_t>(lines.size()) != expect)
            throw VerificationBug("orbit line count is " + std::to_string(lines.size()) + ", expected " +
                                  std::to_string(expect));
        return {lines.begin(), lines.end()};
    }

    // Any n-1 quadrics with GF(q)-independent parameters meet in exactly one
    // orbit (the hyperplane axiom of Gamma seen from the quadric side).
    void verify_intersection_axiom(const GammaSpace& g) const {
        const FieldTables& f = m_->field();
        const int64_t M = m_->pi_size();
        const int k = f.n() - 1;
        std::vector<int64_t> pick(static_cast<size_t>(k));
        std::vector<int32_t> mat;
        auto independent = [&]() {
            mat.assign(static_cast<size_t>(k) * f.n(), 0);
            for (int r = 0; r < k; ++r) {
                const auto cs = f.coords_middle(quadrics_[static_cast<size_t>(pick[static_cast<size_t>(r)])].a);
                for (int c = 0; c < f.n(); ++c) mat[static_cast<size_t>(r) * f.n() + c] = f.digit_of(cs[static_cast<size_t>(c)]);
            }
            return gfq_rank(mat, k, f.n(), f) == k;
        };
        // iterate k-subsets of {0..M-1}
        for (int i = 0; i < k; ++i) pick[static_cast<size_t>(i)] = i;
        while (true) {
            if (independent()) {
                int64_t inside = 0;
                for (int64_t orb = 0; orb < M; ++orb) {
                    bool all = true;
                    for (int r = 0; r < k; ++r)
                        if (!g.contains(orb, pick[static_cast<size_t>(r)])) { all = false; break; }
                    inside += all ? 1 : 0;
                }
                if (inside != 1)
                    throw VerificationBug("independent quadrics meet in " + std::to_string(inside) +
                                          " orbits, expected 1");
            }
            int pos = k - 1;
            while (pos >= 0 && pick[static_cast<size_t>(pos)] == M - k + pos) --pos;
            if (pos < 0) break;
            ++pick[static_cast<size_t>(pos)];
            for (int i = pos + 1; i < k; ++i) pick[static_cast<size_t>(i)] = pick[static_cast<size_t>(i - 1)] + 1;
        }
    }

    const ProjectiveModel* m_;
    std::vector<Quadric> quadrics_;
    std::vector<SingerOrbit> orbits_;
};

}  // namespace twoweight
