#pragma once

// The field model of PG(3n-1,q): points are classes of pairs (x,y) with
// x in GF(q^2n), y in GF(q^n), (x,y) != (0,0), modulo GF(q)^*. The pair block
// (x,0) is the subspace Lambda = PG(2n-1,q), (0,y) is Pi = PG(n-1,q).
//
// Canonical representative: scale so the last nonzero coordinate of the
// concatenated basis expansion coords(x) || coords_middle(y) equals 1.
// Points get dense indices in enumeration order: Lambda first, Pi second,
// mixed points last.
//
// Hyperplanes are dual trace functionals (a,b): a point lies on the hyperplane
// iff Tr(ax) + Tr(by) = 0 with both traces taken to GF(q). Canonical
// functionals are enumerated exactly like points.

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "twoweight/bitset.hpp"
#include "twoweight/field_tower.hpp"

namespace twoweight {

struct ProjPoint {
    Elem x = FieldTables::kZero;
    Elem y = FieldTables::kZero;
    int32_t index = -1;
};

using HyperplaneFunctional = ProjPoint;  // same canonical form, dual role

class PointSet {
public:
    PointSet() = default;
    PointSet(std::vector<int32_t> indices, size_t universe) : indices_(std::move(indices)), mask_(universe) {
        std::sort(indices_.begin(), indices_.end());
        indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
        for (int32_t i : indices_) {
            if (i < 0 || static_cast<size_t>(i) >= universe) throw std::invalid_argument("point index out of range");
            mask_.set(static_cast<size_t>(i));
        }
    }

    const std::vector<int32_t>& indices() const { return indices_; }
    const Bitset& mask() const { return mask_; }
    bool contains(int32_t i) const { return mask_.test(static_cast<size_t>(i)); }
    size_t size() const { return indices_.size(); }
    size_t universe() const { return mask_.size(); }

    friend bool operator==(const PointSet& a, const PointSet& b) { return a.indices_ == b.indices_; }

private:
    std::vector<int32_t> indices_;
    Bitset mask_;
};

class ProjectiveModel {
public:
    explicit ProjectiveModel(const FieldTables& f) : f_(&f) {
        lambda_size_ = f.eta_exponent();         // (q^2n-1)/(q-1)
        pi_size_ = f.xi_exponent();              // (q^n-1)/(q-1)
        int64_t total = 1;
        for (int i = 0; i < 3 * f.n(); ++i) total *= f.q();
        total = (total - 1) / (f.q() - 1);
        points_.reserve(static_cast<size_t>(total));
        index_of_.reserve(static_cast<size_t>(total) * 2);

        for (int64_t i = 0; i < lambda_size_; ++i) intern(f.from_exp(i), FieldTables::kZero);
        for (int64_t i = 0; i < pi_size_; ++i) intern(FieldTables::kZero, f.mid_elem(i));
        for (int64_t a = 0; a < f.order(); ++a)
            for (int64_t b = 0; b < f.mid_order(); ++b) intern(f.from_exp(a), f.mid_elem(b));
        if (static_cast<int64_t>(points_.size()) != total)
            throw VerificationBug("point enumeration count mismatch: " + std::to_string(points_.size()) +
                                  " vs " + std::to_string(total));

        // trace digit tables driving all membership kernels
        trq_big_.assign(static_cast<size_t>(f.order()), 0);
        for (int64_t k = 0; k < f.order(); ++k)
            trq_big_[k] = f.digit_of(f.trace_to_base(f.from_exp(k), Layer::top));
        trq_mid_.assign(static_cast<size_t>(f.mid_order()), 0);
        for (int64_t m = 0; m < f.mid_order(); ++m)
            trq_mid_[m] = f.digit_of(f.trace_to_base(f.mid_elem(m), Layer::middle));
        // nonzero scalars, for line and span parametrization
        units_.reserve(static_cast<size_t>(f.q() - 1));
        for (int64_t t = 0; t < f.q() - 1; ++t) units_.push_back(f.from_exp(t * f.eta_exponent()));
    }

    const FieldTables& field() const { return *f_; }
    int64_t lambda_size() const { return lambda_size_; }
    int64_t pi_size() const { return pi_size_; }
    int64_t point_count() const { return static_cast<int64_t>(points_.size()); }
    int64_t hyperplane_count() const { return point_count(); }
    const std::vector<ProjPoint>& points() const { return points_; }
    const ProjPoint& point(int32_t i) const { return points_[static_cast<size_t>(i)]; }
    const std::vector<Elem>& units() const { return units_; }

    // Canonical representative of the class of (x,y); (x,y) != (0,0).
    ProjPoint canonicalize(Elem x, Elem y) const {
        if (x == FieldTables::kZero && y == FieldTables::kZero)
            throw std::invalid_argument("canonicalize of the zero pair");
        const Elem s = f_->canonical_scale(x, y);
        ProjPoint pt{f_->mul(x, s), f_->mul(y, s), -1};
        const auto it = index_of_.find(key(pt.x, pt.y));
        if (it != index_of_.end()) pt.index = it->second;
        return pt;
    }

    int32_t index_of(Elem x, Elem y) const {
        const ProjPoint pt = canonicalize(x, y);
        if (pt.index < 0) throw std::logic_error("canonical point missing from enumeration");
        return pt.index;
    }

    // Pairing Tr(a x) + Tr(b y) as a GF(q) digit code; 0 means incident.
    int pairing_digit(const HyperplaneFunctional& h, const ProjPoint& pt) const {
        int t1 = 0, t2 = 0;
        if (h.x != FieldTables::kZero && pt.x != FieldTables::kZero) {
            int64_t k = static_cast<int64_t>(h.x) + pt.x;
            if (k >= f_->order()) k -= f_->order();
            t1 = trq_big_[k];
        }
        if (h.y != FieldTables::kZero && pt.y != FieldTables::kZero) {
            int64_t k = static_cast<int64_t>(h.y) + pt.y;
            if (k >= f_->order()) k -= f_->order();
            t2 = trq_mid_[k / f_->gamma_exponent()];
        }
        return f_->digit_add(t1, t2);
    }

    bool hyperplane_contains(const HyperplaneFunctional& h, const ProjPoint& pt) const {
        return pairing_digit(h, pt) == 0;
    }

    int trace_digit_big(int64_t exponent) const { return trq_big_[exponent]; }
    int trace_digit_mid(int64_t gamma_exponent) const { return trq_mid_[gamma_exponent]; }

    // The q+1 points of the line through two distinct points, sorted by index.
    std::vector<int32_t> line_through(int32_t i1, int32_t i2) const {
        if (i1 == i2) throw std::invalid_argument("line_through needs two distinct points");
        const ProjPoint& p1 = point(i1);
        const ProjPoint& p2 = point(i2);
        std::vector<int32_t> line{i1, i2};
        for (Elem lam : units_) {
            const Elem x = f_->add(p1.x, f_->mul(p2.x, lam));
            const Elem y = f_->add(p1.y, f_->mul(p2.y, lam));
            line.push_back(index_of(x, y));
        }
        std::sort(line.begin(), line.end());
        return line;
    }

    // All projective subspaces of dimension dim whose full point set lies in
    // `set`. Exhaustive: lines from in-set point pairs, higher dimensions by
    // growing an in-set subspace with one more in-set point, pruned as soon as
    // one span point escapes the set.
    std::vector<std::vector<int32_t>> subspace_contained(const PointSet& set, int dim) const {
        if (dim < 1 || dim > 3 * f_->n() - 1) throw std::invalid_argument("subspace dimension out of range");
        if (set.size() == 0) throw std::invalid_argument("subspace_contained on empty set");
        std::vector<std::vector<int32_t>> level = lines_inside(set);
        for (int k = 2; k <= dim; ++k) {
            std::set<std::vector<int32_t>> next;
            for (const auto& sub : level) {
                for (int32_t s : set.indices()) {
                    if (std::binary_search(sub.begin(), sub.end(), s)) continue;
                    std::vector<int32_t> span;
                    if (grow_span(set, sub, s, span)) next.insert(std::move(span));
                }
            }
            level.assign(next.begin(), next.end());
            if (level.empty()) break;
        }
        return level;
    }

    PointSet make_set(std::vector<int32_t> idx) const { return PointSet(std::move(idx), points_.size()); }

    PointSet lambda_set() const {
        std::vector<int32_t> idx(static_cast<size_t>(lambda_size_));
        for (int64_t i = 0; i < lambda_size_; ++i) idx[static_cast<size_t>(i)] = static_cast<int32_t>(i);
        return make_set(std::move(idx));
    }

    PointSet pi_set() const {
        std::vector<int32_t> idx(static_cast<size_t>(pi_size_));
        for (int64_t i = 0; i < pi_size_; ++i) idx[static_cast<size_t>(i)] = static_cast<int32_t>(lambda_size_ + i);
        return make_set(std::move(idx));
    }

private:
    static uint64_t key(Elem x, Elem y) {
        return (static_cast<uint64_t>(static_cast<uint32_t>(x + 1)) << 32) | static_cast<uint32_t>(y + 1);
    }

    void intern(Elem x, Elem y) {
        const Elem s = f_->canonical_scale(x, y);
        const Elem cx = f_->mul(x, s);
        const Elem cy = f_->mul(y, s);
        const uint64_t k = key(cx, cy);
        if (index_of_.find(k) != index_of_.end()) return;
        const int32_t idx = static_cast<int32_t>(points_.size());
        points_.push_back(ProjPoint{cx, cy, idx});
        index_of_.emplace(k, idx);
    }

    std::vector<std::vector<int32_t>> lines_inside(const PointSet& set) const {
        std::vector<std::vector<int32_t>> out;
        const auto& idx = set.indices();
        for (size_t i = 0; i < idx.size(); ++i) {
            for (size_t j = i + 1; j < idx.size(); ++j) {
                std::vector<int32_t> line = line_through(idx[i], idx[j]);
                // each in-set line is collected once, from its two lowest points
                if (line[0] != idx[i] || line[1] != idx[j]) continue;
                bool inside = true;
                for (int32_t pt : line)
                    if (!set.contains(pt)) { inside = false; break; }
                if (inside) out.push_back(std::move(line));
            }
        }
        return out;
    }

    // span(sub + s): sub's points, s, and all u + lambda*s. Returns false as
    // soon as a span point leaves the set.
    bool grow_span(const PointSet& set, const std::vector<int32_t>& sub, int32_t s,
                   std::vector<int32_t>& out) const {
        const ProjPoint& ps = point(s);
        out = sub;
        out.push_back(s);
        for (int32_t ui : sub) {
            const ProjPoint& u = point(ui);
            for (Elem lam : units_) {
                const int32_t w = index_of(f_->add(u.x, f_->mul(ps.x, lam)), f_->add(u.y, f_->mul(ps.y, lam)));
                if (!set.contains(w)) return false;
                out.push_back(w);
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        if (out.size() != sub.size() * static_cast<size_t>(f_->q()) + 1)
            throw std::logic_error("span enumeration produced a collision");
        return true;
    }

    const FieldTables* f_;
    int64_t lambda_size_ = 0;
    int64_t pi_size_ = 0;
    std::vector<ProjPoint> points_;
    std::unordered_map<uint64_t, int32_t> index_of_;
    std::vector<int32_t> trq_big_;  // digit of Tr(beta^k), top -> GF(q)
    std::vector<int32_t> trq_mid_;  // digit of Tr(gamma^m), middle -> GF(q)
    std::vector<Elem> units_;       // GF(q)^* as eta powers
};

}  // namespace twoweight
