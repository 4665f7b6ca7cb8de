#pragma once

// Exact arithmetic in the tower GF(q) <= GF(q^n) <= GF(q^2n), q = p^e, built on
// a single primitive element beta of the top field. Elements are stored as
// discrete-log exponents of beta (with a distinguished zero), so multiplication
// is exponent addition and addition is one Zech-logarithm lookup.
//
// The subfields are not separate structures: membership is divisibility of the
// exponent. gamma = beta^(q^n+1) generates GF(q^n)^*, eta = beta^((q^2n-1)/(q-1))
// generates GF(q)^*, and xi = beta^((q^n-1)/(q-1)) generates the Singer subgroup
// used by the orbit machinery.

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twoweight/errors.hpp"
#include "twoweight/gfp_poly.hpp"

namespace twoweight {

enum class Layer {
    top,     // GF(q^2n)
    middle,  // GF(q^n)
};

struct TowerParams {
    int64_t p = 0;
    int e = 0;
    int n = 0;
    std::vector<int32_t> modulus;  // degree 2ne over GF(p), low degree first, monic
};

namespace detail {

// Gauss-Jordan inverse of a d x d matrix over GF(p), row-major. Throws if singular.
inline std::vector<int32_t> invert_gfp(std::vector<int32_t> m, int d, int64_t p) {
    std::vector<int32_t> inv(static_cast<size_t>(d) * d, 0);
    for (int i = 0; i < d; ++i) inv[static_cast<size_t>(i) * d + i] = 1;
    auto inv_scalar = [p](int64_t c) {
        for (int64_t t = 1; t < p; ++t)
            if (t * c % p == 1) return t;
        throw std::logic_error("non-invertible scalar");
    };
    for (int col = 0; col < d; ++col) {
        int piv = -1;
        for (int r = col; r < d; ++r)
            if (m[static_cast<size_t>(r) * d + col] != 0) { piv = r; break; }
        if (piv < 0) throw std::logic_error("singular basis matrix");
        if (piv != col) {
            for (int c = 0; c < d; ++c) {
                std::swap(m[static_cast<size_t>(piv) * d + c], m[static_cast<size_t>(col) * d + c]);
                std::swap(inv[static_cast<size_t>(piv) * d + c], inv[static_cast<size_t>(col) * d + c]);
            }
        }
        const int64_t s = inv_scalar(m[static_cast<size_t>(col) * d + col]);
        for (int c = 0; c < d; ++c) {
            m[static_cast<size_t>(col) * d + c] = static_cast<int32_t>(m[static_cast<size_t>(col) * d + c] * s % p);
            inv[static_cast<size_t>(col) * d + c] = static_cast<int32_t>(inv[static_cast<size_t>(col) * d + c] * s % p);
        }
        for (int r = 0; r < d; ++r) {
            if (r == col) continue;
            const int64_t f = m[static_cast<size_t>(r) * d + col];
            if (f == 0) continue;
            for (int c = 0; c < d; ++c) {
                m[static_cast<size_t>(r) * d + c] = static_cast<int32_t>(
                    ((m[static_cast<size_t>(r) * d + c] - f * m[static_cast<size_t>(col) * d + c]) % p + p) % p);
                inv[static_cast<size_t>(r) * d + c] = static_cast<int32_t>(
                    ((inv[static_cast<size_t>(r) * d + c] - f * inv[static_cast<size_t>(col) * d + c]) % p + p) % p);
            }
        }
    }
    return inv;
}

}  // namespace detail

class FieldTables {
public:
    using Elem = int32_t;
    static constexpr Elem kZero = -1;
    static constexpr int64_t kDefaultTableCap = int64_t{1} << 26;

    // Builds the tower for q = p^e and extension parameter n. If no modulus is
    // given, the lexicographically smallest primitive polynomial of degree 2ne
    // over GF(p) is selected (constant coefficient compared first), so beta is
    // reproducible across runs and implementations.
    static FieldTables build(int64_t p, int e, int n, std::vector<int32_t> modulus = {},
                             int64_t table_cap = kDefaultTableCap) {
        if (!gfp::is_prime(p)) throw std::invalid_argument("p must be prime, got " + std::to_string(p));
        if (e < 1) throw std::invalid_argument("e must be >= 1");
        if (n < 2) throw std::invalid_argument("n must be >= 2");
        const int d = 2 * n * e;
        int64_t card = 1;
        for (int i = 0; i < d; ++i) {
            card *= p;
            if (card > table_cap)
                throw ResourceLimitError("table size " + std::to_string(p) + "^" + std::to_string(d) +
                                         " exceeds cap " + std::to_string(table_cap));
        }
        if (modulus.empty()) {
            modulus = gfp::lex_smallest_primitive(p, d);
        } else {
            if (gfp::degree(modulus) != d || modulus[d] != 1)
                throw std::invalid_argument("modulus must be monic of degree " + std::to_string(d));
            for (int32_t c : modulus)
                if (c < 0 || c >= p) throw std::invalid_argument("modulus coefficient out of range");
            if (!gfp::is_primitive(modulus, p))
                throw std::invalid_argument("modulus is not primitive over GF(p)");
        }
        return FieldTables(p, e, n, std::move(modulus), card);
    }

    static FieldTables build(const TowerParams& tp, int64_t table_cap = kDefaultTableCap) {
        return build(tp.p, tp.e, tp.n, tp.modulus, table_cap);
    }

    // --- parameters ---------------------------------------------------------

    int64_t p() const { return p_; }
    int e() const { return e_; }
    int n() const { return n_; }
    int64_t q() const { return q_; }
    int dim() const { return dim_; }          // degree over GF(p) = 2ne
    int64_t order() const { return order_; }  // q^2n - 1
    const std::vector<int32_t>& modulus() const { return modulus_; }

    int64_t q_pow(int k) const {
        int64_t r = 1;
        while (k-- > 0) r *= q_;
        return r;
    }

    // --- distinguished elements --------------------------------------------

    Elem zero() const { return kZero; }
    Elem one() const { return 0; }
    Elem beta() const { return 1; }
    Elem gamma() const { return from_exp(exp_gamma_); }
    Elem xi() const { return from_exp(exp_xi_); }
    Elem eta() const { return from_exp(exp_eta_); }
    int64_t gamma_exponent() const { return exp_gamma_; }  // q^n + 1
    int64_t xi_exponent() const { return exp_xi_; }        // (q^n-1)/(q-1)
    int64_t eta_exponent() const { return exp_eta_; }      // (q^2n-1)/(q-1)

    Elem from_exp(int64_t k) const {
        k %= order_;
        if (k < 0) k += order_;
        return static_cast<Elem>(k);
    }

    // --- arithmetic ----------------------------------------------------------

    Elem add(Elem a, Elem b) const {
        if (a == kZero) return b;
        if (b == kZero) return a;
        int64_t diff = a - b;
        if (diff < 0) diff += order_;
        const Elem z = zech_[diff];
        if (z == kZero) return kZero;
        int64_t k = b + z;
        if (k >= order_) k -= order_;
        return static_cast<Elem>(k);
    }

    Elem neg(Elem a) const {
        if (a == kZero || p_ == 2) return a;
        int64_t k = a + order_ / 2;  // -1 = beta^((q^2n-1)/2) in odd characteristic
        if (k >= order_) k -= order_;
        return static_cast<Elem>(k);
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        if (a == kZero || b == kZero) return kZero;
        int64_t k = static_cast<int64_t>(a) + b;
        if (k >= order_) k -= order_;
        return static_cast<Elem>(k);
    }

    Elem inv(Elem a) const {
        if (a == kZero) throw std::invalid_argument("inverse of zero");
        return a == 0 ? 0 : static_cast<Elem>(order_ - a);
    }

    Elem pow(Elem a, int64_t m) const {
        if (m == 0) return 0;
        if (a == kZero) {
            if (m < 0) throw std::invalid_argument("negative power of zero");
            return kZero;
        }
        int64_t mm = m % order_;
        if (mm < 0) mm += order_;
        return static_cast<Elem>(static_cast<int64_t>(a) * mm % order_);
    }

    // --- subfield structure --------------------------------------------------

    bool in_middle(Elem a) const { return a == kZero || a % exp_gamma_ == 0; }
    bool in_base(Elem a) const { return a == kZero || a % exp_eta_ == 0; }

    // Trace to GF(q): sum of the conjugates x^(q^i) over the layer's degree.
    Elem trace_to_base(Elem x, Layer from) const {
        const int terms = (from == Layer::top) ? 2 * n_ : n_;
        if (from == Layer::middle && !in_middle(x))
            throw std::invalid_argument("trace argument not in GF(q^n)");
        Elem acc = kZero;
        int64_t qe = 1;
        for (int i = 0; i < terms; ++i) {
            acc = add(acc, pow(x, qe));
            qe *= q_;
        }
        assert(in_base(acc));
        return acc;
    }

    // x^(q^n+1), the relative norm GF(q^2n) -> GF(q^n). Maps beta to gamma.
    Elem rel_norm(Elem x) const {
        if (x == kZero) return kZero;
        return static_cast<Elem>(static_cast<int64_t>(x) * exp_gamma_ % order_);
    }

    // gamma-exponent view of GF(q^n)^*: y = gamma^m with 0 <= m < q^n - 1.
    int64_t mid_exp(Elem y) const {
        if (y == kZero || y % exp_gamma_ != 0)
            throw std::invalid_argument("element is not a power of gamma");
        return y / exp_gamma_;
    }

    Elem mid_elem(int64_t m) const {
        m %= mid_order_;
        if (m < 0) m += mid_order_;
        return static_cast<Elem>(m * exp_gamma_ % order_);
    }

    int64_t mid_order() const { return mid_order_; }  // q^n - 1

    // --- GF(q) digit codes -----------------------------------------------------
    //
    // Elements of GF(q) are encoded as integers in [0, q): 0 is zero, and a
    // nonzero c = sum_j a_j eta^j maps to sum_j a_j p^j. Used for coordinate
    // vectors, serialization, and the small GF(q) arithmetic tables.

    int digit_of(Elem c) const {
        if (c == kZero) return 0;
        assert(c % exp_eta_ == 0);
        return digit_by_eta_index_[c / exp_eta_];
    }

    Elem elem_of_digit(int v) const { return elem_of_digit_[v]; }
    int digit_add(int a, int b) const { return digit_add_[static_cast<size_t>(a) * q_ + b]; }
    int digit_mul(int a, int b) const { return digit_mul_[static_cast<size_t>(a) * q_ + b]; }
    int digit_neg(int a) const { return digit_neg_[a]; }
    int digit_inv(int a) const {
        if (a == 0) throw std::invalid_argument("inverse of zero digit");
        return digit_inv_[a];
    }

    // --- basis expansions --------------------------------------------------------

    // x = sum_i c_i beta^i with c_i in GF(q), i < 2n.
    std::vector<Elem> coords(Elem x) const {
        std::vector<Elem> out(2 * n_, kZero);
        if (x == kZero) return out;
        std::vector<int32_t> u = solve_big(x);
        for (int i = 0; i < 2 * n_; ++i) out[i] = group_elem(u, i);
        return out;
    }

    // y = sum_i c_i gamma^i with c_i in GF(q), i < n. Requires y in GF(q^n).
    std::vector<Elem> coords_middle(Elem y) const {
        std::vector<Elem> out(n_, kZero);
        if (y == kZero) return out;
        if (!in_middle(y)) throw std::invalid_argument("coords_middle: element not in GF(q^n)");
        std::vector<int32_t> u = solve_mid(y);
        for (int i = 0; i < n_; ++i) out[i] = group_elem(u, i);
        return out;
    }

    // The 3n digit codes of the concatenated vector coords(x) || coords_middle(y).
    void coord_digits(Elem x, Elem y, int32_t* out) const {
        if (x == kZero) {
            for (int i = 0; i < 2 * n_; ++i) out[i] = 0;
        } else {
            std::vector<int32_t> u = solve_big(x);
            for (int i = 0; i < 2 * n_; ++i) out[i] = group_digit(u, i);
        }
        if (y == kZero) {
            for (int i = 0; i < n_; ++i) out[2 * n_ + i] = 0;
        } else {
            std::vector<int32_t> u = solve_mid(y);
            for (int i = 0; i < n_; ++i) out[2 * n_ + i] = group_digit(u, i);
        }
    }

    // Scalar making the last nonzero coordinate of coords(x)||coords_middle(y)
    // equal to 1; the canonicalization scaling for projective pairs.
    Elem canonical_scale(Elem x, Elem y) const {
        int top = 0;
        if (y != kZero) {
            const std::vector<int32_t> u = solve_mid(y);
            for (int i = n_ - 1; i >= 0; --i)
                if ((top = group_digit(u, i)) != 0) break;
        } else {
            if (x == kZero) throw std::invalid_argument("canonical_scale of the zero pair");
            const std::vector<int32_t> u = solve_big(x);
            for (int i = 2 * n_ - 1; i >= 0; --i)
                if ((top = group_digit(u, i)) != 0) break;
        }
        return inv(elem_of_digit_[top]);
    }

private:
    FieldTables(int64_t p, int e, int n, std::vector<int32_t> modulus, int64_t card)
        : p_(p), e_(e), n_(n), q_(gfp::ipow(p, e)), dim_(2 * n * e), card_(card), order_(card - 1),
          modulus_(std::move(modulus)) {
        exp_gamma_ = q_pow(n_) + 1;
        mid_order_ = q_pow(n_) - 1;
        exp_xi_ = mid_order_ / (q_ - 1);
        exp_eta_ = order_ / (q_ - 1);
        build_log_tables();
        build_digit_tables();
        build_solvers();
    }

    // packed base-p representation of beta^k for every k, its inverse, and the
    // Zech table zech_[k] = log(1 + beta^k).
    void build_log_tables() {
        antilog_.assign(static_cast<size_t>(order_), 0);
        log_.assign(static_cast<size_t>(card_), kZero);
        std::vector<int32_t> cur(dim_, 0);
        cur[0] = 1;
        for (int64_t k = 0; k < order_; ++k) {
            int64_t packed = 0;
            for (int i = dim_ - 1; i >= 0; --i) packed = packed * p_ + cur[i];
            antilog_[k] = static_cast<int32_t>(packed);
            if (log_[packed] != kZero || packed == 1) {
                if (!(packed == 1 && k == 0))
                    throw std::invalid_argument("modulus is not primitive (power cycle shorter than q^2n-1)");
            }
            log_[packed] = static_cast<Elem>(k);
            // multiply by x modulo the modulus
            int32_t carry = cur[dim_ - 1];
            for (int i = dim_ - 1; i > 0; --i) cur[i] = cur[i - 1];
            cur[0] = 0;
            if (carry != 0) {
                for (int i = 0; i < dim_; ++i)
                    cur[i] = static_cast<int32_t>(((cur[i] - static_cast<int64_t>(carry) * modulus_[i]) % p_ + p_) % p_);
            }
        }
        log_[0] = kZero;
        zech_.assign(static_cast<size_t>(order_), kZero);
        for (int64_t k = 0; k < order_; ++k) {
            const int64_t packed = antilog_[k];
            const int64_t c0 = packed % p_;
            const int64_t plus_one = packed - c0 + (c0 + 1) % p_;
            zech_[k] = (plus_one == 0) ? kZero : log_[plus_one];
        }
    }

    void build_digit_tables() {
        // integer multiples of 1 give the prime field
        std::vector<Elem> prime_val(static_cast<size_t>(p_), kZero);
        for (int64_t a = 1; a < p_; ++a) prime_val[a] = add(prime_val[a - 1], 0);
        elem_of_digit_.assign(static_cast<size_t>(q_), kZero);
        digit_by_eta_index_.assign(static_cast<size_t>(q_ - 1), 0);
        for (int64_t v = 1; v < q_; ++v) {
            Elem acc = kZero;
            int64_t rest = v;
            for (int j = 0; j < e_; ++j) {
                const int64_t a = rest % p_;
                rest /= p_;
                if (a != 0) acc = add(acc, mul(prime_val[a], from_exp(static_cast<int64_t>(j) * exp_eta_)));
            }
            elem_of_digit_[v] = acc;
            assert(acc != kZero && acc % exp_eta_ == 0);
            digit_by_eta_index_[acc / exp_eta_] = static_cast<int32_t>(v);
        }
        digit_add_.assign(static_cast<size_t>(q_) * q_, 0);
        digit_mul_.assign(static_cast<size_t>(q_) * q_, 0);
        digit_neg_.assign(static_cast<size_t>(q_), 0);
        digit_inv_.assign(static_cast<size_t>(q_), 0);
        for (int64_t a = 0; a < q_; ++a) {
            const Elem ea = elem_of_digit_[a];
            digit_neg_[a] = digit_of(neg(ea));
            if (a != 0) digit_inv_[a] = digit_of(inv(ea));
            for (int64_t b = 0; b < q_; ++b) {
                const Elem eb = elem_of_digit_[b];
                digit_add_[a * q_ + b] = digit_of(add(ea, eb));
                digit_mul_[a * q_ + b] = digit_of(mul(ea, eb));
            }
        }
    }

    // Change of basis between the GF(p) polynomial representation and the
    // GF(q)-bases {beta^i} of the top field and {gamma^i} of the middle field,
    // refined to GF(p) through the eta basis of GF(q).
    void build_solvers() {
        const int d = dim_;
        std::vector<int32_t> A(static_cast<size_t>(d) * d, 0);
        for (int i = 0; i < 2 * n_; ++i) {
            for (int j = 0; j < e_; ++j) {
                const int col = i * e_ + j;
                const Elem el = from_exp(i + static_cast<int64_t>(j) * exp_eta_);
                const int64_t packed = antilog_[el];
                int64_t rest = packed;
                for (int r = 0; r < d; ++r) {
                    A[static_cast<size_t>(r) * d + col] = static_cast<int32_t>(rest % p_);
                    rest /= p_;
                }
            }
        }
        big_inv_ = detail::invert_gfp(std::move(A), d, p_);

        // middle field: full column rank d/2, Gauss-Jordan with recorded row ops
        const int m = n_ * e_;
        std::vector<int32_t> B(static_cast<size_t>(d) * m, 0);
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < e_; ++j) {
                const int col = i * e_ + j;
                const Elem el = from_exp(static_cast<int64_t>(i) * exp_gamma_ + static_cast<int64_t>(j) * exp_eta_);
                const int64_t packed = antilog_[el];
                int64_t rest = packed;
                for (int r = 0; r < d; ++r) {
                    B[static_cast<size_t>(r) * m + col] = static_cast<int32_t>(rest % p_);
                    rest /= p_;
                }
            }
        }
        mid_ops_.assign(static_cast<size_t>(d) * d, 0);
        for (int i = 0; i < d; ++i) mid_ops_[static_cast<size_t>(i) * d + i] = 1;
        auto inv_scalar = [this](int64_t c) {
            for (int64_t t = 1; t < p_; ++t)
                if (t * c % p_ == 1) return t;
            throw std::logic_error("non-invertible scalar");
        };
        int row = 0;
        for (int col = 0; col < m; ++col) {
            int piv = -1;
            for (int r = row; r < d; ++r)
                if (B[static_cast<size_t>(r) * m + col] != 0) { piv = r; break; }
            if (piv < 0) throw std::logic_error("middle-field basis not independent");
            if (piv != row) {
                for (int c = 0; c < m; ++c)
                    std::swap(B[static_cast<size_t>(piv) * m + c], B[static_cast<size_t>(row) * m + c]);
                for (int c = 0; c < d; ++c)
                    std::swap(mid_ops_[static_cast<size_t>(piv) * d + c], mid_ops_[static_cast<size_t>(row) * d + c]);
            }
            const int64_t s = inv_scalar(B[static_cast<size_t>(row) * m + col]);
            for (int c = 0; c < m; ++c)
                B[static_cast<size_t>(row) * m + c] = static_cast<int32_t>(B[static_cast<size_t>(row) * m + c] * s % p_);
            for (int c = 0; c < d; ++c)
                mid_ops_[static_cast<size_t>(row) * d + c] =
                    static_cast<int32_t>(mid_ops_[static_cast<size_t>(row) * d + c] * s % p_);
            for (int r = 0; r < d; ++r) {
                if (r == row) continue;
                const int64_t f = B[static_cast<size_t>(r) * m + col];
                if (f == 0) continue;
                for (int c = 0; c < m; ++c)
                    B[static_cast<size_t>(r) * m + c] = static_cast<int32_t>(
                        ((B[static_cast<size_t>(r) * m + c] - f * B[static_cast<size_t>(row) * m + c]) % p_ + p_) % p_);
                for (int c = 0; c < d; ++c)
                    mid_ops_[static_cast<size_t>(r) * d + c] = static_cast<int32_t>(
                        ((mid_ops_[static_cast<size_t>(r) * d + c] - f * mid_ops_[static_cast<size_t>(row) * d + c]) % p_ + p_) %
                        p_);
            }
            ++row;
        }
        if (row != m) throw std::logic_error("middle-field basis rank defect");
    }

    std::vector<int32_t> packed_digits(Elem x) const {
        std::vector<int32_t> v(dim_, 0);
        int64_t rest = antilog_[x];
        for (int r = 0; r < dim_; ++r) {
            v[r] = static_cast<int32_t>(rest % p_);
            rest /= p_;
        }
        return v;
    }

    std::vector<int32_t> solve_big(Elem x) const {
        const std::vector<int32_t> v = packed_digits(x);
        std::vector<int32_t> u(dim_, 0);
        for (int r = 0; r < dim_; ++r) {
            int64_t acc = 0;
            for (int c = 0; c < dim_; ++c) acc += static_cast<int64_t>(big_inv_[static_cast<size_t>(r) * dim_ + c]) * v[c];
            u[r] = static_cast<int32_t>(acc % p_);
        }
        return u;
    }

    std::vector<int32_t> solve_mid(Elem y) const {
        const std::vector<int32_t> v = packed_digits(y);
        const int m = n_ * e_;
        std::vector<int32_t> u(m, 0);
        for (int r = 0; r < dim_; ++r) {
            int64_t acc = 0;
            for (int c = 0; c < dim_; ++c) acc += static_cast<int64_t>(mid_ops_[static_cast<size_t>(r) * dim_ + c]) * v[c];
            const int32_t val = static_cast<int32_t>(acc % p_);
            if (r < m) {
                u[r] = val;
            } else if (val != 0) {
                throw std::logic_error("solve_mid: element not in the middle field");
            }
        }
        return u;
    }

    int group_digit(const std::vector<int32_t>& u, int i) const {
        int v = 0;
        for (int j = e_ - 1; j >= 0; --j) v = static_cast<int>(v * p_ + u[i * e_ + j]);
        return v;
    }

    Elem group_elem(const std::vector<int32_t>& u, int i) const { return elem_of_digit_[group_digit(u, i)]; }

    int64_t p_;
    int e_;
    int n_;
    int64_t q_;
    int dim_;
    int64_t card_;
    int64_t order_;
    std::vector<int32_t> modulus_;
    int64_t exp_gamma_ = 0;
    int64_t exp_xi_ = 0;
    int64_t exp_eta_ = 0;
    int64_t mid_order_ = 0;
    std::vector<int32_t> antilog_;
    std::vector<Elem> log_;
    std::vector<Elem> zech_;
    std::vector<Elem> elem_of_digit_;
    std::vector<int32_t> digit_by_eta_index_;
    std::vector<int32_t> digit_add_, digit_mul_, digit_neg_, digit_inv_;
    std::vector<int32_t> big_inv_;  // inverse of the eta/beta product-basis matrix
    std::vector<int32_t> mid_ops_;  // row operations reducing the gamma-basis matrix
};

using Elem = FieldTables::Elem;

}  // namespace twoweight
