#pragma once

// Dense polynomial arithmetic over GF(p), just enough to select and validate
// field moduli: irreducibility, primitivity, and the deterministic search for
// the lexicographically smallest primitive polynomial of a given degree.
// Coefficient lists are ordered from the constant term up.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace twoweight::gfp {

using Poly = std::vector<int32_t>;  // low degree first, trailing zeros trimmed

inline bool is_prime(int64_t p) {
    if (p < 2) return false;
    for (int64_t f = 2; f * f <= p; ++f)
        if (p % f == 0) return false;
    return true;
}

inline std::vector<int64_t> prime_factors(int64_t m) {
    std::vector<int64_t> out;
    for (int64_t f = 2; f * f <= m; ++f) {
        if (m % f == 0) {
            out.push_back(f);
            while (m % f == 0) m /= f;
        }
    }
    if (m > 1) out.push_back(m);
    return out;
}

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly mod(Poly a, const Poly& f, int64_t p) {
    const int df = degree(f);
    int64_t lead_inv = 1;
    for (int64_t t = 1; t < p; ++t)
        if (t * f[df] % p == 1) { lead_inv = t; break; }
    trim(a);
    while (degree(a) >= df) {
        const int shift = degree(a) - df;
        const int64_t c = a.back() * lead_inv % p;
        for (int i = 0; i <= df; ++i)
            a[i + shift] = static_cast<int32_t>(((a[i + shift] - c * f[i]) % p + p) % p);
        trim(a);
    }
    return a;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& f, int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<int32_t>((r[i + j] + static_cast<int64_t>(a[i]) * b[j]) % p);
    }
    return mod(std::move(r), f, p);
}

inline Poly powmod(Poly base, int64_t exp, const Poly& f, int64_t p) {
    Poly r{1};
    base = mod(std::move(base), f, p);
    while (exp > 0) {
        if (exp & 1) r = mulmod(r, base, f, p);
        base = mulmod(base, base, f, p);
        exp >>= 1;
    }
    return r;
}

inline Poly gcd(Poly a, Poly b, int64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        // make monic
        int64_t inv = 1, c = a.back();
        for (int64_t t = 1; t < p; ++t)
            if (t * c % p == 1) { inv = t; break; }
        for (auto& x : a) x = static_cast<int32_t>(x * inv % p);
    }
    return a;
}

inline int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Rabin test: f irreducible over GF(p) iff x^(p^d) = x (mod f) and
// gcd(x^(p^(d/r)) - x, f) = 1 for every prime r | d.
inline bool is_irreducible(const Poly& f, int64_t p) {
    const int d = degree(f);
    if (d < 1) return false;
    const Poly x{0, 1};
    for (int64_t r : prime_factors(d)) {
        Poly h = powmod(x, ipow(p, static_cast<int>(d / r)), f, p);
        // h - x
        if (h.size() < 2) h.resize(2, 0);
        h[1] = static_cast<int32_t>(((h[1] - 1) % p + p) % p);
        trim(h);
        Poly g = gcd(h, f, p);
        if (degree(g) != 0) return false;
    }
    Poly h = powmod(x, ipow(p, d), f, p);
    if (h.size() < 2) h.resize(2, 0);
    h[1] = static_cast<int32_t>(((h[1] - 1) % p + p) % p);
    trim(h);
    return h.empty();
}

// Primitive: irreducible and x has multiplicative order p^d - 1 modulo f.
inline bool is_primitive(const Poly& f, int64_t p) {
    const int d = degree(f);
    if (d < 1 || f[0] == 0) return false;
    if (!is_irreducible(f, p)) return false;
    const int64_t order = ipow(p, d) - 1;
    const Poly x{0, 1};
    for (int64_t s : prime_factors(order)) {
        if (powmod(x, order / s, f, p) == Poly{1}) return false;
    }
    return true;
}

// Deterministic modulus choice: enumerate monic degree-d coefficient words
// (c0, c1, ..., c_{d-1}) in lexicographic order, c0 compared first, and return
// the first primitive polynomial.
inline Poly lex_smallest_primitive(int64_t p, int d) {
    const int64_t total = ipow(p, d);
    Poly f(d + 1, 0);
    f[d] = 1;
    for (int64_t w = 0; w < total; ++w) {
        for (int i = 0; i < d; ++i)
            f[i] = static_cast<int32_t>((w / ipow(p, d - 1 - i)) % p);
        if (f[0] == 0) continue;  // primitive needs a unit constant term
        if (is_primitive(f, p)) return f;
    }
    throw std::logic_error("no primitive polynomial found (unreachable for valid p, d)");
}

}  // namespace twoweight::gfp
