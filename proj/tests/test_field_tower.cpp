#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "twoweight/field_tower.hpp"

using namespace twoweight;
using Catch::Matchers::Message;

namespace {

// test-local primitivity oracle: order of x modulo f by repeated multiplication
bool primitive_by_power_cycle(const std::vector<int32_t>& f, int64_t p) {
    const int d = static_cast<int>(f.size()) - 1;
    if (f[0] == 0) return false;
    int64_t card = 1;
    for (int i = 0; i < d; ++i) card *= p;
    std::vector<int32_t> cur(static_cast<size_t>(d), 0);
    cur[0] = 1;
    for (int64_t k = 1; k < card - 1; ++k) {
        const int32_t carry = cur[static_cast<size_t>(d - 1)];
        for (int i = d - 1; i > 0; --i) cur[static_cast<size_t>(i)] = cur[static_cast<size_t>(i - 1)];
        cur[0] = 0;
        if (carry != 0)
            for (int i = 0; i < d; ++i)
                cur[static_cast<size_t>(i)] =
                    static_cast<int32_t>(((cur[static_cast<size_t>(i)] - static_cast<int64_t>(carry) * f[static_cast<size_t>(i)]) % p + p) % p);
        bool is_one = cur[0] == 1;
        for (int i = 1; i < d && is_one; ++i) is_one = cur[static_cast<size_t>(i)] == 0;
        if (is_one) return false;  // x cycled before the full period
    }
    return true;
}

}  // namespace

TEST_CASE("default modulus is the lexicographically smallest primitive polynomial") {
    struct Expect {
        int64_t p;
        int e, n;
        std::vector<int32_t> modulus;
    };
    const std::vector<Expect> frozen = {
        {2, 1, 2, {1, 0, 0, 1, 1}},
        {3, 1, 2, {2, 0, 0, 1, 1}},
        {2, 2, 2, {1, 0, 0, 0, 1, 1, 1, 0, 1}},
        {2, 1, 3, {1, 0, 0, 0, 0, 1, 1}},
        {3, 1, 3, {2, 0, 0, 0, 0, 1, 1}},
    };
    for (const auto& exp : frozen) {
        const auto f = FieldTables::build(exp.p, exp.e, exp.n);
        CHECK(f.modulus() == exp.modulus);
    }
}

TEST_CASE("chosen modulus is primitive and nothing lexicographically smaller is") {
    const auto f = FieldTables::build(3, 1, 2);
    const int d = 4;
    REQUIRE(primitive_by_power_cycle(f.modulus(), 3));
    // lexicographic predecessors (c0 compared first, then c1, ...)
    int64_t chosen = 0;
    for (int i = 0; i < d; ++i) chosen = chosen * 3 + f.modulus()[static_cast<size_t>(i)];
    for (int64_t w = 0; w < chosen; ++w) {
        std::vector<int32_t> cand(static_cast<size_t>(d + 1), 0);
        cand[static_cast<size_t>(d)] = 1;
        int64_t rest = w;
        for (int i = d - 1; i >= 0; --i) {
            cand[static_cast<size_t>(i)] = static_cast<int32_t>(rest % 3);
            rest /= 3;
        }
        CHECK_FALSE(primitive_by_power_cycle(cand, 3));
    }
}

TEST_CASE("tower constants") {
    SECTION("q=3 n=2") {
        const auto f = FieldTables::build(3, 1, 2);
        CHECK(f.order() == 80);
        CHECK(f.gamma_exponent() == 10);
        CHECK(f.q() == 3);
    }
    SECTION("q=2 n=2") {
        const auto f = FieldTables::build(2, 1, 2);
        CHECK(f.order() == 15);
        CHECK(f.gamma_exponent() == 5);
    }
    SECTION("q=3 n=3") {
        const auto f = FieldTables::build(3, 1, 3);
        CHECK(f.order() == 728);
        CHECK(f.gamma_exponent() == 28);
    }
}

TEST_CASE("element orders of the distinguished generators") {
    for (const auto& [p, e, n] : std::vector<std::tuple<int64_t, int, int>>{{3, 1, 2}, {2, 1, 2}, {2, 2, 2}, {3, 1, 3}}) {
        const auto f = FieldTables::build(p, e, n);
        const int64_t mid = f.mid_order();
        // gamma has order exactly q^n - 1
        CHECK(f.pow(f.gamma(), mid) == f.one());
        for (int64_t s : gfp::prime_factors(mid)) CHECK(f.pow(f.gamma(), mid / s) != f.one());
        // xi has order (q^2n-1)(q-1)/(q^n-1)
        const int64_t xi_ord = f.order() * (f.q() - 1) / mid;
        CHECK(f.pow(f.xi(), xi_ord) == f.one());
        for (int64_t s : gfp::prime_factors(xi_ord)) CHECK(f.pow(f.xi(), xi_ord / s) != f.one());
        // eta generates GF(q)^*
        CHECK(f.pow(f.eta(), f.q() - 1) == f.one());
    }
}

TEST_CASE("field axioms on sampled triples") {
    for (const auto& [p, e, n] : std::vector<std::tuple<int64_t, int, int>>{{3, 1, 2}, {2, 2, 2}}) {
        const auto f = FieldTables::build(p, e, n);
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<int64_t> pick(-1, f.order() - 1);
        for (int trial = 0; trial < 500; ++trial) {
            const Elem a = static_cast<Elem>(pick(rng)), b = static_cast<Elem>(pick(rng)), c = static_cast<Elem>(pick(rng));
            CHECK(f.add(a, b) == f.add(b, a));
            CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            CHECK(f.add(a, f.neg(a)) == FieldTables::kZero);
            if (a != FieldTables::kZero) CHECK(f.mul(a, f.inv(a)) == f.one());
        }
    }
}

TEST_CASE("characteristic 2: x + x = 0") {
    const auto f = FieldTables::build(2, 1, 2);
    for (int64_t k = 0; k < f.order(); ++k) CHECK(f.add(static_cast<Elem>(k), static_cast<Elem>(k)) == FieldTables::kZero);
}

TEST_CASE("multiplication is exponent addition") {
    const auto f = FieldTables::build(3, 1, 2);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int64_t> pick(0, f.order() - 1);
    for (int trial = 0; trial < 200; ++trial) {
        const int64_t a = pick(rng), b = pick(rng);
        CHECK(f.mul(f.from_exp(a), f.from_exp(b)) == f.from_exp(a + b));
    }
    CHECK_THROWS_AS(f.inv(FieldTables::kZero), std::invalid_argument);
}

TEST_CASE("trace examples and the conjugate-sum oracle") {
    const auto f = FieldTables::build(3, 1, 2);
    // middle field is GF(9): trace of 1 to GF(3) is 1 + 1 = 2
    const Elem two = f.add(f.one(), f.one());
    CHECK(f.trace_to_base(f.one(), Layer::middle) == two);
    CHECK(f.trace_to_base(FieldTables::kZero, Layer::top) == FieldTables::kZero);
    // top field is GF(81): trace equals the four-term conjugate sum x + x^3 + x^9 + x^27
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int64_t> pick(0, f.order() - 1);
    for (int trial = 0; trial < 100; ++trial) {
        const Elem x = f.from_exp(pick(rng));
        const Elem oracle = f.add(f.add(x, f.pow(x, 3)), f.add(f.pow(x, 9), f.pow(x, 27)));
        CHECK(f.trace_to_base(x, Layer::top) == oracle);
    }
    CHECK_THROWS_AS(f.trace_to_base(f.beta(), Layer::middle), std::invalid_argument);
}

TEST_CASE("trace is GF(q)-linear and balanced on the middle field") {
    for (const auto& [p, e, n] : std::vector<std::tuple<int64_t, int, int>>{{3, 1, 2}, {2, 1, 3}, {2, 2, 2}}) {
        const auto f = FieldTables::build(p, e, n);
        std::map<Elem, int64_t> fibers;
        fibers[f.trace_to_base(FieldTables::kZero, Layer::middle)]++;
        for (int64_t mexp = 0; mexp < f.mid_order(); ++mexp)
            fibers[f.trace_to_base(f.mid_elem(mexp), Layer::middle)]++;
        int64_t values = 0;
        for (const auto& [value, count] : fibers) {
            CHECK(f.in_base(value));
            CHECK(count == f.q_pow(f.n() - 1));
            ++values;
        }
        CHECK(values == f.q());  // surjective
    }
}

TEST_CASE("relative norm") {
    const auto f = FieldTables::build(3, 1, 2);
    CHECK(f.rel_norm(f.beta()) == f.gamma());
    CHECK(f.rel_norm(FieldTables::kZero) == FieldTables::kZero);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int64_t> pick(0, f.order() - 1);
    for (int trial = 0; trial < 100; ++trial) {
        const Elem x = f.from_exp(pick(rng)), y = f.from_exp(pick(rng));
        CHECK(f.mul(f.rel_norm(x), f.rel_norm(y)) == f.rel_norm(f.mul(x, y)));
        CHECK(f.in_middle(f.rel_norm(x)));
    }
    // every fiber over GF(q^n)^* has size q^n + 1
    std::map<Elem, int64_t> fibers;
    for (int64_t k = 0; k < f.order(); ++k) fibers[f.rel_norm(f.from_exp(k))]++;
    CHECK(fibers.size() == static_cast<size_t>(f.mid_order()));
    for (const auto& [value, count] : fibers) CHECK(count == f.q_pow(f.n()) + 1);
}

TEST_CASE("subfield membership predicates count correctly") {
    const auto f = FieldTables::build(3, 1, 2);
    int64_t middle = 0, base = 0;
    for (int64_t k = 0; k < f.order(); ++k) {
        middle += f.in_middle(static_cast<Elem>(k)) ? 1 : 0;
        base += f.in_base(static_cast<Elem>(k)) ? 1 : 0;
    }
    CHECK(middle == f.mid_order());
    CHECK(base == f.q() - 1);
    CHECK(f.in_middle(FieldTables::kZero));
    CHECK(f.in_base(FieldTables::kZero));
}

TEST_CASE("coords expand in the beta basis") {
    for (const auto& [p, e, n] : std::vector<std::tuple<int64_t, int, int>>{{3, 1, 2}, {2, 2, 2}}) {
        const auto f = FieldTables::build(p, e, n);
        const auto zero_coords = f.coords(FieldTables::kZero);
        for (const Elem c : zero_coords) CHECK(c == FieldTables::kZero);
        const auto beta_coords = f.coords(f.beta());
        CHECK(beta_coords[0] == FieldTables::kZero);
        CHECK(beta_coords[1] == f.one());
        // reconstruction over the whole field
        for (int64_t k = 0; k < f.order(); ++k) {
            const Elem x = f.from_exp(k);
            const auto cs = f.coords(x);
            Elem acc = FieldTables::kZero;
            for (size_t i = 0; i < cs.size(); ++i) {
                CHECK(f.in_base(cs[i]));
                acc = f.add(acc, f.mul(cs[i], f.pow(f.beta(), static_cast<int64_t>(i))));
            }
            CHECK(acc == x);
        }
        // linearity on random pairs
        std::mt19937_64 rng(19);
        std::uniform_int_distribution<int64_t> pick(0, f.order() - 1);
        for (int trial = 0; trial < 50; ++trial) {
            const Elem x = f.from_exp(pick(rng)), y = f.from_exp(pick(rng));
            const auto cx = f.coords(x), cy = f.coords(y), cz = f.coords(f.add(x, y));
            for (size_t i = 0; i < cx.size(); ++i) CHECK(cz[i] == f.add(cx[i], cy[i]));
        }
    }
}

TEST_CASE("coords_middle expands in the gamma basis") {
    const auto f = FieldTables::build(2, 2, 2);
    for (int64_t mexp = 0; mexp < f.mid_order(); ++mexp) {
        const Elem y = f.mid_elem(mexp);
        const auto cs = f.coords_middle(y);
        Elem acc = FieldTables::kZero;
        for (size_t i = 0; i < cs.size(); ++i)
            acc = f.add(acc, f.mul(cs[i], f.pow(f.gamma(), static_cast<int64_t>(i))));
        CHECK(acc == y);
    }
    CHECK_THROWS_AS(f.coords_middle(f.beta()), std::invalid_argument);
}

TEST_CASE("build rejects bad parameters") {
    CHECK_THROWS_AS(FieldTables::build(4, 1, 2), std::invalid_argument);   // p not prime
    CHECK_THROWS_AS(FieldTables::build(3, 0, 2), std::invalid_argument);   // e < 1
    CHECK_THROWS_AS(FieldTables::build(3, 1, 1), std::invalid_argument);   // n < 2
    // reducible: (x^2+1)^2 over GF(3)
    CHECK_THROWS_AS(FieldTables::build(3, 1, 2, {1, 0, 2, 0, 1}), std::invalid_argument);
    // irreducible but x has order 5, not 80
    CHECK_THROWS_AS(FieldTables::build(3, 1, 2, {1, 1, 1, 1, 1}), std::invalid_argument);
    // wrong degree
    CHECK_THROWS_AS(FieldTables::build(3, 1, 2, {1, 1, 1}), std::invalid_argument);
    // table cap
    CHECK_THROWS_AS(FieldTables::build(2, 1, 14), ResourceLimitError);
    CHECK_NOTHROW(FieldTables::build(2, 1, 2, {}, 16));
    CHECK_THROWS_AS(FieldTables::build(2, 1, 2, {}, 15), ResourceLimitError);
}

TEST_CASE("building from a TowerParams bundle") {
    TowerParams tp;
    tp.p = 2;
    tp.e = 1;
    tp.n = 2;
    tp.modulus = {1, 0, 0, 1, 1};
    const auto f = FieldTables::build(tp);
    CHECK(f.order() == 15);
    CHECK(f.modulus() == tp.modulus);
}

TEST_CASE("user-supplied primitive modulus is accepted verbatim") {
    // x^4 + x + 2 is primitive over GF(3) but not the lexicographic minimum
    const auto f = FieldTables::build(3, 1, 2, {2, 1, 0, 0, 1});
    CHECK(f.modulus() == std::vector<int32_t>{2, 1, 0, 0, 1});
    CHECK(f.order() == 80);
    CHECK(f.pow(f.beta(), 80) == f.one());
    for (int64_t s : gfp::prime_factors(80)) CHECK(f.pow(f.beta(), 80 / s) != f.one());
}
