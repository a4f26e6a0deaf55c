#include "doctest.h"

#include "crossalg/cohomology.hpp"
#include "crossalg/errors.hpp"

#include <random>
#include <set>

using namespace crossalg;

namespace {

// |H^n| by enumerating every (unnormalised) cochain.
BigInt brute_order(const FiniteGroup& G, const GModule& M, int n) {
    auto for_all = [&](int deg, auto&& fn) {
        Cochain c = Cochain::zero(deg, G.order(), M.rank());
        REQUIRE(pow(BigInt(M.order()), static_cast<unsigned>(c.tuple_count())) <= 1 << 20);
        for (;;) {
            fn(c);
            size_t i = 0;
            while (i < c.values.size()) {
                if (++c.values[i] < M.factors[i % M.rank()]) break;
                c.values[i] = 0;
                ++i;
            }
            if (i == c.values.size()) break;
        }
    };
    size_t cocycles = 0;
    for_all(n, [&](const Cochain& c) { cocycles += !cocycle_violation(G, M, c); });
    std::set<std::vector<i64>> bounds;
    if (n == 0)
        bounds.insert(Cochain::zero(0, G.order(), M.rank()).values);
    else
        for_all(n - 1, [&](const Cochain& c) { bounds.insert(coboundary(G, M, c).values); });
    return BigInt(cocycles / bounds.size());
}

GModule sign_module(const FiniteGroup& G, i64 l, int x) {
    // x generates a cyclic group; element x^k acts by (-1)^k
    std::vector<i64> k(G.order());
    for (int i = 0; i < G.order(); ++i) k[G.pow(x, i)] = i;
    return cyclic_twisted_module(G, l, k, -1);
}

Cochain random_normalized(const FiniteGroup& G, const GModule& M, int n, std::mt19937& rng) {
    Cochain c = Cochain::zero(n, G.order(), M.rank());
    for (size_t t = 0; t < c.tuple_count(); ++t) {
        size_t tt = t;
        bool has_id = false;
        for (int i = 0; i < n; ++i) {
            has_id = has_id || static_cast<int>(tt % G.order()) == G.identity();
            tt /= G.order();
        }
        if (has_id) continue;
        for (int j = 0; j < M.rank(); ++j) c.values[t * M.rank() + j] = rng() % M.factors[j];
    }
    return c;
}

}  // namespace

TEST_CASE("cohomology of cyclic groups with trivial coefficients") {
    for (int s : {2, 3, 4, 6})
        for (i64 l : {2, 3, 4, 6})
            for (int n = 1; n <= 3; ++n) {
                auto G = cyclic_group(s);
                auto H = cohomology(G, trivial_module(G, {l}), n);
                i64 g = gcd64(s, l);
                if (g == 1)
                    CHECK(H.invariant_factors().empty());
                else
                    CHECK(H.invariant_factors() == std::vector<i64>{g});
            }
    auto G = cyclic_group(2);
    CHECK(cohomology(G, trivial_module(G, {2}), 4).invariant_factors() == std::vector<i64>{2});
    CHECK(cohomology(G, trivial_module(G, {2}), 0).invariant_factors() == std::vector<i64>{2});
}

TEST_CASE("cohomology against enumeration") {
    auto c2 = cyclic_group(2), c3 = cyclic_group(3), c4 = cyclic_group(4);
    auto v4 = direct_product(c2, c2);
    struct Case {
        FiniteGroup G;
        GModule M;
        int n;
    };
    std::vector<Case> cases{
        {c2, sign_module(c2, 4, 1), 1}, {c2, sign_module(c2, 4, 1), 2}, {c2, sign_module(c2, 3, 1), 2},
        {c3, trivial_module(c3, {3}), 2}, {c4, sign_module(c4, 3, 1), 1}, {c4, sign_module(c4, 4, 1), 1},
        {v4, trivial_module(v4, {2}), 1}, {v4, trivial_module(v4, {2}), 2}, {c2, trivial_module(c2, {2, 2}), 2},
        {c2, trivial_module(c2, {2, 4}), 1}, {c3, trivial_module(c3, {3}), 0},
    };
    // C2 swapping two copies of Z/2
    GModule perm = trivial_module(c2, {2, 2});
    perm.action[1] = ZmMatrix(2, 2, 2);
    perm.action[1](0, 1) = perm.action[1](1, 0) = 1;
    cases.push_back({c2, perm, 1});
    cases.push_back({c2, perm, 2});
    for (auto& c : cases) {
        CAPTURE(c.n);
        CHECK(cohomology(c.G, c.M, c.n).order() == brute_order(c.G, c.M, c.n));
    }
    CHECK(cohomology(c2, perm, 1).order() == 1);  // induced module
}

TEST_CASE("known cohomology groups") {
    auto v4 = direct_product(cyclic_group(2), cyclic_group(2));
    auto F2 = trivial_module(v4, {2});
    CHECK(cohomology(v4, F2, 2).invariant_factors() == std::vector<i64>{2, 2, 2});
    CHECK(cohomology(v4, F2, 3).invariant_factors() == std::vector<i64>{2, 2, 2, 2});
    auto s3 = symmetric_group(3);
    CHECK(cohomology(s3, trivial_module(s3, {2}), 2).invariant_factors() == std::vector<i64>{2});
    CHECK(cohomology(s3, trivial_module(s3, {3}), 2).invariant_factors().empty());
    CHECK(cohomology(s3, trivial_module(s3, {3}), 3).invariant_factors() == std::vector<i64>{3});
    auto q8 = quaternion_group();
    CHECK(cohomology(q8, trivial_module(q8, {2}), 2).invariant_factors() == std::vector<i64>{2, 2});
    CHECK(cohomology(q8, trivial_module(q8, {2}), 3).invariant_factors() == std::vector<i64>{2});
    // H^0 is the fixed submodule
    auto c2 = cyclic_group(2);
    CHECK(cohomology(c2, sign_module(c2, 4, 1), 0).invariant_factors() == std::vector<i64>{2});
    // Hom(H_2, Z/4) + Ext(H_1, Z/4) has order 8
    CHECK(cohomology(v4, trivial_module(v4, {4}), 2).order() == 8);
}

TEST_CASE("budget") {
    auto s4 = symmetric_group(4);
    CohomologyOptions opt;
    opt.max_matrix_entries = 1000;
    CHECK_THROWS_AS(cohomology(s4, trivial_module(s4, {2}), 2, opt), BudgetExceeded);
    CHECK_THROWS_AS(cohomology(s4, trivial_module(s4, {2}), 7), BudgetExceeded);
}

TEST_CASE("coboundaries square to zero and class_of is additive") {
    std::mt19937 rng(7);
    auto q8 = quaternion_group();
    auto s3 = symmetric_group(3);
    auto c4 = cyclic_group(4);
    struct Case {
        FiniteGroup G;
        GModule M;
    };
    GModule q8m = trivial_module(q8, {2, 4});
    std::vector<Case> cases{{q8, q8m}, {s3, trivial_module(s3, {3})}, {c4, sign_module(c4, 8, 1)}};
    // S3 acting on Z/3 through the sign
    {
        GModule m = trivial_module(s3, {3});
        for (int g = 0; g < 6; ++g) {
            int sgn = 1;
            // transpositions have order 2
            if (s3.element_order(g) == 2) sgn = -1;
            m.action[g](0, 0) = mod_norm(sgn, 3);
        }
        validate_module(s3, m);
        cases[1].M = m;
    }
    for (auto& c : cases) {
        for (int n = 1; n <= 2; ++n) {
            auto H = cohomology(c.G, c.M, n);
            for (int trial = 0; trial < 5; ++trial) {
                Cochain a = random_normalized(c.G, c.M, n - 1, rng);
                Cochain da = coboundary(c.G, c.M, a);
                CHECK_FALSE(cocycle_violation(c.G, c.M, da).has_value());
                CHECK(H.is_zero(H.class_of(da)));
            }
            for (const auto& cls : H.all_classes()) {
                Cochain z = H.representative(cls);
                CHECK(is_normalized(c.G, z));
                CHECK(H.class_of(z) == cls);
                for (int trial = 0; trial < 2; ++trial) {
                    Cochain b = H.representative(H.all_classes()[rng() % H.all_classes().size()]);
                    Cochain a = random_normalized(c.G, c.M, n - 1, rng);
                    Cochain w = add_cochains(c.M, add_cochains(c.M, z, b), coboundary(c.G, c.M, a));
                    CHECK(H.class_of(w) == H.add(cls, H.class_of(b)));
                }
                CHECK(H.class_of(scale_cochain(c.M, z, 3)) == H.scale(cls, 3));
            }
        }
    }
}

TEST_CASE("class_of rejects non-cocycles") {
    auto c3 = cyclic_group(3);
    auto M = trivial_module(c3, {3});
    auto H = cohomology(c3, M, 2);
    Cochain z = Cochain::zero(2, 3, 1);
    z.set({1, 1}, {1});
    CHECK_THROWS_AS(H.class_of(z), ValidationError);
    Cochain u = Cochain::zero(2, 3, 1);
    u.set({0, 1}, {1});
    CHECK_THROWS_AS(H.class_of(u), ValidationError);
}

TEST_CASE("periodic model agrees with the bar complex") {
    std::mt19937 rng(3);
    for (int s : {2, 3, 4, 6})
        for (i64 l : {2, 3, 4, 5, 8, 9})
            for (i64 u = 1; u < l; ++u) {
                if (gcd64(u, l) != 1) continue;
                i64 p = 1;
                for (int i = 0; i < s; ++i) p = p * u % l;
                if (p != 1 % l) continue;
                auto G = cyclic_group(s);
                std::vector<i64> k(s);
                for (int i = 0; i < s; ++i) k[i] = i;
                GModule M = cyclic_twisted_module(G, l, k, u);
                for (int n = 1; n <= 3; ++n) {
                    CAPTURE(s);
                    CAPTURE(l);
                    CAPTURE(u);
                    CAPTURE(n);
                    auto H = cohomology(G, M, n);
                    PeriodicCohomology P(G, 1, M, n);
                    REQUIRE(H.invariant_factors() == P.invariant_factors());
                    // z -> periodic class is a well-defined isomorphism
                    std::set<ZmVec> seen;
                    for (const auto& cls : H.all_classes()) {
                        Cochain z = H.representative(cls);
                        ZmVec pc = P.class_of(z);
                        seen.insert(pc);
                        Cochain a = random_normalized(G, M, n - 1, rng);
                        CHECK(P.class_of(add_cochains(M, z, coboundary(G, M, a))) == pc);
                    }
                    CHECK(seen.size() == H.all_classes().size());
                }
            }
}

TEST_CASE("cup cocycle and reference generator") {
    for (int s : {2, 3, 4, 5})
        for (i64 l : {2, 3, 4, 6})
            for (i64 u = 1; u < l; ++u) {
                if (gcd64(u, l) != 1) continue;
                i64 p = 1;
                for (int i = 0; i < s; ++i) p = p * u % l;
                if (p != 1 % l) continue;
                auto G = cyclic_group(s);
                std::vector<i64> k(s);
                for (int i = 0; i < s; ++i) k[i] = i;
                GModule M = cyclic_twisted_module(G, l, k, u);
                PeriodicCohomology P(G, 1, M, 3);
                for (i64 m = 0; m < l; ++m) {
                    if (!P.in_kernel({m})) continue;
                    Cochain z = cyclic_cup_cocycle(s, l, u, m);
                    CAPTURE(s);
                    CAPTURE(l);
                    CAPTURE(u);
                    CAPTURE(m);
                    CHECK_FALSE(cocycle_violation(G, M, z).has_value());
                    CHECK(is_normalized(G, z));
                    CHECK(periodic_value(G, 1, M, z) == ZmVec{m});
                }
            }
    auto order_of = [](int s, i64 l) {
        auto G = cyclic_group(s);
        auto H = cohomology(G, trivial_module(G, {l}), 3);
        return H.class_order(H.class_of(cyclic_reference_generator(s, l)));
    };
    CHECK(order_of(2, 3) == 1);
    CHECK(order_of(2, 2) == 2);
    CHECK(order_of(4, 4) == 4);
    CHECK(order_of(6, 4) == 2);
    CHECK(order_of(3, 9) == 3);
}

TEST_CASE("restriction along a subgroup") {
    auto c4 = cyclic_group(4), c2 = cyclic_group(2);
    GroupHom inc{c2, c4, {0, 2}};
    check_hom(inc);
    auto M4 = trivial_module(c4, {4});
    auto M2 = trivial_module(c2, {4});
    auto H4 = cohomology(c4, M4, 2);
    auto H2 = cohomology(c2, M2, 2);
    Cochain carry = Cochain::zero(2, 4, 1);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i + j >= 4) carry.set({i, j}, {1});
    ZmVec gen = H4.class_of(carry);
    CHECK(H4.class_order(gen) == 4);
    ZmVec r1 = map_on_cohomology(inc, identity_module_map(M4), H4, H2, gen);
    CHECK_FALSE(H2.is_zero(r1));
    CHECK(H2.is_zero(map_on_cohomology(inc, identity_module_map(M4), H4, H2, H4.scale(gen, 2))));
    // functoriality: identity map is the identity
    for (const auto& cls : H4.all_classes())
        CHECK(map_on_cohomology(identity_hom(c4), identity_module_map(M4), H4, H4, cls) == cls);
    // reduction Z/4 -> Z/2 kills twice the generator on C4
    auto M4to2 = trivial_module(c4, {2});
    auto H42 = cohomology(c4, M4to2, 2);
    ModuleMap red{ZmMatrix::identity(2, 1)};
    CHECK_FALSE(H42.is_zero(map_on_cohomology(identity_hom(c4), red, H4, H42, gen)));
    CHECK(H42.is_zero(map_on_cohomology(identity_hom(c4), red, H4, H42, H4.scale(gen, 2))));
    // Z/2 -> Z/4 by 1 -> 1 is not a homomorphism
    ModuleMap bad{ZmMatrix::identity(4, 1)};
    CHECK_THROWS_AS(check_module_map(M4to2, M4, bad), ValidationError);
}

TEST_CASE("extensions and second cohomology") {
    auto v4 = direct_product(cyclic_group(2), cyclic_group(2));
    auto c2 = cyclic_group(2);
    auto M = trivial_module(v4, {2});
    auto H = cohomology(v4, M, 2);
    for (const auto& cls : H.all_classes()) {
        Cochain z = H.representative(cls);
        std::vector<int> f(16);
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q) f[p * 4 + q] = static_cast<int>(z.at({p, q})[0]);
        auto ext = group_from_2cocycle(v4, c2, trivial_action(v4, 2), f);
        // a different section: shift the fibre over each nonidentity element
        std::vector<int> sec = ext.canonical_section();
        for (int p = 1; p < 4; ++p) sec[p] = ext.G().mul(sec[p], ext.kernel_hom(1));
        auto g = extract_2cocycle(ext, sec);
        Cochain w = Cochain::zero(2, 4, 1);
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q) w.set({p, q}, {g[p * 4 + q]});
        CHECK(H.class_of(w) == cls);
    }
}

TEST_CASE("realised modules") {
    auto c2 = cyclic_group(2);
    auto c4 = cyclic_group(4);
    // C2 acting on C4 by inversion
    GroupAction inv{c2, 4, {0, 1, 2, 3, 0, 3, 2, 1}};
    auto R = realize_module(c2, c4, inv);
    CHECK(R.module.factors == std::vector<i64>{4});
    CHECK(cohomology(c2, R.module, 1).invariant_factors() == std::vector<i64>{2});
    CHECK(R.to_elem(R.to_vec(3)) == 3);
}
