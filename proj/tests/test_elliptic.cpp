#include "doctest.h"
#include "poncelet/elliptic.hpp"
#include "poncelet/cayley.hpp"
#include "test_helpers.hpp"

#include <random>

using namespace poncelet;
using namespace poncelet::testing;

TEST_CASE("j at reference diagonals") {
    Cx j123 = j_from_lambda({Cx(1), Cx(2), Cx(3)});
    CHECK(std::abs(j123 - Cx(1728)) < 1e-10 * 1728);
    Cx j124 = j_from_lambda({Cx(1), Cx(2), Cx(4)});
    CHECK(std::abs(j124 - Cx(21952.0 / 9.0)) < 1e-10 * std::abs(j124));
    Cx om = omega();
    Cx j0 = j_from_lambda({Cx(1), om, om * om});
    CHECK(std::abs(j0) < 1e-12);
}

TEST_CASE("j_from_sigma matches j_from_lambda") {
    std::mt19937_64 rng(40);
    for (int i = 0; i < 200; ++i) {
        ConicPair p = random_transverse_pair(rng);
        Cx ja = j_from_sigma(p.sigma);
        Cx jb = j_from_lambda(normal_form(p).lambda);
        CHECK(std::abs(ja - jb) < 1e-8 * std::max(1.0, std::abs(ja)));
    }
}

TEST_CASE("j invariances in lambda") {
    std::array<Cx, 3> lam{Cx(0.7, 1.1), Cx(-1.2, 0.4), Cx(2.3, -0.6)};
    Cx base = j_from_lambda(lam);
    Cx perm = j_from_lambda({lam[1], lam[2], lam[0]});
    Cx s(1.7, -0.9);
    Cx scaled = j_from_lambda({s * lam[0], s * lam[1], s * lam[2]});
    Cx shifted = j_from_lambda({lam[0] + s, lam[1] + s, lam[2] + s});
    CHECK(std::abs(perm - base) < 1e-12 * std::abs(base));
    CHECK(std::abs(scaled - base) < 1e-10 * std::abs(base));
    CHECK(std::abs(shifted - base) < 1e-9 * std::abs(base));
}

TEST_CASE("repeated lambda throws") {
    CHECK_THROWS_AS(j_from_lambda({Cx(1), Cx(1), Cx(2)}), RepeatedLambda);
}

TEST_CASE("critical classification") {
    CHECK(classify_critical({Cx(1), Cx(2), Cx(3)}).critical_class == CriticalClass::j1728);
    Cx om = omega();
    CHECK(classify_critical({Cx(1), om, om * om}).critical_class == CriticalClass::j0);
    auto reg = classify_critical({Cx(1), Cx(2), Cx(5)});
    CHECK(reg.critical_class == CriticalClass::regular);
    CHECK(std::abs(reg.z - j_from_lambda({Cx(1), Cx(2), Cx(5)})) < 1e-10);
}

TEST_CASE("moduli quartic values and identity with gamma") {
    CHECK(std::abs(cayley_moduli_residual({Cx(1), Cx(2), Cx(3)}) - Cx(23)) < 1e-12);
    std::mt19937_64 rng(41);
    std::normal_distribution<double> g;
    for (int i = 0; i < 100; ++i) {
        std::array<Cx, 3> lam{Cx(g(rng), g(rng)), Cx(g(rng), g(rng)), Cx(g(rng), g(rng))};
        ConicPair p = diag_pair(lam[0], lam[1], lam[2]);
        Cx lhs = cayley_moduli_residual(lam);
        Cx rhs = cayley_gamma_sigma(p.sigma);
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("fiber over a regular z") {
    AtlasRecord rec = fiber_solutions(Cx(100, 0));
    CHECK(rec.total_with_multiplicity == 24);
    CHECK(rec.roots.size() == 24);  // all simple
    CHECK(rec.orbit_count == 4);
    CHECK(rec.max_residual < 1e-8);
    for (const auto& r : rec.roots) {
        CHECK(r.multiplicity == 1);
        // both defining equations hold at the polished root
        Cx q = cayley_moduli_residual(r.lambda);
        Cx f = fiber_curve_residual(r.lambda, rec.z);
        double scale = 0;
        for (const Cx& l : r.lambda) scale = std::max(scale, std::abs(l));
        scale = std::max(scale, 1.0);
        CHECK(std::abs(q) < 1e-7 * std::pow(scale, 4));
        CHECK(std::abs(f) < 1e-5 * std::abs(rec.z) * std::pow(scale, 6));
        // the j value of the root is z
        Cx jr = j_from_lambda(r.lambda);
        CHECK(std::abs(jr - rec.z) < 1e-6 * std::abs(rec.z));
        // no root has two equal coordinates or a vanishing one
        for (int a = 0; a < 3; ++a) {
            CHECK(std::abs(r.lambda[a]) > 1e-6);
            for (int b = a + 1; b < 3; ++b)
                CHECK(std::abs(r.lambda[a] - r.lambda[b]) > 1e-6);
        }
    }
}

TEST_CASE("fiber over complex z values") {
    for (Cx z : {Cx(300, 40), Cx(-50, 9), Cx(12.5, -777)}) {
        AtlasRecord rec = fiber_solutions(z);
        CHECK(rec.total_with_multiplicity == 24);
        CHECK(rec.max_residual < 1e-8);
    }
}

TEST_CASE("fiber refuses critical z") {
    CHECK_THROWS_AS(fiber_solutions(Cx(0, 0)), CriticalZ);
    CHECK_THROWS_AS(fiber_solutions(Cx(1728, 0)), CriticalZ);
}

TEST_CASE("critical intersection sets") {
    CriticalSets s = critical_sets_S();
    CHECK(s.S0.size() == 2);
    CHECK(s.S1728.size() == 12);
    for (const auto& m : s.S0) {
        Cx q = cayley_moduli_residual(m.lambda);
        CHECK(std::abs(q) < 1e-9);
        CHECK(classify_critical(m.lambda).critical_class == CriticalClass::j0);
    }
    for (const auto& m : s.S1728) {
        Cx q = cayley_moduli_residual(m.lambda);
        CHECK(std::abs(q) < 1e-9);
        CHECK(classify_critical(m.lambda).critical_class == CriticalClass::j1728);
    }
    // the twelve lambda points are pairwise distinct in CP^2 (they do fall
    // into fewer orbits under the coordinate S3 action)
    auto as_point = [](const ModuliPoint& m) {
        return Point2(Vec3(m.lambda[0], m.lambda[1], m.lambda[2]));
    };
    for (size_t i = 0; i < s.S1728.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            CHECK(proj_distance(as_point(s.S1728[i]), as_point(s.S1728[j])) > 1e-6);
}
