#include "doctest.h"
#include "poncelet/dynamics.hpp"
#include "poncelet/cayley.hpp"
#include "test_helpers.hpp"

#include <random>

using namespace poncelet;
using namespace poncelet::testing;

TEST_CASE("sampled points lie on the conic, deterministically") {
    std::mt19937_64 rng(60);
    ConicPair p = random_transverse_pair(rng);
    auto a = sample_points_on_conic(p.C, 5, 10);
    auto b = sample_points_on_conic(p.C, 5, 10);
    REQUIRE(a.size() == 10);
    Mat3 cm = p.C.matrix();
    for (size_t i = 0; i < a.size(); ++i) {
        Vec3 v = a[i].normalized().coords;
        Cx q = v.transpose() * cm * v;
        CHECK(std::abs(q) < 1e-8 * cm.cwiseAbs().maxCoeff() * v.squaredNorm());
        CHECK(proj_distance(a[i], b[i]) == 0.0);
    }
}

TEST_CASE("initial state is a valid correspondence element") {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 20; ++i) {
        ConicPair p = random_transverse_pair(rng);
        auto pts = sample_points_on_conic(p.C, 9, 1);
        PonceletState st = initial_state(p, pts[0]);
        auto res = state_residuals(p, st.point, st.line);
        CHECK(res.point_on_C < 1e-9);
        CHECK(res.line_on_dual_D < 1e-9);
        CHECK(res.incidence < 1e-9);
        CHECK(correspondence_member(p, st.point, st.line));
    }
}

TEST_CASE("poncelet_step preserves the correspondence and changes the line") {
    std::mt19937_64 rng(62);
    for (int i = 0; i < 10; ++i) {
        ConicPair p = random_transverse_pair(rng);
        auto pts = sample_points_on_conic(p.C, 17, 1);
        PonceletState st = initial_state(p, pts[0]);
        for (int k = 0; k < 6; ++k) {
            PonceletState nx = poncelet_step(p, st);
            auto res = state_residuals(p, nx.point, nx.line);
            CHECK(res.point_on_C < 1e-7);
            CHECK(res.line_on_dual_D < 1e-7);
            CHECK(res.incidence < 1e-7);
            CHECK(proj_distance(nx.line, st.line) > 1e-8);
            CHECK(nx.branch_history.size() == st.branch_history.size() + 1);
            st = nx;
        }
    }
}

TEST_CASE("chapple triangles close, the control pair does not") {
    ConicPair good = chapple_pair();
    ConicPair bad = diag_pair(1, 2, 3);
    auto gp = sample_points_on_conic(good.C, 42, 20);
    auto bp = sample_points_on_conic(bad.C, 42, 20);
    for (int i = 0; i < 20; ++i) {
        CHECK(triangle_closure(good, gp[i]) < 1e-8);
        CHECK(triangle_closure(bad, bp[i]) > 1e-3);
    }
}

TEST_CASE("closure agrees with the gamma verdict on sampled Cayley pairs") {
    Mat3 m = Mat3::Identity();
    m(2, 2) = -1;
    Conic D = Conic::from_matrix(m);
    auto cs = sample_cayley(D, 3, 5);
    for (const auto& c : cs) {
        ConicPair p(c, D);
        auto pts = sample_points_on_conic(p.C, 4, 3);
        for (const auto& pt : pts)
            CHECK(triangle_closure(p, pt) < 1e-6);
    }
}

TEST_CASE("e_curve_residual vanishes on constructed curve points") {
    std::mt19937_64 rng(63);
    std::normal_distribution<double> g;
    for (int i = 0; i < 30; ++i) {
        ConicPair p = random_transverse_pair(rng);
        Cx r0(g(rng), g(rng)), r1(g(rng), g(rng));
        if (std::abs(r1) < 0.1) continue;
        Cx det = det3(Mat3(r0 * p.C.matrix() + r1 * p.D.matrix()));
        Cx u0 = principal_sqrt(det);
        Cx u1 = principal_sqrt(r1 * r1 * r1);
        Point1 r(Eigen::Matrix<Cx, 2, 1>(r0, r1));
        Point1 u(Eigen::Matrix<Cx, 2, 1>(u0, u1));
        Cx res = e_curve_residual(p, r, u);
        CHECK(std::abs(res) < 1e-8 * std::max(1.0, std::abs(det)));
    }
}

TEST_CASE("a Cayley diagonal pair closes") {
    // gamma(I, diag(6+4*sqrt(2), 2, 1)) = 0 in closed form
    ConicPair p = diag_pair(6.0 + 4.0 * std::sqrt(2.0), 2.0, 1.0);
    CHECK(std::abs(cayley_gamma(p)) < gamma_threshold(p));
    auto pts = sample_points_on_conic(p.C, 42, 20);
    for (const auto& pt : pts)
        CHECK(triangle_closure(p, pt) < 1e-8);
}

TEST_CASE("the step commutes with the congruence action") {
    std::mt19937_64 rng(65);
    std::normal_distribution<double> g;
    for (int i = 0; i < 10; ++i) {
        ConicPair p = random_transverse_pair(rng);
        Mat3 A;
        do {
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) A(a, b) = Cx(g(rng), g(rng));
        } while (std::abs(det3(A)) < 0.1);
        ConicPair q(Conic::from_matrix(Mat3(0.5 * (A.transpose() * p.C.matrix() * A
                        + (A.transpose() * p.C.matrix() * A).transpose()))),
                    Conic::from_matrix(Mat3(0.5 * (A.transpose() * p.D.matrix() * A
                        + (A.transpose() * p.D.matrix() * A).transpose()))));
        if (!transverse(q)) continue;

        auto pts = sample_points_on_conic(p.C, 21, 1);
        PonceletState st = initial_state(p, pts[0]);
        PonceletState nx = poncelet_step(p, st);

        // points map by A^-1, lines by A^T
        Mat3 Ainv = A.inverse();
        PonceletState stq;
        stq.point = Point2(Vec3(Ainv * st.point.coords)).normalized();
        stq.line = Point2(Vec3(A.transpose() * st.line.coords)).normalized();
        PonceletState nxq = poncelet_step(q, stq);
        CHECK(proj_distance(nxq.point, Point2(Vec3(Ainv * nx.point.coords))) < 1e-6);
        CHECK(proj_distance(nxq.line, Point2(Vec3(A.transpose() * nx.line.coords))) < 1e-6);
    }
}

TEST_CASE("random point-line pairs are not correspondence members") {
    std::mt19937_64 rng(66);
    std::normal_distribution<double> g;
    ConicPair p = random_transverse_pair(rng);
    for (int i = 0; i < 100; ++i) {
        Vec3 pv, lv;
        for (int k = 0; k < 3; ++k) {
            pv[k] = Cx(g(rng), g(rng));
            lv[k] = Cx(g(rng), g(rng));
        }
        CHECK_FALSE(correspondence_member(p, Point2(pv), Point2(lv)));
    }
}

TEST_CASE("branch collapse at an intersection point") {
    std::mt19937_64 rng(64);
    ConicPair p = random_transverse_pair(rng);
    auto pts = intersection_points(p.C, p.D);
    CHECK_THROWS_AS(initial_state(p, pts[0]), Error);
}
