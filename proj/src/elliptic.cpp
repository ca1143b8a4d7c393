#include "poncelet/elliptic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace poncelet {

Cx j_from_sigma(const Sigma& s, const Tolerance& tol) {
    const Cx &s30 = s[0], &s21 = s[1], &s12 = s[2], &s03 = s[3];
    Cx num = 256.0 * std::pow(3.0 * s12 * s30 - s21 * s21, 3);
    Cx den = s30 * s30 * (27.0 * s03 * s03 * s30 * s30
           + 2.0 * s12 * s30 * (-9.0 * s03 * s21 + 2.0 * s12 * s12)
           + s21 * s21 * (4.0 * s03 * s21 - s12 * s12));
    double smax = std::max({std::abs(s30), std::abs(s21), std::abs(s12), std::abs(s03)});
    if (std::abs(den) <= tol.abs_eps * std::pow(smax, 6))
        throw DegeneratePencil("j_from_sigma: vanishing discriminant");
    return num / den;
}

namespace {

Cx quad_factor(const std::array<Cx, 3>& l) {
    return l[0] * l[0] + l[1] * l[1] + l[2] * l[2]
         - l[0] * l[1] - l[0] * l[2] - l[1] * l[2];
}

std::array<Cx, 3> max_normalized(const std::array<Cx, 3>& l) {
    double m = std::max({std::abs(l[0]), std::abs(l[1]), std::abs(l[2])});
    if (m == 0.0) throw RepeatedLambda("lambda: zero triple");
    return {l[0] / m, l[1] / m, l[2] / m};
}

}  // namespace

Cx j_from_lambda(const std::array<Cx, 3>& lambda, const Tolerance& tol) {
    auto l = max_normalized(lambda);
    Cx d01 = l[0] - l[1], d02 = l[0] - l[2], d12 = l[1] - l[2];
    if (std::abs(d01) <= tol.cluster_eps || std::abs(d02) <= tol.cluster_eps ||
        std::abs(d12) <= tol.cluster_eps)
        throw RepeatedLambda("j_from_lambda: repeated entry");
    Cx q = quad_factor(l);
    return 256.0 * q * q * q / (d01 * d01 * d02 * d02 * d12 * d12);
}

JValue classify_critical(const std::array<Cx, 3>& lambda, const Tolerance& tol) {
    auto l = max_normalized(lambda);
    if (std::abs(l[0] - l[1]) <= tol.cluster_eps ||
        std::abs(l[0] - l[2]) <= tol.cluster_eps ||
        std::abs(l[1] - l[2]) <= tol.cluster_eps)
        throw RepeatedLambda("classify_critical: repeated entry");

    Cx f1 = l[0] - 2.0 * l[1] + l[2];
    Cx f2 = l[0] + l[1] - 2.0 * l[2];
    Cx f3 = 2.0 * l[0] - l[1] - l[2];
    Cx q = quad_factor(l);

    JValue v;
    v.z = j_from_lambda(lambda, tol);
    if (std::abs(q) <= tol.cluster_eps) v.critical_class = CriticalClass::j0;
    else if (std::abs(f1) <= tol.cluster_eps || std::abs(f2) <= tol.cluster_eps ||
             std::abs(f3) <= tol.cluster_eps)
        v.critical_class = CriticalClass::j1728;
    else
        v.critical_class = CriticalClass::regular;
    return v;
}

Cx cayley_moduli_residual(const std::array<Cx, 3>& l) {
    const Cx &l1 = l[0], &l2 = l[1], &l3 = l[2];
    return -l1 * l1 * l2 * l2 + 2.0 * l1 * l1 * l2 * l3 - l1 * l1 * l3 * l3
         + 2.0 * l1 * l2 * l2 * l3 + 2.0 * l1 * l2 * l3 * l3 - l2 * l2 * l3 * l3;
}

Cx fiber_curve_residual(const std::array<Cx, 3>& l, Cx z) {
    Cx q = quad_factor(l);
    Cx d = (l[0] - l[1]) * (l[0] - l[2]) * (l[1] - l[2]);
    return 256.0 * q * q * q - z * d * d;
}

// ---------------------------------------------------------------------------
// Degree-24 fiber

namespace {

// Chart lambda3 = 1. f = Cayley quartic, g = fiber curve.
Cx f_chart(Cx x, Cx y) { return cayley_moduli_residual({x, y, Cx(1)}); }
Cx g_chart(Cx x, Cx y, Cx z) { return fiber_curve_residual({x, y, Cx(1)}, z); }

void fg_jacobian(Cx x, Cx y, Cx z, Cx& fx, Cx& fy, Cx& gx, Cx& gy) {
    fx = -2.0 * x * y * y + 4.0 * x * y - 2.0 * x + 2.0 * y * y + 2.0 * y;
    fy = -2.0 * x * x * y + 2.0 * x * x + 4.0 * x * y + 2.0 * x - 2.0 * y;
    Cx q = quad_factor({x, y, Cx(1)});
    Cx u = x - y, v = x - 1.0, w = y - 1.0;
    Cx dD1 = 2.0 * u * v * w * (v * w + u * w);
    Cx dD2 = 2.0 * u * v * w * (u * v - v * w);
    gx = 768.0 * q * q * (2.0 * x - y - 1.0) - z * dD1;
    gy = 768.0 * q * q * (2.0 * y - x - 1.0) - z * dD2;
}

// det of the 8x8 Sylvester matrix of f (deg 2) and g (deg 6) in lambda2,
// for a fixed numeric lambda1.
Cx sylvester_det(Cx x, Cx z) {
    // f in lambda2, ascending: a0 + a1 y + a2 y^2
    std::array<Cx, 3> f = {-x * x, 2.0 * x * x + 2.0 * x, -(x - 1.0) * (x - 1.0)};

    // g = 256 Q^3 - z (x-y)^2 (x-1)^2 (y-1)^2, ascending in y.
    std::array<Cx, 3> Q = {x * x - x + 1.0, -x - 1.0, Cx(1)};
    std::array<Cx, 7> g{};
    // Q^3 by convolution
    std::array<Cx, 5> Q2{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) Q2[i + j] += Q[i] * Q[j];
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 3; ++j) g[i + j] += 256.0 * Q2[i] * Q[j];
    // (x - y)^2 (y - 1)^2 * (x-1)^2
    std::array<Cx, 3> u2 = {x * x, -2.0 * x, Cx(1)};
    std::array<Cx, 3> w2 = {Cx(1), Cx(-2), Cx(1)};
    Cx v2 = (x - 1.0) * (x - 1.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g[i + j] -= z * v2 * u2[i] * w2[j];

    Eigen::Matrix<Cx, 8, 8> S = Eigen::Matrix<Cx, 8, 8>::Zero();
    for (int r = 0; r < 6; ++r)
        for (int k = 0; k < 3; ++k) S(r, r + k) = f[2 - k];
    for (int r = 0; r < 2; ++r)
        for (int k = 0; k < 7; ++k) S(6 + r, r + k) = g[6 - k];
    return S.partialPivLu().determinant();
}

struct ChartSolution { Cx x, y; double res7, res8; };

bool solve_chart(Cx z, double rho, std::vector<ChartSolution>& out,
                 const Tolerance& tol) {
    constexpr int N = 64;
    constexpr int deg = 24;
    const double two_pi = 2.0 * std::numbers::pi;

    std::array<Cx, N> vals;
    for (int k = 0; k < N; ++k) {
        Cx pt = std::polar(rho, two_pi * k / N);
        vals[k] = sylvester_det(pt, z);
        if (!is_finite(vals[k])) return false;
    }

    // c_j = (1/N) sum_k vals_k e^{-2 pi i jk/N} / rho^j, valid for deg < N.
    std::array<Cx, deg + 1> coef;
    double tail = 0.0, cmax = 0.0;
    for (int j = 0; j < N; ++j) {
        Cx acc = 0.0;
        for (int k = 0; k < N; ++k)
            acc += vals[k] * std::polar(1.0, -two_pi * j * k / N);
        Cx cj = acc / (double(N) * std::pow(rho, j));
        if (j <= deg) { coef[j] = cj; cmax = std::max(cmax, std::abs(cj)); }
        else tail = std::max(tail, std::abs(acc / double(N)));
    }
    if (cmax == 0.0 || std::abs(coef[deg]) < 1e-10 * cmax) return false;
    if (tail > 1e-6 * cmax * std::pow(rho, deg)) return false;

    // Companion eigenvalues of the degree-24 monic polynomial.
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -coef[i] / coef[deg];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success) return false;

    out.clear();
    for (int i = 0; i < deg; ++i) {
        Cx x = es.eigenvalues()[i];
        // Candidates for lambda2 from the quadratic f(x, .) = 0.
        Cx a2 = -(x - 1.0) * (x - 1.0), a1 = 2.0 * x * x + 2.0 * x, a0 = -x * x;
        Cx y;
        if (std::abs(a2) > 1e-12 * (std::abs(a1) + std::abs(a0))) {
            Cx sq = principal_sqrt(a1 * a1 - 4.0 * a2 * a0);
            Cx y1 = (-a1 + sq) / (2.0 * a2), y2 = (-a1 - sq) / (2.0 * a2);
            y = std::abs(g_chart(x, y1, z)) <= std::abs(g_chart(x, y2, z)) ? y1 : y2;
        } else if (std::abs(a1) > 0.0) {
            y = -a0 / a1;
        } else {
            continue;
        }

        // Newton on the 2x2 system.
        for (int it = 0; it < 40; ++it) {
            Cx F0 = f_chart(x, y), F1 = g_chart(x, y, z);
            Cx fx, fy, gx, gy;
            fg_jacobian(x, y, z, fx, fy, gx, gy);
            Cx det = fx * gy - fy * gx;
            if (std::abs(det) < 1e-300) break;
            Cx dx = (F0 * gy - F1 * fy) / det;
            Cx dy = (fx * F1 - gx * F0) / det;
            x -= dx; y -= dy;
            if (!is_finite(x) || !is_finite(y)) return false;
            if (std::abs(dx) + std::abs(dy) < 1e-15 * (1.0 + std::abs(x) + std::abs(y)))
                break;
        }

        std::array<Cx, 3> l = max_normalized({x, y, Cx(1)});
        double zscale = std::max(1.0, std::abs(z));
        ChartSolution s;
        s.x = x; s.y = y;
        s.res7 = std::abs(cayley_moduli_residual(l));
        s.res8 = std::abs(fiber_curve_residual(l, z)) / zscale;
        if (s.res7 > 1e-6 || s.res8 > 1e-6) return false;
        out.push_back(s);
    }
    (void)tol;
    return out.size() == deg;
}

}  // namespace

AtlasRecord fiber_solutions(Cx z, const Tolerance& tol) {
    if (std::abs(z) < 1728.0 * tol.cluster_eps ||
        std::abs(z - 1728.0) < 1728.0 * tol.cluster_eps)
        throw CriticalZ("fiber_solutions: z is a critical value");

    std::vector<ChartSolution> sols;
    bool ok = false;
    for (double rho : {1.1, 0.73, 1.61, 2.3}) {  // fallback radii
        if (solve_chart(z, rho, sols, tol)) { ok = true; break; }
    }
    if (!ok)
        throw ResultantIllConditioned("fiber_solutions: all elimination attempts failed");

    // Cluster the 24 chart points into roots with multiplicities.
    std::vector<bool> used(sols.size(), false);
    AtlasRecord rec;
    rec.z = z;
    rec.total_with_multiplicity = static_cast<int>(sols.size());
    rec.max_residual = 0.0;
    std::vector<ModuliPoint> reps;
    for (size_t i = 0; i < sols.size(); ++i) {
        if (used[i]) continue;
        FiberRoot root;
        root.lambda = {sols[i].x, sols[i].y, Cx(1)};
        root.multiplicity = 1;
        root.res7 = sols[i].res7;
        root.res8 = sols[i].res8;
        for (size_t j = i + 1; j < sols.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(sols[i].x - sols[j].x) + std::abs(sols[i].y - sols[j].y)
                    <= tol.cluster_eps) {
                used[j] = true;
                ++root.multiplicity;
                root.res7 = std::max(root.res7, sols[j].res7);
                root.res8 = std::max(root.res8, sols[j].res8);
            }
        }
        rec.max_residual = std::max({rec.max_residual, root.res7, root.res8});
        reps.push_back(moduli_point_from_lambda(root.lambda, tol));
        rec.roots.push_back(root);
    }

    // S3-orbit grouping through canonical moduli points.
    std::vector<bool> grouped(reps.size(), false);
    rec.orbit_count = 0;
    for (size_t i = 0; i < reps.size(); ++i) {
        if (grouped[i]) continue;
        ++rec.orbit_count;
        for (size_t j = i + 1; j < reps.size(); ++j)
            if (!grouped[j] && moduli_distance(reps[i], reps[j]) < 1e-6)
                grouped[j] = true;
    }
    return rec;
}

CriticalSets critical_sets_S(const Tolerance& tol) {
    const double s3 = std::sqrt(3.0);
    const Cx i(0.0, 1.0);
    const Cx a = principal_sqrt(Cx(-3.0 + 2.0 * s3));
    const Cx b = principal_sqrt(Cx(-2.0 * s3 - 3.0));
    const Cx c = principal_sqrt(Cx(3.0 + 2.0 * s3));
    const Cx d = principal_sqrt(Cx(3.0 - 2.0 * s3));

    std::vector<std::array<Cx, 3>> s0 = {
        {(-1.0 - s3 * i) / 2.0, (-1.0 + s3 * i) / 2.0, Cx(1)},
        {(-1.0 + s3 * i) / 2.0, (-1.0 - s3 * i) / 2.0, Cx(1)},
    };
    std::vector<std::array<Cx, 3>> s1728 = {
        {1.0 - a, 1.0 + a, Cx(1)},
        {1.0 - b, 1.0 + b, Cx(1)},
        {1.0 + b, 1.0 - b, Cx(1)},
        {a + 1.0, 1.0 - a, Cx(1)},
        {1.0 + s3 + c, s3 / 2.0 + 1.0 + c / 2.0, Cx(1)},
        {-s3 + 1.0 - d, -s3 / 2.0 + 1.0 - d / 2.0, Cx(1)},
        {-s3 + 1.0 + d, -s3 / 2.0 + 1.0 + d / 2.0, Cx(1)},
        {(-s3 + 2.0 - d) / 2.0, -s3 + 1.0 - d, Cx(1)},
        {(-s3 + 2.0 + d) / 2.0, -s3 + 1.0 + d, Cx(1)},
        {(s3 + 2.0 + c) / 2.0, 1.0 + s3 + c, Cx(1)},
        {-c + 1.0 + s3, -c / 2.0 + s3 / 2.0 + 1.0, Cx(1)},
        {(-c + s3 + 2.0) / 2.0, -c + 1.0 + s3, Cx(1)},
    };

    CriticalSets sets;
    for (const auto& l : s0) {
        if (std::abs(cayley_moduli_residual(max_normalized(l))) > 1e-10)
            throw Error("critical_sets_S: S0 point fails the Cayley quartic");
        if (classify_critical(l, tol).critical_class != CriticalClass::j0)
            throw Error("critical_sets_S: S0 point not in the j=0 locus");
        sets.S0.push_back(moduli_point_from_lambda(l, tol));
    }
    for (const auto& l : s1728) {
        if (std::abs(cayley_moduli_residual(max_normalized(l))) > 1e-10)
            throw Error("critical_sets_S: S1728 point fails the Cayley quartic");
        if (classify_critical(l, tol).critical_class != CriticalClass::j1728)
            throw Error("critical_sets_S: S1728 point not in the j=1728 locus");
        sets.S1728.push_back(moduli_point_from_lambda(l, tol));
    }
    return sets;
}

}  // namespace poncelet
