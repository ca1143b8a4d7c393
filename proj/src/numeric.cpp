#include "poncelet/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace poncelet {

Cx principal_sqrt(Cx z) {
    Cx r = std::sqrt(z);
    // std::sqrt maps onto Re >= 0; push the boundary Re == 0, Im < 0 onto
    // the (-pi/2, pi/2] branch.
    if (r.real() == 0.0 && r.imag() < 0.0) r = -r;
    return r;
}

bool is_finite(Cx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

Mat3 proj_normalize(const Mat3& m) {
    int bi = 0, bj = 0;
    double best = -1.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (std::abs(m(i, j)) > best) { best = std::abs(m(i, j)); bi = i; bj = j; }
    if (best == 0.0) throw Error("proj_normalize: zero matrix");
    return m / m(bi, bj);
}

double proj_distance(const Mat3& a, const Mat3& b) {
    Mat3 d = proj_normalize(a) - proj_normalize(b);
    double m = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(d(i, j)));
    return m;
}

Cx det3(const Mat3& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
         - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
         + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Vec3 cross3(const Vec3& a, const Vec3& b) {
    return Vec3(a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0]);
}

Mat3 adjugate3(const Mat3& m) {
    Mat3 a;
    a(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    a(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
    a(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
    a(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
    a(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
    a(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
    a(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
    a(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
    a(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    return a;
}

namespace {

Cx eval_cubic(Cx a, Cx b, Cx c, Cx d, Cx t) {
    return ((a * t + b) * t + c) * t + d;
}

Cx eval_cubic_d(Cx a, Cx b, Cx c, Cx t) {
    return (3.0 * a * t + 2.0 * b) * t + c;
}

}  // namespace

std::vector<CubicRoot> solve_cubic(Cx a, Cx b, Cx c, Cx d, const Tolerance& tol) {
    double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    if (std::abs(a) <= tol.abs_eps * scale || a == Cx(0))
        throw DegreeError("solve_cubic: leading coefficient vanishes");

    // Monic companion matrix of t^3 + p t^2 + q t + r.
    Cx p = b / a, q = c / a, r = d / a;
    Mat3 comp = Mat3::Zero();
    comp(1, 0) = 1.0;
    comp(2, 1) = 1.0;
    comp(0, 2) = -r;
    comp(1, 2) = -q;
    comp(2, 2) = -p;
    Eigen::ComplexEigenSolver<Mat3> es(comp, false);
    std::array<Cx, 3> roots;
    for (int i = 0; i < 3; ++i) roots[i] = es.eigenvalues()[i];

    // Newton polish; keeps only improving steps so clustered roots do not
    // oscillate.
    for (auto& t : roots) {
        for (int it = 0; it < 3; ++it) {
            Cx f = eval_cubic(a, b, c, d, t);
            Cx df = eval_cubic_d(a, b, c, t);
            if (std::abs(df) == 0.0) break;
            Cx t2 = t - f / df;
            if (!is_finite(t2)) break;
            if (std::abs(eval_cubic(a, b, c, d, t2)) < std::abs(f)) t = t2;
            else break;
        }
        if (!is_finite(t)) throw NonFinite("solve_cubic: non-finite root");
    }

    std::sort(roots.begin(), roots.end(), [](Cx x, Cx y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });

    // Single-linkage clustering at cluster_eps, relative to the root scale.
    double rscale = std::max({1.0, std::abs(roots[0]), std::abs(roots[1]), std::abs(roots[2])});
    double eps = tol.cluster_eps * rscale;
    bool link01 = std::abs(roots[0] - roots[1]) <= eps;
    bool link12 = std::abs(roots[1] - roots[2]) <= eps;
    bool link02 = std::abs(roots[0] - roots[2]) <= eps;

    std::vector<CubicRoot> out;
    if ((link01 && link12) || (link01 && link02) || (link12 && link02)) {
        out.push_back({(roots[0] + roots[1] + roots[2]) / 3.0, 3});
    } else if (link01) {
        out.push_back({(roots[0] + roots[1]) / 2.0, 2});
        out.push_back({roots[2], 1});
    } else if (link12) {
        out.push_back({roots[0], 1});
        out.push_back({(roots[1] + roots[2]) / 2.0, 2});
    } else if (link02) {
        out.push_back({(roots[0] + roots[2]) / 2.0, 2});
        out.push_back({roots[1], 1});
    } else {
        for (Cx t : roots) out.push_back({t, 1});
    }
    return out;
}

PencilSpectrum eigen_pencil(const Mat3& C, const Mat3& D, const Tolerance& tol) {
    double nc = C.cwiseAbs().maxCoeff(), nd = D.cwiseAbs().maxCoeff();
    if (std::abs(det3(C)) <= tol.abs_eps * nc * nc * nc)
        throw SingularConic("eigen_pencil: det(C) = 0");
    if (std::abs(det3(D)) <= tol.abs_eps * nd * nd * nd)
        throw SingularConic("eigen_pencil: det(D) = 0");

    // Coefficients of det(tC + D) by interpolation at t = 0, 1, -1, 2.
    Cx s3 = det3(C);
    Cx s0 = det3(D);
    Cx p1 = det3(Mat3(C + D)), pm1 = det3(Mat3(D - C)), p2 = det3(Mat3(2.0 * C + D));
    // p1 = s3+s2+s1+s0 ; pm1 = -s3+s2-s1+s0 ; p2 = 8s3+4s2+2s1+s0
    Cx s2 = (p1 + pm1) / 2.0 - s0;
    Cx s1 = (p1 - pm1) / 2.0 - s3;
    (void)p2;

    auto roots = solve_cubic(s3, s2, s1, s0, tol);
    if (roots.size() != 3)
        throw DegeneratePencil("eigen_pencil: repeated pencil root");

    PencilSpectrum sp;
    sp.separation = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
        sp.roots[i] = roots[i].value;
        for (int j = 0; j < i; ++j)
            sp.separation = std::min(sp.separation, std::abs(sp.roots[i] - sp.roots[j]));
    }

    sp.residual = 0.0;
    double mscale = nc + nd;
    for (int i = 0; i < 3; ++i) {
        Mat3 M = sp.roots[i] * C + D;
        // adj(M) is rank one, proportional to v v^T; take its largest column.
        Mat3 adj = adjugate3(M);
        int bc = 0;
        double best = -1.0;
        for (int j = 0; j < 3; ++j) {
            double n = adj.col(j).norm();
            if (n > best) { best = n; bc = j; }
        }
        Vec3 v = adj.col(bc);
        if (best <= tol.abs_eps * mscale * mscale) {
            // Fall back to the smallest singular vector.
            Eigen::JacobiSVD<Mat3> svd(M, Eigen::ComputeFullV);
            v = svd.matrixV().col(2);
        }
        Cx vcv = v.transpose() * C * v;
        if (std::abs(vcv) <= tol.abs_eps * nc * v.squaredNorm())
            throw DegeneratePencil("eigen_pencil: v^T C v = 0 (non-transverse)");
        v /= principal_sqrt(vcv);
        sp.vectors[i] = v;
        sp.residual = std::max(sp.residual, (M * v).norm() / (mscale * v.norm()));
    }
    return sp;
}

}  // namespace poncelet
