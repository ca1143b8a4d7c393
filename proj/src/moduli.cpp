#include "poncelet/moduli.hpp"

#include <algorithm>
#include <cmath>

namespace poncelet {

namespace {

Conic symmetrized_conic(const Mat3& m) {
    Mat3 s = 0.5 * (m + m.transpose());
    return Conic::from_matrix(s);
}

}  // namespace

ConicPair act(const Mat3& A, const ConicPair& pair, const Tolerance& tol) {
    double na = A.cwiseAbs().maxCoeff();
    if (std::abs(det3(A)) <= tol.abs_eps * na * na * na)
        throw SingularTransform("act: transform is singular");
    Mat3 c = A.transpose() * pair.C.matrix() * A;
    Mat3 d = A.transpose() * pair.D.matrix() * A;
    return ConicPair(symmetrized_conic(c), symmetrized_conic(d));
}

NormalForm normal_form(const ConicPair& pair, const Tolerance& tol) {
    if (!transverse(pair, tol))
        throw DegeneratePencil("normal_form: pair is not transverse");
    PencilSpectrum sp = eigen_pencil(pair.C.matrix(), pair.D.matrix(), tol);

    NormalForm nf;
    nf.A.col(0) = sp.vectors[0];
    nf.A.col(1) = sp.vectors[1];
    nf.A.col(2) = sp.vectors[2];
    for (int i = 0; i < 3; ++i) nf.lambda[i] = -sp.roots[i];

    Eigen::JacobiSVD<Mat3> svd(nf.A);
    nf.conditioning = svd.singularValues()(0) / svd.singularValues()(2);

    double rscale = std::max({1.0, std::abs(sp.roots[0]), std::abs(sp.roots[1]),
                              std::abs(sp.roots[2])});
    nf.ill_conditioned = sp.separation < 1e-4 * rscale;
    return nf;
}

ModuliPoint moduli_point_from_lambda(const std::array<Cx, 3>& lambda_in,
                                     const Tolerance& tol) {
    ModuliPoint mp;
    // Scale-free zero tests: work on lambda normalized to max modulus 1.
    double m = std::max({std::abs(lambda_in[0]), std::abs(lambda_in[1]),
                         std::abs(lambda_in[2])});
    if (m == 0.0) throw DegeneratePencil("moduli_point: zero lambda");
    std::array<Cx, 3> l = {lambda_in[0] / m, lambda_in[1] / m, lambda_in[2] / m};

    mp.lambda = lambda_in;
    mp.e[0] = l[0] + l[1] + l[2];
    mp.e[1] = l[0] * l[1] + l[0] * l[2] + l[1] * l[2];
    mp.e[2] = l[0] * l[1] * l[2];

    mp.special = false;
    if (std::abs(mp.e[0]) > tol.cluster_eps) {
        Cx s = 1.0 / mp.e[0];
        mp.canonical = {Cx(1), mp.e[1] * s * s, mp.e[2] * s * s * s};
    } else if (std::abs(mp.e[1]) > tol.cluster_eps) {
        Cx s = principal_sqrt(1.0 / mp.e[1]);
        mp.canonical = {Cx(0), Cx(1), mp.e[2] * s * s * s};
    } else {
        mp.canonical = {Cx(0), Cx(0), Cx(1)};
        mp.special = true;
    }
    return mp;
}

ModuliPoint moduli_point(const ConicPair& pair, const Tolerance& tol) {
    return moduli_point_from_lambda(normal_form(pair, tol).lambda, tol);
}

double moduli_distance(const ModuliPoint& a, const ModuliPoint& b) {
    double d = 0.0;
    for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(a.canonical[i] - b.canonical[i]));
    return d;
}

IsotropyGroup isotropy_group(const ConicPair& pair, const Tolerance& tol) {
    NormalForm nf = normal_form(pair, tol);
    Mat3 A = nf.A, Ainv = A.inverse();
    Mat3 Lambda = Mat3::Zero();
    for (int i = 0; i < 3; ++i) Lambda(i, i) = nf.lambda[i];

    // All stabilizer classes are generalized sign-permutation matrices
    // P_sigma diag(1, s2, s3). The sign part always stabilizes; sigma
    // contributes iff diag(lambda_sigma) is projectively equal to Lambda.
    static const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                    {0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
    IsotropyGroup grp;
    grp.stabilization_residual = 0.0;
    int kmax = 0;
    double lscale = std::abs(nf.lambda[0]);
    for (int i = 1; i < 3; ++i)
        if (std::abs(nf.lambda[i]) > lscale) { lscale = std::abs(nf.lambda[i]); kmax = i; }
    for (const auto& p : perms) {
        // Projective equality of the permuted diagonal, anchored at the
        // largest entry so equal-modulus diagonals compare stably.
        Cx t = nf.lambda[p[kmax]] / nf.lambda[kmax];
        double mismatch = 0.0;
        for (int i = 0; i < 3; ++i)
            mismatch = std::max(mismatch,
                                std::abs(nf.lambda[p[i]] - t * nf.lambda[i]));
        if (mismatch > 1e-6 * lscale) continue;
        Mat3 P = Mat3::Zero();
        for (int j = 0; j < 3; ++j) P(p[j], j) = 1.0;
        for (int s2 : {1, -1}) {
            for (int s3 : {1, -1}) {
                Mat3 S = Mat3::Zero();
                S(0, 0) = 1.0; S(1, 1) = s2; S(2, 2) = s3;
                Mat3 g = A * (P * S) * Ainv;
                grp.elements.push_back(proj_normalize(g));
            }
        }
    }

    // Projective mismatch anchored at the largest entry of the reference, so
    // classes whose entries share one modulus still compare stably.
    auto mismatch = [](const Mat3& X, const Mat3& ref) {
        int bi = 0, bj = 0;
        double best = -1.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (std::abs(ref(i, j)) > best) { best = std::abs(ref(i, j)); bi = i; bj = j; }
        Cx t = X(bi, bj) / ref(bi, bj);
        return (X - t * ref).cwiseAbs().maxCoeff() / std::max(best, 1e-300);
    };
    Mat3 cm = pair.C.matrix(), dm = pair.D.matrix();
    for (const Mat3& g : grp.elements) {
        grp.stabilization_residual = std::max(grp.stabilization_residual,
            mismatch(Mat3(g.transpose() * cm * g), cm));
        grp.stabilization_residual = std::max(grp.stabilization_residual,
            mismatch(Mat3(g.transpose() * dm * g), dm));
    }
    return grp;
}

bool is_special_orbit(const ConicPair& pair, const Tolerance& tol) {
    return moduli_point(pair, tol).special;
}

}  // namespace poncelet
