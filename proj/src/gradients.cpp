#include "poncelet/gradients.hpp"

namespace poncelet {

namespace {

PencilSpectrum spectrum_of(const ConicPair& pair, const Tolerance& tol) {
    if (!transverse(pair, tol))
        throw DegeneratePencil("gradients: pair is not transverse");
    return eigen_pencil(pair.C.matrix(), pair.D.matrix(), tol);
}

}  // namespace

GradientPair eigenvalue_gradients(const ConicPair& pair, int root_index,
                                  const Tolerance& tol) {
    if (root_index < 0 || root_index > 2)
        throw Error("eigenvalue_gradients: root_index out of range");
    PencilSpectrum sp = spectrum_of(pair, tol);

    GradientPair gp;
    gp.root = sp.roots[root_index];
    gp.vector = sp.vectors[root_index];
    gp.vCv = gp.vector.transpose() * pair.C.matrix() * gp.vector;

    Mat3 vvT = gp.vector * gp.vector.transpose();
    gp.grad_D = -vvT / gp.vCv;
    gp.grad_C = -gp.root * vvT / gp.vCv;
    return gp;
}

Cx directional_derivative(const ConicPair& pair, int root_index,
                          const Mat3& dC, const Mat3& dD, const Tolerance& tol) {
    GradientPair gp = eigenvalue_gradients(pair, root_index, tol);
    const Vec3& v = gp.vector;
    Cx vDv = v.transpose() * dD * v;
    Cx vCv_dir = v.transpose() * dC * v;
    return -(vDv + gp.root * vCv_dir) / gp.vCv;
}

SubmersionTangents submersion_tangents(const ConicPair& pair, const Tolerance& tol) {
    PencilSpectrum sp = spectrum_of(pair, tol);
    Mat3 C = pair.C.matrix();

    auto velocities = [&](const Vec3& vdir) {
        Mat3 dD = C * vdir * vdir.transpose() * C;
        std::array<Cx, 3> dot;
        for (int k = 0; k < 3; ++k) {
            const Vec3& vk = sp.vectors[k];
            Cx vCv = vk.transpose() * C * vk;
            Cx vDv = vk.transpose() * dD * vk;
            dot[k] = -vDv / vCv;
        }
        return dot;
    };

    SubmersionTangents st;
    st.dot_lambda_1 = velocities(sp.vectors[0]);
    st.dot_lambda_2 = velocities(sp.vectors[1]);

    // Chart (r1/r3, r2/r3): image of each tangent, then the 2x2 determinant.
    Cx r3 = sp.roots[2];
    auto chart = [&](const std::array<Cx, 3>& dot) {
        return std::array<Cx, 2>{
            (dot[0] * r3 - sp.roots[0] * dot[2]) / (r3 * r3),
            (dot[1] * r3 - sp.roots[1] * dot[2]) / (r3 * r3)};
    };
    auto u1 = chart(st.dot_lambda_1), u2 = chart(st.dot_lambda_2);
    st.chart_determinant = u1[0] * u2[1] - u1[1] * u2[0];
    return st;
}

double gradient_fd_error(const ConicPair& pair, int root_index, double h,
                         const Tolerance& tol) {
    Mat3 C = proj_normalize(pair.C.matrix());
    Mat3 D = proj_normalize(pair.D.matrix());
    ConicPair scaled(Conic::from_matrix(C), Conic::from_matrix(D));
    GradientPair gp = eigenvalue_gradients(scaled, root_index, tol);

    auto root_near = [&](const Mat3& Cp, const Mat3& Dp) {
        PencilSpectrum sp = eigen_pencil(Cp, Dp, tol);
        Cx best = sp.roots[0];
        for (int k = 1; k < 3; ++k)
            if (std::abs(sp.roots[k] - gp.root) < std::abs(best - gp.root))
                best = sp.roots[k];
        return best;
    };

    double gscale = std::max(
        {gp.grad_C.cwiseAbs().maxCoeff(), gp.grad_D.cwiseAbs().maxCoeff(), 1.0});
    double worst = 0.0;
    for (int which = 0; which < 2; ++which) {
        const Mat3& grad = which == 0 ? gp.grad_C : gp.grad_D;
        for (int i = 0; i < 3; ++i) {
            for (int j = i; j < 3; ++j) {
                Mat3 dM = Mat3::Zero();
                dM(i, j) = 1.0;
                dM(j, i) = 1.0;  // symmetric perturbation
                Mat3 step = h * dM;
                Mat3 Cp = which == 0 ? Mat3(C + step) : C;
                Mat3 Dp = which == 1 ? Mat3(D + step) : D;
                Mat3 Cm = which == 0 ? Mat3(C - step) : C;
                Mat3 Dm = which == 1 ? Mat3(D - step) : D;
                Cx fd = (root_near(Cp, Dp) - root_near(Cm, Dm)) / (2.0 * h);
                Cx an = (i == j ? 1.0 : 2.0) * grad(i, j);
                worst = std::max(worst, std::abs(fd - an) / gscale);
            }
        }
    }
    return worst;
}

}  // namespace poncelet
