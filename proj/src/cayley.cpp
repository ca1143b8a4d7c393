#include "poncelet/cayley.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace poncelet {

CayleySeries sqrt_series(const Sigma& sigma, int K, const Tolerance& tol) {
    double smax = std::max({std::abs(sigma[0]), std::abs(sigma[1]),
                            std::abs(sigma[2]), std::abs(sigma[3])});
    if (std::abs(sigma[3]) <= tol.abs_eps * smax)
        throw BranchPole("sqrt_series: sigma03 = 0");
    if (K < 0) throw BadOrder("sqrt_series: negative order");

    // Ascending cubic coefficients: s_k with s_k = 0 for k > 3.
    std::array<Cx, 4> s = {sigma[3], sigma[2], sigma[1], sigma[0]};

    CayleySeries out;
    out.coefficients.resize(K + 1);
    out.branch = principal_sqrt(s[0]);
    out.coefficients[0] = out.branch;
    for (int k = 1; k <= K; ++k) {
        Cx acc = (k <= 3) ? s[k] : Cx(0);
        for (int i = 1; i < k; ++i) acc -= out.coefficients[i] * out.coefficients[k - i];
        out.coefficients[k] = acc / (2.0 * out.coefficients[0]);
        if (!is_finite(out.coefficients[k]))
            throw NonFinite("sqrt_series: non-finite coefficient");
    }
    return out;
}

Cx cayley_gamma_sigma(const Sigma& s) {
    return -s[2] * s[2] + 4.0 * s[3] * s[1];
}

double gamma_threshold(const ConicPair& pair, const Tolerance& tol) {
    double nc = pair.C.matrix().cwiseAbs().maxCoeff();
    double nd = pair.D.matrix().cwiseAbs().maxCoeff();
    return tol.rel_eps * nc * nc * nd * nd * nd * nd;
}

Cx cayley_gamma(const ConicPair& pair, const Tolerance& tol) {
    if (!transverse(pair, tol))
        throw NotTransverse("cayley_gamma: pair is not transverse");
    return cayley_gamma_sigma(pair.sigma);
}

CayleyVerdict cayley_condition_n(const ConicPair& pair, int n, const Tolerance& tol) {
    if (n < 3) throw BadOrder("cayley_condition_n: n must be >= 3");
    if (!transverse(pair, tol))
        throw NotTransverse("cayley_condition_n: pair is not transverse");

    int m = n / 2;
    int K = 2 * m + 1;  // covers A_2..A_{2m} (odd) and A_3..A_{2m-1} (even)
    CayleySeries series = sqrt_series(pair.sigma, K, tol);

    int dim, first;
    if (n % 2 == 1) { dim = m; first = 2; }       // entries A_2 .. A_{2m}
    else            { dim = m - 1; first = 3; }   // entries A_3 .. A_{2m-1}

    Eigen::MatrixXcd H(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            H(i, j) = series.coefficients[first + i + j];

    CayleyVerdict v;
    v.n = n;
    v.hankel = H.determinant();
    v.gamma = cayley_gamma_sigma(pair.sigma);
    v.threshold = gamma_threshold(pair, tol);
    if (n == 3) {
        v.satisfied = std::abs(v.gamma) < v.threshold;
    } else {
        // Same scale logic applied to the Hankel value, normalized through
        // the sigma scale of the determinant's entries.
        double smax = std::max({std::abs(pair.sigma[0]), std::abs(pair.sigma[1]),
                                std::abs(pair.sigma[2]), std::abs(pair.sigma[3])});
        double scale = std::pow(std::sqrt(smax), dim);
        v.satisfied = std::abs(v.hankel) < tol.rel_eps * std::max(scale, 1e-30);
    }
    return v;
}

Mat3 trivialize_psi(const Conic& D, const Conic& C, const Tolerance& tol) {
    if (!D.nondegenerate(tol)) throw SingularConic("trivialize_psi: D degenerate");
    Mat3 dm = D.matrix();
    return dm.inverse() * C.matrix();
}

Mat3 trivialize_psi_inverse(const Conic& D, const Mat3& E, const Tolerance& tol) {
    if (!D.nondegenerate(tol)) throw SingularConic("trivialize_psi_inverse: D degenerate");
    return D.matrix() * E;
}

double psi_quadric_residual(const Mat3& E) {
    // -tr(E)^2 + 4 e2(E), with e2 the sum of principal 2x2 minors; for a
    // symmetric E this is the fiber quadric over I_3 written out in Sec. form.
    Cx tr = E(0, 0) + E(1, 1) + E(2, 2);
    Cx e2 = E(0, 0) * E(1, 1) - E(0, 1) * E(1, 0)
          + E(0, 0) * E(2, 2) - E(0, 2) * E(2, 0)
          + E(1, 1) * E(2, 2) - E(1, 2) * E(2, 1);
    double scale = E.cwiseAbs().maxCoeff();
    return std::abs(-tr * tr + 4.0 * e2) / std::max(scale * scale, 1e-300);
}

std::vector<Conic> sample_cayley(const Conic& D, uint64_t seed, int count,
                                 const Tolerance& tol) {
    if (!D.nondegenerate(tol)) throw SingularConic("sample_cayley: D degenerate");
    std::mt19937_64 rng(seed);
    std::vector<Conic> out;
    out.reserve(count);

    int rejections = 0;
    while (static_cast<int>(out.size()) < count) {
        if (rejections >= 1000)
            throw SamplingExhausted("sample_cayley: 1000 consecutive rejections");
        Conic c0 = random_conic(rng), c1 = random_conic(rng);

        // gamma(C0 + s C1, D) is quadratic in s; interpolate at s = 0, 1, -1.
        auto gamma_at = [&](double s) {
            Mat3 m = c0.matrix() + s * c1.matrix();
            return cayley_gamma_sigma(sigma_coefficients(m, D.matrix()));
        };
        Cx g0 = gamma_at(0.0), gp = gamma_at(1.0), gm = gamma_at(-1.0);
        Cx qa = (gp + gm) / 2.0 - g0;
        Cx qb = (gp - gm) / 2.0;
        Cx qc = g0;
        if (std::abs(qa) < 1e-300) { ++rejections; continue; }
        Cx sq = principal_sqrt(qb * qb - 4.0 * qa * qc);
        for (Cx root : {(-qb + sq) / (2.0 * qa), (-qb - sq) / (2.0 * qa)}) {
            if (static_cast<int>(out.size()) >= count) break;
            if (!is_finite(root)) { ++rejections; continue; }
            Mat3 m = c0.matrix() + root * c1.matrix();
            Conic cand = Conic::from_matrix(m);
            if (!cand.nondegenerate(tol)) { ++rejections; continue; }
            auto rep = is_transverse(cand, D, tol);
            if (!rep.transverse) { ++rejections; continue; }
            out.push_back(cand);
            rejections = 0;
        }
    }
    return out;
}

}  // namespace poncelet
