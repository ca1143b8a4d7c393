#pragma once

// Core numeric layer: complex scalars, 3x3 matrices, projective points,
// the tolerance policy, cubic root extraction and the pencil eigenproblem.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace poncelet {

using Cx = std::complex<double>;
using Mat3 = Eigen::Matrix3cd;
using Vec3 = Eigen::Vector3cd;

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegreeError : Error { using Error::Error; };
struct NonFinite : Error { using Error::Error; };
struct DegeneratePencil : Error { using Error::Error; };
struct SingularConic : Error { using Error::Error; };
struct NotTransverse : Error { using Error::Error; };
struct BranchPole : Error { using Error::Error; };
struct BadOrder : Error { using Error::Error; };
struct SamplingExhausted : Error { using Error::Error; };
struct SingularTransform : Error { using Error::Error; };
struct RepeatedLambda : Error { using Error::Error; };
struct CriticalZ : Error { using Error::Error; };
struct ResultantIllConditioned : Error { using Error::Error; };
struct BranchCollapse : Error { using Error::Error; };
struct NumericalTangency : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Tolerance policy shared by every module.

struct Tolerance {
    double abs_eps = 1e-10;
    double rel_eps = 1e-8;
    double cluster_eps = 1e-6;  // root deduplication

    void validate() const {
        if (!(abs_eps > 0) || !(rel_eps > 0) || !(cluster_eps > 0))
            throw Error("Tolerance: all thresholds must be positive");
        if (cluster_eps < abs_eps)
            throw Error("Tolerance: cluster_eps must be >= abs_eps");
    }
};

inline const Tolerance& default_tol() {
    static const Tolerance t{};
    return t;
}

// Principal square root, argument of the result in (-pi/2, pi/2].
Cx principal_sqrt(Cx z);

bool is_finite(Cx z);

// ---------------------------------------------------------------------------
// Projective points

// A point of CP^N given by N+1 homogeneous coordinates. Normalization divides
// by the coordinate of maximum modulus (ties broken by lowest index), so the
// normalized form has one coordinate exactly 1.
template <int N>
struct ProjPoint {
    Eigen::Matrix<Cx, N + 1, 1> coords;

    ProjPoint() { coords.setZero(); }
    explicit ProjPoint(const Eigen::Matrix<Cx, N + 1, 1>& c) : coords(c) {}

    int pivot() const {
        int best = 0;
        double m = std::abs(coords[0]);
        for (int i = 1; i <= N; ++i) {
            if (std::abs(coords[i]) > m) { m = std::abs(coords[i]); best = i; }
        }
        return best;
    }

    ProjPoint normalized() const {
        int p = pivot();
        if (coords[p] == Cx(0)) throw Error("ProjPoint: zero vector");
        ProjPoint r;
        r.coords = coords / coords[p];
        return r;
    }
};

using Point2 = ProjPoint<2>;  // points (or lines) of CP^2
using Point1 = ProjPoint<1>;

template <int N>
double proj_distance(const ProjPoint<N>& a, const ProjPoint<N>& b) {
    auto an = a.normalized().coords, bn = b.normalized().coords;
    return (an - bn).template lpNorm<Eigen::Infinity>();
}

// Max-modulus normalization of a matrix viewed as a projective class.
Mat3 proj_normalize(const Mat3& m);
double proj_distance(const Mat3& a, const Mat3& b);

// ---------------------------------------------------------------------------
// Cubic roots

struct CubicRoot {
    Cx value;
    int multiplicity;  // size of the cluster the root belongs to
};

// Roots of a t^3 + b t^2 + c t + d, a != 0. Companion-matrix eigenvalues with
// one Newton polish step per root; clustering by single linkage at
// tol.cluster_eps on roots normalized by the coefficient scale.
std::vector<CubicRoot> solve_cubic(Cx a, Cx b, Cx c, Cx d,
                                   const Tolerance& tol = default_tol());

// ---------------------------------------------------------------------------
// Pencil eigenproblem

struct PencilSpectrum {
    std::array<Cx, 3> roots;      // simple roots r_i of det(tC + D)
    std::array<Vec3, 3> vectors;  // (r_i C + D) v_i = 0, v_i^T C v_i = 1
    double residual;              // max_i ||(r_i C + D) v_i||
    double separation;            // min pairwise root distance
};

// Requires det(C) != 0, det(D) != 0 and simple pencil roots. Vectors are
// normalized so v^T C v = 1 via the principal square-root branch. Roots are
// ordered deterministically (real part, then imaginary part).
PencilSpectrum eigen_pencil(const Mat3& C, const Mat3& D,
                            const Tolerance& tol = default_tol());

Mat3 adjugate3(const Mat3& m);

// Bilinear cross product (Eigen's cross() conjugates for complex scalars).
Vec3 cross3(const Vec3& a, const Vec3& b);

Cx det3(const Mat3& m);

}  // namespace poncelet
