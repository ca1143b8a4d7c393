#pragma once

// Gradients of a simple pencil root with respect to the entries of C and D,
// directional derivatives along pencil deformations, and the two submersion
// tangent directions of the moduli projection.

#include "poncelet/conic.hpp"

namespace poncelet {

struct GradientPair {
    Mat3 grad_C;  // entry-wise d(root)/dC_ij = -root * v_i v_j / (v^T C v)
    Mat3 grad_D;  // entry-wise d(root)/dD_ij = -v_i v_j / (v^T C v)
    Cx root;      // the pencil root of det(tC + D)
    Vec3 vector;  // kernel vector of (root C + D)
    Cx vCv;       // v^T C v (nonzero by transversality)
};

// Gradient of the pencil root root_index (0..2, in the deterministic root
// order of eigen_pencil). Entries are per-matrix-entry derivatives; a
// symmetric perturbation of an off-diagonal entry pair picks up a factor 2.
GradientPair eigenvalue_gradients(const ConicPair& pair, int root_index,
                                  const Tolerance& tol = default_tol());

// -(v^T dD v + root * v^T dC v) / (v^T C v); equals the trace pairing of the
// gradients with (dC, dD).
Cx directional_derivative(const ConicPair& pair, int root_index,
                          const Mat3& dC, const Mat3& dD,
                          const Tolerance& tol = default_tol());

struct SubmersionTangents {
    std::array<Cx, 3> dot_lambda_1;  // root velocities induced by (0, C v1 v1^T C)
    std::array<Cx, 3> dot_lambda_2;  // root velocities induced by (0, C v2 v2^T C)
    Cx chart_determinant;            // 2x2 determinant in the (l1/l3, l2/l3) chart
};

SubmersionTangents submersion_tangents(const ConicPair& pair,
                                       const Tolerance& tol = default_tol());

// Max relative entry-wise error of eigenvalue_gradients against central finite
// differences of the matching pencil root, over all 2x6 real/imag entry
// perturbations of C and D.
double gradient_fd_error(const ConicPair& pair, int root_index, double h = 1e-6,
                         const Tolerance& tol = default_tol());

}  // namespace poncelet
