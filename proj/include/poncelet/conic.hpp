#pragma once

// Conics of CP^2 as projective classes of complex symmetric 3x3 matrices,
// pencil coefficients, discriminant, transversality, intersections and duals.

#include "poncelet/numeric.hpp"

#include <array>
#include <random>

namespace poncelet {

// Six homogeneous coordinates [x0:...:x5] mapped to
//   | x0 x1 x2 |
//   | x1 x3 x4 |
//   | x2 x4 x5 |
class Conic {
  public:
    Conic() { coords_.fill(Cx(0)); coords_[0] = Cx(1); coords_[3] = Cx(1); coords_[5] = Cx(1); }
    explicit Conic(const std::array<Cx, 6>& coords);
    // Requires an exactly symmetric matrix.
    static Conic from_matrix(const Mat3& m);

    const std::array<Cx, 6>& coords() const { return coords_; }
    Mat3 matrix() const;
    Cx det() const { return det3(matrix()); }
    bool nondegenerate(const Tolerance& tol = default_tol()) const;

  private:
    std::array<Cx, 6> coords_;
};

// sigma = (sigma30, sigma21, sigma12, sigma03), the coefficients of
// det(tC + D) = sigma30 t^3 + sigma21 t^2 + sigma12 t + sigma03.
using Sigma = std::array<Cx, 4>;

Sigma sigma_coefficients(const Conic& C, const Conic& D);
Sigma sigma_coefficients(const Mat3& C, const Mat3& D);

// Discriminant of the pencil cubic as a polynomial in sigma. Equals
// sigma30^4 * prod_{i<j} (r_i - r_j)^2 over the roots of the cubic.
Cx discriminant(const Sigma& s);

// Ordered pair with cached pencil data.
struct ConicPair {
    Conic C, D;
    Sigma sigma;
    Cx disc;

    ConicPair(const Conic& c, const Conic& d)
        : C(c), D(d), sigma(sigma_coefficients(c, d)), disc(discriminant(sigma)) {}
};

struct TransversalityReport {
    bool transverse;
    Cx disc_normalized;     // discriminant of the max-modulus-normalized pair
    double threshold;
    double root_separation; // min pairwise distance of pencil roots
};

TransversalityReport is_transverse(const Conic& C, const Conic& D,
                                   const Tolerance& tol = default_tol());

bool transverse(const ConicPair& pair, const Tolerance& tol = default_tol());

// The four intersection points of a transverse pair.
std::array<Point2, 4> intersection_points(const Conic& C, const Conic& D,
                                          const Tolerance& tol = default_tol());

// Adjugate as a projective class; tangent lines l of C satisfy
// l^T dual(C) l = 0.
Conic dual_conic(const Conic& C, const Tolerance& tol = default_tol());

// The two intersection points of the line l with a non-degenerate conic.
std::array<Point2, 2> line_conic_intersections(const Vec3& l, const Mat3& C);

// Splits a rank-2 symmetric matrix into its two lines.
std::pair<Vec3, Vec3> split_degenerate_conic(const Mat3& M,
                                             const Tolerance& tol = default_tol());

// Conic with independent complex-Gaussian coordinates (test/sampling helper).
Conic random_conic(std::mt19937_64& rng);

// Draws conic pairs until one is transverse with pencil-root separation of at
// least min_separation (relative to the root scale).
ConicPair random_transverse_pair(std::mt19937_64& rng,
                                 const Tolerance& tol = default_tol(),
                                 double min_separation = 1e-2);

}  // namespace poncelet
