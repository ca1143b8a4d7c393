#pragma once

// Cayley machinery: Taylor coefficients of sqrt(det(tC + D)), the general
// n-gon Hankel condition, the triangle equation gamma, the fiber
// trivialization psi_D and Cayley-set sampling.

#include "poncelet/conic.hpp"

namespace poncelet {

struct CayleySeries {
    std::vector<Cx> coefficients;  // A_0 ... A_K
    Cx branch;                     // the sqrt(sigma03) choice used for A_0
};

// Taylor coefficients of sqrt(sigma03 + sigma12 t + sigma21 t^2 + sigma30 t^3)
// to order K. A_0 is the principal square root of sigma03; the rest follow
// from the squaring recurrence.
CayleySeries sqrt_series(const Sigma& sigma, int K,
                         const Tolerance& tol = default_tol());

// The triangle Cayley equation: gamma = -sigma12^2 + 4 sigma03 sigma21.
// Polynomial in sigma, hence branch independent. Requires a transverse pair.
Cx cayley_gamma(const ConicPair& pair, const Tolerance& tol = default_tol());
Cx cayley_gamma_sigma(const Sigma& sigma);

// Scale-aware satisfaction threshold for gamma on a pair: reflects the
// bi-degree (2,4) of the equation in (C, D).
double gamma_threshold(const ConicPair& pair, const Tolerance& tol = default_tol());

struct CayleyVerdict {
    Cx gamma;
    int n = 3;
    Cx hankel;
    bool satisfied = false;
    double threshold = 0.0;
};

// The general Cayley criterion for an n-gon: the Hankel determinant of the
// series coefficients (A_2..A_{2m} for odd n = 2m+1, A_3..A_{2m-1} for even
// n = 2m). For n = 3 the determinant is A_2 and 8 sigma03^{3/2} A_2 = gamma.
CayleyVerdict cayley_condition_n(const ConicPair& pair, int n,
                                 const Tolerance& tol = default_tol());

// The trivialization over D: the matrix with columns D^{-1} c_1, D^{-1} c_2,
// D^{-1} c_3, i.e. D^{-1} C.
Mat3 trivialize_psi(const Conic& D, const Conic& C,
                    const Tolerance& tol = default_tol());

// Inverse of the trivialization: columns D e_1, D e_2, D e_3.
Mat3 trivialize_psi_inverse(const Conic& D, const Mat3& E,
                            const Tolerance& tol = default_tol());

// Residual of the fiber quadric over I_3 at E (zero when gamma(C, D) = 0 and
// E = psi_D(C)), normalized by the squared scale of E.
double psi_quadric_residual(const Mat3& E);

// Draws conics C with gamma(C, D) = 0 by intersecting the fiber quadric with
// random lines in CP^5. Deterministic for a fixed (seed, count); rejects
// non-transverse or degenerate hits.
std::vector<Conic> sample_cayley(const Conic& D, uint64_t seed, int count,
                                 const Tolerance& tol = default_tol());

}  // namespace poncelet
