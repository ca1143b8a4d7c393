#pragma once

// Congruence action, diagonal normal form, isotropy groups and projection to
// the moduli space CP^2/S3, realized in the weighted projective space
// P(1,2,3) via elementary symmetric functions.

#include "poncelet/conic.hpp"

namespace poncelet {

// (C, D) -> (A^T C A, A^T D A) as projective classes. Requires det(A) != 0.
ConicPair act(const Mat3& A, const ConicPair& pair,
              const Tolerance& tol = default_tol());

struct NormalForm {
    Mat3 A;                      // congruence transform: A^T C A = I_3
    std::array<Cx, 3> lambda;    // diagonal of A^T D A (= -pencil roots)
    double conditioning;         // condition number of A
    bool ill_conditioned;        // pencil root separation below 1e-4
};

NormalForm normal_form(const ConicPair& pair, const Tolerance& tol = default_tol());

struct ModuliPoint {
    std::array<Cx, 3> e;          // elementary symmetric functions of lambda
    std::array<Cx, 3> canonical;  // canonical P(1,2,3) representative
    std::array<Cx, 3> lambda;     // the lambda multiset behind e
    bool special;                 // canonical == [0:0:1]
};

// Canonical P(1,2,3) representative of (e1, e2, e3):
//   e1 != 0: scale by s = 1/e1, giving (1, e2 s^2, e3 s^3);
//   e1 = 0, e2 != 0: principal s with s^2 e2 = 1, giving (0, 1, e3 s^3);
//   e1 = e2 = 0: [0:0:1], marked special.
ModuliPoint moduli_point_from_lambda(const std::array<Cx, 3>& lambda,
                                     const Tolerance& tol = default_tol());

ModuliPoint moduli_point(const ConicPair& pair, const Tolerance& tol = default_tol());

double moduli_distance(const ModuliPoint& a, const ModuliPoint& b);

struct IsotropyGroup {
    std::vector<Mat3> elements;  // projective classes
    int order() const { return static_cast<int>(elements.size()); }
    double stabilization_residual;  // max projective distance of g^T X g to X
};

// Stabilizer of the pair inside PGL3: the Klein four-group for standard
// orbits, 12 elements for the special orbit [1:omega:omega^2].
IsotropyGroup isotropy_group(const ConicPair& pair,
                             const Tolerance& tol = default_tol());

bool is_special_orbit(const ConicPair& pair, const Tolerance& tol = default_tol());

}  // namespace poncelet
