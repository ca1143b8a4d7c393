#pragma once

// The j-invariant of the pencil curve y^2 = det(xC + D), its critical-locus
// classification, the Cayley moduli curve, and numerical certification of the
// degree-24 j-fiber inside the projected Cayley set.

#include "poncelet/moduli.hpp"

namespace poncelet {

enum class CriticalClass { regular, j0, j1728 };

struct JValue {
    Cx z;
    CriticalClass critical_class = CriticalClass::regular;
};

// j from the pencil coefficients. Requires a nonzero discriminant.
Cx j_from_sigma(const Sigma& sigma, const Tolerance& tol = default_tol());

// j from the diagonal entries: 256 Q^3 / prod (lambda_i - lambda_j)^2 with
// Q = l1^2 + l2^2 + l3^2 - l1 l2 - l1 l3 - l2 l3. S3-invariant and
// scale-invariant; requires pairwise distinct lambda.
Cx j_from_lambda(const std::array<Cx, 3>& lambda,
                 const Tolerance& tol = default_tol());

// Classifies lambda against the critical locus: a vanishing linear factor
// (one entry the average of the other two) means j = 1728, a vanishing
// quadratic factor Q means j = 0.
JValue classify_critical(const std::array<Cx, 3>& lambda,
                         const Tolerance& tol = default_tol());

// The quartic cutting out the projected Cayley set in lambda coordinates;
// equals gamma of (I_3, diag(lambda)).
Cx cayley_moduli_residual(const std::array<Cx, 3>& lambda);

// The j-fiber curve minus z times the discriminant, in lambda coordinates.
Cx fiber_curve_residual(const std::array<Cx, 3>& lambda, Cx z);

struct FiberRoot {
    std::array<Cx, 3> lambda;  // chart representative, lambda3 = 1
    int multiplicity;
    double res7;  // normalized residual of the Cayley moduli quartic
    double res8;  // normalized residual of the fiber curve
};

struct AtlasRecord {
    Cx z;
    std::vector<FiberRoot> roots;
    int orbit_count;             // S3-orbit grouping via canonical moduli points
    int total_with_multiplicity; // 24 for regular z
    double max_residual;
};

// Solves {Cayley quartic = 0, fiber curve = 0} in the chart lambda3 = 1 by a
// Sylvester resultant in lambda2 (degree-24 univariate in lambda1, recovered
// by trigonometric interpolation), followed by Newton polish of each root of
// the 2x2 system. Requires z away from the critical values 0 and 1728.
AtlasRecord fiber_solutions(Cx z, const Tolerance& tol = default_tol());

struct CriticalSets {
    std::vector<ModuliPoint> S0;     // 2 points
    std::vector<ModuliPoint> S1728;  // 12 points
};

// The critical intersection points of the Cayley moduli curve with the
// critical locus of j, verified against both defining equations.
CriticalSets critical_sets_S(const Tolerance& tol = default_tol());

}  // namespace poncelet
