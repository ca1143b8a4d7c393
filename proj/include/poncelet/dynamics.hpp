#pragma once

// The Poncelet step (inscribe in C, circumscribe about D), triangle closure
// and membership tests for the Poncelet correspondence and the curve E_{C,D}.

#include "poncelet/conic.hpp"

namespace poncelet {

struct PonceletState {
    Point2 point;  // on C
    Point2 line;   // tangent to D, through the point
    std::vector<int> branch_history;  // 0/1 tangent choice at each step
};

struct StateResiduals {
    double point_on_C;
    double line_on_dual_D;
    double incidence;
};

StateResiduals state_residuals(const ConicPair& pair, const Point2& p,
                               const Point2& l);

// One step of the Poncelet map: of the two tangents from the current point to
// D, take the one different from the incoming line, then move to the second
// intersection of that line with C (deflated quadratic, the current point
// being the known root).
PonceletState poncelet_step(const ConicPair& pair, const PonceletState& state,
                            const Tolerance& tol = default_tol());

// Builds the initial state at p0 on C: of the two tangents from p0 to D,
// takes the lexicographically smaller normalized line.
PonceletState initial_state(const ConicPair& pair, const Point2& p0,
                            const Tolerance& tol = default_tol());

// Runs three steps from p0 and returns the projective distance between the
// final point and p0.
double triangle_closure(const ConicPair& pair, const Point2& p0,
                        const Tolerance& tol = default_tol());

// Membership in the Poncelet correspondence {(p, l) in C x D* : p in l}.
bool correspondence_member(const ConicPair& pair, const Point2& p,
                           const Point2& l, const Tolerance& tol = default_tol());

// Residual of u0^2 r1^3 - u1^2 det(r0 C + r1 D) on normalized representatives.
Cx e_curve_residual(const ConicPair& pair, const Point1& r, const Point1& u);

// Deterministic starting points on C: intersections with seeded random lines.
std::vector<Point2> sample_points_on_conic(const Conic& C, uint64_t seed,
                                           int count,
                                           const Tolerance& tol = default_tol());

}  // namespace poncelet
