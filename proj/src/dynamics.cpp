#include "poncelet/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace poncelet {

namespace {

double quad_residual(const Vec3& x, const Mat3& M) {
    Cx q = x.transpose() * M * x;
    double n = x.norm();
    double ms = M.cwiseAbs().maxCoeff();
    return std::abs(q) / std::max(ms * n * n, 1e-300);
}

// The two tangent lines from p to D (lines l through p with l^T adj(D) l = 0).
std::array<Vec3, 2> tangents_from(const Vec3& p, const Mat3& D,
                                  const Tolerance& tol) {
    // A base point on D has coincident tangents; for points on C this is an
    // intersection point of the pair, where the branch structure collapses.
    if (quad_residual(p, D) < tol.cluster_eps)
        throw BranchCollapse("poncelet_step: point lies on both conics");
    Mat3 dual = adjugate3(D);

    // Basis of the pencil of lines through p.
    int k = 0;
    double m = -1.0;
    for (int i = 0; i < 3; ++i)
        if (std::abs(p[i]) > m) { m = std::abs(p[i]); k = i; }
    Vec3 e1 = Vec3::Zero(), e2 = Vec3::Zero();
    e1[(k + 1) % 3] = 1.0;
    e2[(k + 2) % 3] = 1.0;
    Vec3 la = cross3(p, e1), lb = cross3(p, e2);

    Cx qa = la.transpose() * dual * la;
    Cx qb = lb.transpose() * dual * lb;
    Cx qm = la.transpose() * dual * lb;
    Cx disc = qm * qm - qa * qb;
    double qscale = std::max({std::abs(qa), std::abs(qb), std::abs(qm)});
    if (std::abs(disc) <= tol.rel_eps * tol.rel_eps * qscale * qscale) {
        // Coincident tangents: p lies on D. Since p is on C, this is an
        // intersection point of the pair.
        if (quad_residual(p, D) < tol.cluster_eps)
            throw BranchCollapse("poncelet_step: point lies on both conics");
        throw NumericalTangency("poncelet_step: tangent quadratic ill-conditioned");
    }
    Cx sq = principal_sqrt(disc);
    // Cancellation-free branch for the first root, product form for the
    // second, keeping the two tangents distinct.
    Cx big = std::abs(-qm + sq) >= std::abs(-qm - sq) ? -qm + sq : -qm - sq;
    return {Vec3(big * la + qa * lb), Vec3(qb * la + big * lb)};
}

// Second intersection of the line l with C, the point p being a known root.
Vec3 second_intersection(const Vec3& l, const Vec3& p, const Mat3& C) {
    int k = 0;
    double m = -1.0;
    for (int i = 0; i < 3; ++i)
        if (std::abs(l[i]) > m) { m = std::abs(l[i]); k = i; }
    Vec3 ek = Vec3::Zero();
    // Choose the basis point most independent of p.
    Vec3 best = Vec3::Zero();
    double bestn = -1.0;
    for (int j = 0; j < 3; ++j) {
        if (j == k) continue;
        Vec3 e = Vec3::Zero();
        e[j] = 1.0;
        Vec3 q = cross3(l, e);
        Vec3 pn = p / p.norm();
        Vec3 resid = q - pn.dot(q) * pn;  // component of q off the span of p
        if (resid.norm() > bestn) { bestn = resid.norm(); best = q; }
    }
    (void)ek;
    Vec3 q = best;

    Cx qq = q.transpose() * C * q;
    Cx qp = q.transpose() * C * p;
    double scale = C.cwiseAbs().maxCoeff() * q.norm() * p.norm();
    if (std::abs(qq) <= 1e-14 * scale) return q;  // q itself is the second point
    Cx s = -2.0 * qp / qq;
    return p + s * q;
}

bool lex_less(const Point2& a, const Point2& b) {
    auto an = a.normalized().coords, bn = b.normalized().coords;
    for (int i = 0; i < 3; ++i) {
        if (an[i].real() != bn[i].real()) return an[i].real() < bn[i].real();
        if (an[i].imag() != bn[i].imag()) return an[i].imag() < bn[i].imag();
    }
    return false;
}

}  // namespace

StateResiduals state_residuals(const ConicPair& pair, const Point2& p,
                               const Point2& l) {
    StateResiduals r;
    Vec3 pv = p.normalized().coords, lv = l.normalized().coords;
    r.point_on_C = quad_residual(pv, pair.C.matrix());
    r.line_on_dual_D = quad_residual(lv, adjugate3(pair.D.matrix()));
    Cx incidence = (lv.array() * pv.array()).sum();  // bilinear l . p
    r.incidence = std::abs(incidence) / (lv.norm() * pv.norm());
    return r;
}

PonceletState initial_state(const ConicPair& pair, const Point2& p0,
                            const Tolerance& tol) {
    Vec3 p = p0.normalized().coords;
    auto t = tangents_from(p, pair.D.matrix(), tol);
    Point2 l1 = Point2(t[0]).normalized(), l2 = Point2(t[1]).normalized();
    PonceletState st;
    st.point = p0.normalized();
    st.line = lex_less(l1, l2) ? l1 : l2;
    return st;
}

PonceletState poncelet_step(const ConicPair& pair, const PonceletState& state,
                            const Tolerance& tol) {
    Vec3 p = state.point.normalized().coords;
    auto t = tangents_from(p, pair.D.matrix(), tol);
    Point2 c0 = Point2(t[0]).normalized(), c1 = Point2(t[1]).normalized();

    // Branch rule: leave along the tangent farthest from the incoming line.
    double d0 = proj_distance(c0, state.line), d1 = proj_distance(c1, state.line);
    int pick = d0 >= d1 ? 0 : 1;
    const Point2& out_line = pick == 0 ? c0 : c1;

    Vec3 p2 = second_intersection(out_line.normalized().coords, p, pair.C.matrix());

    PonceletState next;
    next.point = Point2(p2).normalized();
    next.line = out_line;
    next.branch_history = state.branch_history;
    next.branch_history.push_back(pick);
    return next;
}

double triangle_closure(const ConicPair& pair, const Point2& p0,
                        const Tolerance& tol) {
    PonceletState st = initial_state(pair, p0, tol);
    // The initial tangent is the first side; the remaining two steps close a
    // triangle when the Cayley condition holds.
    Vec3 p = st.point.normalized().coords;
    Vec3 p1 = second_intersection(st.line.normalized().coords, p, pair.C.matrix());
    PonceletState s1;
    s1.point = Point2(p1).normalized();
    s1.line = st.line;
    PonceletState s2 = poncelet_step(pair, s1, tol);
    PonceletState s3 = poncelet_step(pair, s2, tol);
    return proj_distance(s3.point, st.point);
}

bool correspondence_member(const ConicPair& pair, const Point2& p,
                           const Point2& l, const Tolerance& tol) {
    StateResiduals r = state_residuals(pair, p, l);
    return r.point_on_C < tol.cluster_eps && r.line_on_dual_D < tol.cluster_eps &&
           r.incidence < tol.cluster_eps;
}

Cx e_curve_residual(const ConicPair& pair, const Point1& r, const Point1& u) {
    auto rn = r.normalized().coords, un = u.normalized().coords;
    Cx r0 = rn[0], r1 = rn[1], u0 = un[0], u1 = un[1];
    Mat3 M = r0 * pair.C.matrix() + r1 * pair.D.matrix();
    return u0 * u0 * r1 * r1 * r1 - u1 * u1 * det3(M);
}

std::vector<Point2> sample_points_on_conic(const Conic& C, uint64_t seed,
                                           int count, const Tolerance& tol) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Point2> out;
    Mat3 cm = C.matrix();
    int guard = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++guard > 100 * count + 1000)
            throw SamplingExhausted("sample_points_on_conic: too many rejections");
        Vec3 l;
        for (int i = 0; i < 3; ++i) l[i] = Cx(g(rng), g(rng));
        auto pts = line_conic_intersections(l, cm);
        for (const auto& p : pts) {
            if (static_cast<int>(out.size()) >= count) break;
            if (quad_residual(p.normalized().coords, cm) < tol.cluster_eps)
                out.push_back(p);
        }
    }
    return out;
}

}  // namespace poncelet
