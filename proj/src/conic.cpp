#include "poncelet/conic.hpp"

#include <algorithm>
#include <cmath>

namespace poncelet {

Conic::Conic(const std::array<Cx, 6>& coords) : coords_(coords) {
    double m = 0.0;
    for (Cx v : coords_) {
        if (!is_finite(v)) throw NonFinite("Conic: non-finite coordinate");
        m = std::max(m, std::abs(v));
    }
    if (m == 0.0) throw Error("Conic: zero coordinate vector");
}

Conic Conic::from_matrix(const Mat3& m) {
    double scale = m.cwiseAbs().maxCoeff();
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(m(i, j) - m(j, i)) > 1e-14 * scale)
                throw Error("Conic::from_matrix: matrix is not symmetric");
    return Conic({m(0, 0), m(0, 1), m(0, 2), m(1, 1), m(1, 2), m(2, 2)});
}

Mat3 Conic::matrix() const {
    Mat3 m;
    m << coords_[0], coords_[1], coords_[2],
         coords_[1], coords_[3], coords_[4],
         coords_[2], coords_[4], coords_[5];
    return m;
}

bool Conic::nondegenerate(const Tolerance& tol) const {
    Mat3 m = proj_normalize(matrix());
    return std::abs(det3(m)) > tol.abs_eps;
}

namespace {

Cx det_cols(const Vec3& a, const Vec3& b, const Vec3& c) {
    Mat3 m;
    m.col(0) = a; m.col(1) = b; m.col(2) = c;
    return det3(m);
}

}  // namespace

Sigma sigma_coefficients(const Mat3& C, const Mat3& D) {
    Vec3 c1 = C.col(0), c2 = C.col(1), c3 = C.col(2);
    Vec3 d1 = D.col(0), d2 = D.col(1), d3 = D.col(2);
    Sigma s;
    s[0] = det3(C);
    s[1] = det_cols(c1, c2, d3) + det_cols(c1, d2, c3) + det_cols(d1, c2, c3);
    s[2] = det_cols(c1, d2, d3) + det_cols(d1, c2, d3) + det_cols(d1, d2, c3);
    s[3] = det3(D);
    return s;
}

Sigma sigma_coefficients(const Conic& C, const Conic& D) {
    return sigma_coefficients(C.matrix(), D.matrix());
}

Cx discriminant(const Sigma& s) {
    const Cx &s30 = s[0], &s21 = s[1], &s12 = s[2], &s03 = s[3];
    return s21 * s21 * s12 * s12 - 4.0 * s30 * s12 * s12 * s12
         - 4.0 * s21 * s21 * s21 * s03 - 27.0 * s30 * s30 * s03 * s03
         + 18.0 * s30 * s21 * s12 * s03;
}

TransversalityReport is_transverse(const Conic& C, const Conic& D, const Tolerance& tol) {
    if (!C.nondegenerate(tol) || !D.nondegenerate(tol))
        throw SingularConic("is_transverse: degenerate conic");

    Mat3 cn = proj_normalize(C.matrix()), dn = proj_normalize(D.matrix());
    Sigma s = sigma_coefficients(cn, dn);
    Cx disc = discriminant(s);

    double smax = std::max({std::abs(s[0]), std::abs(s[1]), std::abs(s[2]), std::abs(s[3])});
    double threshold = tol.rel_eps * smax * smax * smax * smax;

    TransversalityReport rep;
    rep.disc_normalized = disc;
    rep.threshold = threshold;
    rep.transverse = std::abs(disc) > threshold;
    rep.root_separation = 0.0;
    if (std::abs(s[0]) > tol.abs_eps * smax) {
        auto roots = solve_cubic(s[0], s[1], s[2], s[3], tol);
        double sep = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < roots.size(); ++i) {
            if (roots[i].multiplicity > 1) sep = 0.0;
            for (size_t j = 0; j < i; ++j)
                sep = std::min(sep, std::abs(roots[i].value - roots[j].value));
        }
        rep.root_separation = roots.size() > 1 ? sep : 0.0;
    }
    return rep;
}

bool transverse(const ConicPair& pair, const Tolerance& tol) {
    return is_transverse(pair.C, pair.D, tol).transverse;
}

std::pair<Vec3, Vec3> split_degenerate_conic(const Mat3& M, const Tolerance& tol) {
    // M = l m^T + m l^T up to scale. adj(M) = -(l x m)(l x m)^T, so the
    // singular point p = l x m sits in any nonzero column of the adjugate.
    // Adding the skew matrix of p cancels one rank-1 term: M + [p]_x ~ m l^T.
    Mat3 B = adjugate3(M);
    int bi = 0;
    double best = -1.0;
    for (int i = 0; i < 3; ++i)
        if (std::abs(B(i, i)) > best) { best = std::abs(B(i, i)); bi = i; }
    double mscale = M.cwiseAbs().maxCoeff();
    if (best <= tol.abs_eps * mscale * mscale * mscale * mscale)
        throw DegeneratePencil("split_degenerate_conic: rank below 2");

    Cx beta = principal_sqrt(-B(bi, bi));
    Vec3 p = B.col(bi) / beta;
    Mat3 R = M;
    R(0, 1) += p[2]; R(1, 0) -= p[2];
    R(0, 2) -= p[1]; R(2, 0) += p[1];
    R(1, 2) += p[0]; R(2, 1) -= p[0];

    // R has rank 1: any nonzero row is one line, any nonzero column the other.
    int br = 0, bc = 0;
    double mr = -1.0, mc = -1.0;
    for (int i = 0; i < 3; ++i) {
        double nr = R.row(i).norm(), ncn = R.col(i).norm();
        if (nr > mr) { mr = nr; br = i; }
        if (ncn > mc) { mc = ncn; bc = i; }
    }
    return {R.row(br).transpose(), R.col(bc)};
}

namespace {

// Both intersection points of a line l with a conic C, as raw vectors.
std::array<Vec3, 2> line_conic_points(const Vec3& l, const Mat3& C) {
    // Basis of the line: x with l.x = 0 (bilinear, not hermitian).
    int k = 0;
    double m = -1.0;
    for (int i = 0; i < 3; ++i)
        if (std::abs(l[i]) > m) { m = std::abs(l[i]); k = i; }
    Vec3 e1 = Vec3::Zero(), e2 = Vec3::Zero();
    e1[(k + 1) % 3] = 1.0;
    e2[(k + 2) % 3] = 1.0;
    Vec3 a = cross3(l, e1), b = cross3(l, e2);

    // (alpha a + beta b)^T C (alpha a + beta b) = 0
    Cx qa = a.transpose() * C * a;
    Cx qb = b.transpose() * C * b;
    Cx qm = a.transpose() * C * b;
    Cx disc = principal_sqrt(qm * qm - qa * qb);
    // Two homogeneous solutions (alpha, beta). Take the sqrt branch without
    // cancellation; the second root uses the product-of-roots form so the
    // pair stays distinct and stable.
    Cx big = std::abs(-qm + disc) >= std::abs(-qm - disc) ? -qm + disc : -qm - disc;
    Cx al1 = big, be1 = qa;
    Cx al2 = qb, be2 = big;
    return {Vec3(al1 * a + be1 * b), Vec3(al2 * a + be2 * b)};
}

}  // namespace

std::array<Point2, 2> line_conic_intersections(const Vec3& l, const Mat3& C) {
    auto pts = line_conic_points(l, C);
    return {Point2(pts[0]).normalized(), Point2(pts[1]).normalized()};
}

std::array<Point2, 4> intersection_points(const Conic& C, const Conic& D, const Tolerance& tol) {
    auto rep = is_transverse(C, D, tol);
    if (!rep.transverse)
        throw DegeneratePencil("intersection_points: pair is not transverse");

    Mat3 cm = proj_normalize(C.matrix()), dm = proj_normalize(D.matrix());
    Sigma s = sigma_coefficients(cm, dm);
    auto roots = solve_cubic(s[0], s[1], s[2], s[3], tol);

    // Pick the pencil root whose rank-2 member is best conditioned for line
    // splitting: strongest adjugate relative to the member's scale.
    int best = 0;
    double score = -1.0;
    for (size_t i = 0; i < roots.size(); ++i) {
        Mat3 M = roots[i].value * cm + dm;
        double ms = M.cwiseAbs().maxCoeff();
        double sc = adjugate3(M).cwiseAbs().maxCoeff() / (ms * ms);
        if (sc > score) { score = sc; best = static_cast<int>(i); }
    }
    Mat3 M = roots[best].value * cm + dm;
    auto [l1, l2] = split_degenerate_conic(M, tol);

    auto p12 = line_conic_points(l1, cm);
    auto p34 = line_conic_points(l2, cm);
    std::array<Point2, 4> out;
    out[0] = Point2(p12[0]).normalized();
    out[1] = Point2(p12[1]).normalized();
    out[2] = Point2(p34[0]).normalized();
    out[3] = Point2(p34[1]).normalized();
    return out;
}

Conic dual_conic(const Conic& C, const Tolerance& tol) {
    if (!C.nondegenerate(tol)) throw SingularConic("dual_conic: degenerate conic");
    return Conic::from_matrix(adjugate3(C.matrix()));
}

Conic random_conic(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::array<Cx, 6> c;
    for (auto& v : c) {
        double re = g(rng), im = g(rng);
        v = Cx(re, im);
    }
    return Conic(c);
}

ConicPair random_transverse_pair(std::mt19937_64& rng, const Tolerance& tol,
                                 double min_separation) {
    for (int tries = 0; tries < 1000; ++tries) {
        Conic C = random_conic(rng), D = random_conic(rng);
        if (!C.nondegenerate(tol) || !D.nondegenerate(tol)) continue;
        auto rep = is_transverse(C, D, tol);
        if (!rep.transverse || rep.root_separation < min_separation) continue;
        return ConicPair(C, D);
    }
    throw SamplingExhausted("random_transverse_pair: too many rejections");
}

}  // namespace poncelet
