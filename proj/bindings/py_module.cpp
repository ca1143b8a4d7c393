// Python bindings for the main operations. Conics travel as complex symmetric
// 3x3 matrices (numpy arrays); structured results come back as dicts.

#include "poncelet/cayley.hpp"
#include "poncelet/conic.hpp"
#include "poncelet/dynamics.hpp"
#include "poncelet/elliptic.hpp"
#include "poncelet/gradients.hpp"
#include "poncelet/moduli.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace poncelet;

namespace {

Conic conic_of(const Mat3& m) {
    return Conic::from_matrix(Mat3(0.5 * (m + m.transpose())));
}

ConicPair pair_of(const Mat3& c, const Mat3& d) {
    return ConicPair(conic_of(c), conic_of(d));
}

py::dict verdict_dict(const CayleyVerdict& v) {
    py::dict d;
    d["n"] = v.n;
    d["gamma"] = v.gamma;
    d["hankel"] = v.hankel;
    d["satisfied"] = v.satisfied;
    d["threshold"] = v.threshold;
    return d;
}

py::dict moduli_dict(const ModuliPoint& mp) {
    py::dict d;
    d["e"] = mp.e;
    d["canonical"] = mp.canonical;
    d["lambda"] = mp.lambda;
    d["special"] = mp.special;
    return d;
}

}  // namespace

PYBIND11_MODULE(_poncelet, m) {
    m.doc() = "Cayley condition toolkit for Poncelet triangles";

    py::register_exception<Error>(m, "PonceletError");

    m.def("sigma", [](const Mat3& c, const Mat3& d) {
        Sigma s = sigma_coefficients(c, d);
        return std::array<Cx, 4>{s[0], s[1], s[2], s[3]};
    }, py::arg("C"), py::arg("D"),
    "Pencil coefficients (sigma30, sigma21, sigma12, sigma03) of det(tC + D)");

    m.def("discriminant", [](const Mat3& c, const Mat3& d) {
        return discriminant(sigma_coefficients(c, d));
    }, py::arg("C"), py::arg("D"));

    m.def("is_transverse", [](const Mat3& c, const Mat3& d) {
        return is_transverse(conic_of(c), conic_of(d)).transverse;
    }, py::arg("C"), py::arg("D"));

    m.def("gamma", [](const Mat3& c, const Mat3& d) {
        return cayley_gamma(pair_of(c, d));
    }, py::arg("C"), py::arg("D"),
    "Triangle Cayley equation -sigma12^2 + 4 sigma03 sigma21");

    m.def("cayley_condition", [](const Mat3& c, const Mat3& d, int n) {
        return verdict_dict(cayley_condition_n(pair_of(c, d), n));
    }, py::arg("C"), py::arg("D"), py::arg("n") = 3);

    m.def("sqrt_series", [](const Mat3& c, const Mat3& d, int K) {
        return sqrt_series(sigma_coefficients(c, d), K).coefficients;
    }, py::arg("C"), py::arg("D"), py::arg("K"),
    "Taylor coefficients A_0..A_K of sqrt(det(tC + D))");

    m.def("normal_form", [](const Mat3& c, const Mat3& d) {
        NormalForm nf = normal_form(pair_of(c, d));
        py::dict out;
        out["A"] = nf.A;
        out["lambda"] = nf.lambda;
        out["conditioning"] = nf.conditioning;
        out["ill_conditioned"] = nf.ill_conditioned;
        return out;
    }, py::arg("C"), py::arg("D"));

    m.def("moduli_point", [](const Mat3& c, const Mat3& d) {
        return moduli_dict(moduli_point(pair_of(c, d)));
    }, py::arg("C"), py::arg("D"));

    m.def("isotropy_order", [](const Mat3& c, const Mat3& d) {
        return isotropy_group(pair_of(c, d)).order();
    }, py::arg("C"), py::arg("D"));

    m.def("j_from_pair", [](const Mat3& c, const Mat3& d) {
        return j_from_sigma(sigma_coefficients(c, d));
    }, py::arg("C"), py::arg("D"));

    m.def("j_from_lambda", [](const std::array<Cx, 3>& lam) {
        return j_from_lambda(lam);
    }, py::arg("lam"));

    m.def("fiber", [](Cx z) {
        AtlasRecord rec = fiber_solutions(z);
        py::list roots;
        for (const auto& r : rec.roots) {
            py::dict rd;
            rd["lambda"] = r.lambda;
            rd["mult"] = r.multiplicity;
            rd["res7"] = r.res7;
            rd["res8"] = r.res8;
            roots.append(rd);
        }
        py::dict out;
        out["z"] = rec.z;
        out["roots"] = roots;
        out["orbits"] = rec.orbit_count;
        out["total"] = rec.total_with_multiplicity;
        out["max_residual"] = rec.max_residual;
        return out;
    }, py::arg("z"), "Solutions of the degree-24 j-fiber over the Cayley curve");

    m.def("gradients", [](const Mat3& c, const Mat3& d, int root_index) {
        GradientPair gp = eigenvalue_gradients(pair_of(c, d), root_index);
        py::dict out;
        out["grad_C"] = gp.grad_C;
        out["grad_D"] = gp.grad_D;
        out["root"] = gp.root;
        return out;
    }, py::arg("C"), py::arg("D"), py::arg("root_index"));

    m.def("gradient_fd_error", [](const Mat3& c, const Mat3& d, int root_index) {
        return gradient_fd_error(pair_of(c, d), root_index);
    }, py::arg("C"), py::arg("D"), py::arg("root_index"));

    m.def("sample_cayley", [](const Mat3& d, uint64_t seed, int count) {
        auto cs = sample_cayley(conic_of(d), seed, count);
        std::vector<Mat3> out;
        out.reserve(cs.size());
        for (const auto& c : cs) out.push_back(c.matrix());
        return out;
    }, py::arg("D"), py::arg("seed"), py::arg("count"));

    m.def("psi_quadric_residual", [](const Mat3& d, const Mat3& c) {
        return psi_quadric_residual(trivialize_psi(conic_of(d), conic_of(c)));
    }, py::arg("D"), py::arg("C"));

    m.def("closure_errors", [](const Mat3& c, const Mat3& d, uint64_t seed,
                               int count) {
        ConicPair pair = pair_of(c, d);
        auto pts = sample_points_on_conic(pair.C, seed, count);
        std::vector<double> out;
        out.reserve(pts.size());
        for (const auto& p : pts) out.push_back(triangle_closure(pair, p));
        return out;
    }, py::arg("C"), py::arg("D"), py::arg("seed") = 42, py::arg("count") = 20,
    "Triangle closure error at seeded starting points on C");
}
