// Acceptance gate: ten end-to-end criteria, one pass/fail line each.
// argv[1] is the path of the command line binary (used by the determinism
// criterion); the process exits with the number of failed criteria.

#include "poncelet/cayley.hpp"
#include "poncelet/conic.hpp"
#include "poncelet/dynamics.hpp"
#include "poncelet/elliptic.hpp"
#include "poncelet/gradients.hpp"
#include "poncelet/io.hpp"
#include "poncelet/moduli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace poncelet;

namespace {

int failures = 0;

void line(int idx, const char* name, bool pass, const std::string& detail) {
    std::printf("%s  %2d %s  (%s)\n", pass ? "PASS" : "FAIL", idx, name,
                detail.c_str());
    if (!pass) ++failures;
}

ConicPair chapple_pair() {
    double s3 = std::sqrt(3.0);
    Mat3 C, D;
    C << 1, 0, 0, 0, 1, 0, 0, 0, -9;
    D << 1, 0, -s3, 0, 1, 0, -s3, 0, 2;
    return ConicPair(Conic::from_matrix(C), Conic::from_matrix(D));
}

ConicPair fuss_pair() {
    double d = std::sqrt(5.0 - std::sqrt(17.0));
    Mat3 C, D;
    C << 1, 0, 0, 0, 1, 0, 0, 0, -4;
    D << 1, 0, -d, 0, 1, 0, -d, 0, d * d - 1;
    return ConicPair(Conic::from_matrix(C), Conic::from_matrix(D));
}

ConicPair diag_pair(Cx l1, Cx l2, Cx l3) {
    Mat3 C = Mat3::Identity(), D = Mat3::Zero();
    D(0, 0) = l1;
    D(1, 1) = l2;
    D(2, 2) = l3;
    return ConicPair(Conic::from_matrix(C), Conic::from_matrix(D));
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    auto dt = std::chrono::steady_clock::now() - t0;
    return std::chrono::duration<double, std::milli>(dt).count();
}

void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    ConicPair p = chapple_pair();
    double scale = std::pow(p.C.matrix().cwiseAbs().maxCoeff(), 2)
                 * std::pow(p.D.matrix().cwiseAbs().maxCoeff(), 4);
    double g = std::abs(cayley_gamma(p)) / scale;
    auto pts = sample_points_on_conic(p.C, 42, 20);
    double worst = 0;
    for (const auto& pt : pts) worst = std::max(worst, triangle_closure(p, pt));
    double elapsed = ms_since(t0);
    bool pass = g < 1e-9 && worst < 1e-8 && elapsed < 1000.0;
    line(1, "classical incircle oracle", pass,
         "gamma " + io::format_real(g) + ", worst closure " + io::format_real(worst)
         + ", " + io::format_real(elapsed) + " ms");
}

void criterion_2() {
    ConicPair p = diag_pair(1, 2, 3);
    Cx g = cayley_gamma(p);
    auto pts = sample_points_on_conic(p.C, 42, 20);
    double least = 1e300;
    for (const auto& pt : pts) least = std::min(least, triangle_closure(p, pt));
    bool pass = std::abs(g - Cx(23)) < 1e-12 && least > 1e-3;
    line(2, "negative control", pass,
         "gamma " + io::format_complex(g) + ", min closure " + io::format_real(least));
}

void criterion_3() {
    std::mt19937_64 rng(100);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        ConicPair p = random_transverse_pair(rng);
        Cx ja = j_from_sigma(p.sigma);
        Cx jb = j_from_lambda(normal_form(p).lambda);
        worst = std::max(worst, std::abs(ja - jb) / std::max(1.0, std::abs(ja)));
    }
    Cx j123 = j_from_lambda({Cx(1), Cx(2), Cx(3)});
    Cx om(-0.5, std::sqrt(3.0) / 2.0);
    Cx j0 = j_from_lambda({Cx(1), om, om * om});
    bool pass = worst < 1e-10 && std::abs(j123 - Cx(1728)) < 1e-10 * 1728
             && std::abs(j0) < 1e-12;
    line(3, "j-invariant cross validation", pass,
         "worst rel " + io::format_real(worst) + ", j(1,2,3) "
         + io::format_real(std::abs(j123 - Cx(1728))) + ", |j(1,w,w2)| "
         + io::format_real(std::abs(j0)));
}

void criterion_4() {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    double worst_res = 0;
    std::string why;
    for (int k = 0; k < 20; ++k) {
        double th = 2.0 * M_PI * k / 20.0;
        Cx z = Cx(600, 100) + 450.0 * Cx(std::cos(th), std::sin(th));
        AtlasRecord rec = fiber_solutions(z);
        worst_res = std::max(worst_res, rec.max_residual);
        bool simple = rec.roots.size() == 24;
        for (const auto& r : rec.roots) simple = simple && r.multiplicity == 1;
        if (rec.total_with_multiplicity != 24 || !simple) {
            pass = false;
            why = "z " + io::format_complex(z) + " gave "
                + std::to_string(rec.total_with_multiplicity);
        }
    }
    double elapsed = ms_since(t0);
    pass = pass && worst_res < 1e-8 && elapsed < 5000.0;
    line(4, "degree-24 fiber", pass,
         (why.empty() ? "all 24 simple" : why) + ", worst residual "
         + io::format_real(worst_res) + ", " + io::format_real(elapsed) + " ms");
}

void criterion_5() {
    IsotropyGroup std4 = isotropy_group(diag_pair(1, 2, 5));
    Cx om(-0.5, std::sqrt(3.0) / 2.0);
    IsotropyGroup sp12 = isotropy_group(diag_pair(1, om, om * om));
    std::mt19937_64 rng(101);
    IsotropyGroup rnd = isotropy_group(random_transverse_pair(rng));
    double res = std::max({std4.stabilization_residual, sp12.stabilization_residual,
                           rnd.stabilization_residual});
    bool pass = std4.order() == 4 && rnd.order() == 4 && sp12.order() == 12
             && res < 1e-8;
    line(5, "isotropy orders", pass,
         "4/" + std::to_string(std4.order()) + ", 4/" + std::to_string(rnd.order())
         + ", 12/" + std::to_string(sp12.order()) + ", residual "
         + io::format_real(res));
}

void criterion_6() {
    std::mt19937_64 rng(102);
    double worst_fd = 0, worst_zero = 0;
    for (int i = 0; i < 100; ++i) {
        ConicPair p = random_transverse_pair(rng);
        for (int r = 0; r < 3; ++r)
            worst_fd = std::max(worst_fd, gradient_fd_error(p, r));
        SubmersionTangents st = submersion_tangents(p);
        worst_zero = std::max({worst_zero, std::abs(st.dot_lambda_1[1]),
                               std::abs(st.dot_lambda_1[2]),
                               std::abs(st.dot_lambda_2[0]),
                               std::abs(st.dot_lambda_2[2])});
    }
    bool pass = worst_fd < 1e-6 && worst_zero < 1e-10;
    line(6, "gradient lemma", pass,
         "worst fd " + io::format_real(worst_fd) + ", worst off-pattern "
         + io::format_real(worst_zero));
}

void criterion_7() {
    std::mt19937_64 rng(103);
    std::normal_distribution<double> g;
    double worst_j = 0, worst_m = 0;
    bool verdicts = true;
    for (int trial = 0; trial < 3; ++trial) {
        ConicPair p = random_transverse_pair(rng);
        auto v0 = cayley_condition_n(p, 3);
        Cx j0 = j_from_sigma(p.sigma);
        ModuliPoint m0 = moduli_point(p);
        for (int k = 0; k < 100; ++k) {
            Mat3 A;
            do {
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) A(a, b) = Cx(g(rng), g(rng));
            } while (std::abs(det3(A)) < 0.1);
            ConicPair q = act(A, p);
            verdicts = verdicts && cayley_condition_n(q, 3).satisfied == v0.satisfied;
            worst_j = std::max(worst_j, std::abs(j_from_sigma(q.sigma) - j0)
                                            / std::max(1.0, std::abs(j0)));
            worst_m = std::max(worst_m, moduli_distance(moduli_point(q), m0));
        }
    }
    bool pass = verdicts && worst_j < 1e-8 && worst_m < 1e-8;
    line(7, "orbit invariance", pass,
         std::string(verdicts ? "verdicts stable" : "verdict flip") + ", j drift "
         + io::format_real(worst_j) + ", moduli drift " + io::format_real(worst_m));
}

void criterion_8() {
    std::mt19937_64 rng(104);
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        ConicPair p = random_transverse_pair(rng);
        auto v = cayley_condition_n(p, 3);
        auto series = sqrt_series(p.sigma, 2);
        double scale = std::max(1.0, std::abs(v.gamma));
        worst = std::max(worst, std::abs(v.hankel - series.coefficients[2]));
        Cx lhs = 8.0 * p.sigma[3] * series.branch * series.coefficients[2];
        worst = std::max(worst, std::abs(lhs - v.gamma) / scale);
    }
    auto fuss = cayley_condition_n(fuss_pair(), 4);
    bool pass = worst < 1e-10 && std::abs(fuss.hankel) < 1e-8 && fuss.satisfied;
    line(8, "general n-gon consistency", pass,
         "worst identity " + io::format_real(worst) + ", |A3| "
         + io::format_real(std::abs(fuss.hankel)));
}

void criterion_9() {
    Mat3 m = Mat3::Identity();
    m(2, 2) = -1;
    Conic D = Conic::from_matrix(m);
    auto cs = sample_cayley(D, 42, 100);
    double worst = 0;
    for (const auto& c : cs)
        worst = std::max(worst, psi_quadric_residual(trivialize_psi(D, c)));
    bool pass = static_cast<int>(cs.size()) == 100 && worst < 1e-9;
    line(9, "trivialization quadric", pass,
         std::to_string(cs.size()) + " samples, worst residual "
         + io::format_real(worst));
}

std::string capture(const std::string& cmd, int run_id) {
    std::string tmp = "acc_out_" + std::to_string(run_id) + ".txt";
    std::string full = cmd + " > " + tmp + " 2>&1";
    if (std::system(full.c_str()) == -1) return "";
    std::ifstream in(tmp, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::remove(tmp.c_str());
    return ss.str();
}

void criterion_10(const std::string& cli) {
    if (cli.empty()) {
        line(10, "determinism", false, "no CLI path given");
        return;
    }
    std::string pair_file = "acc_pair.json";
    {
        ConicPair p = chapple_pair();
        io::write_file(pair_file,
                       "{\"C\":" + io::conic_json(p.C) + ",\"D\":" + io::conic_json(p.D) + "}");
    }
    std::string circle_file = "acc_circle.json";
    {
        Mat3 mm = Mat3::Identity();
        mm(2, 2) = -1;
        io::write_file(circle_file, io::conic_json(Conic::from_matrix(mm)));
    }
    bool pass = true;
    std::string why = "all reruns byte identical";
    int id = 0;
    for (const std::string& args : {
             "check " + pair_file,
             "normalize " + pair_file,
             std::string("fiber --z 321,45"),
             "sample --d " + circle_file + " --count 8 --seed 5",
             "trace " + pair_file + " --start-seed 11 --count 3",
             std::string("gradcheck --count 5 --seed 6"),
             std::string("atlas --grid 400,50,30,4 --format csv"),
         }) {
        std::string a = capture(cli + " " + args, id++);
        std::string b = capture(cli + " " + args, id++);
        if (a.empty() || a != b) {
            pass = false;
            why = "mismatch on: " + args;
            break;
        }
    }
    std::remove(pair_file.c_str());
    std::remove(circle_file.c_str());
    line(10, "determinism", pass, why);
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";
    try {
        criterion_1();
        criterion_2();
        criterion_3();
        criterion_4();
        criterion_5();
        criterion_6();
        criterion_7();
        criterion_8();
        criterion_9();
        criterion_10(cli);
    } catch (const std::exception& e) {
        std::printf("FAIL  -- unexpected exception: %s\n", e.what());
        ++failures;
    }
    return failures;
}
