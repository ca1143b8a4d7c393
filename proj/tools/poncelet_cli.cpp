// Command line front end. Subcommands mirror the library modules; all output
// goes through the deterministic JSON/CSV writers in io.cpp.

#include "poncelet/cayley.hpp"
#include "poncelet/conic.hpp"
#include "poncelet/dynamics.hpp"
#include "poncelet/elliptic.hpp"
#include "poncelet/gradients.hpp"
#include "poncelet/io.hpp"
#include "poncelet/moduli.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <sstream>

namespace {

using namespace poncelet;

constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

Tolerance resolve_tolerance(double tol_flag) {
    Tolerance tol;
    if (const char* env = std::getenv("PONCELET_TOL")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(v > 0))
            throw Error("PONCELET_TOL must be a positive number");
        tol.rel_eps = v;
    }
    if (tol_flag > 0) tol.rel_eps = tol_flag;  // flag beats environment
    tol.validate();
    return tol;
}

std::vector<double> parse_number_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            throw Error(std::string(what) + ": expected comma-separated numbers, got '" + s + "'");
        out.push_back(v);
    }
    return out;
}

Cx parse_z(const std::string& s) {
    auto v = parse_number_list(s, "--z");
    if (v.size() == 1) return Cx(v[0], 0.0);
    if (v.size() == 2) return Cx(v[0], v[1]);
    throw Error("--z: expected RE or RE,IM");
}

void emit(const std::string& out_path, const std::string& text) {
    std::string body = text;
    if (body.empty() || body.back() != '\n') body += '\n';
    if (out_path.empty())
        std::cout << body;
    else
        io::write_file(out_path, body);
}

// Circle with Chapple's relation d^2 = R^2 - 2Rr (R=3, r=1): every inscribed
// triangle of the outer circle circumscribes the inner one.
ConicPair chapple_pair() {
    double s3 = std::sqrt(3.0);
    Mat3 C, D;
    C << 1, 0, 0, 0, 1, 0, 0, 0, -9;
    D << 1, 0, -s3, 0, 1, 0, -s3, 0, 2;
    return ConicPair(Conic::from_matrix(C), Conic::from_matrix(D));
}

ConicPair diag_pair(Cx l1, Cx l2, Cx l3) {
    Mat3 C = Mat3::Identity(), D = Mat3::Zero();
    D(0, 0) = l1;
    D(1, 1) = l2;
    D(2, 2) = l3;
    return ConicPair(Conic::from_matrix(C), Conic::from_matrix(D));
}

int run_check(const std::string& path, bool strict, int n, const Tolerance& tol,
              const std::string& out_path) {
    ConicPair pair = io::load_pair_file(path);
    auto trep = is_transverse(pair.C, pair.D, tol);
    if (!trep.transverse)
        throw NotTransverse("check: pair is not transverse");
    CayleyVerdict v = cayley_condition_n(pair, n, tol);
    Cx j = j_from_sigma(pair.sigma, tol);
    emit(out_path, io::check_json(v, trep, j));
    if (strict && !v.satisfied) return kExitVerdict;
    return kExitOk;
}

int run_normalize(const std::string& path, const Tolerance& tol,
                  const std::string& out_path) {
    ConicPair pair = io::load_pair_file(path);
    NormalForm nf = normal_form(pair, tol);
    ModuliPoint mp = moduli_point_from_lambda(nf.lambda, tol);
    emit(out_path, io::normal_form_json(nf, mp));
    return kExitOk;
}

int run_jinv(const std::string& path, const std::string& lambda_spec,
             const Tolerance& tol, const std::string& out_path) {
    std::array<Cx, 3> lambda;
    if (!lambda_spec.empty()) {
        auto v = parse_number_list(lambda_spec, "--lambda");
        if (v.size() == 3) {
            for (int i = 0; i < 3; ++i) lambda[i] = Cx(v[i], 0.0);
        } else if (v.size() == 6) {
            for (int i = 0; i < 3; ++i) lambda[i] = Cx(v[2 * i], v[2 * i + 1]);
        } else {
            throw Error("--lambda: expected l1,l2,l3 or re1,im1,re2,im2,re3,im3");
        }
    } else {
        if (path.empty())
            throw Error("jinv: give a pair file or --lambda");
        ConicPair pair = io::load_pair_file(path);
        lambda = normal_form(pair, tol).lambda;
    }
    JValue jv = classify_critical(lambda, tol);
    emit(out_path, io::jvalue_json(jv));
    return kExitOk;
}

int run_fiber(const std::string& z_spec, const std::string& format,
              const Tolerance& tol, const std::string& out_path) {
    Cx z = parse_z(z_spec);
    AtlasRecord rec = fiber_solutions(z, tol);
    if (format == "csv")
        emit(out_path, io::atlas_record_csv(rec, true));
    else
        emit(out_path, io::atlas_record_json(rec));
    return kExitOk;
}

int run_atlas(const std::string& grid_spec, const std::string& format,
              const Tolerance& tol, const std::string& out_path) {
    auto v = parse_number_list(grid_spec, "--grid");
    if (v.size() != 4 || v[3] < 1 || v[3] != std::floor(v[3]))
        throw Error("--grid: expected CENTER_RE,CENTER_IM,RADIUS,COUNT");
    Cx center(v[0], v[1]);
    double radius = v[2];
    int count = static_cast<int>(v[3]);

    std::string out;
    bool first = true;
    if (format != "csv") out = "{\"records\":[";
    for (int k = 0; k < count; ++k) {
        double th = 2.0 * M_PI * k / count;
        Cx z = center + radius * Cx(std::cos(th), std::sin(th));
        AtlasRecord rec = fiber_solutions(z, tol);
        if (format == "csv") {
            out += io::atlas_record_csv(rec, first);
        } else {
            if (!first) out += ",";
            out += io::atlas_record_json(rec);
        }
        first = false;
    }
    if (format == "csv") {
        if (!out.empty() && out.back() == '\n') out.pop_back();
    } else {
        out += "]}";
    }
    emit(out_path, out);
    return kExitOk;
}

int run_sample(const std::string& d_path, int count, uint64_t seed,
               const Tolerance& tol, const std::string& out_path) {
    Conic D = io::load_conic_file(d_path);
    std::vector<Conic> cs = sample_cayley(D, seed, count, tol);
    emit(out_path, io::conic_list_json(cs));
    return kExitOk;
}

int run_trace(const std::string& path, uint64_t start_seed, int starts,
              int steps, const Tolerance& tol, const std::string& out_path) {
    ConicPair pair = io::load_pair_file(path);
    if (!transverse(pair, tol))
        throw NotTransverse("trace: pair is not transverse");
    auto points = sample_points_on_conic(pair.C, start_seed, starts, tol);

    std::string out = "{\"traces\":[";
    for (int i = 0; i < starts; ++i) {
        if (i) out += ",";
        std::vector<PonceletState> states;
        states.push_back(initial_state(pair, points[i], tol));
        for (int k = 0; k < steps; ++k)
            states.push_back(poncelet_step(pair, states.back(), tol));
        double err = triangle_closure(pair, points[i], tol);
        out += io::trace_json(pair, states, err, err < tol.cluster_eps);
    }
    out += "]}";
    emit(out_path, out);
    return kExitOk;
}

int run_gradcheck(const std::string& path, int count, uint64_t seed,
                  const Tolerance& tol, const std::string& out_path) {
    std::vector<std::array<double, 3>> errors;
    auto check_pair = [&](const ConicPair& pair) {
        std::array<double, 3> e;
        for (int r = 0; r < 3; ++r) e[r] = gradient_fd_error(pair, r, 1e-6, tol);
        errors.push_back(e);
    };
    if (!path.empty()) {
        check_pair(io::load_pair_file(path));
    } else {
        std::mt19937_64 rng(seed);
        for (int i = 0; i < count; ++i)
            check_pair(random_transverse_pair(rng, tol));
    }
    double worst = 0.0;
    for (const auto& e : errors)
        for (double x : e) worst = std::max(worst, x);
    bool pass = worst < 1e-6;
    emit(out_path, io::gradcheck_json(errors, worst, pass));
    return pass ? kExitOk : kExitNumerical;
}

int run_selftest(const Tolerance& tol) {
    int failures = 0;
    auto report = [&](const char* name, bool ok, const std::string& detail) {
        std::cout << (ok ? "ok   " : "FAIL ") << name;
        if (!detail.empty()) std::cout << "  (" << detail << ")";
        std::cout << "\n";
        if (!ok) ++failures;
    };

    {
        ConicPair p = chapple_pair();
        double g = std::abs(cayley_gamma(p, tol)) / gamma_threshold(p, tol);
        report("chapple gamma", g < 1.0, "scaled " + io::format_real(g));
        auto starts = sample_points_on_conic(p.C, 42, 5, tol);
        double worst = 0.0;
        for (const auto& s : starts)
            worst = std::max(worst, triangle_closure(p, s, tol));
        report("chapple closure", worst < 1e-8, io::format_real(worst));
    }
    {
        ConicPair p = diag_pair(1, 2, 3);
        Cx g = cayley_gamma(p, tol);
        report("negative control gamma = 23", std::abs(g - Cx(23.0)) < 1e-12,
               io::format_complex(g));
        Cx j = j_from_lambda({Cx(1), Cx(2), Cx(3)}, tol);
        report("j(1,2,3) = 1728", std::abs(j - Cx(1728.0)) < 1e-10,
               io::format_complex(j));
    }
    {
        std::mt19937_64 rng(7);
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            ConicPair p = random_transverse_pair(rng, tol);
            Cx ja = j_from_sigma(p.sigma, tol);
            Cx jb = j_from_lambda(normal_form(p, tol).lambda, tol);
            worst = std::max(worst,
                             std::abs(ja - jb) / std::max(1.0, std::abs(ja)));
        }
        report("j cross validation", worst < 1e-8, io::format_real(worst));
    }
    {
        AtlasRecord rec = fiber_solutions(Cx(100.0, 0.0), tol);
        report("fiber total = 24", rec.total_with_multiplicity == 24,
               std::to_string(rec.total_with_multiplicity));
        report("fiber residuals", rec.max_residual < 1e-8,
               io::format_real(rec.max_residual));
    }
    {
        IsotropyGroup g1 = isotropy_group(diag_pair(1, 2, 5), tol);
        Cx om = std::polar(1.0, 2.0 * M_PI / 3.0);
        IsotropyGroup g2 = isotropy_group(diag_pair(1, om, om * om), tol);
        report("isotropy order 4", g1.order() == 4, std::to_string(g1.order()));
        report("isotropy order 12", g2.order() == 12, std::to_string(g2.order()));
    }
    {
        std::mt19937_64 rng(11);
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            ConicPair p = random_transverse_pair(rng, tol);
            for (int r = 0; r < 3; ++r)
                worst = std::max(worst, gradient_fd_error(p, r, 1e-6, tol));
        }
        report("gradient vs finite differences", worst < 1e-6,
               io::format_real(worst));
    }
    {
        Conic D;  // unit circle
        auto cs = sample_cayley(D, 42, 10, tol);
        double worst = 0.0;
        for (const auto& c : cs) {
            Mat3 E = trivialize_psi(D, c, tol);
            worst = std::max(worst, psi_quadric_residual(E));
        }
        report("trivialization quadric", worst < 1e-9, io::format_real(worst));
    }

    std::cout << (failures ? "selftest: FAILED\n" : "selftest: all passed\n");
    return failures ? kExitNumerical : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for the Cayley condition of Poncelet triangles"};
    app.require_subcommand(1);

    double tol_flag = -1.0;
    std::string out_path;
    app.add_option("--tol", tol_flag, "relative tolerance (overrides PONCELET_TOL)");
    app.add_option("-o,--output", out_path, "write output to a file instead of stdout");

    std::string pair_path, conic_path, lambda_spec, z_spec, grid_spec;
    std::string format = "json";
    bool strict = false;
    int ngon = 3, count = 20, steps = 3;
    uint64_t seed = 42;

    auto* c_check = app.add_subcommand("check", "Cayley verdict for a conic pair");
    c_check->add_option("pair", pair_path, "pair JSON file")->required();
    c_check->add_flag("--strict", strict, "exit 1 when the condition fails");
    c_check->add_option("--n", ngon, "closure length n (default 3)");

    auto* c_norm = app.add_subcommand("normalize", "diagonal normal form and moduli point");
    c_norm->add_option("pair", pair_path, "pair JSON file")->required();

    auto* c_jinv = app.add_subcommand("jinv", "j-invariant of the pencil curve");
    c_jinv->add_option("pair", pair_path, "pair JSON file");
    c_jinv->add_option("--lambda", lambda_spec, "diagonal entries l1,l2,l3 (or 6 re,im values)");

    auto* c_fiber = app.add_subcommand("fiber", "degree-24 j-fiber of the Cayley moduli curve");
    c_fiber->add_option("--z", z_spec, "target j value RE[,IM]")->required();
    c_fiber->add_option("--format", format,
                        "json | csv (columns z_re,z_im,l1_re,l1_im,l2_re,l2_im,"
                        "l3_re,l3_im,mult,res7,res8)");

    auto* c_atlas = app.add_subcommand("atlas", "j-fibers along a circle of z values");
    c_atlas->add_option("--grid", grid_spec, "CENTER_RE,CENTER_IM,RADIUS,COUNT")->required();
    c_atlas->add_option("--format", format, "json | csv (columns as in fiber)");

    auto* c_sample = app.add_subcommand("sample", "draw conics C with gamma(C, D) = 0");
    c_sample->add_option("--d", conic_path, "conic JSON file for D")->required();
    c_sample->add_option("--count", count, "number of conics")->required();
    c_sample->add_option("--seed", seed, "RNG seed (default 42)");

    auto* c_trace = app.add_subcommand("trace", "Poncelet trajectories from seeded starts");
    c_trace->add_option("pair", pair_path, "pair JSON file")->required();
    c_trace->add_option("--start-seed", seed, "seed for the starting points")->required();
    c_trace->add_option("--count", count, "number of starting points");
    c_trace->add_option("--steps", steps, "Poncelet steps per trajectory");

    auto* c_grad = app.add_subcommand("gradcheck", "analytic gradients vs finite differences");
    c_grad->add_option("pair", pair_path, "pair JSON file (default: random pairs)");
    c_grad->add_option("--count", count, "number of random pairs");
    c_grad->add_option("--seed", seed, "RNG seed (default 42)");

    auto* c_self = app.add_subcommand("selftest", "run the built-in property suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    try {
        Tolerance tol = resolve_tolerance(tol_flag);
        if (c_check->parsed()) return run_check(pair_path, strict, ngon, tol, out_path);
        if (c_norm->parsed()) return run_normalize(pair_path, tol, out_path);
        if (c_jinv->parsed()) return run_jinv(pair_path, lambda_spec, tol, out_path);
        if (c_fiber->parsed()) return run_fiber(z_spec, format, tol, out_path);
        if (c_atlas->parsed()) return run_atlas(grid_spec, format, tol, out_path);
        if (c_sample->parsed()) return run_sample(conic_path, count, seed, tol, out_path);
        if (c_trace->parsed()) return run_trace(pair_path, seed, count, steps, tol, out_path);
        if (c_grad->parsed()) return run_gradcheck(pair_path, count, seed, tol, out_path);
        if (c_self->parsed()) return run_selftest(tol);
        std::cerr << "error: no subcommand\n";
        return kExitInput;
    } catch (const DegeneratePencil& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const NotTransverse& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const SingularConic& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const CriticalZ& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const ResultantIllConditioned& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const SamplingExhausted& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const NumericalTangency& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const BranchCollapse& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const RepeatedLambda& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
