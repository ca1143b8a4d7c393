#include "poncelet/io.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace poncelet::io {

using nlohmann::json;

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string format_complex(Cx z) {
    return "[" + format_real(z.real()) + "," + format_real(z.imag()) + "]";
}

namespace {

std::string complex_triple(const std::array<Cx, 3>& a) {
    return "[" + format_complex(a[0]) + "," + format_complex(a[1]) + ","
               + format_complex(a[2]) + "]";
}

Cx parse_complex(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error("invalid JSON: field '" + field + "' must be [re,im]");
    return Cx(j[0].get<double>(), j[1].get<double>());
}

Conic parse_conic_json(const json& j, const std::string& name) {
    if (!j.is_object() || !j.contains("coords"))
        throw Error("invalid JSON: missing field '" + name + ".coords'");
    const json& c = j["coords"];
    if (!c.is_array() || c.size() != 6)
        throw Error("invalid JSON: '" + name + ".coords' must hold 6 complex values");
    std::array<Cx, 6> coords;
    for (int i = 0; i < 6; ++i)
        coords[i] = parse_complex(c[i], name + ".coords[" + std::to_string(i) + "]");
    return Conic(coords);
}

}  // namespace

Conic parse_conic(const std::string& text) {
    json j = json::parse(text, nullptr, true, true);
    return parse_conic_json(j, "conic");
}

ConicPair parse_pair(const std::string& text) {
    json j = json::parse(text, nullptr, true, true);
    if (!j.is_object() || !j.contains("C"))
        throw Error("invalid JSON: missing field 'C'");
    if (!j.contains("D"))
        throw Error("invalid JSON: missing field 'D'");
    return ConicPair(parse_conic_json(j["C"], "C"), parse_conic_json(j["D"], "D"));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << text;
}

ConicPair load_pair_file(const std::string& path) {
    try {
        return parse_pair(read_file(path));
    } catch (const json::exception& e) {
        throw Error("invalid JSON in " + path + ": " + e.what());
    }
}

Conic load_conic_file(const std::string& path) {
    try {
        return parse_conic(read_file(path));
    } catch (const json::exception& e) {
        throw Error("invalid JSON in " + path + ": " + e.what());
    }
}

std::string conic_json(const Conic& c) {
    std::string s = "{\"coords\":[";
    for (int i = 0; i < 6; ++i) {
        if (i) s += ",";
        s += format_complex(c.coords()[i]);
    }
    return s + "]}";
}

std::string verdict_json(const CayleyVerdict& v) {
    std::string s = "{";
    s += "\"n\":" + std::to_string(v.n);
    s += ",\"gamma\":" + format_complex(v.gamma);
    s += ",\"hankel\":" + format_complex(v.hankel);
    s += std::string(",\"satisfied\":") + (v.satisfied ? "true" : "false");
    s += ",\"threshold\":" + format_real(v.threshold);
    return s + "}";
}

std::string check_json(const CayleyVerdict& v, const TransversalityReport& t, Cx j) {
    std::string s = "{";
    s += "\"n\":" + std::to_string(v.n);
    s += ",\"gamma\":" + format_complex(v.gamma);
    s += ",\"hankel\":" + format_complex(v.hankel);
    s += std::string(",\"satisfied\":") + (v.satisfied ? "true" : "false");
    s += ",\"threshold\":" + format_real(v.threshold);
    s += std::string(",\"transverse\":") + (t.transverse ? "true" : "false");
    s += ",\"discriminant\":" + format_complex(t.disc_normalized);
    s += ",\"root_separation\":" + format_real(t.root_separation);
    s += ",\"j\":" + format_complex(j);
    return s + "}";
}

std::string moduli_point_json(const ModuliPoint& mp) {
    std::string s = "{";
    s += "\"e\":" + complex_triple(mp.e);
    s += ",\"canonical\":" + complex_triple(mp.canonical);
    s += std::string(",\"special\":") + (mp.special ? "true" : "false");
    return s + "}";
}

std::string normal_form_json(const NormalForm& nf, const ModuliPoint& mp) {
    std::string s = "{\"lambda\":" + complex_triple(nf.lambda);
    s += ",\"A\":[";
    for (int i = 0; i < 3; ++i) {
        if (i) s += ",";
        s += "[";
        for (int j = 0; j < 3; ++j) {
            if (j) s += ",";
            s += format_complex(nf.A(i, j));
        }
        s += "]";
    }
    s += "],\"conditioning\":" + format_real(nf.conditioning);
    s += std::string(",\"ill_conditioned\":") + (nf.ill_conditioned ? "true" : "false");
    s += ",\"moduli\":" + moduli_point_json(mp);
    return s + "}";
}

std::string jvalue_json(const JValue& v) {
    std::string cls = v.critical_class == CriticalClass::j0 ? "j0"
                    : v.critical_class == CriticalClass::j1728 ? "j1728" : "regular";
    return "{\"z\":" + format_complex(v.z) + ",\"critical_class\":\"" + cls + "\"}";
}

std::string atlas_record_json(const AtlasRecord& rec) {
    std::string s = "{\"z\":" + format_complex(rec.z) + ",\"roots\":[";
    for (size_t i = 0; i < rec.roots.size(); ++i) {
        const FiberRoot& r = rec.roots[i];
        if (i) s += ",";
        s += "{\"lambda\":" + complex_triple(r.lambda);
        s += ",\"mult\":" + std::to_string(r.multiplicity);
        s += ",\"res7\":" + format_real(r.res7);
        s += ",\"res8\":" + format_real(r.res8) + "}";
    }
    s += "],\"orbits\":" + std::to_string(rec.orbit_count);
    s += ",\"total\":" + std::to_string(rec.total_with_multiplicity);
    return s + "}";
}

std::string atlas_record_csv(const AtlasRecord& rec, bool header) {
    std::string s;
    if (header)
        s += "z_re,z_im,l1_re,l1_im,l2_re,l2_im,l3_re,l3_im,mult,res7,res8\n";
    for (const FiberRoot& r : rec.roots) {
        s += format_real(rec.z.real()) + "," + format_real(rec.z.imag());
        for (int i = 0; i < 3; ++i)
            s += "," + format_real(r.lambda[i].real()) + ","
               + format_real(r.lambda[i].imag());
        s += "," + std::to_string(r.multiplicity) + "," + format_real(r.res7)
           + "," + format_real(r.res8) + "\n";
    }
    return s;
}

std::string conic_list_json(const std::vector<Conic>& cs) {
    std::string s = "{\"conics\":[";
    for (size_t i = 0; i < cs.size(); ++i) {
        if (i) s += ",";
        s += conic_json(cs[i]);
    }
    return s + "]}";
}

std::string trace_json(const ConicPair& pair,
                       const std::vector<PonceletState>& states,
                       double closure_error, bool closed) {
    std::string s = "{\"states\":[";
    for (size_t i = 0; i < states.size(); ++i) {
        if (i) s += ",";
        const auto& st = states[i];
        auto r = state_residuals(pair, st.point, st.line);
        std::array<Cx, 3> p{st.point.coords[0], st.point.coords[1], st.point.coords[2]};
        std::array<Cx, 3> l{st.line.coords[0], st.line.coords[1], st.line.coords[2]};
        s += "{\"point\":" + complex_triple(p) + ",\"line\":" + complex_triple(l);
        s += ",\"res_point\":" + format_real(r.point_on_C);
        s += ",\"res_line\":" + format_real(r.line_on_dual_D);
        s += ",\"res_incidence\":" + format_real(r.incidence) + "}";
    }
    s += "],\"closure_error\":" + format_real(closure_error);
    s += std::string(",\"closed\":") + (closed ? "true" : "false");
    return s + "}";
}

std::string gradcheck_json(const std::vector<std::array<double, 3>>& per_pair_errors,
                           double worst, bool pass) {
    std::string s = "{\"pairs\":[";
    for (size_t i = 0; i < per_pair_errors.size(); ++i) {
        if (i) s += ",";
        s += "[" + format_real(per_pair_errors[i][0]) + ","
                 + format_real(per_pair_errors[i][1]) + ","
                 + format_real(per_pair_errors[i][2]) + "]";
    }
    s += "],\"worst\":" + format_real(worst);
    s += std::string(",\"pass\":") + (pass ? "true" : "false");
    return s + "}";
}

}  // namespace poncelet::io
