#pragma once

// JSON/CSV interchange. Parsing uses nlohmann::json; emission goes through a
// small deterministic writer (fixed key order, %.17g floats) so identical
// inputs produce byte-identical output.

#include "poncelet/cayley.hpp"
#include "poncelet/conic.hpp"
#include "poncelet/dynamics.hpp"
#include "poncelet/elliptic.hpp"
#include "poncelet/moduli.hpp"

#include <string>

namespace poncelet::io {

std::string format_real(double x);
std::string format_complex(Cx z);  // [re,im]

// --- parsing ---------------------------------------------------------------

// {"coords": [[re,im] x6]}
Conic parse_conic(const std::string& json_text);
// {"C": Conic, "D": Conic}
ConicPair parse_pair(const std::string& json_text);
ConicPair load_pair_file(const std::string& path);
Conic load_conic_file(const std::string& path);

// --- emission --------------------------------------------------------------

std::string conic_json(const Conic& c);
std::string verdict_json(const CayleyVerdict& v);
std::string check_json(const CayleyVerdict& v, const TransversalityReport& t, Cx j);
std::string normal_form_json(const NormalForm& nf, const ModuliPoint& mp);
std::string moduli_point_json(const ModuliPoint& mp);
std::string jvalue_json(const JValue& v);
std::string atlas_record_json(const AtlasRecord& rec);
std::string atlas_record_csv(const AtlasRecord& rec, bool header);
std::string conic_list_json(const std::vector<Conic>& cs);
std::string trace_json(const ConicPair& pair,
                       const std::vector<PonceletState>& states,
                       double closure_error, bool closed);
std::string gradcheck_json(const std::vector<std::array<double, 3>>& per_pair_errors,
                           double worst, bool pass);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace poncelet::io
