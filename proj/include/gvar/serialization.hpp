#pragma once

// JSON and CSV forms of sequences, functions, reports, estimates and
// certificates. Readers reject unknown keys; writers are byte-stable.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gvar/constructions.hpp"
#include "gvar/functions.hpp"
#include "gvar/sequences.hpp"
#include "gvar/variation.hpp"

namespace gvar {

using json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ConfigError when `j` is not an object or has a key outside `allowed`.
void require_keys(const json& j, const std::vector<std::string>& allowed, const std::string& where);

/// {"kind":"harmonic"} | {"kind":"power_log","alpha":0.5} |
/// {"kind":"table","values":[...],"extend":"reject"} ...
LambdaParams lambda_params_from_json(const json& j);
json to_json(const LambdaParams& p);
/// {"kind":"loglog"} | {"kind":"constant","p":2} | {"kind":"linear","a":0,"b":1} ...
ExponentParams exponent_params_from_json(const json& j);
json to_json(const ExponentParams& p);

/// Piecewise linear: {"bp":[[num,exp],...],"vals":[...]}.
/// Comb: {"s":..,"j_lo":..,"j_hi":..,"h":..}.
Function1D function_from_json(const json& j);
json to_json(const Function1D& f);
/// {"terms":[{"u":f,"v":g},...]}
TensorSum2D tensor_from_json(const json& j);
json to_json(const TensorSum2D& f);

json to_json(const Interval& i);
json to_json(const Witness& w);
json to_json(const VariationEstimate& e);
json to_json(const SearchBudget& b);

json report_header(const ConditionReport& r);
/// "# " + header JSON, then "n,quantity" and one row per n.
void write_report_csv(std::ostream& os, const ConditionReport& r);

json to_json(const IndexSelection& s);
json to_json(const ConstructionCertificate& c);
/// "# " + header JSON, then "k,term,cumulative"; cumulative is the running
/// combination of the terms under the certificate's formula.
void write_certificate_csv(std::ostream& os, const ConstructionCertificate& c);

/// Writes text with LF line endings, creating parent directories.
void write_text_file(const std::string& path, const std::string& text);
json read_json_file(const std::string& path);

}  // namespace gvar
