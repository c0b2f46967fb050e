#include "gvar/serialization.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "gvar/numeric.hpp"

namespace gvar {

namespace {

json num(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

double get_double(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

std::vector<double> get_doubles(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_array()) throw ConfigError(std::string("'") + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(std::string("'") + key + "' must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::string get_kind(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ConfigError(where + ": expected an object with a string 'kind'");
  }
  return j.at("kind").get<std::string>();
}

std::int64_t get_int(const json& v, const std::string& what) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_string()) {
    try {
      std::size_t pos = 0;
      const std::int64_t x = std::stoll(v.get<std::string>(), &pos);
      if (pos == v.get<std::string>().size()) return x;
    } catch (const std::exception&) {
    }
  }
  throw ConfigError(what + " must be an integer");
}

json dyadic_json(const DyadicRational& d) { return json::array({d.num(), d.exp()}); }

}  // namespace

void require_keys(const json& j, const std::vector<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(where + ": unknown field '" + key + "'");
    }
  }
}

// ---------------------------------------------------------------------------
// sequences

LambdaParams lambda_params_from_json(const json& j) {
  const std::string kind = get_kind(j, "lambda");
  LambdaParams p;
  if (kind == "table") {
    require_keys(j, {"kind", "values", "extend"}, "lambda");
    p.kind = LambdaKind::table;
    p.values = get_doubles(j, "values");
    const std::string ext = j.value("extend", std::string("reject"));
    if (ext == "reject") {
      p.extend = TableExtension::reject;
    } else if (ext == "repeat_last_growth") {
      p.extend = TableExtension::repeat_last_growth;
    } else {
      throw ConfigError("lambda: unknown extend rule '" + ext + "'");
    }
    return p;
  }
  if (kind == "harmonic") {
    require_keys(j, {"kind", "scale", "shift"}, "lambda");
    p.kind = LambdaKind::harmonic;
  } else if (kind == "n_gamma") {
    require_keys(j, {"kind", "beta", "scale", "shift"}, "lambda");
    p.kind = LambdaKind::n_gamma;
    p.beta = get_double(j, "beta", 1.0);
  } else if (kind == "power_log") {
    require_keys(j, {"kind", "alpha", "scale", "shift"}, "lambda");
    p.kind = LambdaKind::power_log;
    p.alpha = get_double(j, "alpha", 0.5);
  } else if (kind == "power") {
    require_keys(j, {"kind", "exponent", "scale", "shift"}, "lambda");
    p.kind = LambdaKind::power;
    p.exponent = get_double(j, "exponent", 1.0);
  } else {
    throw ConfigError("lambda: unknown kind '" + kind + "'");
  }
  p.scale = get_double(j, "scale", 1.0);
  p.shift = get_double(j, "shift", 0.0);
  return p;
}

json to_json(const LambdaParams& p) {
  json j;
  switch (p.kind) {
    case LambdaKind::harmonic: j["kind"] = "harmonic"; break;
    case LambdaKind::n_gamma:
      j["kind"] = "n_gamma";
      j["beta"] = p.beta;
      break;
    case LambdaKind::power_log:
      j["kind"] = "power_log";
      j["alpha"] = p.alpha;
      break;
    case LambdaKind::power:
      j["kind"] = "power";
      j["exponent"] = p.exponent;
      break;
    case LambdaKind::table:
      j["kind"] = "table";
      j["values"] = p.values;
      j["extend"] = p.extend == TableExtension::reject ? "reject" : "repeat_last_growth";
      return j;
  }
  if (p.scale != 1.0) j["scale"] = p.scale;
  if (p.shift != 0.0) j["shift"] = p.shift;
  return j;
}

ExponentParams exponent_params_from_json(const json& j) {
  const std::string kind = get_kind(j, "p");
  ExponentParams p;
  if (kind == "constant") {
    require_keys(j, {"kind", "p"}, "p");
    p.kind = ExponentKind::constant;
    p.p = get_double(j, "p", 1.0);
  } else if (kind == "linear") {
    require_keys(j, {"kind", "a", "b"}, "p");
    p.kind = ExponentKind::linear;
    p.a = get_double(j, "a", 0.0);
    p.b = get_double(j, "b", 1.0);
  } else if (kind == "log") {
    require_keys(j, {"kind"}, "p");
    p.kind = ExponentKind::log;
  } else if (kind == "loglog") {
    require_keys(j, {"kind"}, "p");
    p.kind = ExponentKind::loglog;
  } else if (kind == "n_over_log") {
    require_keys(j, {"kind", "c"}, "p");
    p.kind = ExponentKind::n_over_log;
    p.c = get_double(j, "c", 2.0);
  } else if (kind == "table") {
    require_keys(j, {"kind", "values", "hold"}, "p");
    p.kind = ExponentKind::table;
    p.values = get_doubles(j, "values");
    if (j.contains("hold")) {
      if (!j.at("hold").is_boolean()) throw ConfigError("p: 'hold' must be a boolean");
      p.hold = j.at("hold").get<bool>();
    }
  } else {
    throw ConfigError("p: unknown kind '" + kind + "'");
  }
  return p;
}

json to_json(const ExponentParams& p) {
  json j;
  switch (p.kind) {
    case ExponentKind::constant:
      j["kind"] = "constant";
      j["p"] = p.p;
      break;
    case ExponentKind::linear:
      j["kind"] = "linear";
      j["a"] = p.a;
      j["b"] = p.b;
      break;
    case ExponentKind::log: j["kind"] = "log"; break;
    case ExponentKind::loglog: j["kind"] = "loglog"; break;
    case ExponentKind::n_over_log:
      j["kind"] = "n_over_log";
      j["c"] = p.c;
      break;
    case ExponentKind::table:
      j["kind"] = "table";
      j["values"] = p.values;
      j["hold"] = p.hold;
      break;
  }
  return j;
}

// ---------------------------------------------------------------------------
// functions

Function1D function_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("function: expected a JSON object");
  if (j.contains("s")) {
    require_keys(j, {"s", "j_lo", "j_hi", "h"}, "comb");
    for (const char* key : {"s", "j_lo", "j_hi", "h"}) {
      if (!j.contains(key)) throw ConfigError(std::string("comb: missing '") + key + "'");
    }
    const std::int64_t s = get_int(j.at("s"), "comb 's'");
    const std::int64_t lo = get_int(j.at("j_lo"), "comb 'j_lo'");
    const std::int64_t hi = get_int(j.at("j_hi"), "comb 'j_hi'");
    if (lo < 0 || hi < 0 || s < 1 || s > DyadicRational::kMaxExp) throw ConfigError("comb: bad s, j_lo or j_hi");
    try {
      return DyadicComb(static_cast<int>(s), static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(hi),
                        get_double(j, "h", 1.0));
    } catch (const FunctionError& e) {
      throw ConfigError(std::string("comb: ") + e.what());
    }
  }
  require_keys(j, {"bp", "vals"}, "piecewise-linear function");
  if (!j.contains("bp") || !j.at("bp").is_array()) throw ConfigError("function: missing 'bp' array");
  std::vector<DyadicRational> bp;
  for (const auto& b : j.at("bp")) {
    if (!b.is_array() || b.size() != 2) throw ConfigError("function: each breakpoint is [num, exp]");
    const std::int64_t e = get_int(b[1], "breakpoint exponent");
    if (e < 0 || e > DyadicRational::kMaxExp) throw ConfigError("function: breakpoint exponent outside [0, 62]");
    bp.emplace_back(get_int(b[0], "breakpoint numerator"), static_cast<int>(e));
  }
  try {
    return PiecewiseLinearPeriodic(std::move(bp), get_doubles(j, "vals"));
  } catch (const FunctionError& e) {
    throw ConfigError(std::string("function: ") + e.what());
  }
}

json to_json(const Function1D& f) {
  json j;
  if (const DyadicComb* c = f.comb()) {
    j["s"] = c->s();
    j["j_lo"] = c->j_lo();
    j["j_hi"] = c->j_hi();
    j["h"] = c->h();
    return j;
  }
  const PiecewiseLinearPeriodic& p = *f.piecewise();
  json bp = json::array();
  for (const auto& b : p.breakpoints()) bp.push_back(dyadic_json(b));
  j["bp"] = std::move(bp);
  j["vals"] = p.values();
  return j;
}

TensorSum2D tensor_from_json(const json& j) {
  require_keys(j, {"terms"}, "tensor sum");
  if (!j.contains("terms") || !j.at("terms").is_array()) throw ConfigError("tensor sum: missing 'terms' array");
  std::vector<TensorTerm> terms;
  for (const auto& t : j.at("terms")) {
    require_keys(t, {"u", "v"}, "tensor term");
    if (!t.contains("u") || !t.contains("v")) throw ConfigError("tensor term needs 'u' and 'v'");
    terms.push_back({function_from_json(t.at("u")), function_from_json(t.at("v"))});
  }
  return TensorSum2D(std::move(terms));
}

json to_json(const TensorSum2D& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) terms.push_back(json{{"u", to_json(t.u)}, {"v", to_json(t.v)}});
  return json{{"terms", std::move(terms)}};
}

// ---------------------------------------------------------------------------
// estimates

json to_json(const Interval& i) {
  json j = json::array({num(i.a.x), num(i.b.x)});
  return j;
}

json to_json(const Witness& w) {
  json j = json::object();
  auto intervals = [](const std::vector<Interval>& v) {
    json a = json::array();
    for (const auto& i : v) a.push_back(to_json(i));
    return a;
  };
  if (!w.intervals.empty()) j["intervals"] = intervals(w.intervals);
  if (!w.ys.empty()) j["ys"] = w.ys;
  if (!w.intervals_y.empty()) j["intervals_y"] = intervals(w.intervals_y);
  if (!w.rectangles.empty()) {
    json a = json::array();
    for (const auto& r : w.rectangles) a.push_back(json{{"x", to_json(r.x)}, {"y", to_json(r.y)}});
    j["rectangles"] = std::move(a);
  }
  if (!w.points.empty()) j["points"] = w.points;
  if (w.uniform_count > 0) {
    j["uniform_count"] = w.uniform_count;
    j["uniform_height"] = num(w.uniform_height);
    j["uniform_scale"] = num(w.uniform_scale);
  }
  if (w.uniform_count_y > 0) {
    j["uniform_count_y"] = w.uniform_count_y;
    j["uniform_height_y"] = num(w.uniform_height_y);
  }
  if (w.transposed) j["transposed"] = true;
  return j;
}

json to_json(const SearchBudget& b) {
  return json{{"grid_depth", b.grid_depth},
              {"max_intervals", b.max_intervals},
              {"restarts", b.restarts},
              {"seed", b.seed},
              {"include_breakpoints", b.include_breakpoints}};
}

json to_json(const VariationEstimate& e) {
  json j;
  j["functional"] = e.functional;
  j["value"] = num(e.value);
  j["log_value"] = num(e.log_value);
  j["mode"] = to_string(e.mode);
  if (e.p != 0.0) {
    j["p"] = num(e.p);
    j["n"] = e.n;
  }
  j["witness"] = to_json(e.witness);
  return j;
}

// ---------------------------------------------------------------------------
// reports

json report_header(const ConditionReport& r) {
  json j;
  j["condition_id"] = r.condition_id;
  j["verdict"] = to_string(r.verdict);
  j["sup_observed"] = num(r.sup_observed);
  j["n_first"] = r.n_first;
  j["n_last"] = r.n_last;
  j["invariant_ok"] = r.invariant_ok;
  if (r.failed_index) j["failed_index"] = *r.failed_index;
  j["notes"] = r.notes;
  return j;
}

void write_report_csv(std::ostream& os, const ConditionReport& r) {
  os << "# " << report_header(r).dump() << '\n';
  os << "n,quantity\n";
  for (const auto& row : r.rows) os << row.n << ',' << format_double(row.quantity) << '\n';
}

json to_json(const IndexSelection& s) {
  json j;
  j["mode"] = to_string(s.mode);
  if (s.mode == SelectionMode::case_b) j["k0"] = s.k0;
  json entries = json::array();
  for (const auto& e : s.entries) {
    json x;
    x["k"] = e.k;
    x["index"] = e.index;
    x["p"] = num(e.p);
    if (s.mode != SelectionMode::theorem2) {
      x["log2_m"] = num(e.m.log_m / std::log(2.0));
      if (e.m.exact) x["m"] = *e.m.exact;
      x["ratio"] = num(e.ratio.linear());
      x["log_ratio"] = num(e.ratio.log);
    }
    x["amplitude"] = num(e.amplitude);
    entries.push_back(std::move(x));
  }
  j["entries"] = std::move(entries);
  j["notes"] = s.notes;
  return j;
}

json to_json(const ConstructionCertificate& c) {
  json j;
  j["kind"] = to_string(c.kind);
  j["formula_id"] = c.formula_id;
  j["p"] = num(c.p);
  j["total"] = num(c.total);
  j["log_total"] = num(c.log_total);
  j["bound"] = num(c.bound);
  j["floor"] = num(c.floor);
  j["constant"] = num(c.constant);
  j["holds"] = c.holds;
  j["note"] = c.note;
  json terms = json::array();
  for (const auto& t : c.terms) terms.push_back(json{{"k", t.k}, {"value", num(t.value)}, {"log_value", num(t.log_value)}});
  j["terms"] = std::move(terms);
  return j;
}

void write_certificate_csv(std::ostream& os, const ConstructionCertificate& c) {
  json header = to_json(c);
  header.erase("terms");
  os << "# " << header.dump() << '\n';
  os << "k,term,cumulative\n";
  ConstructionCertificate partial = c;
  partial.terms.clear();
  if (partial.formula_id == "single") partial.formula_id = "sum";
  for (const auto& t : c.terms) {
    partial.terms.push_back(t);
    os << t.k << ',' << format_double(t.value) << ',' << format_double(recompute_total(partial)) << '\n';
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace gvar
