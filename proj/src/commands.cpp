#include "gvar/commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "gvar/constructions.hpp"
#include "gvar/numeric.hpp"
#include "gvar/oracle.hpp"
#include "gvar/serialization.hpp"
#include "gvar/variation.hpp"
#include "gvar/verify.hpp"

namespace gvar {

namespace {

class Log {
 public:
  Log(std::ostream& os, LogLevel level) : os_(os), level_(level) {}
  void error(const std::string& msg) const { emit(LogLevel::error, "error", msg); }
  void info(const std::string& msg) const { emit(LogLevel::info, "info", msg); }
  void debug(const std::string& msg) const { emit(LogLevel::debug, "debug", msg); }

 private:
  void emit(LogLevel at, const char* tag, const std::string& msg) const {
    if (static_cast<int>(level_) >= static_cast<int>(at)) os_ << "[" << tag << "] " << msg << '\n';
  }
  std::ostream& os_;
  LogLevel level_;
};

json load_config(const CommandOptions& opts, const std::vector<std::string>& allowed, const std::string& command) {
  json j = json::object();
  if (!opts.config_path.empty()) j = read_json_file(opts.config_path);
  require_keys(j, allowed, command + " config");
  return j;
}

std::uint64_t get_u64(const json& j, const char* key, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ConfigError(std::string("'") + key + "' must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

int get_small(const json& j, const char* key, int fallback, int lo, int hi) {
  const std::uint64_t v = get_u64(j, key, static_cast<std::uint64_t>(fallback));
  if (v < static_cast<std::uint64_t>(lo) || v > static_cast<std::uint64_t>(hi)) {
    throw ConfigError(std::string("'") + key + "' must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

bool get_bool(const json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) throw ConfigError(std::string("'") + key + "' must be a boolean");
  return j.at(key).get<bool>();
}

LambdaParams lambda_of(const json& j) {
  return j.contains("lambda") ? lambda_params_from_json(j.at("lambda")) : LambdaParams{};
}

ExponentParams p_of(const json& j, ExponentParams fallback) {
  return j.contains("p") ? exponent_params_from_json(j.at("p")) : fallback;
}

ExponentParams loglog_p() {
  ExponentParams p;
  p.kind = ExponentKind::loglog;
  return p;
}

SearchBudget budget_of(const json& j, const CommandOptions& opts, std::uint64_t seed) {
  SearchBudget b;
  if (j.contains("budget")) {
    const json& bj = j.at("budget");
    require_keys(bj, {"grid_depth", "max_intervals", "restarts", "include_breakpoints"}, "budget");
    b.grid_depth = get_small(bj, "grid_depth", b.grid_depth, 1, 12);
    b.max_intervals = get_small(bj, "max_intervals", b.max_intervals, 1, 12);
    b.restarts = get_small(bj, "restarts", b.restarts, 0, 1000);
    b.include_breakpoints = get_bool(bj, "include_breakpoints", b.include_breakpoints);
  }
  if (opts.budget_depth) b.grid_depth = *opts.budget_depth;
  b.seed = seed;
  b.validate();
  return b;
}

std::string path_in(const CommandOptions& opts, const std::string& name) {
  return (std::filesystem::path(opts.out_dir) / name).string();
}

void write_json(const CommandOptions& opts, const std::string& name, const json& j) {
  write_text_file(path_in(opts, name), j.dump(2) + "\n");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + "\"";
}

/// Runs `body`, mapping config and library errors onto exit codes.
template <class F>
int guarded(std::ostream& os, F&& body) {
  const Log log(os, log_level_from_env());
  try {
    return body(log);
  } catch (const ConfigError& e) {
    os << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SequenceError& e) {
    os << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const FunctionError& e) {
    os << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const json::exception& e) {
    os << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConstructionError& e) {
    os << "refused: " << e.what() << '\n';
    return kExitAssertion;
  } catch (const std::exception& e) {
    os << "error: " << e.what() << '\n';
    return kExitAssertion;
  }
}

std::string report_csv(const ConditionReport& r) {
  std::ostringstream ss;
  write_report_csv(ss, r);
  return ss.str();
}

std::string certificate_csv(const ConstructionCertificate& c) {
  std::ostringstream ss;
  write_certificate_csv(ss, c);
  return ss.str();
}

}  // namespace

LogLevel log_level_from_env() {
  const char* v = std::getenv("GVAR_LOG");
  if (v == nullptr) return LogLevel::error;
  const std::string s(v);
  if (s == "quiet") return LogLevel::quiet;
  if (s == "info") return LogLevel::info;
  if (s == "debug") return LogLevel::debug;
  return LogLevel::error;
}

// ---------------------------------------------------------------------------

int cmd_conditions(const CommandOptions& opts, std::ostream& os) {
  return guarded(os, [&](const Log& log) {
    const json cfg = load_config(opts, {"lambda", "p", "n_max", "delta", "admissibility_n", "sequence_n", "seed"}, "conditions");
    const LambdaParams lp = lambda_of(cfg);
    const ExponentParams pp = p_of(cfg, loglog_p());
    const std::uint64_t n_max = opts.n_max.value_or(get_u64(cfg, "n_max", 20));
    const std::uint64_t adm_n = get_u64(cfg, "admissibility_n", 1024);
    const std::uint64_t seq_n = get_u64(cfg, "sequence_n", 4096);
    const double delta = cfg.contains("delta") ? cfg.at("delta").get<double>() : 0.5;
    if (n_max < 1) throw ConfigError("'n_max' must be >= 1");

    json summary;
    summary["command"] = "conditions";
    summary["lambda"] = to_json(lp);
    summary["p"] = to_json(pp);
    summary["n_max"] = n_max;

    const LambdaSequence raw = LambdaSequence::unchecked(lp);
    const ConditionReport adm = check_lambda_admissible(raw, adm_n);
    write_text_file(path_in(opts, "lambda_admissible.csv"), report_csv(adm));
    json reports = json::array({report_header(adm)});
    if (!adm.invariant_ok) {
      log.error(adm.notes.empty() ? "lambda not admissible" : adm.notes.front());
      summary["reports"] = std::move(reports);
      summary["pass"] = false;
      write_json(opts, "summary.json", summary);
      return kExitAssertion;
    }
    const LambdaSequence lambda(lp);
    const ExponentSequence p(pp);
    log.info("condition 2 up to n = " + std::to_string(n_max));
    const ConditionReport c2 = check_condition_2(lambda, p, n_max);
    write_text_file(path_in(opts, "condition_2.csv"), report_csv(c2));
    const ConditionReport c1 = check_cond1(lambda, seq_n);
    write_text_file(path_in(opts, "cond1.csv"), report_csv(c1));
    const auto t1 = check_t1_conditions(lambda, seq_n, delta);
    write_text_file(path_in(opts, "t1_sums.csv"), report_csv(t1.at(0)));
    write_text_file(path_in(opts, "t1_ratios.csv"), report_csv(t1.at(1)));
    for (const auto* r : {&c2, &c1, &t1[0], &t1[1]}) reports.push_back(report_header(*r));
    summary["reports"] = std::move(reports);

    json cor;
    cor["statement"] = "BV# in Lambda#BV iff Lambda#BV = B(I^2) iff sum 1/lambda_j < infinity";
    cor["reciprocal_sum_verdict"] = to_string(adm.verdict);
    if (adm.verdict == Verdict::bounded_trend) {
      cor["regime"] = "Lambda#BV = B(I^2): BV# is included";
    } else if (adm.verdict == Verdict::divergent_trend) {
      cor["regime"] = "Lambda#BV != B(I^2): BV# is not included";
    } else {
      cor["regime"] = "undetermined at this range";
    }
    summary["corollary"] = std::move(cor);
    summary["pass"] = true;
    write_json(opts, "summary.json", summary);
    return kExitOk;
  });
}

// ---------------------------------------------------------------------------

int cmd_construct(const CommandOptions& opts, std::ostream& os) {
  return guarded(os, [&](const Log& log) {
    const json cfg = load_config(
        opts, {"construction", "lambda", "p", "K", "search_cap", "check_premise", "l_max", "seed"}, "construct");
    const std::string which = cfg.value("construction", std::string("f"));
    const LambdaParams lp = lambda_of(cfg);
    const int K = opts.k.value_or(get_small(cfg, "K", 4, 0, 64));
    const LambdaSequence lambda(lp);

    json summary;
    summary["command"] = "construct";
    summary["construction"] = which;
    summary["lambda"] = to_json(lp);
    summary["K"] = K;
    bool all_hold = true;
    json certs = json::array();
    auto add_cert = [&](const std::string& name, const ConstructionCertificate& c) {
      write_text_file(path_in(opts, name + ".csv"), certificate_csv(c));
      json cj = to_json(c);
      cj["name"] = name;
      certs.push_back(std::move(cj));
      all_hold = all_hold && c.holds;
      if (!c.holds) log.error("certificate " + name + " does not hold");
    };

    if (which == "f") {
      const ExponentParams pp = p_of(cfg, loglog_p());
      const ExponentSequence p(pp);
      summary["p"] = to_json(pp);
      SelectOptions so;
      so.search_cap = get_u64(cfg, "search_cap", so.search_cap);
      so.check_premise = get_bool(cfg, "check_premise", true);
      const IndexSelection sel = select_indices(lambda, p, K, so);
      log.info("selection: " + to_string(sel.mode));
      write_json(opts, "selection.json", to_json(sel));
      const Construction c =
          sel.mode == SelectionMode::case_a ? build_case_a(lambda, p, sel) : build_case_b(lambda, p, sel);
      write_json(opts, "function.json", to_json(c.f));
      add_cert("upper_lambda_sharp", certificate_upper_lambda_sharp(c, lambda));
      for (int k : c.term_k) {
        add_cert("witness_lower_k" + std::to_string(k), c.kind == SelectionMode::case_a
                                                            ? witness_lower_case_a(c, p, k)
                                                            : witness_lower_case_b(c, p, k));
      }
      summary["case"] = to_string(sel.mode);
    } else if (which == "r") {
      const ExponentParams pp = p_of(cfg, ExponentParams{ExponentKind::linear, 1.0, 0.0, 1.0});
      const ExponentSequence p(pp);
      summary["p"] = to_json(pp);
      const ConditionReport adm = check_lambda_admissible(lambda, 1024);
      if (adm.verdict != Verdict::divergent_trend) {
        throw ConstructionError("precondition fails: sum 1/lambda_j trend is " + to_string(adm.verdict) +
                                " (the construction needs it divergent)");
      }
      const IndexSelection sel = select_lk(p, K, get_u64(cfg, "search_cap", 1 << 20));
      const Construction c = build_r(lambda, sel);
      write_json(opts, "selection.json", to_json(c.selection));
      write_json(opts, "function.json", to_json(c.f));
      for (int k = 1; k <= K; ++k) add_cert("witness_lower_r_k" + std::to_string(k), witness_lower_r(lambda, sel, k));
      const int l_max = get_small(cfg, "l_max", 12, 0, 61);
      for (int l = 0; l <= l_max; ++l) {
        add_cert("r_wiener_l" + std::to_string(l),
                 r_wiener_certificate(lambda, p, sel, static_cast<std::uint64_t>(l)));
      }
      summary["lipschitz_constant"] = r_lipschitz_constant(lambda, sel);
    } else {
      throw ConfigError("'construction' must be \"f\" or \"r\"");
    }
    summary["certificates"] = std::move(certs);
    summary["pass"] = all_hold;
    write_json(opts, "summary.json", summary);
    return all_hold ? kExitOk : kExitAssertion;
  });
}

// ---------------------------------------------------------------------------

int cmd_variation(const CommandOptions& opts, std::ostream& os) {
  return guarded(os, [&](const Log& log) {
    const json cfg = load_config(
        opts, {"functional", "function", "function_file", "lambda", "p", "n", "budget", "seed"}, "variation");
    if (!cfg.contains("functional") || !cfg.at("functional").is_string()) {
      throw ConfigError("variation needs a string 'functional'");
    }
    const std::string name = cfg.at("functional").get<std::string>();
    json fj;
    if (cfg.contains("function") && cfg.contains("function_file")) {
      throw ConfigError("give either 'function' or 'function_file', not both");
    }
    if (cfg.contains("function")) {
      fj = cfg.at("function");
    } else if (cfg.contains("function_file")) {
      fj = read_json_file(cfg.at("function_file").get<std::string>());
    } else {
      throw ConfigError("variation needs 'function' or 'function_file'");
    }
    const std::uint64_t seed = opts.seed.value_or(get_u64(cfg, "seed", 42));
    const SearchBudget budget = budget_of(cfg, opts, seed);
    const LambdaSequence lambda(lambda_of(cfg));
    const ExponentSequence p(p_of(cfg, ExponentParams{ExponentKind::constant, 2.0}));
    const std::uint64_t n = get_u64(cfg, "n", 1);
    if (n < 1) throw ConfigError("'n' must be >= 1");

    const bool one_d = name == "lambda_1d" || name == "wiener_1d";
    VariationEstimate e;
    if (one_d) {
      const Function1D f = function_from_json(fj);
      e = name == "lambda_1d" ? lambda_variation_1d(f, lambda, budget) : wiener_variation_1d(f, p, n, budget);
    } else {
      const TensorSum2D f = tensor_from_json(fj);
      if (name == "lambda_v1") {
        e = lambda_v1(f, lambda, budget);
      } else if (name == "lambda_v2") {
        e = lambda_v2(f, lambda, budget);
      } else if (name == "lambda_sharp_v1") {
        e = lambda_sharp_v1(f, lambda, budget);
      } else if (name == "lambda_sharp_v2") {
        e = lambda_sharp_v2(f, lambda, budget);
      } else if (name == "lambda_v12") {
        e = lambda_v12(f, lambda, budget);
      } else if (name == "lambda_star") {
        e = lambda_star_v(f, lambda, budget);
      } else if (name == "wiener_sharp_v1") {
        e = wiener_sharp_v1(f, p, n, budget);
      } else if (name == "wiener_sharp_v2") {
        e = wiener_sharp_v2(f, p, n, budget);
      } else {
        throw ConfigError("unknown functional '" + name + "'");
      }
    }
    log.info(name + " = " + format_double(e.value));
    json out = to_json(e);
    out["budget"] = to_json(budget);
    out["seed"] = seed;
    write_json(opts, "estimate.json", out);
    return kExitOk;
  });
}

// ---------------------------------------------------------------------------

namespace {

void write_verify_outputs(const CommandOptions& opts, const std::vector<CriterionResult>& results,
                          const CriterionResult& extra, const json& config_echo) {
  std::ostringstream csv;
  csv << "criterion,id,pass,value,threshold,description,detail\n";
  auto rows = [&](const CriterionResult& c, const std::string& label) {
    for (const auto& a : c.assertions) {
      csv << label << ',' << csv_field(a.id) << ',' << (a.info ? "info" : (a.pass ? "pass" : "fail")) << ','
          << format_double(a.value) << ',' << format_double(a.threshold) << ',' << csv_field(a.description) << ','
          << csv_field(a.detail) << '\n';
    }
  };
  json crit = json::array();
  bool all = true;
  for (const auto& c : results) {
    rows(c, std::to_string(c.number));
    crit.push_back(json{{"number", c.number}, {"title", c.title}, {"pass", c.pass()}});
    all = all && c.pass();
  }
  rows(extra, "S");
  write_text_file(path_in(opts, "verify.csv"), csv.str());
  json summary;
  summary["command"] = "verify";
  summary["config"] = config_echo;
  summary["criteria"] = std::move(crit);
  summary["supplementary_pass"] = extra.pass();
  summary["pass"] = all;
  write_json(opts, "summary.json", summary);
}

}  // namespace

int cmd_verify(const CommandOptions& opts, std::ostream& os) {
  return guarded(os, [&](const Log& log) {
    const json cfg = load_config(opts, {"seed", "lambda", "p", "K", "search_cap", "trials", "theorem2", "oracle"},
                                 "verify");
    VerifyConfig vc;
    vc.seed = opts.seed.value_or(get_u64(cfg, "seed", 42));
    vc.th1_lambda = lambda_of(cfg);
    vc.th1_p = p_of(cfg, vc.th1_p);
    vc.th1_k = opts.k.value_or(get_small(cfg, "K", vc.th1_k, 0, 64));
    vc.th1_search_cap = get_u64(cfg, "search_cap", vc.th1_search_cap);
    vc.th1_trials = get_u64(cfg, "trials", vc.th1_trials);
    if (cfg.contains("theorem2")) {
      const json& t2 = cfg.at("theorem2");
      require_keys(t2, {"lambda", "p", "K", "l_max", "dp_depth"}, "theorem2");
      vc.th2_lambda = lambda_of(t2);
      vc.th2_p = p_of(t2, vc.th2_p);
      vc.th2_k = get_small(t2, "K", vc.th2_k, 1, 60);
      vc.th2_l_max = get_small(t2, "l_max", vc.th2_l_max, 0, 61);
      vc.th2_dp_depth = get_small(t2, "dp_depth", vc.th2_dp_depth, 1, 9);
    }
    if (opts.budget_depth) vc.th2_dp_depth = *opts.budget_depth;
    if (cfg.contains("oracle")) {
      const json& o = cfg.at("oracle");
      require_keys(o, {"assignment_lists", "lambda_functions", "wiener_functions", "tensor_instances"}, "oracle");
      vc.assignment_lists = get_u64(o, "assignment_lists", vc.assignment_lists);
      vc.lambda_functions = get_u64(o, "lambda_functions", vc.lambda_functions);
      vc.wiener_functions = get_u64(o, "wiener_functions", vc.wiener_functions);
      vc.tensor_instances = get_u64(o, "tensor_instances", vc.tensor_instances);
    }
    // Checked up front so that a bad table is a config error, not a failed run.
    ExponentSequence{vc.th1_p};
    ExponentSequence{vc.th2_p};

    json echo;
    echo["seed"] = vc.seed;
    echo["theorem1"] = json{{"lambda", to_json(vc.th1_lambda)}, {"p", to_json(vc.th1_p)}, {"K", vc.th1_k}};
    echo["theorem2"] = json{{"lambda", to_json(vc.th2_lambda)}, {"p", to_json(vc.th2_p)}, {"K", vc.th2_k}};

    std::vector<CriterionResult> results;
    for (auto* fn : {criterion_assignment, criterion_lambda_1d, criterion_wiener, criterion_tensor,
                     criterion_theorem1, criterion_theorem2, criterion_condition2}) {
      results.push_back(fn(vc));
      const CriterionResult& c = results.back();
      log.info("criterion " + std::to_string(c.number) + " " + (c.pass() ? "pass" : "fail"));
      for (const auto& a : c.assertions) {
        if (!a.pass) log.error(a.id + ": " + a.description + (a.detail.empty() ? "" : " [" + a.detail + "]"));
      }
    }
    const CriterionResult extra = supplementary_constructions(vc);
    write_verify_outputs(opts, results, extra, echo);
    bool all = true;
    for (const auto& c : results) all = all && c.pass();
    return all ? kExitOk : kExitAssertion;
  });
}

// ---------------------------------------------------------------------------

int cmd_oracle_check(const CommandOptions& opts, std::ostream& os) {
  return guarded(os, [&](const Log& log) {
    const json cfg = load_config(opts, {"seed", "trials"}, "oracle-check");
    VerifyConfig vc;
    vc.seed = opts.seed.value_or(get_u64(cfg, "seed", 42));
    const std::uint64_t trials = get_u64(cfg, "trials", 20);
    vc.assignment_lists = trials * 5;
    vc.lambda_functions = trials;
    vc.wiener_functions = trials;
    vc.tensor_instances = trials;
    std::ostringstream csv;
    csv << "check,instances,max_abs_diff,threshold,pass\n";
    bool all = true;
    for (auto* fn : {criterion_assignment, criterion_lambda_1d, criterion_wiener, criterion_tensor}) {
      const CriterionResult c = fn(vc);
      for (const auto& a : c.assertions) {
        csv << a.id << ',' << (c.number == 1 ? vc.assignment_lists : trials) << ',' << format_double(a.value) << ','
            << format_double(a.threshold) << ',' << (a.pass ? "pass" : "fail") << '\n';
        all = all && a.pass;
        if (!a.pass) log.error(a.id + " differs by " + format_double(a.value));
      }
    }
    write_text_file(path_in(opts, "oracle_check.csv"), csv.str());
    return all ? kExitOk : kExitAssertion;
  });
}

}  // namespace gvar
