#pragma once

// Command-line front end: argument parsing, command dispatch and report
// rendering. Exit codes: 0 all checks pass, 1 a check is falsified, 2 usage error.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pss/fock.hpp"
#include "pss/relations.hpp"
#include "pss/verification.hpp"

namespace pss::cli {

using Json = nlohmann::ordered_json;

enum class Command { Verify, Dims, Lemmas, Qseries };
enum class ModuleChoice { Lambda0, Lambda1, Lambda1Prime, All };
enum class Format { Text, Json, Csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitFalsified = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  Command command = Command::Verify;
  ModuleChoice module = ModuleChoice::All;
  int max_weight = 12;
  int t_max = 20;
  Format format = Format::Text;
  std::optional<std::string> output_path;
};

inline const std::map<std::string, Command>& command_names() {
  static const std::map<std::string, Command> m{
      {"verify", Command::Verify}, {"dims", Command::Dims}, {"lemmas", Command::Lemmas}, {"qseries", Command::Qseries}};
  return m;
}
inline const std::map<std::string, ModuleChoice>& module_names() {
  static const std::map<std::string, ModuleChoice> m{{"lambda0", ModuleChoice::Lambda0},
                                                     {"lambda1", ModuleChoice::Lambda1},
                                                     {"lambda1prime", ModuleChoice::Lambda1Prime},
                                                     {"all", ModuleChoice::All}};
  return m;
}
inline const std::map<std::string, Format>& format_names() {
  static const std::map<std::string, Format> m{{"text", Format::Text}, {"json", Format::Json}, {"csv", Format::Csv}};
  return m;
}

template <class E>
std::string name_of(const std::map<std::string, E>& names, E value) {
  for (const auto& [k, v] : names)
    if (v == value) return k;
  return "?";
}

inline std::vector<ModuleTag> selected_modules(ModuleChoice m) {
  switch (m) {
    case ModuleChoice::Lambda0: return {ModuleTag::Lambda0};
    case ModuleChoice::Lambda1: return {ModuleTag::Lambda1};
    case ModuleChoice::Lambda1Prime: return {ModuleTag::Lambda1Prime};
    case ModuleChoice::All: return {ModuleTag::Lambda0, ModuleTag::Lambda1, ModuleTag::Lambda1Prime};
  }
  return {};
}

// the square-zero sweep in `lemmas` grows quickly with the weight bound
inline int default_max_weight(Command c) { return c == Command::Lemmas ? 6 : 12; }

/// Checks the config invariants; returns a message on violation.
inline std::optional<std::string> validate(const RunConfig& cfg) {
  // qseries accepts weight 0 (a single row)
  const int min_weight = cfg.command == Command::Qseries ? 0 : 1;
  if (cfg.max_weight < min_weight) return "--max-weight must be >= " + std::to_string(min_weight);
  if (cfg.t_max < 4) return "--t-max must be >= 4";
  return std::nullopt;
}

/// Parses argv into a config, or returns the exit code to stop with.
inline std::variant<RunConfig, int> parse_args(int argc, const char* const* argv, std::ostream& out,
                                               std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact verification of principal subspace presentations for sl(2)^ level one", "pss"};
  app.require_subcommand(1, 1);

  std::string module = "all";
  std::string format = "text";
  std::string out_path;
  std::optional<int> max_weight;
  int t_max = cfg.t_max;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--module", module, "lambda0 | lambda1 | lambda1prime | all")
        ->check(CLI::IsMember({"lambda0", "lambda1", "lambda1prime", "all"}));
    sub->add_option("--max-weight", max_weight, "Largest weight checked");
    sub->add_option("--t-max", t_max, "Largest t in identity sweeps");
    sub->add_option("--format", format, "text | json | csv")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--out", out_path, "Write the report to PATH instead of stdout");
  };
  add_common(app.add_subcommand("verify", "Check kernel = ideal on every bigraded piece"));
  add_common(app.add_subcommand("dims", "Graded dimensions of the principal subspaces"));
  add_common(app.add_subcommand("lemmas", "Sweep the supporting polynomial and operator identities"));
  add_common(app.add_subcommand("qseries", "Character coefficients against the partition count"));

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  cfg.command = command_names().at(app.get_subcommands().front()->get_name());
  cfg.module = module_names().at(module);
  cfg.format = format_names().at(format);
  cfg.max_weight = max_weight.value_or(default_max_weight(cfg.command));
  cfg.t_max = t_max;
  if (!out_path.empty()) cfg.output_path = out_path;

  if (auto msg = validate(cfg)) {
    err << "error: " << *msg << "\n";
    return kExitUsage;
  }
  return cfg;
}

inline Json config_json(const RunConfig& cfg) {
  Json j;
  j["command"] = name_of(command_names(), cfg.command);
  j["module"] = name_of(module_names(), cfg.module);
  j["max_weight"] = cfg.max_weight;
  j["t_max"] = cfg.t_max;
  j["format"] = name_of(format_names(), cfg.format);
  return j;
}

inline Json piece_json(const PieceReport& p) {
  Json j;
  j["idx"] = Json{{"weight", p.idx.weight}, {"charge", p.idx.charge}};
  j["module_tag"] = std::string(module_name(p.module_tag));
  j["dim_domain"] = p.dim_domain;
  j["rank_eval"] = p.rank_eval;
  j["dim_kernel"] = p.dim_kernel;
  j["dim_ideal_piece"] = p.dim_ideal_piece;
  j["containment_ok"] = p.containment_ok;
  j["equality_ok"] = p.equality_ok;
  if (p.witness) j["witness"] = *p.witness;
  return j;
}

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

struct VerifyOutcome {
  std::vector<VerificationRun> runs;

  // every piece of every run, ordered by (weight, charge, module)
  std::vector<const PieceReport*> ordered_pieces() const {
    std::vector<const PieceReport*> out;
    for (const auto& r : runs)
      for (const auto& p : r.pieces) out.push_back(&p);
    std::stable_sort(out.begin(), out.end(), [](const PieceReport* a, const PieceReport* b) {
      return std::tuple(a->idx.weight, a->idx.charge, a->module_tag) <
             std::tuple(b->idx.weight, b->idx.charge, b->module_tag);
    });
    return out;
  }

  std::map<std::string, bool> lemmas() const {
    std::map<std::string, bool> out;
    for (const auto& r : runs)
      for (const auto& [name, ok] : r.lemma_results) out[std::string(module_name(r.module_tag)) + "." + name] = ok;
    return out;
  }

  bool all_pass() const {
    return std::all_of(runs.begin(), runs.end(), [](const auto& r) { return r.all_pass(); });
  }
};

inline Json dims_json(ModuleTag tag, const DimsTable& dims) {
  Json arr = Json::array();
  for (const auto& [idx, d] : dims)
    arr.push_back(Json{{"module_tag", std::string(module_name(tag))}, {"weight", idx.weight}, {"charge", idx.charge}, {"dim", d}});
  return arr;
}

inline void render_verify(const RunConfig& cfg, const VerifyOutcome& outcome, std::ostream& os) {
  const auto pieces = outcome.ordered_pieces();
  switch (cfg.format) {
    case Format::Json: {
      Json j;
      j["run"] = config_json(cfg);
      j["pieces"] = Json::array();
      for (const auto* p : pieces) j["pieces"].push_back(piece_json(*p));
      j["lemmas"] = Json::object();
      for (const auto& [name, ok] : outcome.lemmas()) j["lemmas"][name] = ok;
      j["dims"] = Json::array();
      for (const auto& r : outcome.runs)
        for (auto& d : dims_json(r.module_tag, r.dims_table)) j["dims"].push_back(d);
      os << j.dump(2) << "\n";
      break;
    }
    case Format::Csv: {
      os << "module_tag,weight,charge,dim_domain,rank_eval,dim_kernel,dim_ideal_piece,containment_ok,equality_ok\n";
      for (const auto* p : pieces)
        os << module_name(p->module_tag) << ',' << p->idx.weight << ',' << p->idx.charge << ',' << p->dim_domain << ','
           << p->rank_eval << ',' << p->dim_kernel << ',' << p->dim_ideal_piece << ',' << bool_str(p->containment_ok)
           << ',' << bool_str(p->equality_ok) << '\n';
      break;
    }
    case Format::Text: {
      char line[160];
      std::snprintf(line, sizeof line, "%-14s %6s %6s %6s %6s %6s %6s  %s\n", "module", "weight", "charge", "domain",
                    "rank", "kernel", "ideal", "status");
      os << line;
      std::size_t passed = 0;
      for (const auto* p : pieces) {
        std::snprintf(line, sizeof line, "%-14s %6d %6d %6zu %6zu %6zu %6zu  %s\n",
                      std::string(module_name(p->module_tag)).c_str(), p->idx.weight, p->idx.charge, p->dim_domain,
                      p->rank_eval, p->dim_kernel, p->dim_ideal_piece, p->equality_ok ? "ok" : "FAIL");
        os << line;
        if (p->witness) os << "    witness: " << *p->witness << "\n";
        passed += p->equality_ok ? 1 : 0;
      }
      for (const auto& [name, ok] : outcome.lemmas()) os << (ok ? "PASS " : "FAIL ") << name << "\n";
      os << passed << "/" << pieces.size() << " pieces pass\n";
      break;
    }
  }
}

inline VerifyOutcome run_verify(const RunConfig& cfg) {
  VerifyOutcome outcome;
  for (auto tag : selected_modules(cfg.module)) outcome.runs.push_back(verify_presentation(tag, cfg.max_weight));
  return outcome;
}

/// Named results of the identity sweeps, in a fixed order.
inline std::vector<std::pair<std::string, bool>> run_lemmas(int t_max, int max_weight) {
  std::vector<std::pair<std::string, bool>> out;
  auto sweep = [](int lo, int hi, auto&& check) {
    for (int t = lo; t <= hi; ++t)
      if (!check(t)) return false;
    return true;
  };
  out.emplace_back("tau_R_identity", sweep(2, t_max, check_tau_R_identity));
  out.emplace_back("lift_identity", sweep(4, t_max, check_lift_identity));
  out.emplace_back("derivation_R_identity", sweep(2, t_max, check_D_R_identity));
  out.emplace_back("rho_R0_to_R1", sweep(4, t_max, [](int t) { return rho_project(build_R(t, -1)) == build_R(t, -2); }));
  out.emplace_back("square_zero", check_square_zero(max_weight));

  bool inclusion = true;
  bool onto = true;
  for (const auto& idx : domain_pieces(ModuleTag::Lambda0, max_weight)) {
    if (idx.charge < 1) continue;
    inclusion = inclusion && check_tau_ideal_inclusion(idx);
    onto = onto && check_tau_onto_prime(idx);
  }
  out.emplace_back("tau_ideal_inclusion", inclusion);
  out.emplace_back("tau_ideal_onto_prime", onto);
  out.emplace_back("ideal_D_stability", max_weight >= 2 ? check_ideal_D_stability(max_weight) : true);
  return out;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& os) {
  const auto outcome = run_verify(cfg);
  render_verify(cfg, outcome, os);
  return outcome.all_pass() ? kExitOk : kExitFalsified;
}

inline int cmd_lemmas(const RunConfig& cfg, std::ostream& os) {
  const auto results = run_lemmas(cfg.t_max, cfg.max_weight);
  bool all = true;
  switch (cfg.format) {
    case Format::Json: {
      Json j;
      j["run"] = config_json(cfg);
      j["lemmas"] = Json::object();
      for (const auto& [name, ok] : results) j["lemmas"][name] = ok;
      os << j.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      os << "name,ok\n";
      for (const auto& [name, ok] : results) os << name << ',' << bool_str(ok) << '\n';
      break;
    case Format::Text:
      for (const auto& [name, ok] : results) os << (ok ? "PASS " : "FAIL ") << name << "\n";
      break;
  }
  for (const auto& [name, ok] : results) all = all && ok;
  return all ? kExitOk : kExitFalsified;
}

inline int cmd_dims(const RunConfig& cfg, std::ostream& os) {
  std::vector<std::pair<ModuleTag, DimsTable>> tables;
  for (auto tag : selected_modules(cfg.module)) tables.emplace_back(tag, graded_dims(tag, cfg.max_weight));
  switch (cfg.format) {
    case Format::Json: {
      Json j;
      j["run"] = config_json(cfg);
      j["dims"] = Json::array();
      j["totals"] = Json::object();
      for (const auto& [tag, dims] : tables) {
        for (auto& d : dims_json(tag, dims)) j["dims"].push_back(d);
        j["totals"][std::string(module_name(tag))] = weight_totals(dims, cfg.max_weight);
      }
      os << j.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      os << "module_tag,weight,charge,dim\n";
      for (const auto& [tag, dims] : tables)
        for (const auto& [idx, d] : dims) os << module_name(tag) << ',' << idx.weight << ',' << idx.charge << ',' << d << '\n';
      break;
    case Format::Text:
      for (const auto& [tag, dims] : tables) {
        os << module_name(tag) << "\n";
        for (const auto& [idx, d] : dims)
          if (d != 0) os << "  (" << idx.weight << "," << idx.charge << ")  " << d << "\n";
        os << "  totals:";
        for (auto t : weight_totals(dims, cfg.max_weight)) os << ' ' << t;
        os << "\n";
      }
      break;
  }
  return kExitOk;
}

struct QseriesRow {
  int weight;
  std::size_t lambda0;
  std::size_t lambda0_oracle;
  std::size_t lambda1_prime;
  std::size_t lambda1_prime_oracle;

  bool match() const { return lambda0 == lambda0_oracle && lambda1_prime == lambda1_prime_oracle; }
};

inline std::vector<QseriesRow> run_qseries(int max_weight) {
  const auto t0 = weight_totals(graded_dims(ModuleTag::Lambda0, max_weight), max_weight);
  const auto t1 = weight_totals(graded_dims(ModuleTag::Lambda1Prime, max_weight), max_weight);
  std::vector<QseriesRow> rows;
  for (int n = 0; n <= max_weight; ++n) {
    std::size_t o0 = 0;
    std::size_t o1 = 0;
    for (int k = 0; k <= n; ++k) {
      o0 += partition_oracle(n, k, 1);
      o1 += partition_oracle(n, k, 2);
    }
    rows.push_back({n, t0[static_cast<std::size_t>(n)], o0, t1[static_cast<std::size_t>(n)], o1});
  }
  return rows;
}

inline int cmd_qseries(const RunConfig& cfg, std::ostream& os) {
  const auto rows = run_qseries(cfg.max_weight);
  switch (cfg.format) {
    case Format::Json: {
      Json j;
      j["run"] = config_json(cfg);
      j["qseries"] = Json::array();
      for (const auto& r : rows)
        j["qseries"].push_back(Json{{"weight", r.weight},
                                    {"lambda0", r.lambda0},
                                    {"lambda0_oracle", r.lambda0_oracle},
                                    {"lambda1_prime", r.lambda1_prime},
                                    {"lambda1_prime_oracle", r.lambda1_prime_oracle},
                                    {"match", r.match()}});
      os << j.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      os << "weight,lambda0,lambda0_oracle,lambda1_prime,lambda1_prime_oracle,match\n";
      for (const auto& r : rows)
        os << r.weight << ',' << r.lambda0 << ',' << r.lambda0_oracle << ',' << r.lambda1_prime << ','
           << r.lambda1_prime_oracle << ',' << bool_str(r.match()) << '\n';
      break;
    case Format::Text: {
      char line[128];
      std::snprintf(line, sizeof line, "%6s %10s %8s %12s %8s  %s\n", "weight", "W(L0)", "oracle", "W(L1)'", "oracle",
                    "match");
      os << line;
      for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%6d %10zu %8zu %12zu %8zu  %s\n", r.weight, r.lambda0, r.lambda0_oracle,
                      r.lambda1_prime, r.lambda1_prime_oracle, r.match() ? "yes" : "NO");
        os << line;
      }
      break;
    }
  }
  const bool all = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.match(); });
  return all ? kExitOk : kExitFalsified;
}

inline int dispatch(const RunConfig& cfg, std::ostream& os) {
  switch (cfg.command) {
    case Command::Verify: return cmd_verify(cfg, os);
    case Command::Dims: return cmd_dims(cfg, os);
    case Command::Lemmas: return cmd_lemmas(cfg, os);
    case Command::Qseries: return cmd_qseries(cfg, os);
  }
  return kExitUsage;
}

/// Full entry point: parse, run, write to stdout or --out.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  auto parsed = parse_args(argc, argv, out, err);
  if (auto* code = std::get_if<int>(&parsed)) return *code;
  const auto& cfg = std::get<RunConfig>(parsed);
  try {
    if (cfg.output_path) {
      std::ofstream file(*cfg.output_path);
      if (!file) {
        err << "error: cannot open " << *cfg.output_path << "\n";
        return kExitUsage;
      }
      return dispatch(cfg, file);
    }
    return dispatch(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFalsified;
  }
}

}  // namespace pss::cli
