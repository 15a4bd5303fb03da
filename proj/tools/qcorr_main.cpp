// SPDX-License-Identifier: Apache-2.0
//
// qcorr: command-line front end. Subcommands: state, analyze, discord,
// deficit, bb84, decode. Output is JSON by default or an aligned table;
// failures exit nonzero with a JSON error object on stderr.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "qcorr/io.hpp"

namespace {

using namespace qcorr;

struct CommonOptions {
  std::string out;
  std::string format = "json";
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> grid;
  std::optional<double> tol_override;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_optimizer) {
  cmd->add_option("--out", opt.out, "write the result to this file");
  cmd->add_option("--format", opt.format, "output format: json or table")
      ->check(CLI::IsMember({"json", "table"}));
  cmd->add_option("--config", opt.config_path, "flat JSON config file; flags override");
  if (with_optimizer) {
    cmd->add_option("--seed", opt.seed, "optimizer / protocol seed");
    cmd->add_option("--grid", opt.grid, "polar grid density (azimuthal is doubled)")
        ->check(CLI::Range(4, 4096));
    cmd->add_option("--tol", opt.tol_override, "refinement tolerance")
        ->check(CLI::PositiveNumber);
  }
}

Json load_config(const CommonOptions& opt) {
  if (opt.config_path.empty()) return Json::object();
  std::ifstream in(opt.config_path);
  if (!in) throw std::runtime_error("cannot open config file '" + opt.config_path + "'");
  Json j;
  in >> j;
  return j;
}

// Flags beat config file values; config beats defaults.
OptimizerConfig optimizer_from(const CommonOptions& opt, const Json& cfg) {
  OptimizerConfig c;
  if (cfg.contains("grid")) {
    c.grid_theta = cfg.at("grid").get<int>();
    c.grid_phi = 2 * c.grid_theta;
  }
  if (cfg.contains("seed")) c.seed = cfg.at("seed").get<std::uint64_t>();
  if (cfg.contains("tol")) c.refine_tol = cfg.at("tol").get<double>();
  if (opt.grid) {
    c.grid_theta = *opt.grid;
    c.grid_phi = 2 * *opt.grid;
  }
  if (opt.seed) c.seed = *opt.seed;
  if (opt.tol_override) c.refine_tol = *opt.tol_override;
  if (c.grid_theta < 4) throw std::invalid_argument("grid density must be >= 4");
  if (c.refine_tol <= 0) throw std::invalid_argument("tolerances must be > 0");
  return c;
}

DensityOperator resolve_state(const std::string& name_or_file) {
  for (const std::string& name : state_registry())
    if (name == name_or_file) return make_named_state(name_or_file).state;
  if (std::filesystem::exists(name_or_file)) return load_state(name_or_file);
  if (name_or_file.find('/') != std::string::npos ||
      name_or_file.find('.') != std::string::npos)
    throw std::runtime_error("cannot open state file '" + name_or_file + "'");
  // Not a file; report the registry.
  make_named_state(name_or_file);
  throw std::runtime_error("unreachable");
}

int measured_side_index(const std::string& side, const DensityOperator& rho) {
  int idx = -1;
  if (side == "A" || side == "a") idx = 0;
  else if (side == "B" || side == "b") idx = 1;
  else idx = std::stoi(side);
  if (idx < 0 || idx >= rho.subsystem_count())
    throw std::invalid_argument("measured side out of range");
  return idx;
}

void emit(const Json& j, const std::string& rendered_table,
          const CommonOptions& opt) {
  const std::string text =
      opt.format == "table" ? rendered_table : j.dump(2) + "\n";
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(opt.out);
    if (!f) throw std::runtime_error("cannot open '" + opt.out + "' for writing");
    f << text;
  }
}

std::string table_row(const std::string& label, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  char line[128];
  std::snprintf(line, sizeof(line), "  %-28s %s\n", label.c_str(), buf);
  return line;
}

std::string state_table(const DensityOperator& rho) {
  std::string out = "dims:";
  for (int d : rho.dims()) out += " " + std::to_string(d);
  out += "\nmatrix (re, im):\n";
  for (int r = 0; r < rho.total_dim(); ++r) {
    out += " ";
    for (int c = 0; c < rho.total_dim(); ++c) {
      char buf[80];
      std::snprintf(buf, sizeof(buf), " (%.9g, %.9g)", rho.matrix()(r, c).real(),
                    rho.matrix()(r, c).imag());
      out += buf;
    }
    out += "\n";
  }
  return out;
}

int cmd_state(const std::string& which, const CommonOptions& opt) {
  const DensityOperator rho = resolve_state(which);
  emit(state_to_json(rho), state_table(rho), opt);
  return 0;
}

int cmd_analyze(const std::string& which, const CommonOptions& opt) {
  const Json cfg = load_config(opt);
  const OptimizerConfig oc = optimizer_from(opt, cfg);
  const DensityOperator rho = resolve_state(which);
  if (rho.subsystem_count() < 2)
    throw std::invalid_argument("analyze needs at least two subsystems");

  const std::vector<int> side_a = {0};
  const std::vector<int> side_b = complement_subsystems(rho, side_a);
  const double s_a = von_neumann_entropy(partial_trace(rho, side_a));
  const double s_b = von_neumann_entropy(partial_trace(rho, side_b));
  const double s_ab = von_neumann_entropy(rho);

  Json j;
  j["dims"] = rho.dims();
  j["S_A"] = s_a;
  j["S_B"] = s_b;
  j["S_AB"] = s_ab;
  j["S_B_given_A"] = s_ab - s_a;
  j["S_A_given_B"] = s_ab - s_b;
  j["mutual_information"] = mutual_information(rho, side_a);
  j["negativity"] = negativity(rho, side_a);

  std::string table = "analysis (cut: subsystem 0 | rest)\n";
  table += table_row("S(A)", s_a);
  table += table_row("S(B)", s_b);
  table += table_row("S(AB)", s_ab);
  table += table_row("S(B|A)", s_ab - s_a);
  table += table_row("S(A|B)", s_ab - s_b);
  table += table_row("I(A:B)", j["mutual_information"].get<double>());
  table += table_row("negativity", j["negativity"].get<double>());

  Json discord_j = Json::object(), deficit_j = Json::object();
  for (int s = 0; s < rho.subsystem_count(); ++s) {
    const std::string key = "measured_" + std::to_string(s);
    const OptimizationReport d = discord(rho, s, oc);
    const OptimizationReport w = one_way_deficit(rho, s, oc);
    discord_j[key] = d.value;
    deficit_j[key] = w.value;
    table += table_row("discord (measured " + std::to_string(s) + ")", d.value);
    table += table_row("deficit (measured " + std::to_string(s) + ")", w.value);
  }
  j["discord"] = std::move(discord_j);
  j["one_way_deficit"] = std::move(deficit_j);

  if (rho.subsystem_count() == 2) {
    const ClassicalityVerdict cc = is_classically_correlated(rho, tol::classical, oc);
    const ClassicalityVerdict ca = is_classical_quantum(rho, 0, tol::classical, oc);
    const ClassicalityVerdict cb = is_classical_quantum(rho, 1, tol::classical, oc);
    j["classically_correlated"] = verdict_to_json(cc);
    j["classical_quantum_A"] = verdict_to_json(ca);
    j["classical_quantum_B"] = verdict_to_json(cb);
    table += "  classically correlated       ";
    table += cc.is_classical ? "yes" : "no";
    table += "\n  classical-quantum (A)        ";
    table += ca.is_classical ? "yes" : "no";
    table += "\n  classical-quantum (B)        ";
    table += cb.is_classical ? "yes" : "no";
    table += "\n";
  }
  emit(j, table, opt);
  return 0;
}

int cmd_minimize(const std::string& which, const std::string& side, bool deficit_mode,
                 const CommonOptions& opt) {
  const Json cfg = load_config(opt);
  const OptimizerConfig oc = optimizer_from(opt, cfg);
  const DensityOperator rho = resolve_state(which);
  const int measured = measured_side_index(side, rho);
  const OptimizationReport rep = deficit_mode ? one_way_deficit(rho, measured, oc)
                                              : discord(rho, measured, oc);
  std::string table = deficit_mode ? "one-way deficit\n" : "quantum discord\n";
  table += table_row("value", rep.value);
  table += table_row("grid_size", rep.grid_size);
  table += table_row("refinement_steps", rep.refinement_steps);
  emit(report_to_json(rep), table, opt);
  return 0;
}

int cmd_bb84(int rounds, std::uint64_t seed, bool seed_given, bool eavesdrop,
             const CommonOptions& opt) {
  const Json cfg = load_config(opt);
  if (cfg.contains("rounds") && rounds < 0) rounds = cfg.at("rounds").get<int>();
  if (cfg.contains("eavesdrop") && !eavesdrop) eavesdrop = cfg.at("eavesdrop").get<bool>();
  if (cfg.contains("seed") && !seed_given) seed = cfg.at("seed").get<std::uint64_t>();
  if (rounds < 0) rounds = 10000;

  const BB84Run run = run_bb84(rounds, seed, eavesdrop);
  std::string table = "bb84 run\n";
  table += table_row("rounds", run.rounds);
  table += table_row("sifted_length", static_cast<double>(run.sifted_key_a.size()));
  table += table_row("sifted_errors", run.sifted_errors);
  table += table_row("qber", run.qber);
  table += table_row("mismatch_correlation", run.mismatch_stats.correlation);
  emit(bb84_to_json(run), table, opt);
  return 0;
}

int cmd_decode(std::string state_name, std::string encoding_name,
               const CommonOptions& opt) {
  const Json cfg = load_config(opt);
  if (state_name.empty())
    state_name = cfg.value("state", std::string("discordant_separable"));
  if (encoding_name.empty())
    encoding_name = cfg.value("encoding", std::string("pauli4"));

  DecodeConfig dc;
  const OptimizerConfig oc = optimizer_from(opt, cfg);
  dc.global.seed = oc.seed;
  dc.global.refine_tol = oc.refine_tol;
  dc.locc_outer.refine_tol = oc.refine_tol;
  dc.locc_inner.refine_tol = oc.refine_tol;
  if (opt.grid || cfg.contains("grid")) {
    dc.locc_outer.grid_theta = oc.grid_theta;
    dc.locc_outer.grid_phi = oc.grid_phi;
  }

  const DecodingTask task{resolve_state(state_name), make_encoding(encoding_name)};
  const DecodingExperiment exp = run_decoding(task, dc);

  std::string table = "decoding game (" + state_name + ", " + encoding_name + ")\n";
  table += table_row("prior_entropy", exp.prior_entropy);
  table += table_row("holevo", exp.holevo);
  table += table_row("global_result", exp.global_result);
  table += table_row("locc_result", exp.locc_result);
  table += table_row("advantage", exp.advantage);
  emit(decode_to_json(exp), table, opt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum correlations toolkit"};
  app.require_subcommand(1);

  CommonOptions state_opt, analyze_opt, discord_opt, deficit_opt, bb84_opt, decode_opt;
  std::string state_name, analyze_name, discord_name, deficit_name;
  std::string discord_side = "A", deficit_side = "A";
  std::string decode_state, decode_encoding;
  int bb84_rounds = -1;
  std::uint64_t bb84_seed = 1;
  bool bb84_eve = false;

  CLI::App* c_state = app.add_subcommand("state", "emit a named or loaded state");
  c_state->add_option("name", state_name, "registry name or state file")->required();
  add_common(c_state, state_opt, false);

  CLI::App* c_analyze = app.add_subcommand("analyze", "full correlation report");
  c_analyze->add_option("name", analyze_name, "registry name or state file")->required();
  add_common(c_analyze, analyze_opt, true);

  CLI::App* c_discord = app.add_subcommand("discord", "minimized quantum discord");
  c_discord->add_option("name", discord_name, "registry name or state file")->required();
  c_discord->add_option("--measured-side", discord_side, "A, B or a subsystem index");
  add_common(c_discord, discord_opt, true);

  CLI::App* c_deficit = app.add_subcommand("deficit", "one-way information deficit");
  c_deficit->add_option("name", deficit_name, "registry name or state file")->required();
  c_deficit->add_option("--measured-side", deficit_side, "A, B or a subsystem index");
  add_common(c_deficit, deficit_opt, true);

  CLI::App* c_bb84 = app.add_subcommand("bb84", "run the key-distribution protocol");
  c_bb84->add_option("--rounds", bb84_rounds, "number of rounds");
  c_bb84->add_option("--seed", bb84_seed, "run seed");
  c_bb84->add_flag("--eavesdrop", bb84_eve, "intercept-resend attacker");
  add_common(c_bb84, bb84_opt, false);

  CLI::App* c_decode = app.add_subcommand("decode", "run the decoding game");
  c_decode->add_option("--state", decode_state, "initial state name or file");
  c_decode->add_option("--encoding", decode_encoding, "encoding name (flip2, pauli4)");
  add_common(c_decode, decode_opt, true);

  try {
    app.parse(argc, argv);
    if (*c_state) return cmd_state(state_name, state_opt);
    if (*c_analyze) return cmd_analyze(analyze_name, analyze_opt);
    if (*c_discord) return cmd_minimize(discord_name, discord_side, false, discord_opt);
    if (*c_deficit) return cmd_minimize(deficit_name, deficit_side, true, deficit_opt);
    if (*c_bb84)
      return cmd_bb84(bb84_rounds, bb84_seed, c_bb84->count("--seed") > 0, bb84_eve,
                      bb84_opt);
    if (*c_decode) return cmd_decode(decode_state, decode_encoding, decode_opt);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << qcorr::Json{{"error", e.what()}}.dump() << "\n";
    return e.get_exit_code() == 0 ? 1 : e.get_exit_code();
  } catch (const std::exception& e) {
    std::cerr << qcorr::Json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
}
