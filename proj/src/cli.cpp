#include "fpgt/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fpgt/numfmt.hpp"
#include "fpgt/scan.hpp"
#include "json.hpp"

namespace fpgt::cli {

namespace {

using nlohmann::json;

struct CommonFlags {
  std::string channel_spec;
  int c = 0;
  bool c_from_spec = false;
  std::string decoder = "simple";
  std::string output = "human";
  std::string out_path;
  OptimizerOptions opt;
  bool no_small_p = false;
};

void add_optimizer_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--grid-points", f.opt.grid_points, "grid samples in (0,1)")
      ->capture_default_str();
  cmd->add_option("--refine-tol", f.opt.refine_tolerance_p,
                  "bracket refinement tolerance on p")
      ->capture_default_str();
  cmd->add_option("--band", f.opt.near_optimal_band,
                  "near-optimal tie band in bits")
      ->capture_default_str();
  cmd->add_flag("--no-small-p", f.no_small_p,
                "disable the k*ln2/(4c) grid augmentation");
}

void add_channel_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--channel", f.channel_spec, "channel spec string")->required();
  cmd->add_option("--c", f.c, "coalition size");
  cmd->add_flag("--c-from-spec", f.c_from_spec,
                "derive c from a custom channel spec");
}

void add_output_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--output", f.output, "human | json | csv")
      ->check(CLI::IsMember({"human", "json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", f.out_path, "write to this file instead of stdout");
}

OptimizerOptions finish_options(CommonFlags& f) {
  f.opt.small_p_augmentation = !f.no_small_p;
  return f.opt;
}

CollusionChannel build_channel(const CommonFlags& f) {
  std::optional<int> c;
  if (!f.c_from_spec) {
    if (f.c > 0) c = f.c;
  }
  return parse_channel(f.channel_spec, c);
}

void emit(const CommonFlags& f, std::ostream& out, std::ostream& err,
          const std::string& text) {
  if (f.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(f.out_path, std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + f.out_path + "'");
  file << text;
  if (!file.good()) throw std::runtime_error("write failed: '" + f.out_path + "'");
  err << "wrote " << f.out_path << "\n";
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> values;
  std::stringstream in(csv);
  std::string token;
  while (std::getline(in, token, ',')) values.push_back(num::parse_int(token));
  if (values.empty()) throw SpecParseError("empty integer list");
  return values;
}

std::vector<ModelId> parse_model_list(const std::string& csv) {
  std::vector<ModelId> models;
  std::stringstream in(csv);
  std::string token;
  while (std::getline(in, token, ',')) models.push_back(parse_model(token));
  if (models.empty()) throw SpecParseError("empty model list");
  return models;
}

json local_maxima_json(const CapacityResult& res) {
  json arr = json::array();
  for (const LocalMaximum& m : res.local_maxima)
    arr.push_back({{"p", m.p}, {"bits", m.bits}});
  return arr;
}

int run_capacity(const CommonFlags& flags, bool optimum_only, std::ostream& out,
                 std::ostream& err) {
  CommonFlags f = flags;
  const OptimizerOptions opt = finish_options(f);
  const CollusionChannel ch = build_channel(f);
  const Decoder d = decoder_from_string(f.decoder);
  const CapacityResult res = maximize_payoff(ch, d, opt);
  if (res.degenerate)
    err << "warning: payoff is identically zero; reporting capacity 0 at p = 1/2\n";

  const double scaled_c = res.capacity * ch.c;
  const bool interleaving = f.channel_spec == "interleaving";
  const double scaled_c2 = res.capacity * ch.c * ch.c;

  std::ostringstream text;
  if (f.output == "json") {
    json j = {{"channel", f.channel_spec},
              {"c", ch.c},
              {"decoder", to_string(d)},
              {"capacity_bits", res.capacity},
              {"p_star", res.p_star},
              {"c_capacity", scaled_c},
              {"local_maxima", local_maxima_json(res)},
              {"evaluations", res.evaluations},
              {"degenerate", res.degenerate}};
    if (interleaving) j["c2_capacity"] = scaled_c2;
    text << j.dump(2) << "\n";
  } else if (f.output == "csv") {
    text << to_csv(std::vector<SweepRow>{{ch.c, f.channel_spec, d, res.capacity,
                                          res.p_star, scaled_c}});
  } else {
    text << "channel: " << f.channel_spec << "\n";
    text << "c: " << ch.c << "\n";
    text << "decoder: " << to_string(d) << "\n";
    if (!optimum_only) {
      text << "capacity_bits: " << num::sig(res.capacity, 12) << "\n";
      text << "c_capacity: " << num::sig(scaled_c, 6) << "\n";
      if (interleaving)
        text << "c2_capacity: " << num::sig(scaled_c2, 6) << "\n";
    }
    text << "p_star: " << num::sig(res.p_star, 12) << "\n";
    if (optimum_only || res.local_maxima.size() > 1) {
      text << "near_optimal:\n";
      for (const LocalMaximum& m : res.local_maxima)
        text << "  p=" << num::sig(m.p, 12) << " bits=" << num::sig(m.bits, 12)
             << "\n";
    }
  }
  emit(f, out, err, text.str());
  return 0;
}

// Verification tolerance on the final scaled residual, per model/decoder.
double verify_tolerance(const ModelId& m, Decoder d) {
  constexpr double kLn2 = std::numbers::ln2;
  const bool simple = d == Decoder::simple;
  switch (m.model) {
    case Model::interleaving: return 0.03 / (2.0 * kLn2);
    case Model::all1: return simple ? 0.01 : 1e-9;
    case Model::majority: return simple ? 0.03 / (std::numbers::pi * kLn2) : 1e-9;
    case Model::minority: return simple ? 0.01 : 1e-9;
    case Model::coinflip: return simple ? 0.02 * kLn2 / 4.0 : 0.01 * std::log2(1.25);
    case Model::additive: return 0.01;
    case Model::dilution: return simple ? 0.02 : 0.01;
    case Model::threshold: return 1e-9;
  }
  return 1e-9;
}

int run_verify(const CommonFlags& flags, const std::string& model_spec,
               const std::string& c_list, std::ostream& out, std::ostream& err) {
  CommonFlags f = flags;
  const OptimizerOptions opt = finish_options(f);
  const ModelId model = parse_model(model_spec);
  const Decoder d = decoder_from_string(f.decoder);
  const std::vector<int> cs = parse_int_list(c_list);
  const auto rows = convergence_report(model, d, cs, opt);

  const double tol = verify_tolerance(model, d);
  bool shrinking = true;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].scaled_residual > rows[i - 1].scaled_residual + 1e-6)
      shrinking = false;
  const bool pass = shrinking && rows.back().scaled_residual <= tol;
  const std::string verdict = pass ? "PASS" : "FAIL";
  const std::string verdict_line = verdict + " model=" + model.to_string() +
                                   " decoder=" + to_string(d) +
                                   " final_residual=" +
                                   num::sig(rows.back().scaled_residual, 6) +
                                   " tolerance=" + num::sig(tol, 6);

  std::ostringstream text;
  if (f.output == "json") {
    json jrows = json::array();
    for (const ConvergenceRow& r : rows)
      jrows.push_back({{"c", r.c},
                       {"numeric_C", r.numeric_capacity},
                       {"predicted_C", r.predicted_capacity},
                       {"scaled_residual", r.scaled_residual},
                       {"c_p_numeric", r.numeric_p_times_c},
                       {"c_p_predicted", r.predicted_p_times_c}});
    const json j = {{"model", model.to_string()}, {"decoder", to_string(d)},
                    {"rows", jrows},              {"pass", pass},
                    {"tolerance", tol},           {"residuals_shrinking", shrinking}};
    text << j.dump(2) << "\n";
  } else if (f.output == "csv") {
    text << to_csv(rows);
    err << verdict_line << "\n";
  } else {
    text << "model: " << model.to_string() << "\n";
    text << "decoder: " << to_string(d) << "\n";
    text << "c,numeric_C,predicted_C,scaled_residual,c_p_numeric,c_p_predicted\n";
    for (const ConvergenceRow& r : rows)
      text << r.c << ',' << num::sig(r.numeric_capacity, 12) << ','
           << num::sig(r.predicted_capacity, 12) << ','
           << num::sig(r.scaled_residual, 6) << ','
           << num::sig(r.numeric_p_times_c, 6) << ','
           << num::sig(r.predicted_p_times_c, 6) << "\n";
    text << verdict_line << "\n";
  }
  emit(f, out, err, text.str());
  return pass ? 0 : 1;
}

int run_scan_threshold(const CommonFlags& flags, const std::string& gap,
                       std::ostream& out, std::ostream& err) {
  CommonFlags f = flags;
  const OptimizerOptions opt = finish_options(f);
  if (gap != "coin" && gap != "int")
    throw SpecParseError("gap must be 'coin' or 'int', got '" + gap + "'");
  const GridScan grid =
      threshold_grid(f.c, gap == "coin" ? GapKind::coin : GapKind::interleaving,
                     decoder_from_string(f.decoder), opt);
  emit(f, out, err,
       f.output == "json" ? to_json(grid) + "\n" : to_csv(grid));
  return 0;
}

int run_sweep(const CommonFlags& flags, const std::string& model_spec,
              const std::string& c_list, const std::string& scaling,
              std::ostream& out, std::ostream& err) {
  CommonFlags f = flags;
  const OptimizerOptions opt = finish_options(f);
  Scaling s;
  if (scaling == "c") s = Scaling::c;
  else if (scaling == "c2") s = Scaling::c2;
  else if (scaling == "c32") s = Scaling::c32;
  else throw SpecParseError("scaling must be c, c2 or c32, got '" + scaling + "'");
  const auto rows = sweep_c(parse_model(model_spec),
                            decoder_from_string(f.decoder),
                            parse_int_list(c_list), s, opt);
  emit(f, out, err,
       f.output == "json" ? to_json(rows) + "\n" : to_csv(rows));
  return 0;
}

int run_universal(const CommonFlags& flags, const std::string& models_list,
                  const std::string& c_list, int nodes, std::ostream& out,
                  std::ostream& err) {
  CommonFlags f = flags;
  const auto rows =
      universal_sweep(parse_model_list(models_list),
                      decoder_from_string(f.decoder), parse_int_list(c_list),
                      nodes);
  emit(f, out, err,
       f.output == "json" ? to_json(rows) + "\n" : to_csv(rows));
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"simple- and joint-decoder capacities of collusion channels"};
  app.name("fpgt");
  app.require_subcommand(1);

  CommonFlags f;

  CLI::App* capacity = app.add_subcommand(
      "capacity", "maximize the payoff over the bias p");
  add_channel_flags(capacity, f);
  capacity->add_option("--decoder", f.decoder, "simple | joint")->required();
  add_optimizer_flags(capacity, f);
  add_output_flags(capacity, f);

  CLI::App* optimum = app.add_subcommand(
      "optimum", "report the maximizing bias and the near-optimal tie set");
  add_channel_flags(optimum, f);
  optimum->add_option("--decoder", f.decoder, "simple | joint")->required();
  add_optimizer_flags(optimum, f);
  add_output_flags(optimum, f);

  std::string model_spec;
  std::string c_list;
  CLI::App* verify = app.add_subcommand(
      "verify", "compare numeric optima against the closed-form predictions");
  verify->add_option("--model", model_spec, "model spec string")->required();
  verify->add_option("--decoder", f.decoder, "simple | joint")->required();
  verify->add_option("--c", c_list, "comma-separated coalition sizes")->required();
  add_optimizer_flags(verify, f);
  add_output_flags(verify, f);

  std::string gap = "coin";
  CLI::App* scan = app.add_subcommand(
      "scan-threshold", "capacity grid over all threshold bounds (l, u)");
  scan->add_option("--c", f.c, "coalition size")->required();
  scan->add_option("--gap", gap, "coin | int")->required();
  scan->add_option("--decoder", f.decoder, "simple | joint")->required();
  add_optimizer_flags(scan, f);
  add_output_flags(scan, f);

  std::string scaling = "c";
  CLI::App* sweep = app.add_subcommand(
      "sweep", "capacities across coalition sizes");
  sweep->add_option("--model", model_spec, "model spec string")->required();
  sweep->add_option("--decoder", f.decoder, "simple | joint")->required();
  sweep->add_option("--c", c_list, "comma-separated coalition sizes")->required();
  sweep->add_option("--scaling", scaling, "c | c2 | c32")->capture_default_str();
  add_optimizer_flags(sweep, f);
  add_output_flags(sweep, f);

  std::string models_list;
  int nodes = 1024;
  CLI::App* universal = app.add_subcommand(
      "universal", "arcsine-averaged capacities across coalition sizes");
  universal->add_option("--models", models_list, "comma-separated model specs")
      ->required();
  universal->add_option("--decoder", f.decoder, "simple | joint")->required();
  universal->add_option("--c", c_list, "comma-separated coalition sizes")
      ->required();
  universal->add_option("--nodes", nodes, "quadrature node count")
      ->capture_default_str();
  add_output_flags(universal, f);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("fpgt");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(capacity)) return run_capacity(f, false, out, err);
    if (app.got_subcommand(optimum)) return run_capacity(f, true, out, err);
    if (app.got_subcommand(verify))
      return run_verify(f, model_spec, c_list, out, err);
    if (app.got_subcommand(scan)) return run_scan_threshold(f, gap, out, err);
    if (app.got_subcommand(sweep))
      return run_sweep(f, model_spec, c_list, scaling, out, err);
    if (app.got_subcommand(universal))
      return run_universal(f, models_list, c_list, nodes, out, err);
    err << "error: no subcommand\n";
    return 2;
  } catch (const SpecParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? argc - 1 : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace fpgt::cli
