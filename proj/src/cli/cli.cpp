#include "cli/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <thread>

#include <CLI11.hpp>

#include "cvtele/channel.hpp"
#include "cvtele/moments.hpp"
#include "cvtele/optimize.hpp"
#include "cvtele/photonstats.hpp"
#include "cvtele/states.hpp"

namespace cvtele::cli {
namespace {

constexpr double kPresetR = 1.25;

bool known(const auto& list, const std::string& name) {
  return std::find(std::begin(list), std::end(list), name) != std::end(list);
}

std::vector<double> number_list(const json& j, const char* key) {
  if (j.is_string()) return parse_grid(j.get<std::string>());
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_array()) throw InvalidArgument(std::string("'") + key + "' must be a number, list or grid string");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw InvalidArgument(std::string("'") + key + "' entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<std::string> string_list(const json& j, const char* key) {
  if (j.is_string()) return {j.get<std::string>()};
  if (!j.is_array()) throw InvalidArgument(std::string("'") + key + "' must be a string or list of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw InvalidArgument(std::string("'") + key + "' entries must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

template <class T>
T field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidArgument(std::string("config field '") + key + "' has the wrong type");
  }
}

InputState input_of(const RunConfig& cfg) {
  if (!cfg.input) throw InvalidArgument("command '" + cfg.command + "' needs --input");
  return state_from_json(*cfg.input);
}

double single(const std::vector<double>& v, const char* flag) {
  if (v.size() != 1) throw InvalidArgument(std::string("exactly one value of ") + flag + " is needed");
  return v.front();
}

Channel channel_of(const RunConfig& cfg) {
  return Channel(SqueezedBellResource(single(cfg.deltas, "--delta"), cfg.theta, single(cfg.rs, "--r")), cfg.g);
}

/// Runs body(i) for i in [0, n) on up to `jobs` threads.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < std::min(workers, n); ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
}

std::string status_of(const std::exception& ex) {
  const auto rec = error_record(ex)["error"];
  return rec["kind"].get<std::string>() + ": " + rec["message"].get<std::string>();
}

json channel_cells(const RunConfig& cfg) {
  if (cfg.identity_channel) return json::array({nullptr, nullptr, nullptr, nullptr});
  return json::array({single(cfg.deltas, "--delta"), cfg.theta, single(cfg.rs, "--r"), cfg.g});
}

Table moments_table(const RunConfig& cfg) {
  const auto input = input_of(cfg);
  MomentOptions opt;
  opt.diff = cfg.diff;
  const auto ms = cfg.identity_channel ? moment_set(input_charfn(input), opt)
                                       : moment_set(teleport(input, channel_of(cfg)).charfn, opt);
  const json m = to_json(ms);
  std::vector<std::string> cols = {"input", "delta", "theta", "r", "g"};
  std::vector<json> row = {to_descriptor(input)};
  for (const auto& c : channel_cells(cfg)) row.push_back(c);
  for (const char* key : {"x_mean", "p_mean", "x2_central", "p2_central", "cov_xp", "mu3_x", "mu3_p", "mu4_x", "mu4_p",
                          "kappa4_x", "kappa4_p", "n_mean", "g2_zero"}) {
    cols.emplace_back(key);
    row.push_back(m[key]);
  }
  Table t(cols);
  t.add_row(row);
  return t;
}

Table photon_table(const RunConfig& cfg) {
  const auto input = input_of(cfg);
  const auto p_in = input_distribution(input, cfg.N);
  const auto p_out = cfg.identity_channel ? p_in : output_photon_probs(teleport(input, channel_of(cfg)), cfg.N, cfg.quadrature);
  Table t({"n", "P_in", "P_out"});
  for (int n = 0; n <= cfg.N; ++n) t.add_row({n, p_in.probs[n], p_out.probs[n]});
  return t;
}

struct CellFailures {
  std::size_t count = 0;
  std::string first;
};

Table compare_table(const RunConfig& cfg, CellFailures& failed) {
  const auto input = input_of(cfg);
  const double r = single(cfg.rs, "--r");
  std::vector<std::vector<json>> rows(cfg.deltas.size());
  parallel_for(cfg.deltas.size(), cfg.jobs, [&](std::size_t i) {
    const double delta = cfg.deltas[i];
    try {
      const Channel ch(SqueezedBellResource(delta, cfg.theta, r), cfg.g);
      const auto m = distortion_measures(input, teleport(input, ch), cfg.N, cfg.quadrature);
      rows[i] = {delta, m.d_n, 1.0 - m.fidelity, m.fidelity, m.frobenius, m.purity_in, m.purity_out, m.d_n_next, "ok"};
    } catch (const std::exception& ex) {
      rows[i] = {delta, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, status_of(ex)};
    }
  });
  Table t({"delta", "D_N", "one_minus_fidelity", "fidelity", "frobenius", "purity_in", "purity_out", "D_N_next", "status"});
  for (auto& row : rows) {
    if (row.back() != "ok" && failed.count++ == 0) failed.first = row.back().get<std::string>();
    t.add_row(std::move(row));
  }
  return t;
}

Table optimum_table(const RunConfig& cfg, CellFailures& failed) {
  if (cfg.kinds.empty()) throw InvalidArgument("command '" + cfg.command + "' needs at least one --kind");
  std::vector<ObjectiveKind> kinds;
  for (const auto& k : cfg.kinds) kinds.push_back(objective_kind_from_string(k));
  Objective base;
  if (cfg.input) base.input = input_of(cfg);
  base.theta = cfg.theta;
  base.g = cfg.g;
  base.N = cfg.N;
  base.quadrature = cfg.quadrature;
  base.moments.diff = cfg.diff;
  base.source = cfg.source;
  const std::vector<double> rs = cfg.command == "optimize" ? std::vector<double>{single(cfg.rs, "--r")} : cfg.rs;
  const auto records = sweep_r(kinds, rs, base, cfg.jobs);
  Table t({"kind", "r", "delta_star", "objective_value", "bracket_lo", "bracket_hi", "iterations", "status"});
  for (const auto& rec : records) {
    if (rec.error) {
      if (failed.count++ == 0) failed.first = *rec.error;
      t.add_row({std::string(to_string(rec.kind)), rec.r, nullptr, nullptr, nullptr, nullptr, nullptr, *rec.error});
    } else {
      t.add_row({std::string(to_string(rec.kind)), rec.r, rec.delta_star, rec.objective_value, rec.bracket_lo,
                 rec.bracket_hi, rec.iterations, "ok"});
    }
  }
  return t;
}

double preset_delta(const std::string& name, double r) {
  const double t2 = std::tanh(r) * std::tanh(r);
  if (name == "sqvac") return 1.0;
  if (name == "photon_subtracted") return 1.0 / std::sqrt(1.0 + t2);
  if (name == "photon_added") return std::tanh(r) / std::sqrt(1.0 + t2);
  if (name == "optimal_coherent") return closed_form_delta(ClosedFormDelta::coherent_fidelity, r);
  throw InvalidArgument("unknown preset '" + name + "'");
}

Table surface_table(const RunConfig& cfg) {
  const double r = cfg.rs.empty() ? kPresetR : single(cfg.rs, "--r");
  std::vector<std::string> presets = cfg.presets;
  if (presets.empty()) presets.assign(std::begin(kPresets), std::end(kPresets));
  Table t({"preset", "delta", "theta", "r", "w", "z", "tau"});
  for (const auto& name : presets) {
    const double delta = preset_delta(name, r);
    const Channel ch(SqueezedBellResource(delta, cfg.theta, r), cfg.g);
    for (int i = 0; i < cfg.points; ++i) {
      const double w = cfg.points == 1 ? 0.0 : -cfg.extent + 2.0 * cfg.extent * i / (cfg.points - 1);
      for (int j = 0; j < cfg.points; ++j) {
        const double z = cfg.points == 1 ? 0.0 : -cfg.extent + 2.0 * cfg.extent * j / (cfg.points - 1);
        t.add_row({name, delta, cfg.theta, r, w, z, transfer_value(ch, w * w + z * z)});
      }
    }
  }
  return t;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int env_jobs() {
  const char* v = std::getenv("CVTELEPORT_JOBS");
  if (!v || !*v) return 1;
  int n = 0;
  const std::string_view s(v);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || ptr != s.data() + s.size() || n < 1) {
    throw InvalidArgument("CVTELEPORT_JOBS must be a positive integer");
  }
  return n;
}

}  // namespace

void RunConfig::validate() const {
  if (!known(kCommands, command)) throw InvalidArgument("unknown command '" + command + "'");
  if (format != "csv" && format != "json") throw InvalidArgument("format must be csv or json");
  if (N < 0 || N > kDefaultMaxFock) throw InvalidArgument("N must lie in [0, 64]");
  if (jobs < 1) throw InvalidArgument("jobs must be positive");
  if (!std::isfinite(theta) || !std::isfinite(g) || g <= 0.0) throw InvalidArgument("theta must be finite and g positive");
  for (double d : deltas) {
    if (!(d >= 0.0 && d <= 1.0)) throw InvalidArgument("delta values must lie in [0, 1]");
  }
  for (double r : rs) {
    if (!std::isfinite(r) || r < 0.0) throw InvalidArgument("r values must be finite and non-negative");
  }
  for (const auto& p : presets) {
    if (!known(kPresets, p)) throw InvalidArgument("unknown preset '" + p + "'");
  }
  if (points < 1 || points > 2001) throw InvalidArgument("points must lie in [1, 2001]");
  if (!(extent > 0.0) || !std::isfinite(extent)) throw InvalidArgument("extent must be positive");
  quadrature.validate();
  diff.validate();

  const bool needs_channel = (command == "moments" || command == "photon-stats") && !identity_channel;
  if (needs_channel || command == "compare") {
    if (deltas.empty()) throw InvalidArgument("command '" + command + "' needs --delta or --delta-grid");
    if (rs.empty()) throw InvalidArgument("command '" + command + "' needs --r");
  }
  if ((command == "optimize" || command == "sweep") && rs.empty()) {
    throw InvalidArgument("command '" + command + "' needs --r or --r-grid");
  }
}

json RunConfig::canonical() const {
  json j = {{"command", command},       {"deltas", deltas},     {"theta", theta},
            {"rs", rs},                 {"g", g},               {"N", N},
            {"identity_channel", identity_channel},             {"kinds", kinds},
            {"presets", presets},       {"extent", extent},     {"points", points},
            {"format", format},         {"quadrature", to_json(quadrature)},
            {"diff", to_json(diff)},    {"source", std::string(to_string(source))}};
  j["input"] = input ? state_to_json(state_from_json(*input)) : json(nullptr);
  return j;
}

void apply_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "command") cfg.command = field<std::string>(j, "command");
    else if (key == "input") cfg.input = value;
    else if (key == "delta" || key == "delta_grid") cfg.deltas = number_list(value, key.c_str());
    else if (key == "theta") cfg.theta = field<double>(j, "theta");
    else if (key == "r" || key == "r_grid") cfg.rs = number_list(value, key.c_str());
    else if (key == "g") cfg.g = field<double>(j, "g");
    else if (key == "N") cfg.N = field<int>(j, "N");
    else if (key == "identity_channel") cfg.identity_channel = field<bool>(j, "identity_channel");
    else if (key == "kind" || key == "kinds") cfg.kinds = string_list(value, key.c_str());
    else if (key == "preset" || key == "presets") cfg.presets = string_list(value, key.c_str());
    else if (key == "extent") cfg.extent = field<double>(j, "extent");
    else if (key == "points") cfg.points = field<int>(j, "points");
    else if (key == "format") cfg.format = field<std::string>(j, "format");
    else if (key == "output") cfg.output = field<std::string>(j, "output");
    else if (key == "jobs") cfg.jobs = field<int>(j, "jobs");
    else if (key == "quadrature") cfg.quadrature = quadrature_from_json(value, cfg.quadrature);
    else if (key == "diff") cfg.diff = diff_from_json(value, cfg.diff);
    else if (key == "source") cfg.source = source_from_string(field<std::string>(j, "source"));
    else throw InvalidArgument("unknown config field '" + key + "'");
  }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    CellFailures failed;
    Table table = [&] {
      if (cfg.command == "moments") return moments_table(cfg);
      if (cfg.command == "photon-stats") return photon_table(cfg);
      if (cfg.command == "compare") return compare_table(cfg, failed);
      if (cfg.command == "transfer-surface") return surface_table(cfg);
      return optimum_table(cfg, failed);
    }();

    std::ofstream file;
    if (cfg.output) {
      file.open(*cfg.output, std::ios::binary);
      if (!file) throw InvalidArgument("cannot open output file '" + *cfg.output + "'");
    }
    std::ostream& sink = cfg.output ? file : out;
    if (cfg.format == "csv") {
      table.write_csv(sink, std::string("cvteleport ") + CVTELEPORT_VERSION + " config=" + hex64(fnv1a(cfg.canonical().dump())));
    } else {
      table.write_json(sink);
    }
    sink.flush();

    if (failed.count > 0) {
      err << error_record(ErrorKind::evaluation, std::to_string(failed.count) + " cell(s) failed; first: " + failed.first)
                 .dump()
          << '\n';
      return 1;
    }
    return 0;
  } catch (const std::exception& ex) {
    err << error_record(ex).dump() << '\n';
    return 1;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continuous-variable teleportation with squeezed Bell-like resources"};
  app.set_version_flag("--version", std::string("cvteleport ") + CVTELEPORT_VERSION);
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string config_path, input, delta_grid, r_grid, format, output, source;
  double delta = 0, theta = 0, r = 0, g = 1, extent = 3;
  int N = 0, jobs = 0, points = 0;
  std::vector<std::string> kinds, presets;

  auto* o_config = app.add_option("--config", config_path, "JSON config file; flags override its fields");
  auto* o_input = app.add_option("--input", input, "state descriptor (fock:N, coherent:RE[,IM], sqvac:S, mix:N@P,...) or JSON");
  auto* o_delta = app.add_option("--delta", delta, "resource Δ");
  auto* o_dgrid = app.add_option("--delta-grid", delta_grid, "Δ grid a:b:n or comma list");
  auto* o_theta = app.add_option("--theta", theta, "resource θ");
  auto* o_r = app.add_option("--r", r, "two-mode squeezing r");
  auto* o_rgrid = app.add_option("--r-grid", r_grid, "r grid a:b:n or comma list");
  auto* o_g = app.add_option("--g", g, "gain");
  auto* o_N = app.add_option("--N", N, "photon-number cutoff");
  auto* o_ident = app.add_flag("--identity-channel", "input statistics without teleportation");
  auto* o_kind = app.add_option("--kind", kinds, "objective kind(s)")->delimiter(',');
  auto* o_preset = app.add_option("--preset", presets, "transfer-surface preset(s)")->delimiter(',');
  auto* o_extent = app.add_option("--extent", extent, "transfer-surface half width");
  auto* o_points = app.add_option("--points", points, "transfer-surface points per axis");
  auto* o_source = app.add_option("--source", source, "transfer moments: closed_form, automatic, finite_difference");
  auto* o_format = app.add_option("--format", format, "csv or json");
  auto* o_output = app.add_option("--output", output, "output file (default stdout)");
  auto* o_jobs = app.add_option("--jobs", jobs, "worker threads (default $CVTELEPORT_JOBS or 1)");
  o_delta->excludes(o_dgrid);
  o_r->excludes(o_rgrid);

  for (const char* name : kCommands) app.add_subcommand(name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << error_record(ErrorKind::invalid_argument, e.what()).dump() << '\n';
    return 1;
  }

  RunConfig cfg;
  try {
    cfg.jobs = env_jobs();
    if (o_config->count() > 0) {
      std::ifstream in(config_path);
      if (!in) throw InvalidArgument("cannot read config file '" + config_path + "'");
      json j;
      try {
        j = json::parse(in);
      } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
      }
      apply_json(cfg, j);
    }
    if (!app.get_subcommands().empty()) cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.command.empty()) throw InvalidArgument("no command given");
    if (o_input->count()) {
      cfg.input = input.starts_with('{') ? json::parse(input, nullptr, false) : json(input);
      if (cfg.input->is_discarded()) throw InvalidArgument("--input is not valid JSON");
    }
    if (o_delta->count()) cfg.deltas = {delta};
    if (o_dgrid->count()) cfg.deltas = parse_grid(delta_grid);
    if (o_theta->count()) cfg.theta = theta;
    if (o_r->count()) cfg.rs = {r};
    if (o_rgrid->count()) cfg.rs = parse_grid(r_grid);
    if (o_g->count()) cfg.g = g;
    if (o_N->count()) cfg.N = N;
    if (o_ident->count()) cfg.identity_channel = true;
    if (o_kind->count()) cfg.kinds = kinds;
    if (o_preset->count()) cfg.presets = presets;
    if (o_extent->count()) cfg.extent = extent;
    if (o_points->count()) cfg.points = points;
    if (o_source->count()) cfg.source = source_from_string(source);
    if (o_format->count()) cfg.format = format;
    if (o_output->count()) cfg.output = output;
    if (o_jobs->count()) cfg.jobs = jobs;
  } catch (const std::exception& ex) {
    err << error_record(ex).dump() << '\n';
    return 1;
  }
  return run(cfg, out, err);
}

}  // namespace cvtele::cli
