// ainfer: asynchronous action-chunk inference runtime.
//
// Subcommands: simulate, serve, client, analyze, sweep. Exit codes:
// 0 success, 2 config error, 3 protocol/transport error, 4 partial sweep.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ainfer/metrics.hpp"
#include "ainfer/policy.hpp"
#include "ainfer/scenario.hpp"
#include "ainfer/serve.hpp"
#include "ainfer/simulate.hpp"
#include "ainfer/sweep.hpp"
#include "ainfer/tcp.hpp"
#include "ainfer/trace.hpp"
#include "ainfer/wire.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitProtocol = 3;
constexpr int kExitPartialSweep = 4;

struct CommandError : std::runtime_error {
  CommandError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw CommandError(kExitConfig, "cannot open " + path + " for writing");
  out << content;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_double_list(text)) out.push_back(static_cast<int>(v));
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  // "a..b" expands to the inclusive range; otherwise comma-separated.
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const std::uint64_t lo = std::stoull(text.substr(0, dots));
    const std::uint64_t hi = std::stoull(text.substr(dots + 2));
    for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    return out;
  }
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoull(item));
  }
  return out;
}

std::pair<std::string, std::uint16_t> parse_addr(const std::string& addr) {
  const auto colon = addr.rfind(':');
  if (colon == std::string::npos)
    throw CommandError(kExitConfig, "address must be host:port, got " + addr);
  return {addr.substr(0, colon),
          static_cast<std::uint16_t>(std::stoul(addr.substr(colon + 1)))};
}

std::unique_ptr<ainfer::Policy> make_policy(const std::string& spec, int n, double vmax,
                                            std::uint64_t seed) {
  if (spec == "scripted") return std::make_unique<ainfer::ScriptedPointmassPolicy>(n, vmax);
  if (spec.rfind("noise", 0) == 0) {
    double sigma = 0.01;
    if (spec.size() > 6 && spec[5] == ':') sigma = std::stod(spec.substr(6));
    return std::make_unique<ainfer::NoisePolicy>(n, vmax, sigma, seed);
  }
  if (spec.rfind("replay:", 0) == 0) {
    const std::string path = spec.substr(7);
    return std::make_unique<ainfer::ReplayPolicy>(
        ainfer::ReplayPolicy::from_file(n, path, ainfer::kPointMassJointDim));
  }
  throw CommandError(kExitConfig, "unknown policy '" + spec +
                                      "' (want scripted | noise[:sigma] | replay:<file>)");
}

int run(int argc, char** argv) {
  CLI::App app{"asynchronous action-chunk inference runtime"};
  app.require_subcommand(1);
  app.footer(ainfer::scenario_grammar_help());

  // -- simulate ------------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "run client+server+world on a virtual clock");
  std::string sim_scenario;
  std::optional<std::uint64_t> sim_seed;
  std::string sim_trace_out;
  std::string sim_series_out;
  sim->add_option("--scenario", sim_scenario, "scenario file")->required()
      ->envname("AINFER_SCENARIO");
  sim->add_option("--seed", sim_seed, "override the scenario seed")->envname("AINFER_SEED");
  sim->add_option("--trace", sim_trace_out, "write the binary event trace here")
      ->envname("AINFER_TRACE");
  sim->add_option("--series", sim_series_out, "also write the queue-size CSV here");

  // -- serve ---------------------------------------------------------------
  auto* srv = app.add_subcommand("serve", "host a policy behind latency injection");
  std::string srv_policy = "scripted";
  std::string srv_latency = "const:330";
  std::string srv_listen = "127.0.0.1:7447";
  std::uint64_t srv_seed = 1;
  int srv_n = 50;
  double srv_vmax = 0.05;
  bool srv_once = false;
  std::string srv_port_file;
  srv->add_option("--policy", srv_policy, "scripted | noise[:sigma] | replay:<file>")
      ->envname("AINFER_POLICY");
  srv->add_option("--latency", srv_latency,
                  "inference latency spec (const:ms | uniform:lo:hi | "
                  "lognormal:mu:sigma:lo:hi)")
      ->envname("AINFER_LATENCY");
  srv->add_option("--listen", srv_listen, "host:port (port 0 = ephemeral)")
      ->envname("AINFER_LISTEN");
  srv->add_option("--seed", srv_seed, "latency/noise RNG seed")->envname("AINFER_SEED");
  srv->add_option("--n", srv_n, "actions per chunk")->envname("AINFER_N");
  srv->add_option("--vmax", srv_vmax, "scripted policy speed per tick");
  srv->add_flag("--once", srv_once, "exit after one session");
  srv->add_option("--port-file", srv_port_file, "write the bound port here");

  // -- client --------------------------------------------------------------
  auto* cli = app.add_subcommand("client", "run the control loop against a live server");
  std::string cli_connect = "127.0.0.1:7447";
  std::string cli_scenario;
  std::optional<int> cli_n;
  std::optional<double> cli_g;
  std::optional<double> cli_epsilon;
  std::optional<int> cli_dt;
  std::optional<std::string> cli_agg;
  std::optional<std::int64_t> cli_horizon;
  std::optional<std::uint64_t> cli_seed;
  std::string cli_trace_out;
  cli->add_option("--connect", cli_connect, "server host:port")->envname("AINFER_CONNECT");
  cli->add_option("--scenario", cli_scenario, "scenario file for client/world defaults")
      ->envname("AINFER_SCENARIO");
  cli->add_option("--n", cli_n, "actions per chunk")->envname("AINFER_N");
  cli->add_option("--g", cli_g, "queue threshold fraction")->envname("AINFER_G");
  cli->add_option("--epsilon", cli_epsilon, "similarity threshold")->envname("AINFER_EPSILON");
  cli->add_option("--dt-ms", cli_dt, "control period, ms")->envname("AINFER_DT_MS");
  cli->add_option("--agg", cli_agg, "replace | blend:<alpha>")->envname("AINFER_AGG");
  cli->add_option("--horizon", cli_horizon, "ticks to run")->envname("AINFER_HORIZON");
  cli->add_option("--seed", cli_seed, "world seed")->envname("AINFER_SEED");
  cli->add_option("--trace", cli_trace_out, "write the binary event trace here")
      ->envname("AINFER_TRACE");

  // -- analyze ---------------------------------------------------------------
  auto* ana = app.add_subcommand("analyze", "compute metrics and CSV series from a trace");
  std::string ana_trace;
  std::string ana_config;
  std::string ana_csv;
  std::string ana_summary;
  std::string ana_label = "run";
  ana->add_option("--trace", ana_trace, "trace file")->required()->envname("AINFER_TRACE");
  ana->add_option("--config", ana_config, "scenario file the trace was produced with")
      ->required()
      ->envname("AINFER_SCENARIO");
  ana->add_option("--csv", ana_csv, "write tick,queue_size,regime rows here");
  ana->add_option("--summary", ana_summary, "write the metrics summary here");
  ana->add_option("--label", ana_label, "regime label for CSV rows");

  // -- sweep -----------------------------------------------------------------
  auto* swp = app.add_subcommand("sweep", "grid of simulations, long-format metrics CSV");
  std::string swp_scenario;
  std::string swp_g, swp_ls, swp_n, swp_eps;
  std::string swp_seeds = "1";
  std::string swp_csv;
  std::string swp_series_dir;
  swp->add_option("--scenario", swp_scenario, "base scenario file")->required()
      ->envname("AINFER_SCENARIO");
  swp->add_option("--g", swp_g, "comma list of g values");
  swp->add_option("--ls-ms", swp_ls, "comma list of constant server latencies, ms");
  swp->add_option("--n", swp_n, "comma list of chunk sizes");
  swp->add_option("--epsilon", swp_eps, "comma list of epsilon values");
  swp->add_option("--seeds", swp_seeds, "comma list or lo..hi range")->envname("AINFER_SEEDS");
  swp->add_option("--csv", swp_csv, "write the long-format results CSV here")->required();
  swp->add_option("--series-dir", swp_series_dir, "write per-cell queue series here");

  CLI11_PARSE(app, argc, argv);

  if (sim->parsed()) {
    ainfer::ScenarioConfig cfg = ainfer::load_scenario_file(sim_scenario);
    if (sim_seed) cfg.seed = *sim_seed;
    const ainfer::RunTrace trace = ainfer::simulate(cfg);
    if (!sim_trace_out.empty()) ainfer::write_trace_file(trace, sim_trace_out);
    if (!sim_series_out.empty()) {
      std::ostringstream label;
      label << "g=" << cfg.client.g;
      write_file(sim_series_out, ainfer::queue_series_csv(trace, cfg.client, label.str()));
    }
    std::cout << ainfer::summarize_metrics(ainfer::compute_metrics(trace, cfg.client));
    return kExitOk;
  }

  if (srv->parsed()) {
    const auto [host, port] = parse_addr(srv_listen);
    ainfer::PolicyServerCore core(make_policy(srv_policy, srv_n, srv_vmax, srv_seed),
                                  ainfer::parse_latency_spec(srv_latency), srv_seed);
    ainfer::TcpListener listener = ainfer::TcpListener::bind(host, port);
    if (!srv_port_file.empty()) write_file(srv_port_file, std::to_string(listener.port()));
    std::cout << "listening on " << host << ":" << listener.port() << "\n" << std::flush;
    ainfer::serve_forever(listener, core, srv_once);
    return kExitOk;
  }

  if (cli->parsed()) {
    ainfer::ScenarioConfig cfg;
    if (!cli_scenario.empty()) cfg = ainfer::load_scenario_file(cli_scenario);
    if (cli_n) cfg.client.n = *cli_n;
    if (cli_g) cfg.client.g = *cli_g;
    if (cli_epsilon) cfg.client.epsilon = *cli_epsilon;
    if (cli_dt) cfg.client.delta_t_ms = *cli_dt;
    if (cli_horizon) cfg.client.horizon = *cli_horizon;
    if (cli_seed) cfg.seed = *cli_seed;
    if (cli_agg) {
      if (*cli_agg == "replace") {
        cfg.client.aggregation = ainfer::AggregationPolicy::replace();
      } else if (cli_agg->rfind("blend:", 0) == 0) {
        cfg.client.aggregation = ainfer::AggregationPolicy::blend(std::stod(cli_agg->substr(6)));
      } else {
        throw CommandError(kExitConfig, "--agg wants replace or blend:<alpha>");
      }
    }
    cfg.client.validate();
    const auto [host, port] = parse_addr(cli_connect);
    const ainfer::TcpClientResult result =
        ainfer::run_tcp_client(host, port, cfg.client, cfg.world, cfg.seed);
    if (!cli_trace_out.empty()) ainfer::write_trace_file(result.trace, cli_trace_out);
    if (result.transport_error)
      throw CommandError(kExitProtocol, "transport error: " + *result.transport_error);
    std::cout << ainfer::summarize_metrics(
        ainfer::compute_metrics(result.trace, cfg.client));
    return kExitOk;
  }

  if (ana->parsed()) {
    const ainfer::RunTrace trace = ainfer::read_trace_file(ana_trace);
    const ainfer::ScenarioConfig cfg = ainfer::load_scenario_file(ana_config);
    const ainfer::Metrics metrics = ainfer::compute_metrics(trace, cfg.client);
    if (!ana_csv.empty())
      write_file(ana_csv, ainfer::queue_series_csv(trace, cfg.client, ana_label));
    const std::string summary = ainfer::summarize_metrics(metrics);
    if (!ana_summary.empty()) write_file(ana_summary, summary);
    std::cout << summary;
    return kExitOk;
  }

  if (swp->parsed()) {
    const ainfer::ScenarioConfig base = ainfer::load_scenario_file(swp_scenario);
    ainfer::SweepGrid grid;
    if (!swp_g.empty()) grid.g = parse_double_list(swp_g);
    if (!swp_ls.empty()) grid.server_latency_ms = parse_double_list(swp_ls);
    if (!swp_n.empty()) grid.n = parse_int_list(swp_n);
    if (!swp_eps.empty()) grid.epsilon = parse_double_list(swp_eps);
    grid.seeds = parse_seed_list(swp_seeds);
    const std::optional<std::string> series_dir =
        swp_series_dir.empty() ? std::nullopt : std::optional<std::string>(swp_series_dir);
    const auto rows = ainfer::run_sweep(base, grid, series_dir);
    write_file(swp_csv, ainfer::sweep_csv(rows));
    std::size_t failed = 0;
    for (const auto& row : rows)
      if (!row.ok) ++failed;
    std::cout << rows.size() << " cells, " << failed << " failed\n";
    return failed == 0 ? kExitOk : kExitPartialSweep;
  }

  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CommandError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const ainfer::ScenarioParseError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ainfer::ScenarioSemanticError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ainfer::ProtocolError& e) {
    std::cerr << "protocol error: " << e.what() << "\n";
    return kExitProtocol;
  } catch (const ainfer::TransportError& e) {
    std::cerr << "transport error: " << e.what() << "\n";
    return kExitProtocol;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
