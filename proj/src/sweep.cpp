#include "ainfer/sweep.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ainfer/simulate.hpp"

namespace ainfer {
namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string series_file_name(const SweepCell& cell) {
  std::ostringstream os;
  os << "series_g" << fmt(cell.g) << "_ls" << fmt(cell.server_latency_ms) << "_n" << cell.n
     << "_eps" << fmt(cell.epsilon) << "_seed" << cell.seed << ".csv";
  return os.str();
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& base, const SweepGrid& grid,
                                const std::optional<std::string>& series_dir) {
  if (grid.seeds.empty()) throw ScenarioSemanticError("sweep needs at least one seed");

  const std::vector<double> gs = grid.g.empty() ? std::vector<double>{base.client.g} : grid.g;
  const std::vector<double> lats = grid.server_latency_ms.empty()
                                       ? std::vector<double>{base.latency.server.mean_ms()}
                                       : grid.server_latency_ms;
  const std::vector<int> ns = grid.n.empty() ? std::vector<int>{base.client.n} : grid.n;
  const std::vector<double> epss =
      grid.epsilon.empty() ? std::vector<double>{base.client.epsilon} : grid.epsilon;

  if (series_dir) std::filesystem::create_directories(*series_dir);

  std::vector<SweepRow> rows;
  for (double g : gs)
    for (double ls : lats)
      for (int n : ns)
        for (double eps : epss)
          for (std::uint64_t seed : grid.seeds) {
            SweepRow row;
            row.cell = {g, ls, n, eps, seed};
            try {
              ScenarioConfig cfg = base;
              cfg.client.g = g;
              cfg.latency.server = LatencySpec::constant(ls);
              cfg.client.n = n;
              cfg.client.epsilon = eps;
              cfg.seed = seed;
              cfg.validate();
              const RunTrace trace = simulate(cfg);
              row.metrics = compute_metrics(trace, cfg.client);
              row.ok = true;
              if (series_dir) {
                std::ostringstream label;
                label << "g=" << fmt(g);
                const auto path =
                    std::filesystem::path(*series_dir) / series_file_name(row.cell);
                std::ofstream out(path);
                out << queue_series_csv(trace, cfg.client, label.str());
              }
            } catch (const std::exception& e) {
              row.ok = false;
              row.error = e.what();
            }
            rows.push_back(std::move(row));
          }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "g,server_latency_ms,n,epsilon,seed,status,error,idle_ticks,idle_fraction,"
        "mean_send_period_ticks,mean_receive_latency_ms,inference_calls,tasks_completed\n";
  for (const SweepRow& r : rows) {
    os << r.cell.g << "," << r.cell.server_latency_ms << "," << r.cell.n << ","
       << r.cell.epsilon << "," << r.cell.seed << ",";
    if (r.ok) {
      os << "ok,,";
      os << r.metrics.idle_ticks << "," << r.metrics.idle_fraction << ","
         << r.metrics.mean_send_period_ticks << "," << r.metrics.mean_receive_latency_ms
         << "," << r.metrics.inference_calls << "," << r.metrics.tasks_completed;
    } else {
      std::string err = r.error;
      for (char& c : err)
        if (c == ',' || c == '\n') c = ';';
      os << "failed," << err << ",,,,,,";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace ainfer
