#include "hypercontagion/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace hc {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, result.ptr};
}

std::string csv_field(double x) { return std::isnan(x) ? std::string{} : format_double(x); }

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "t,S,I,R,beta1,xi,xi_bar,adjusted\n";
  for (const auto& rec : trajectory.records) {
    out << rec.t << ',' << rec.s << ',' << rec.i << ',' << rec.r << ','
        << csv_field(rec.beta1) << ',' << csv_field(rec.xi) << ',' << csv_field(rec.xi_bar)
        << ',';
    if (rec.adjusted >= 0) out << static_cast<int>(rec.adjusted);
    out << '\n';
  }
}

void write_events_csv(std::ostream& out,
                      std::span<const std::pair<int, AdjustmentEvent>> events) {
  out << "replicate,t,beta1_before,beta1_after,xi,xi_bar\n";
  for (const auto& [replicate, event] : events) {
    out << replicate << ',' << event.t << ',' << format_double(event.beta1_before) << ','
        << format_double(event.beta1_after) << ',' << format_double(event.xi) << ','
        << format_double(event.xi_bar) << '\n';
  }
}

void write_ensemble_csv(std::ostream& out, const EnsembleSummary& ensemble) {
  out << "t,mean_k1,q05_k1,q95_k1,mean_kk,q05_kk,q95_kk\n";
  for (std::size_t t = 0; t < ensemble.mean_1.size(); ++t) {
    out << t << ',' << format_double(ensemble.mean_1[t]) << ','
        << format_double(ensemble.q05_1[t]) << ',' << format_double(ensemble.q95_1[t])
        << ',' << format_double(ensemble.mean_k[t]) << ','
        << format_double(ensemble.q05_k[t]) << ',' << format_double(ensemble.q95_k[t])
        << '\n';
  }
}

void write_ode_csv(std::ostream& out, std::span<const OdePoint> series) {
  out << "t,S,I,R\n";
  for (const auto& point : series) {
    out << format_double(point.t) << ',' << format_double(point.state.s) << ','
        << format_double(point.state.i) << ',' << format_double(point.state.r) << '\n';
  }
}

void write_phase_table_csv(std::ostream& out, const SweepResult& result, PhaseStat stat) {
  const auto pick = [stat](const CellStats& stats) {
    switch (stat) {
      case PhaseStat::PeakTime: return stats.peak_time;
      case PhaseStat::PeakProportion: return stats.peak_proportion;
      case PhaseStat::FinalProportion: return stats.final_proportion;
    }
    return 0.0;
  };
  out << "beta,mu,stat_k1,stat_kk\n";
  for (const auto& cell : result.cells) {
    out << format_double(cell.beta) << ',' << format_double(cell.mu) << ','
        << format_double(pick(cell.k1)) << ',' << format_double(pick(cell.kk)) << '\n';
  }
}

void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& writer) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  writer(out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace hc
