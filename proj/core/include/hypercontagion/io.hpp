#pragma once

#include <filesystem>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <utility>

#include "hypercontagion/adaptive.hpp"
#include "hypercontagion/contagion.hpp"
#include "hypercontagion/experiments.hpp"
#include "hypercontagion/ode.hpp"

namespace hc {

/// Shortest round-trip decimal representation ("nan" for NaN).
std::string format_double(double x);

/// CSV cell: empty string for NaN (field not applicable).
std::string csv_field(double x);

// Writers produce byte-stable output: fixed headers, shortest round-trip
// numbers, '\n' line endings.

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);
void write_events_csv(std::ostream& out,
                      std::span<const std::pair<int, AdjustmentEvent>> events);
void write_ensemble_csv(std::ostream& out, const EnsembleSummary& ensemble);
void write_ode_csv(std::ostream& out, std::span<const OdePoint> series);

enum class PhaseStat { PeakTime, PeakProportion, FinalProportion };
void write_phase_table_csv(std::ostream& out, const SweepResult& result, PhaseStat stat);

/// Opens the file, calls the stream writer, throws on I/O failure naming the path.
void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& writer);

}  // namespace hc
