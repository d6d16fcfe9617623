#pragma once

#include "ftnlab/config.hpp"
#include "ftnlab/sweep.hpp"

#include <ostream>
#include <string>

namespace ftnlab {

/// 17 significant digits, '.' decimal point, independent of the locale.
std::string format_number(double v);
std::string format_cell(const Cell& c);

/// RFC-4180 CSV with LF line endings; empty fields for none.
void write_csv(std::ostream& os, const SweepTable& table);

struct RunInfo {
    std::string version;
    double wall_seconds = 0.0;
    int workers = 1;
};

/// Metadata sidecar: config echo, version, wall time, row errors.
void write_metadata(std::ostream& os, const SweepSpec& spec, const SweepTable& table, const RunInfo& info);

/// Static plot: heatmap for two-axis grids, line chart otherwise.
void write_svg(std::ostream& os, const SweepSpec& spec, const SweepTable& table);

}  // namespace ftnlab
