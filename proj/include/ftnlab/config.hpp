#pragma once

#include "ftnlab/backend.hpp"
#include "ftnlab/ftn.hpp"
#include "ftnlab/model.hpp"
#include "ftnlab/quasiprob.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ftnlab {

enum class SweepMode { FtnVsHz, HeatmapHzBeta, DistanceSweep, HxGrid, QslVsHz, TraceQOfT };

SweepMode parse_mode(const std::string& s);
std::string mode_name(SweepMode m);

struct AxisSpec {
    std::string name;
    std::vector<double> values;
};

struct OutputSpec {
    std::string prefix = "ftnlab";
    bool csv = true;
    bool json = true;
    bool svg = false;
};

/// Largest grid a sweep may request.
inline constexpr std::int64_t kMaxGridPoints = 100000;

struct SweepSpec {
    SweepMode mode = SweepMode::FtnVsHz;
    ChainParams params;
    std::vector<AxisSpec> axes;
    Probe v;
    Probe w;
    EntryMask entries = EntryMask::all();
    std::optional<double> beta;  ///< nullopt: ground state
    Backend backend = Backend::Auto;
    ScanConfig scan;
    OutputSpec output;
    int exact_cap = kDefaultExactCap;
    std::string source;  ///< the config text, echoed into metadata

    const AxisSpec* axis(const std::string& name) const;
    /// Problem for one grid point, before the axis value is applied.
    ProblemSpec base_problem() const;
};

/// Parses JSON text. Unknown keys, wrong types and bad enum values throw
/// ConfigError naming the offending key path.
SweepSpec parse_config(const std::string& text);
SweepSpec load_config(const std::string& path);

struct Plan {
    std::int64_t grid_points = 0;
    std::int64_t distinct_systems = 0;
    std::uint64_t peak_bytes = 0;  ///< 16 * 2^(2N) * 8 for dense spectra
    std::string backend;
    std::vector<std::string> notes;
};

/// Checks the sweep invariants (axis count per mode, grid size, backend
/// constraints at every grid point) and estimates cost. Throws ConfigError.
Plan validate(const SweepSpec& spec);

std::string describe(const Plan& plan, const SweepSpec& spec);

}  // namespace ftnlab
