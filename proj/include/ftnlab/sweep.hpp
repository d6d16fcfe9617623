#pragma once

#include "ftnlab/backend.hpp"
#include "ftnlab/config.hpp"

#include <string>
#include <variant>
#include <vector>

namespace ftnlab {

/// Empty (none), number, or text.
using Cell = std::variant<std::monostate, double, std::string>;

struct RowError {
    std::size_t row = 0;
    std::string code;  ///< config, capacity, argument, numeric, internal
    std::string message;
};

struct SweepTable {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
    std::vector<RowError> errors;
};

/// One row of a sweep before evaluation.
struct GridPoint {
    ProblemSpec problem;
    std::vector<double> coords;  ///< axis values in header order
};

/// Rows in axis-major order: the first axis varies slowest.
std::vector<GridPoint> enumerate_points(const SweepSpec& spec);

std::vector<std::string> sweep_header(SweepMode mode);

/// Error code for an exception escaping a row.
std::string error_code(const std::exception& e);

/// Evaluates every grid point on `workers` threads. Rows are stored by
/// index, so the table is identical for any worker count. A failing row
/// keeps its coordinates, gets found = "error" and its code in the entry
/// column, and is listed in `errors`.
SweepTable run_sweep(const SweepSpec& spec, int workers, SystemCache* cache = nullptr);

}  // namespace ftnlab
