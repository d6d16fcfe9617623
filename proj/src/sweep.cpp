#include "ftnlab/sweep.hpp"

#include "ftnlab/error.hpp"
#include "ftnlab/qsl.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace ftnlab {

namespace {

const std::vector<double>& axis_values(const SweepSpec& s, const char* name) {
    const AxisSpec* a = s.axis(name);
    if (!a) throw ConfigError(std::string("missing axis '") + name + "'");
    return a->values;
}

std::vector<double> distances(const SweepSpec& s) {
    if (const AxisSpec* a = s.axis("d")) return a->values;
    std::vector<double> d;
    for (int k = 0; k <= s.params.N - s.v.site; ++k) d.push_back(k);
    return d;
}

std::int64_t checked_product(std::int64_t a, std::int64_t b) {
    if (a > 0 && b > kMaxGridPoints / a + 1) return kMaxGridPoints + 1;
    return a * b;
}

}  // namespace

std::vector<std::string> sweep_header(SweepMode mode) {
    switch (mode) {
        case SweepMode::FtnVsHz: return {"h_z", "t_ftn", "found", "entry", "backend"};
        case SweepMode::HeatmapHzBeta: return {"h_z", "beta", "t_ftn", "found", "entry", "backend"};
        case SweepMode::DistanceSweep: return {"h_z", "d", "t_ftn", "found", "entry", "backend"};
        case SweepMode::HxGrid: return {"h_z", "h_x", "t_ftn", "found", "entry", "backend"};
        case SweepMode::QslVsHz:
            return {"h_z", "T_qsl", "unbounded", "t_ftn", "found", "entry", "backend", "tau_target", "tau_initial", "delta_L"};
        case SweepMode::TraceQOfT:
            return {"t", "q_pp", "q_pm", "q_mp", "q_mm", "im_pp", "im_pm", "im_mp", "im_mm", "negativity"};
    }
    return {};
}

std::vector<GridPoint> enumerate_points(const SweepSpec& s) {
    std::vector<GridPoint> pts;
    const ProblemSpec base = s.base_problem();
    auto with_hz = [&](double hz) {
        ProblemSpec p = base;
        p.params.h_z = hz;
        return p;
    };
    switch (s.mode) {
        case SweepMode::FtnVsHz:
        case SweepMode::QslVsHz:
            for (double hz : axis_values(s, "h_z")) pts.push_back({with_hz(hz), {hz}});
            break;
        case SweepMode::HeatmapHzBeta:
            for (double hz : axis_values(s, "h_z")) {
                for (double b : axis_values(s, "beta")) {
                    ProblemSpec p = with_hz(hz);
                    p.beta = std::isinf(b) ? std::nullopt : std::optional<double>(b);
                    pts.push_back({p, {hz, b}});
                }
            }
            break;
        case SweepMode::DistanceSweep: {
            const auto ds = distances(s);
            for (double hz : axis_values(s, "h_z")) {
                for (double d : ds) {
                    ProblemSpec p = with_hz(hz);
                    p.w.site = s.v.site + static_cast<int>(std::lround(d));
                    pts.push_back({p, {hz, d}});
                }
            }
            break;
        }
        case SweepMode::HxGrid:
            for (double hz : axis_values(s, "h_z")) {
                for (double hx : axis_values(s, "h_x")) {
                    ProblemSpec p = with_hz(hz);
                    p.params.h_x = hx;
                    pts.push_back({p, {hz, hx}});
                }
            }
            break;
        case SweepMode::TraceQOfT:
            for (double t : axis_values(s, "t")) pts.push_back({base, {t}});
            break;
    }
    return pts;
}

Plan validate(const SweepSpec& s) {
    try {
        s.params.validate();
        s.scan.validate();
    } catch (const ArgumentError& e) {
        throw ConfigError(e.what());
    }
    std::int64_t count = 1;
    for (const auto& a : s.axes) count = checked_product(count, static_cast<std::int64_t>(a.values.size()));
    if (s.mode == SweepMode::DistanceSweep && !s.axis("d")) {
        count = checked_product(count, static_cast<std::int64_t>(distances(s).size()));
    }
    if (count > kMaxGridPoints) throw ConfigError("grid has more than 1e5 points");

    if (s.mode == SweepMode::DistanceSweep) {
        for (double d : distances(s)) {
            if (d != std::floor(d) || d < 0) throw ConfigError("axes.d: distances must be non-negative integers");
        }
    }
    if (s.mode == SweepMode::HeatmapHzBeta) {
        for (double b : axis_values(s, "beta")) {
            if (!(b >= 0.0)) throw ConfigError("axes.beta: values must be >= 0");
        }
    }
    if (s.mode == SweepMode::QslVsHz && s.params.N > s.exact_cap) {
        throw ConfigError("qsl_vs_hz needs the dense state: N <= " + std::to_string(s.exact_cap) + " (exact_cap)");
    }

    Plan plan;
    std::set<std::string> systems;
    std::set<std::string> backends;
    bool dense = false;
    for (const GridPoint& g : enumerate_points(s)) {
        try {
            g.problem.params.validate();
        } catch (const ArgumentError& e) {
            throw ConfigError(e.what());
        }
        const Backend b = resolve_backend(g.problem);
        check_compatible(g.problem, b);
        dense = dense || b == Backend::Exact || s.mode == SweepMode::QslVsHz;
        backends.insert(backend_name(b));
        systems.insert(g.problem.params.key());
        ++plan.grid_points;
    }
    plan.distinct_systems = static_cast<std::int64_t>(systems.size());
    for (const auto& b : backends) plan.backend += (plan.backend.empty() ? "" : ",") + b;
    const double dim2 = std::ldexp(1.0, 2 * s.params.N);
    plan.peak_bytes = dense ? static_cast<std::uint64_t>(16.0 * dim2 * 8.0)
                            : static_cast<std::uint64_t>(8.0 * 6.0 * s.params.N * s.params.N);
    if (s.beta && s.mode != SweepMode::HeatmapHzBeta) plan.notes.push_back("Gibbs state, beta = " + std::to_string(*s.beta));
    return plan;
}

std::string describe(const Plan& plan, const SweepSpec& s) {
    std::ostringstream os;
    os << "mode: " << mode_name(s.mode) << "\n";
    os << "chain: N=" << s.params.N << " J=" << s.params.J << " h_z=" << s.params.h_z << " h_x=" << s.params.h_x << "\n";
    for (const auto& a : s.axes) os << "axis " << a.name << ": " << a.values.size() << " points\n";
    os << "grid points: " << plan.grid_points << "\n";
    os << "distinct systems: " << plan.distinct_systems << "\n";
    os << "backend: " << plan.backend << "\n";
    os << "peak memory estimate: " << plan.peak_bytes << " bytes\n";
    for (const auto& n : plan.notes) os << "note: " << n << "\n";
    return os.str();
}

std::string error_code(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return "config";
    if (dynamic_cast<const CapacityError*>(&e)) return "capacity";
    if (dynamic_cast<const ArgumentError*>(&e)) return "argument";
    if (dynamic_cast<const NumericError*>(&e)) return "numeric";
    return "internal";
}

namespace {

Cell opt_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(); }

std::vector<Cell> ftn_row(const GridPoint& g, const SweepSpec& s, SystemCache& cache) {
    const auto trace = make_trace(g.problem, cache);
    const FtnResult r = first_time_negativity(*trace, s.entries, s.scan);
    std::vector<Cell> row(g.coords.begin(), g.coords.end());
    row.push_back(opt_cell(r.t_ftn));
    row.push_back(std::string(r.found ? "true" : "false"));
    row.push_back(r.found ? Cell(r.entry.label()) : Cell());
    row.push_back(trace->backend());
    return row;
}

std::vector<Cell> qsl_row(const GridPoint& g, const SweepSpec& s, SystemCache& cache) {
    const Entry e = s.entries.is_all() ? Entry{-1, -1} : [&] {
        for (int i = 0; i < 4; ++i) {
            if (s.entries.contains(i)) return Entry::from_index(i);
        }
        return Entry{-1, -1};
    }();
    const auto spec = cache.spectrum(g.problem.params, g.problem.exact_cap);
    const QuantumState rho = make_state(g.problem, *spec);
    const QslResult q = qsl_time(rho, *spec, g.problem.v.projector(e.gamma), g.problem.w.projector(e.delta));
    const auto trace = make_trace(g.problem, cache);
    const FtnResult r = first_time_negativity(*trace, EntryMask::only(e), s.scan);
    return {g.coords[0],
            opt_cell(q.T_qsl),
            std::string(q.unbounded ? "true" : "false"),
            opt_cell(r.t_ftn),
            std::string(r.found ? "true" : "false"),
            e.label(),
            trace->backend(),
            q.tau_target,
            q.tau_initial,
            q.delta_L};
}

std::vector<Cell> trace_row(double t, const KdTrace& trace) {
    const QPTable tab = trace.table(t);
    std::vector<Cell> row{t};
    for (int i = 0; i < 4; ++i) row.push_back(tab.mh[static_cast<std::size_t>(i)]);
    for (int i = 0; i < 4; ++i) {
        const double im = tab.kd[static_cast<std::size_t>(i)].imag();
        row.push_back(std::isnan(im) ? Cell() : Cell(im));
    }
    row.push_back(tab.negativity);
    return row;
}

std::vector<Cell> error_row(const GridPoint& g, SweepMode mode, const std::string& code) {
    const auto header = sweep_header(mode);
    std::vector<Cell> row(header.size());
    for (std::size_t i = 0; i < g.coords.size() && i < row.size(); ++i) row[i] = g.coords[i];
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "found") row[i] = std::string("error");
        if (header[i] == "entry") row[i] = code;
        if (header[i] == "negativity") row[i] = code;
    }
    return row;
}

}  // namespace

SweepTable run_sweep(const SweepSpec& s, int workers, SystemCache* cache_in) {
    SystemCache local;
    SystemCache& cache = cache_in ? *cache_in : local;
    const std::vector<GridPoint> pts = enumerate_points(s);

    SweepTable table;
    table.header = sweep_header(s.mode);
    table.rows.resize(pts.size());
    std::vector<std::optional<RowError>> errs(pts.size());

    std::unique_ptr<KdTrace> shared_trace;
    if (s.mode == SweepMode::TraceQOfT) shared_trace = make_trace(s.base_problem(), cache);

    const auto n = static_cast<std::int64_t>(pts.size());
    const int threads = std::max(1, workers);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const GridPoint& g = pts[idx];
        try {
            switch (s.mode) {
                case SweepMode::TraceQOfT: table.rows[idx] = trace_row(g.coords[0], *shared_trace); break;
                case SweepMode::QslVsHz: table.rows[idx] = qsl_row(g, s, cache); break;
                default: table.rows[idx] = ftn_row(g, s, cache); break;
            }
        } catch (const std::exception& e) {
            const std::string code = error_code(e);
            table.rows[idx] = error_row(g, s.mode, code);
            errs[idx] = RowError{idx, code, e.what()};
        }
    }
    for (auto& e : errs) {
        if (e) table.errors.push_back(std::move(*e));
    }
    return table;
}

}  // namespace ftnlab
