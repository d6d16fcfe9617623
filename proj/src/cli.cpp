#include "ftnlab/cli.hpp"

#include "ftnlab/config.hpp"
#include "ftnlab/error.hpp"
#include "ftnlab/output.hpp"
#include "ftnlab/sweep.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#ifndef FTNLAB_VERSION
#define FTNLAB_VERSION "0.0.0"
#endif

namespace ftnlab {

std::string version_string() { return FTNLAB_VERSION; }

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("FTNLAB_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

namespace {

bool write_file(const std::filesystem::path& p, const auto& writer, std::ostream& log) {
    std::ofstream f(p, std::ios::binary);
    if (!f) {
        log << "error: cannot write " << p.string() << "\n";
        return false;
    }
    writer(f);
    f.close();
    if (!f) {
        log << "error: failed writing " << p.string() << "\n";
        return false;
    }
    return true;
}

}  // namespace

int run_command(const std::string& config_path, int workers, const std::string& out_dir, std::ostream& log) {
    SweepSpec spec;
    try {
        spec = load_config(config_path);
        validate(spec);
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    const std::filesystem::path dir = out_dir.empty() ? std::filesystem::path(".") : std::filesystem::path(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        log << "error: cannot create " << dir.string() << ": " << ec.message() << "\n";
        return kExitIo;
    }

    const int k = resolve_workers(workers);
    const auto t0 = std::chrono::steady_clock::now();
    SweepTable table;
    try {
        table = run_sweep(spec, k);
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kExitPartial;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::filesystem::path base = dir / spec.output.prefix;
    bool ok = write_file(base.string() + ".csv", [&](std::ostream& os) { write_csv(os, table); }, log);
    if (spec.output.json) {
        const RunInfo info{version_string(), wall, k};
        ok = write_file(base.string() + ".json", [&](std::ostream& os) { write_metadata(os, spec, table, info); }, log) && ok;
    }
    if (spec.output.svg) {
        ok = write_file(base.string() + ".svg", [&](std::ostream& os) { write_svg(os, spec, table); }, log) && ok;
    }
    if (!ok) return kExitIo;

    for (const auto& e : table.errors) log << "row " << e.row << ": " << e.code << ": " << e.message << "\n";
    log << table.rows.size() << " rows, " << table.errors.size() << " failed, " << wall << " s\n";
    return table.errors.empty() ? kExitOk : kExitPartial;
}

int validate_command(const std::string& config_path, std::ostream& out, std::ostream& log) {
    try {
        const SweepSpec spec = load_config(config_path);
        const Plan plan = validate(spec);
        out << describe(plan, spec);
        return kExitOk;
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
}

}  // namespace ftnlab
