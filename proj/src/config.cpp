#include "ftnlab/config.hpp"

#include "ftnlab/error.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace ftnlab {

using nlohmann::json;

SweepMode parse_mode(const std::string& s) {
    if (s == "ftn_vs_hz") return SweepMode::FtnVsHz;
    if (s == "heatmap_hz_beta") return SweepMode::HeatmapHzBeta;
    if (s == "distance_sweep") return SweepMode::DistanceSweep;
    if (s == "hx_grid") return SweepMode::HxGrid;
    if (s == "qsl_vs_hz") return SweepMode::QslVsHz;
    if (s == "trace_q_of_t") return SweepMode::TraceQOfT;
    throw ConfigError("mode: unknown value '" + s + "'");
}

std::string mode_name(SweepMode m) {
    switch (m) {
        case SweepMode::FtnVsHz: return "ftn_vs_hz";
        case SweepMode::HeatmapHzBeta: return "heatmap_hz_beta";
        case SweepMode::DistanceSweep: return "distance_sweep";
        case SweepMode::HxGrid: return "hx_grid";
        case SweepMode::QslVsHz: return "qsl_vs_hz";
        case SweepMode::TraceQOfT: return "trace_q_of_t";
    }
    return "?";
}

const AxisSpec* SweepSpec::axis(const std::string& name) const {
    for (const auto& a : axes) {
        if (a.name == name) return &a;
    }
    return nullptr;
}

ProblemSpec SweepSpec::base_problem() const {
    ProblemSpec p;
    p.params = params;
    p.beta = beta;
    p.v = v;
    p.w = w;
    p.backend = backend;
    p.exact_cap = exact_cap;
    return p;
}

namespace {

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError(path + ": expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items()) {
        if (!ok.count(key)) throw ConfigError("unknown key '" + (path.empty() ? key : path + "." + key) + "'");
    }
}

template <class T>
T get(const json& obj, const char* key, const std::string& path, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(path + "." + key + ": wrong type");
    }
}

double number(const json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
    }
    throw ConfigError(path + ": expected a number");
}

AxisSpec parse_axis_spec(const std::string& name, const json& j, const std::string& path) {
    AxisSpec ax;
    ax.name = name;
    if (j.contains("values")) {
        reject_unknown(j, path, {"values"});
        if (!j.at("values").is_array() || j.at("values").empty()) throw ConfigError(path + ".values: expected a non-empty array");
        for (const auto& v : j.at("values")) ax.values.push_back(number(v, path + ".values"));
        return ax;
    }
    reject_unknown(j, path, {"min", "max", "points", "scale"});
    for (const char* k : {"min", "max", "points"}) {
        if (!j.contains(k)) throw ConfigError(path + ": missing '" + k + "'");
    }
    const double lo = number(j.at("min"), path + ".min");
    const double hi = number(j.at("max"), path + ".max");
    const auto pts = get<std::int64_t>(j, "points", path, 0);
    const auto scale = get<std::string>(j, "scale", path, "linear");
    if (pts < 1) throw ConfigError(path + ".points: must be >= 1");
    if (pts > kMaxGridPoints) throw ConfigError(path + ".points: exceeds the 1e5 grid limit");
    if (scale != "linear" && scale != "log") throw ConfigError(path + ".scale: expected linear or log");
    if (scale == "log" && !(lo > 0.0 && hi > 0.0)) throw ConfigError(path + ": log scale needs min, max > 0");
    ax.values.reserve(static_cast<std::size_t>(pts));
    for (std::int64_t i = 0; i < pts; ++i) {
        const double f = pts == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(pts - 1);
        double v = scale == "log" ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
        if (i == 0) v = lo;
        if (i == pts - 1) v = hi;
        ax.values.push_back(v);
    }
    return ax;
}

Probe parse_probe(const json& j, const std::string& path) {
    reject_unknown(j, path, {"site", "axis"});
    Probe p;
    p.site = get<int>(j, "site", path, 1);
    try {
        p.axis = parse_axis(get<std::string>(j, "axis", path, "Z"));
    } catch (const std::exception& e) {
        throw ConfigError(path + ".axis: " + e.what());
    }
    return p;
}

// Axis names each mode accepts; the first `required` are mandatory.
struct ModeAxes {
    std::vector<std::string> names;
    std::size_t required;
};

ModeAxes axes_for(SweepMode m) {
    switch (m) {
        case SweepMode::FtnVsHz: return {{"h_z"}, 1};
        case SweepMode::HeatmapHzBeta: return {{"h_z", "beta"}, 2};
        case SweepMode::DistanceSweep: return {{"h_z", "d"}, 1};
        case SweepMode::HxGrid: return {{"h_z", "h_x"}, 2};
        case SweepMode::QslVsHz: return {{"h_z"}, 1};
        case SweepMode::TraceQOfT: return {{"t"}, 1};
    }
    return {{}, 0};
}

}  // namespace

SweepSpec parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(root, "", {"mode", "model", "axes", "probes", "state", "backend", "scan", "output", "exact_cap"});

    SweepSpec s;
    s.source = text;
    if (!root.contains("mode")) throw ConfigError("missing key 'mode'");
    s.mode = parse_mode(get<std::string>(root, "mode", "", ""));

    if (!root.contains("model")) throw ConfigError("missing key 'model'");
    const json& model = root.at("model");
    reject_unknown(model, "model", {"N", "J", "h_z", "h_x"});
    s.params.N = get<int>(model, "N", "model", 2);
    s.params.J = get<double>(model, "J", "model", 1.0);
    s.params.h_z = get<double>(model, "h_z", "model", 0.0);
    s.params.h_x = get<double>(model, "h_x", "model", 0.0);

    const ModeAxes allowed = axes_for(s.mode);
    if (root.contains("axes")) {
        const json& axes = root.at("axes");
        if (!axes.is_object()) throw ConfigError("axes: expected an object");
        for (const auto& [name, spec] : axes.items()) {
            bool known = false;
            for (const auto& a : allowed.names) known = known || a == name;
            if (!known) throw ConfigError("unknown key 'axes." + name + "' for mode " + mode_name(s.mode));
        }
        // Keep the mode's canonical axis order regardless of file order.
        for (const auto& name : allowed.names) {
            if (axes.contains(name)) s.axes.push_back(parse_axis_spec(name, axes.at(name), "axes." + name));
        }
    }
    for (std::size_t i = 0; i < allowed.required; ++i) {
        if (!s.axis(allowed.names[i])) {
            throw ConfigError("mode " + mode_name(s.mode) + " requires axis '" + allowed.names[i] + "'");
        }
    }

    if (root.contains("probes")) {
        const json& pr = root.at("probes");
        reject_unknown(pr, "probes", {"V", "W", "entry"});
        if (pr.contains("V")) s.v = parse_probe(pr.at("V"), "probes.V");
        if (pr.contains("W")) s.w = parse_probe(pr.at("W"), "probes.W");
        const auto entry = get<std::string>(pr, "entry", "probes", "all");
        if (entry != "all") {
            try {
                s.entries = EntryMask::only(Entry::parse(entry));
            } catch (const std::exception& e) {
                throw ConfigError(std::string("probes.entry: ") + e.what());
            }
        }
    }

    if (root.contains("state")) {
        const json& st = root.at("state");
        reject_unknown(st, "state", {"kind", "beta"});
        const auto kind = get<std::string>(st, "kind", "state", "ground");
        if (kind == "ground") {
            if (st.contains("beta")) throw ConfigError("state.beta: only valid with kind 'gibbs'");
        } else if (kind == "gibbs") {
            if (!st.contains("beta")) throw ConfigError("state: kind 'gibbs' needs 'beta'");
            s.beta = number(st.at("beta"), "state.beta");
            if (!(*s.beta >= 0.0)) throw ConfigError("state.beta: must be >= 0");
        } else {
            throw ConfigError("state.kind: expected ground or gibbs");
        }
    }

    s.backend = parse_backend(get<std::string>(root, "backend", "", "auto"));

    if (root.contains("scan")) {
        const json& sc = root.at("scan");
        reject_unknown(sc, "scan", {"t_max", "dt", "eps_neg", "refine_tol"});
        s.scan.t_max = get<double>(sc, "t_max", "scan", s.scan.t_max);
        s.scan.dt = get<double>(sc, "dt", "scan", s.scan.dt);
        s.scan.eps_neg = get<double>(sc, "eps_neg", "scan", s.scan.eps_neg);
        s.scan.refine_tol = get<double>(sc, "refine_tol", "scan", s.scan.refine_tol);
    }

    if (root.contains("output")) {
        const json& out = root.at("output");
        reject_unknown(out, "output", {"prefix", "formats"});
        s.output.prefix = get<std::string>(out, "prefix", "output", s.output.prefix);
        if (out.contains("formats")) {
            const auto formats = get<std::vector<std::string>>(out, "formats", "output", {});
            s.output.csv = s.output.json = s.output.svg = false;
            for (const auto& f : formats) {
                if (f == "csv") s.output.csv = true;
                else if (f == "json") s.output.json = true;
                else if (f == "svg") s.output.svg = true;
                else throw ConfigError("output.formats: unknown format '" + f + "'");
            }
            // CSV is the record of every run.
            s.output.csv = true;
        }
    }

    s.exact_cap = get<int>(root, "exact_cap", "", kDefaultExactCap);
    if (s.exact_cap < 2) throw ConfigError("exact_cap: must be >= 2");
    return s;
}

SweepSpec load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace ftnlab
