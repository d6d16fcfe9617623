#include "ftnlab/output.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <optional>

namespace ftnlab {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

std::string format_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    return {};
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

std::optional<double> numeric(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return *d;
    return std::nullopt;
}

int column(const SweepTable& t, const std::string& name) {
    const auto it = std::find(t.header.begin(), t.header.end(), name);
    return it == t.header.end() ? -1 : static_cast<int>(it - t.header.begin());
}

std::string esc(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '<') out += "&lt;";
        else if (ch == '>') out += "&gt;";
        else if (ch == '&') out += "&amp;";
        else out += ch;
    }
    return out;
}

struct Scale {
    double lo, hi;
    bool log;
    double px0, px1;

    double operator()(double v) const {
        const double a = log ? std::log10(lo) : lo;
        const double b = log ? std::log10(hi) : hi;
        const double x = log ? std::log10(v) : v;
        const double f = b > a ? (x - a) / (b - a) : 0.5;
        return px0 + f * (px1 - px0);
    }
};

Scale make_scale(std::vector<double> vals, double px0, double px1) {
    vals.erase(std::remove_if(vals.begin(), vals.end(), [](double v) { return !std::isfinite(v); }), vals.end());
    if (vals.empty()) return {0.0, 1.0, false, px0, px1};
    const auto [mn, mx] = std::minmax_element(vals.begin(), vals.end());
    const bool log = *mn > 0.0 && *mx / *mn > 100.0;
    return {*mn, *mx, log, px0, px1};
}

constexpr int kW = 640, kH = 420, kL = 70, kR = 20, kT = 30, kB = 50;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

void svg_open(std::ostream& os, const std::string& title) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kW / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">" << esc(title) << "</text>\n";
}

void axes_box(std::ostream& os, const Scale& sx, const Scale& sy, const std::string& xl, const std::string& yl) {
    os << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR << "\" height=\"" << kH - kT - kB
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (const auto* s : {&sx, &sy}) {
        for (int i = 0; i <= 4; ++i) {
            const double f = i / 4.0;
            const double v = s->log ? std::pow(10.0, std::log10(s->lo) + f * (std::log10(s->hi) - std::log10(s->lo)))
                                    : s->lo + f * (s->hi - s->lo);
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3g", v);
            const double p = (*s)(v);
            if (s == &sx) {
                os << "<text x=\"" << p << "\" y=\"" << kH - kB + 15 << "\" text-anchor=\"middle\">" << buf << "</text>\n";
            } else {
                os << "<text x=\"" << kL - 5 << "\" y=\"" << p + 4 << "\" text-anchor=\"end\">" << buf << "</text>\n";
            }
        }
    }
    os << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\">" << esc(xl) << "</text>\n";
    os << "<text x=\"14\" y=\"" << (kT + kH - kB) / 2 << "\" transform=\"rotate(-90 14 " << (kT + kH - kB) / 2
       << ")\" text-anchor=\"middle\">" << esc(yl) << "</text>\n";
}

void line_chart(std::ostream& os, const SweepTable& t, const std::string& title, int xcol,
                const std::vector<std::pair<std::string, std::vector<std::size_t>>>& series, int ycol) {
    std::vector<double> xs, ys;
    for (const auto& [name, rows] : series) {
        for (std::size_t r : rows) {
            const auto x = numeric(t.rows[r][static_cast<std::size_t>(xcol)]);
            const auto y = numeric(t.rows[r][static_cast<std::size_t>(ycol)]);
            if (x && y) {
                xs.push_back(*x);
                ys.push_back(*y);
            }
        }
    }
    Scale sx = make_scale(xs, kL, kW - kR);
    Scale sy = make_scale(ys, kH - kB, kT);
    sy.log = false;
    svg_open(os, title);
    axes_box(os, sx, sy, t.header[static_cast<std::size_t>(xcol)], t.header[static_cast<std::size_t>(ycol)]);
    std::size_t k = 0;
    for (const auto& [name, rows] : series) {
        const char* color = kColors[k % std::size(kColors)];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t r : rows) {
            const auto x = numeric(t.rows[r][static_cast<std::size_t>(xcol)]);
            const auto y = numeric(t.rows[r][static_cast<std::size_t>(ycol)]);
            if (x && y) os << sx(*x) << ',' << sy(*y) << ' ';
        }
        os << "\"/>\n";
        if (!name.empty()) {
            os << "<text x=\"" << kW - kR - 5 << "\" y=\"" << kT + 14 * (k + 1) << "\" text-anchor=\"end\" fill=\"" << color
               << "\">" << esc(name) << "</text>\n";
        }
        ++k;
    }
    os << "</svg>\n";
}

void multi_column_chart(std::ostream& os, const SweepTable& t, const std::string& title, const std::vector<int>& cols) {
    std::vector<double> xs, ys;
    for (const auto& row : t.rows) {
        if (auto x = numeric(row[0])) xs.push_back(*x);
        for (int c : cols) {
            if (auto y = numeric(row[static_cast<std::size_t>(c)])) ys.push_back(*y);
        }
    }
    Scale sx = make_scale(xs, kL, kW - kR);
    Scale sy = make_scale(ys, kH - kB, kT);
    sy.log = false;
    svg_open(os, title);
    axes_box(os, sx, sy, t.header[0], "value");
    std::size_t k = 0;
    for (int c : cols) {
        const char* color = kColors[k % std::size(kColors)];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& row : t.rows) {
            const auto x = numeric(row[0]);
            const auto y = numeric(row[static_cast<std::size_t>(c)]);
            if (x && y) os << sx(*x) << ',' << sy(*y) << ' ';
        }
        os << "\"/>\n";
        os << "<text x=\"" << kW - kR - 5 << "\" y=\"" << kT + 14 * (k + 1) << "\" text-anchor=\"end\" fill=\"" << color
           << "\">" << esc(t.header[static_cast<std::size_t>(c)]) << "</text>\n";
        ++k;
    }
    os << "</svg>\n";
}

void heatmap(std::ostream& os, const SweepTable& t, const std::string& title, int zcol) {
    std::vector<double> xs, ys, zs;
    for (const auto& row : t.rows) {
        const auto x = numeric(row[0]);
        const auto y = numeric(row[1]);
        if (x) xs.push_back(*x);
        if (y) ys.push_back(*y);
        if (auto z = numeric(row[static_cast<std::size_t>(zcol)])) zs.push_back(*z);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    const double zmin = zs.empty() ? 0.0 : *std::min_element(zs.begin(), zs.end());
    const double zmax = zs.empty() ? 1.0 : *std::max_element(zs.begin(), zs.end());
    svg_open(os, title);
    const double cw = static_cast<double>(kW - kL - kR) / std::max<std::size_t>(xs.size(), 1);
    const double ch = static_cast<double>(kH - kT - kB) / std::max<std::size_t>(ys.size(), 1);
    for (const auto& row : t.rows) {
        const auto x = numeric(row[0]);
        const auto y = numeric(row[1]);
        if (!x || !y) continue;
        const auto ix = std::lower_bound(xs.begin(), xs.end(), *x) - xs.begin();
        const auto iy = std::lower_bound(ys.begin(), ys.end(), *y) - ys.begin();
        std::string fill = "#cccccc";
        if (auto z = numeric(row[static_cast<std::size_t>(zcol)])) {
            const double f = zmax > zmin ? (*z - zmin) / (zmax - zmin) : 0.5;
            char buf[16];
            std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(255 * f), static_cast<int>(60 + 120 * (1 - f)),
                          static_cast<int>(255 * (1 - f)));
            fill = buf;
        }
        os << "<rect x=\"" << kL + cw * static_cast<double>(ix) << "\" y=\"" << kH - kB - ch * static_cast<double>(iy + 1)
           << "\" width=\"" << cw + 0.5 << "\" height=\"" << ch + 0.5 << "\" fill=\"" << fill << "\"/>\n";
    }
    const Scale sx{xs.empty() ? 0.0 : xs.front(), xs.empty() ? 1.0 : xs.back(), false, kL + cw / 2, kW - kR - cw / 2};
    const Scale sy{ys.empty() ? 0.0 : ys.front(), ys.empty() ? 1.0 : ys.back(), false, kH - kB - ch / 2, kT + ch / 2};
    axes_box(os, sx, sy, t.header[0], t.header[1]);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s: blue %.3g .. red %.3g, grey = none", t.header[static_cast<std::size_t>(zcol)].c_str(),
                  zmin, zmax);
    os << "<text x=\"" << kL << "\" y=\"" << kT - 4 << "\">" << esc(buf) << "</text>\n";
    os << "</svg>\n";
}

}  // namespace

void write_csv(std::ostream& os, const SweepTable& table) {
    for (std::size_t i = 0; i < table.header.size(); ++i) os << (i ? "," : "") << csv_field(table.header[i]);
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(format_cell(row[i]));
        os << '\n';
    }
}

void write_metadata(std::ostream& os, const SweepSpec& spec, const SweepTable& table, const RunInfo& info) {
    nlohmann::json meta;
    try {
        meta["config"] = nlohmann::json::parse(spec.source);
    } catch (const nlohmann::json::exception&) {
        meta["config"] = spec.source;
    }
    meta["version"] = info.version;
    meta["wall_seconds"] = info.wall_seconds;
    meta["workers"] = info.workers;
    meta["mode"] = mode_name(spec.mode);
    meta["rows"] = table.rows.size();
    meta["columns"] = table.header;
    nlohmann::json errs = nlohmann::json::array();
    for (const auto& e : table.errors) errs.push_back({{"row", e.row}, {"code", e.code}, {"message", e.message}});
    meta["errors"] = errs;
    os << meta.dump(2) << '\n';
}

void write_svg(std::ostream& os, const SweepSpec& spec, const SweepTable& t) {
    const std::string title = mode_name(spec.mode) + ", N=" + std::to_string(spec.params.N);
    switch (spec.mode) {
        case SweepMode::FtnVsHz: {
            std::vector<std::size_t> rows(t.rows.size());
            for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
            line_chart(os, t, title, 0, {{"", rows}}, column(t, "t_ftn"));
            return;
        }
        case SweepMode::DistanceSweep: {
            std::map<double, std::vector<std::size_t>> by_d;
            for (std::size_t i = 0; i < t.rows.size(); ++i) {
                if (auto d = numeric(t.rows[i][1])) by_d[*d].push_back(i);
            }
            std::vector<std::pair<std::string, std::vector<std::size_t>>> series;
            for (auto& [d, rows] : by_d) series.emplace_back("d=" + format_number(d), std::move(rows));
            line_chart(os, t, title, 0, series, column(t, "t_ftn"));
            return;
        }
        case SweepMode::QslVsHz: multi_column_chart(os, t, title, {column(t, "T_qsl"), column(t, "t_ftn")}); return;
        case SweepMode::TraceQOfT: multi_column_chart(os, t, title, {1, 2, 3, 4}); return;
        case SweepMode::HeatmapHzBeta:
        case SweepMode::HxGrid: heatmap(os, t, title, column(t, "t_ftn")); return;
    }
}

}  // namespace ftnlab
