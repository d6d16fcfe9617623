#include "ftnlab/ftn.hpp"

#include "ftnlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace ftnlab {

namespace {

constexpr std::int64_t kScanBlock = 16 * kernels::kGridBlock;

}  // namespace

void ScanConfig::validate() const {
    if (!(dt > 0.0) || !(t_max > dt) || !std::isfinite(t_max)) {
        throw ArgumentError("scan: need 0 < dt < t_max");
    }
    if (!(eps_neg > 0.0)) throw ArgumentError("scan: eps_neg must be > 0");
    if (!(refine_tol > 0.0) || !(refine_tol < dt)) throw ArgumentError("scan: need 0 < refine_tol < dt");
}

std::int64_t ScanConfig::grid_points() const {
    return static_cast<std::int64_t>(std::floor(t_max / dt * (1.0 + 1e-12)));
}

double min_masked_entry(double q_mm, double marginal_v, double marginal_w, EntryMask mask, Entry* which) {
    const double q[4] = {1.0 - marginal_v - marginal_w + q_mm, marginal_w - q_mm, marginal_v - q_mm, q_mm};
    double best = std::numeric_limits<double>::infinity();
    int arg = 3;
    for (int i = 0; i < 4; ++i) {
        if (mask.contains(i) && q[i] < best) {
            best = q[i];
            arg = i;
        }
    }
    if (which) *which = Entry::from_index(arg);
    return best;
}

FtnResult first_time_negativity(const KdTrace& trace, EntryMask mask, const ScanConfig& cfg) {
    cfg.validate();
    const double mv = trace.marginal_v();
    const double mw = trace.marginal_w();
    const auto qmin_at = [&](double t, Entry* which = nullptr) {
        return min_masked_entry(trace.kd_mm(t).real(), mv, mw, mask, which);
    };
    const auto negative = [&](double t) { return qmin_at(t) < -cfg.eps_neg; };

    FtnResult res;
    res.horizon = cfg.t_max;

    if (negative(0.0)) {
        res.found = true;
        res.t_ftn = 0.0;
        res.q_at_crossing = qmin_at(0.0, &res.entry);
        return res;
    }

    const std::int64_t total = cfg.grid_points();
    std::vector<Complex> buf(static_cast<std::size_t>(std::min(total, kScanBlock)));
    for (std::int64_t first = 1; first <= total; first += kScanBlock) {
        const std::int64_t count = std::min(kScanBlock, total - first + 1);
        std::span<Complex> chunk(buf.data(), static_cast<std::size_t>(count));
        trace.kd_mm_grid(first, cfg.dt, chunk);
        for (std::int64_t j = 0; j < count; ++j) {
            const double q = min_masked_entry(chunk[static_cast<std::size_t>(j)].real(), mv, mw, mask);
            if (!(q < -cfg.eps_neg)) continue;
            double hi = static_cast<double>(first + j) * cfg.dt;
            // Recheck with exact phases; the grid kernel carries ~1e-13 drift.
            if (!negative(hi)) continue;
            // Bracket the zero crossing: walk back over the contiguous run with
            // q < 0. A run reaching t = 0 means the entry leaves zero downwards;
            // then the level -eps_neg is bracketed instead.
            const auto below_zero = [&](double t) { return qmin_at(t) < 0.0; };
            double lo = static_cast<double>(first + j - 1) * cfg.dt;
            while (lo > 0.0 && below_zero(lo)) lo = std::max(0.0, lo - cfg.dt);
            const bool from_origin = lo == 0.0 && below_zero(0.0);
            const auto pred = [&](double t) { return from_origin ? negative(t) : below_zero(t); };
            if (from_origin) {
                lo = static_cast<double>(first + j - 1) * cfg.dt;
                while (lo > 0.0 && negative(lo)) lo = std::max(0.0, lo - cfg.dt);
            }

            for (int it = 0; it < 200 && hi - lo > cfg.refine_tol; ++it) {
                const double mid = 0.5 * (lo + hi);
                (pred(mid) ? hi : lo) = mid;
            }
            // Tighten until the crossing value sits within 2 eps of the level.
            for (int it = 0; it < 200 && qmin_at(hi) < -2.0 * cfg.eps_neg; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                (pred(mid) ? hi : lo) = mid;
            }
            res.found = true;
            res.t_ftn = hi;
            res.q_at_crossing = qmin_at(hi, &res.entry);
            return res;
        }
    }
    return res;
}

}  // namespace ftnlab
