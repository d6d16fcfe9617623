#pragma once

#include "ftnlab/quasiprob.hpp"

#include <optional>

namespace ftnlab {

struct ScanConfig {
    double t_max = 1e3;
    double dt = 1e-3;
    double eps_neg = 1e-10;
    double refine_tol = 1e-9;

    /// 0 < dt < t_max, eps_neg > 0, 0 < refine_tol < dt.
    void validate() const;
    std::int64_t grid_points() const;
};

/// found == false is an ordinary outcome carrying the horizon.
struct FtnResult {
    bool found = false;
    std::optional<double> t_ftn;
    Entry entry;                ///< entry that is most negative at t_ftn
    double q_at_crossing = 0.0;
    double horizon = 0.0;
};

/// Scans t = dt, 2 dt, ... up to cfg.t_max for the first grid point where a
/// masked MH entry drops below -eps_neg, then bisects the zero crossing of
/// min q(t) that precedes it to refine_tol. If the table is already below
/// -eps_neg at t = 0 the result is found with t_ftn = 0.
FtnResult first_time_negativity(const KdTrace& trace, EntryMask mask, const ScanConfig& cfg);

/// Minimum over masked entries of the MH table built from a (-,-) KD value.
double min_masked_entry(double q_mm, double marginal_v, double marginal_w, EntryMask mask, Entry* which = nullptr);

}  // namespace ftnlab
