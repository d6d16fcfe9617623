#pragma once

#include "ftnlab/dynamics.hpp"
#include "ftnlab/model.hpp"
#include "ftnlab/series.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>

namespace ftnlab {

/// Outcome-sign pair (gamma of the later V measurement, delta of the earlier
/// W measurement). Serialised in the fixed order ++, +-, -+, --.
struct Entry {
    int gamma = -1;
    int delta = -1;

    int index() const { return 2 * (gamma < 0 ? 1 : 0) + (delta < 0 ? 1 : 0); }
    static Entry from_index(int i) { return {(i & 2) ? -1 : 1, (i & 1) ? -1 : 1}; }
    /// "pp", "pm", "mp" or "mm".
    std::string label() const;
    static Entry parse(const std::string& label);

    friend bool operator==(const Entry&, const Entry&) = default;
};

/// Which of the four entries a detector looks at.
class EntryMask {
public:
    static EntryMask all() { return EntryMask(0b1111); }
    static EntryMask only(Entry e) { return EntryMask(1u << e.index()); }
    bool contains(int index) const { return (bits_ >> index) & 1u; }
    bool is_all() const { return bits_ == 0b1111; }
    /// "all" or the single entry's label.
    std::string label() const;

private:
    explicit EntryMask(unsigned bits) : bits_(bits) {}
    unsigned bits_;
};

struct QPTable {
    double t = 0.0;
    std::array<Complex, 4> kd{};  ///< p_{gamma delta}, indexed by Entry::index()
    std::array<double, 4> mh{};   ///< q = Re p
    double negativity = 0.0;
    Probe v;
    Probe w;
    std::string backend;

    Complex p(Entry e) const { return kd[static_cast<std::size_t>(e.index())]; }
    double q(Entry e) const { return mh[static_cast<std::size_t>(e.index())]; }
    /// Smallest MH entry admitted by `mask`, and which entry it is.
    std::pair<double, Entry> min_entry(EntryMask mask = EntryMask::all()) const;
};

/// sum |q| - 1, snapped to 0 when it is within 1e-12 of zero.
double negativity(const QPTable& table);

/// Dense reference: every entry from Tr[Pi_gamma(t) Xi_delta rho0].
QPTable kd_table(const QuantumState& rho0, const Spectrum& spec, const Probe& v, const Probe& w, double t);

struct Reconstruction {
    double polarization_change;  ///< sum (l_gamma - l_delta) q
    double correlator_real;      ///< sum l_gamma l_delta q
};

/// Eigenvalues are the outcome signs themselves (+1 / -1).
Reconstruction reconstruct(const QPTable& table);

/// Builds the full table from the (-,-) KD entry and the stationary
/// marginals Tr[Pi_- rho0], Tr[Xi_- rho0] via Pi_+ = I - Pi_-.
QPTable table_from_mm(double t, Complex p_mm, double marginal_v, double marginal_w);

/// A KD (-,-) entry as a function of time plus its stationary marginals.
/// Backends implement it; detectors only speak to this interface.
class KdTrace {
public:
    virtual ~KdTrace() = default;

    /// Accurate single-point value (used for refinement).
    virtual Complex kd_mm(double t) const = 0;
    /// Fast evaluation at t_j = (first + j) dt.
    virtual void kd_mm_grid(std::int64_t first, double dt, std::span<Complex> out) const = 0;

    virtual double marginal_v() const = 0;
    virtual double marginal_w() const = 0;
    virtual std::string backend() const = 0;
    /// False when the backend only produces the real part.
    virtual bool has_imaginary() const { return true; }

    QPTable table(double t) const;
};

/// Exact-diagonalisation trace: the (-,-) entry expanded over Bohr
/// frequencies, sum_ab w_a e^{i(E_a - E_b)t} P'_ab X'_ba with P' = V^dag Pi_- V
/// and X' = V^dag Xi_- V.
class ExactKdTrace final : public KdTrace {
public:
    /// Terms with |amplitude| below this are dropped.
    static constexpr double kPruneTol = 1e-18;

    ExactKdTrace(const QuantumState& rho0, const Spectrum& spec, const Probe& v, const Probe& w);

    Complex kd_mm(double t) const override { return series_(t); }
    void kd_mm_grid(std::int64_t first, double dt, std::span<Complex> out) const override {
        kernels::evaluate_grid(series_, first, dt, out);
    }
    double marginal_v() const override { return marginal_v_; }
    double marginal_w() const override { return marginal_w_; }
    std::string backend() const override { return "exact"; }

    const PhaseSeries& series() const { return series_; }

private:
    PhaseSeries series_;
    double marginal_v_ = 0.0;
    double marginal_w_ = 0.0;
};

}  // namespace ftnlab
