#pragma once

#include "ftnlab/dynamics.hpp"
#include "ftnlab/model.hpp"
#include "ftnlab/quasiprob.hpp"

#include <optional>

namespace ftnlab {

/// Where the extremal values x_min, x_max of the interpolation angle come from.
enum class QslRange {
    StateSpectrum,      ///< eigenvalues of {rho0, Xi}/2 (default)
    ProjectorSpectrum,  ///< eigenvalues of the projector, i.e. [0, 1]
};

struct QslOptions {
    QslRange range = QslRange::StateSpectrum;
    double clamp_band = 1e-9;  ///< arccos arguments this far outside [-1, 1] are clamped
};

struct QslResult {
    std::optional<double> T_qsl;  ///< nullopt when unbounded
    bool unbounded = false;
    double tau_target = 0.0;
    double tau_initial = 0.0;
    double delta_L = 0.0;
    double x_min = 0.0;
    double x_max = 0.0;
    double x_initial = 0.0;
    Entry entry;
};

/// {rho0, Xi}/2.
HermitianOperator anticommutator_state(const QuantumState& rho0, const HermitianOperator& xi);

/// SLD L solving 2 i[H, P~] = P~ L + L P~ with P~ = P / Tr P, built
/// element-wise in P~'s eigenbasis; entries with d_k + d_l ~ 0 are set to 0.
HermitianOperator sld_operator(const HermitianOperator& H, const HermitianOperator& P);

/// Tr[rho0 L^2] - Tr[rho0 L]^2, clipped at 0.
double sld_variance(const QuantumState& rho0, const HermitianOperator& L);

/// tau(x) = arccos((2x - x_min - x_max)/(x_max - x_min)).
double interpolation_angle(double x, double x_min, double x_max, double clamp_band = 1e-9);

/// Lower bound on the time for q_{V W} to reach zero:
/// [tau(0) - tau(q(0))] / Delta L. Returns T = 0 when q(0) <= 0, unbounded
/// when Delta L = 0, and throws NumericError when x_max = x_min.
QslResult qsl_time(const QuantumState& rho0, const Spectrum& spec, const ProjectorSpec& v, const ProjectorSpec& w,
                   const QslOptions& opts = {});

}  // namespace ftnlab
