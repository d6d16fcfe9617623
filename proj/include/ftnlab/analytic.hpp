#pragma once

#include "ftnlab/model.hpp"
#include "ftnlab/quasiprob.hpp"

#include <optional>

namespace ftnlab {

enum class AsymptoteKind { WeakField, StrongField };

/// Two-qubit MH (-,-) entry for Z projectors on site 1, ground state:
/// (4h^2 - 2h W + J^2 cos^2(W t)) / (8h^2 + 2J^2), W = sqrt(4h^2 + J^2).
/// Evaluated as J^2 (cos^2(W t) - c) / (8h^2 + 2J^2), c = 2h/(W + 2h), which
/// avoids the cancellation in 4h^2 - 2h W at large h.
double two_qubit_mh(double J, double h_z, double t);

/// First zero arccos(sqrt(c))/W; nullopt for h_z = 0 (never negative).
/// Throws ArgumentError for J = 0.
std::optional<double> two_qubit_ftn(double J, double h_z);

/// weak: (pi/2 - sqrt(2h/J))/J; strong: pi h/(J^2 + 8h^2). Requires J, h > 0.
double asymptotic_ftn(double J, double h_z, AsymptoteKind kind);

/// Strong-field bound J^2/(8h^2) on |q(t) - mean|. Requires h > 0.
double strongfield_envelope(double J, double h_z);

/// prod over even sites of sigma^z; maps H(J, h_z, h_x) to H(-J, h_z) with
/// a staggered longitudinal field.
HermitianOperator gauge_unitary(int N);

/// Closed-form N = 2 trace. Only the real part is known in closed form, so
/// kd_mm returns a real value and has_imaginary() is false.
class TwoQubitKdTrace final : public KdTrace {
public:
    TwoQubitKdTrace(double J, double h_z);

    Complex kd_mm(double t) const override { return two_qubit_mh(J_, h_, t); }
    void kd_mm_grid(std::int64_t first, double dt, std::span<Complex> out) const override;
    double marginal_v() const override { return marginal_; }
    double marginal_w() const override { return marginal_; }
    std::string backend() const override { return "analytic2q"; }
    bool has_imaginary() const override { return false; }

private:
    double J_, h_;
    double marginal_;
};

}  // namespace ftnlab
