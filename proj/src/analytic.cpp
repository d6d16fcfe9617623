#include "ftnlab/analytic.hpp"

#include "ftnlab/error.hpp"

#include <cmath>
#include <numbers>

namespace ftnlab {

namespace {

double omega2q(double J, double h) { return std::sqrt(4.0 * h * h + J * J); }

}  // namespace

double two_qubit_mh(double J, double h_z, double t) {
    if (J == 0.0 && h_z == 0.0) throw ArgumentError("two_qubit_mh: J and h_z both zero");
    const double w = omega2q(J, h_z);
    const double c = 2.0 * h_z / (w + 2.0 * h_z);
    const double cs = std::cos(w * t);
    return J * J * (cs * cs - c) / (8.0 * h_z * h_z + 2.0 * J * J);
}

std::optional<double> two_qubit_ftn(double J, double h_z) {
    if (J == 0.0) throw ArgumentError("two_qubit_ftn: J must be nonzero");
    if (h_z == 0.0) return std::nullopt;
    const double w = omega2q(J, h_z);
    const double c = 2.0 * h_z / (w + 2.0 * h_z);
    if (c < 0.0 || c > 1.0) return std::nullopt;
    return std::acos(std::sqrt(c)) / w;
}

double asymptotic_ftn(double J, double h_z, AsymptoteKind kind) {
    if (!(J > 0.0) || !(h_z > 0.0)) throw ArgumentError("asymptotic_ftn: requires J > 0 and h_z > 0");
    if (kind == AsymptoteKind::WeakField) return (std::numbers::pi / 2.0 - std::sqrt(2.0 * h_z / J)) / J;
    return std::numbers::pi * h_z / (J * J + 8.0 * h_z * h_z);
}

double strongfield_envelope(double J, double h_z) {
    if (!(h_z > 0.0)) throw ArgumentError("strongfield_envelope: requires h_z > 0");
    return J * J / (8.0 * h_z * h_z);
}

HermitianOperator gauge_unitary(int N) {
    if (N < 2) throw ArgumentError("gauge_unitary: N must be >= 2");
    const Eigen::Index d = Eigen::Index{1} << N;
    Eigen::VectorXcd diag(d);
    for (Eigen::Index s = 0; s < d; ++s) {
        int flips = 0;
        for (int site = 2; site <= N; site += 2) flips += static_cast<int>((s >> (N - site)) & 1);
        diag(s) = (flips % 2) ? -1.0 : 1.0;
    }
    return HermitianOperator::trusted(diag.asDiagonal());
}

TwoQubitKdTrace::TwoQubitKdTrace(double J, double h_z) : J_(J), h_(h_z) {
    if (J == 0.0 && h_z == 0.0) throw ArgumentError("analytic2q: J and h_z both zero");
    // Pi_- commutes with itself, so the t = 0 entry is <Pi_-> itself.
    marginal_ = two_qubit_mh(J, h_z, 0.0);
}

void TwoQubitKdTrace::kd_mm_grid(std::int64_t first, double dt, std::span<Complex> out) const {
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = two_qubit_mh(J_, h_, static_cast<double>(first + static_cast<std::int64_t>(j)) * dt);
    }
}

}  // namespace ftnlab
