#pragma once

#include "ftnlab/ftn.hpp"
#include "ftnlab/model.hpp"
#include "ftnlab/quasiprob.hpp"

#include <complex>
#include <vector>

namespace ftnlab {

/// How a normal mode's momentum solves J sin(kN) + h_z sin(k(N+1)) = 0.
enum class ModeKind {
    Bulk,       ///< real k in (0, pi)
    BoundPi,    ///< k = pi + i kappa, ferromagnetic edge mode
    BoundZero,  ///< k = i kappa, antiferromagnetic edge mode
    EdgeZero,   ///< h_z = 0: decoupled zero mode, reported as k = pi
};

/// Free-fermion normal modes of the open transverse-field chain.
///
/// Column k of psi/phi holds psi_nk = C_k sin(kn) and
/// phi_nk = D_k sin(k(N+1-n)) (with the analytic continuation for bound
/// modes). The Bogoliubov transform c_n = sum_k A_nk b_k + B_nk b_k^dagger
/// uses A = (phi + psi)/2 and B = (phi - psi)/2.
struct ModeSet {
    ChainParams params;
    std::vector<std::complex<double>> momenta;
    std::vector<ModeKind> kinds;
    std::vector<double> kappa;  ///< imaginary part for bound modes, 0 otherwise
    Eigen::VectorXd omegas;
    Eigen::MatrixXd psi;
    Eigen::MatrixXd phi;
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;

    int size() const { return static_cast<int>(omegas.size()); }
    /// Quantization residual of mode k relative to |J| + h_z. Bound modes
    /// use the divided form h_z sinh((N+1)kappa)/sinh(N kappa) - |J|.
    double quantization_residual(int k) const;
};

/// omega(k) = 2 sqrt((J + h cos k)^2 + (h sin k)^2) for real k.
double dispersion(double J, double h_z, double k);

/// Requires h_x = 0 and (J, h_z) != (0, 0). Throws NumericError listing the
/// roots found when fewer than N modes can be located.
ModeSet solve_modes(const ChainParams& params);

/// Real MH entry for both projectors = sigma^z eigenvalue -1 at `site`, in
/// the Bogoliubov vacuum. Factorised O(N) evaluation of the mode double sum.
double ff_mh_entry(const ModeSet& modes, int site, double t);

/// Literal O(N^2) double sum over (k, p); serial reference for ff_mh_entry.
double ff_mh_entry_reference(const ModeSet& modes, int site, double t);

/// Full complex KD (-,-) entry from the same Wick contraction.
Complex ff_kd_entry(const ModeSet& modes, int site, double t);

/// <Pi_-(site)> in the vacuum, sum_k A_nk^2.
double ff_occupation(const ModeSet& modes, int site);

class FreeFermionKdTrace final : public KdTrace {
public:
    FreeFermionKdTrace(const ModeSet& modes, int site);

    Complex kd_mm(double t) const override;
    void kd_mm_grid(std::int64_t first, double dt, std::span<Complex> out) const override;
    double marginal_v() const override { return occupation_; }
    double marginal_w() const override { return occupation_; }
    std::string backend() const override { return "freefermion"; }

private:
    PhaseSeries aa_, bb_, ab_;  // sum_k x_k e^{-i omega_k t}
    double occupation_ = 0.0;
};

FtnResult ff_ftn(const ModeSet& modes, int site, const ScanConfig& cfg, EntryMask mask = EntryMask::all());

struct ModeEquationReport {
    Eigen::MatrixXd Q, P, V, W;
    double residual_w = 0.0;     ///< max_k |W psi_k - omega_k^2 psi_k|
    double residual_v = 0.0;     ///< max_k |V phi_k - omega_k^2 phi_k|
    double first_order = 0.0;    ///< max_k of |(Q-P)psi - omega phi|, |(Q+P)phi - omega psi|
};

/// Builds Q, P and the tridiagonal V = (Q-P)(Q+P), W = (Q+P)(Q-P) and
/// checks the modes against them.
ModeEquationReport verify_mode_equations(const ChainParams& params, const ModeSet& modes);

}  // namespace ftnlab
