#pragma once

#include "ftnlab/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ftnlab {

/// Eigendecomposition H = V diag(E) V^dagger with ascending E and each
/// eigenvector's first non-negligible component real positive.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    ComplexMatrix eigenvectors;

    Eigen::Index dim() const { return eigenvalues.size(); }
    /// E_1 - E_0 (0 for a one-dimensional space).
    double ground_gap() const;
};

Spectrum spectral_decompose(const HermitianOperator& h);

enum class StateKind { PureGround, Gibbs };

struct QuantumState {
    HermitianOperator density;
    StateKind kind = StateKind::PureGround;
    double beta = 0.0;  ///< meaningful for Gibbs only
    /// Populations in the energy eigenbasis of the Spectrum the state was
    /// built from; rho = V diag(weights) V^dagger.
    Eigen::VectorXd weights;
    std::vector<std::string> warnings;
};

/// Quasi-degeneracy threshold for the ground-state warning.
inline constexpr double kGapWarning = 1e-10;

QuantumState ground_state(const Spectrum& spec);

/// rho = exp(-beta (H - E_min)) / Z. Throws ArgumentError for beta < 0 or
/// non-finite beta.
QuantumState gibbs_state(const Spectrum& spec, double beta);

/// P(t) = e^{iHt} P e^{-iHt}, evaluated in the cached eigenbasis.
HermitianOperator heisenberg_projector(const Spectrum& spec, const HermitianOperator& p, double t);

/// Heisenberg evolution of an operator already rotated into the eigenbasis
/// (P' = V^dagger P V); returns the evolved operator in the eigenbasis.
ComplexMatrix evolve_in_eigenbasis(const Eigen::VectorXd& energies, const ComplexMatrix& p_eig, double t);

}  // namespace ftnlab
