#include "ftnlab/dynamics.hpp"

#include "ftnlab/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace ftnlab {

namespace {

// Rotate each column so its first component above the noise floor is real
// positive. Makes eigenvectors reproducible across runs and platforms.
void fix_phases(ComplexMatrix& v) {
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
        const double floor = 1e-10 * v.col(c).cwiseAbs().maxCoeff();
        for (Eigen::Index r = 0; r < v.rows(); ++r) {
            const double mag = std::abs(v(r, c));
            if (mag > floor) {
                v.col(c) *= std::conj(v(r, c)) / mag;
                v(r, c) = mag;
                break;
            }
        }
    }
}

ComplexMatrix density_from_weights(const Spectrum& spec, const Eigen::VectorXd& w) {
    return spec.eigenvectors * w.cast<Complex>().asDiagonal() * spec.eigenvectors.adjoint();
}

}  // namespace

double Spectrum::ground_gap() const {
    return eigenvalues.size() > 1 ? eigenvalues(1) - eigenvalues(0) : 0.0;
}

Spectrum spectral_decompose(const HermitianOperator& h) {
    Spectrum out;
    if (h.is_real()) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.matrix().real());
        if (solver.info() != Eigen::Success) {
            throw NumericError("real symmetric eigensolver did not converge (dim " + std::to_string(h.dim()) + ")");
        }
        out.eigenvalues = solver.eigenvalues();
        out.eigenvectors = solver.eigenvectors().cast<Complex>();
    } else {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
        if (solver.info() != Eigen::Success) {
            throw NumericError("Hermitian eigensolver did not converge (dim " + std::to_string(h.dim()) +
                               ", hermiticity defect " + std::to_string(h.hermiticity_defect()) + ")");
        }
        out.eigenvalues = solver.eigenvalues();
        out.eigenvectors = solver.eigenvectors();
    }
    fix_phases(out.eigenvectors);
    return out;
}

QuantumState ground_state(const Spectrum& spec) {
    if (spec.dim() == 0) throw ArgumentError("ground_state: empty spectrum");
    QuantumState s;
    s.kind = StateKind::PureGround;
    s.weights = Eigen::VectorXd::Zero(spec.dim());
    s.weights(0) = 1.0;
    const ComplexVector g = spec.eigenvectors.col(0);
    s.density = HermitianOperator::trusted(g * g.adjoint());
    if (spec.dim() > 1 && spec.ground_gap() < kGapWarning) {
        s.warnings.push_back("ground state quasi-degenerate: gap " + std::to_string(spec.ground_gap()) +
                             " below " + std::to_string(kGapWarning));
    }
    return s;
}

QuantumState gibbs_state(const Spectrum& spec, double beta) {
    if (!std::isfinite(beta) || beta < 0.0) {
        throw ArgumentError("gibbs_state: beta must be finite and >= 0");
    }
    const double e0 = spec.eigenvalues.minCoeff();
    Eigen::VectorXd w = (-beta * (spec.eigenvalues.array() - e0)).exp().matrix();
    w /= w.sum();
    QuantumState s;
    s.kind = StateKind::Gibbs;
    s.beta = beta;
    s.weights = w;
    s.density = HermitianOperator::trusted(density_from_weights(spec, w));
    return s;
}

ComplexMatrix evolve_in_eigenbasis(const Eigen::VectorXd& energies, const ComplexMatrix& p_eig, double t) {
    const Eigen::Index d = energies.size();
    ComplexVector phase(d);
    for (Eigen::Index a = 0; a < d; ++a) phase(a) = std::polar(1.0, energies(a) * t);
    // (e^{iDt} P' e^{-iDt})_{ab} = e^{i(E_a - E_b)t} P'_{ab}
    return phase.asDiagonal() * p_eig * phase.conjugate().asDiagonal();
}

HermitianOperator heisenberg_projector(const Spectrum& spec, const HermitianOperator& p, double t) {
    if (p.dim() != spec.dim()) throw ArgumentError("heisenberg_projector: dimension mismatch");
    if (t == 0.0) return p;
    const ComplexMatrix& v = spec.eigenvectors;
    const ComplexMatrix p_eig = v.adjoint() * p.matrix() * v;
    ComplexMatrix out = v * evolve_in_eigenbasis(spec.eigenvalues, p_eig, t) * v.adjoint();
    // Symmetrise away round-off so downstream Hermiticity checks stay tight.
    out = 0.5 * (out + out.adjoint()).eval();
    return HermitianOperator::trusted(std::move(out));
}

}  // namespace ftnlab
