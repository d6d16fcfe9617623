#include "ftnlab/qsl.hpp"

#include "ftnlab/error.hpp"

#include <algorithm>
#include <cmath>

namespace ftnlab {

namespace {

constexpr double kZeroVariance = 1e-24;

int chain_length(Eigen::Index dim) {
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) ++n;
    if ((Eigen::Index{1} << n) != dim) throw ArgumentError("qsl: dimension is not a power of two");
    return n;
}

}  // namespace

HermitianOperator anticommutator_state(const QuantumState& rho0, const HermitianOperator& xi) {
    if (rho0.density.dim() != xi.dim()) throw ArgumentError("anticommutator_state: dimension mismatch");
    const ComplexMatrix& r = rho0.density.matrix();
    const ComplexMatrix& x = xi.matrix();
    ComplexMatrix m = 0.5 * (r * x + x * r);
    m = 0.5 * (m + m.adjoint()).eval();
    return HermitianOperator::trusted(std::move(m));
}

HermitianOperator sld_operator(const HermitianOperator& H, const HermitianOperator& P) {
    if (H.dim() != P.dim()) throw ArgumentError("sld_operator: dimension mismatch");
    const double tr = P.trace().real();
    if (!(std::abs(tr) > 0.0)) throw ArgumentError("sld_operator: projector has zero trace");
    const ComplexMatrix pn = P.matrix() / tr;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(pn);
    if (es.info() != Eigen::Success) throw NumericError("sld_operator: eigensolver failed");
    const Eigen::VectorXd& d = es.eigenvalues();
    const ComplexMatrix& U = es.eigenvectors();

    const ComplexMatrix c = Complex(0.0, 1.0) * (H.matrix() * pn - pn * H.matrix());
    const ComplexMatrix cp = U.adjoint() * c * U;
    const double tol = 1e-10 * d.cwiseAbs().maxCoeff();
    ComplexMatrix lp = ComplexMatrix::Zero(cp.rows(), cp.cols());
    for (Eigen::Index k = 0; k < cp.rows(); ++k) {
        for (Eigen::Index l = 0; l < cp.cols(); ++l) {
            const double s = d(k) + d(l);
            if (std::abs(s) > tol) lp(k, l) = 2.0 * cp(k, l) / s;
        }
    }
    ComplexMatrix L = U * lp * U.adjoint();
    L = 0.5 * (L + L.adjoint()).eval();
    return HermitianOperator::trusted(std::move(L));
}

double sld_variance(const QuantumState& rho0, const HermitianOperator& L) {
    const ComplexMatrix& r = rho0.density.matrix();
    const ComplexMatrix rl = r * L.matrix();
    const double mean = rl.trace().real();
    const double second = (rl * L.matrix()).trace().real();
    return std::max(0.0, second - mean * mean);
}

double interpolation_angle(double x, double x_min, double x_max, double clamp_band) {
    const double width = x_max - x_min;
    if (!(width > 0.0)) throw NumericError("qsl: degenerate range x_max = x_min");
    double arg = (2.0 * x - x_min - x_max) / width;
    if (arg > 1.0 + clamp_band || arg < -1.0 - clamp_band) {
        throw NumericError("qsl: arccos argument " + std::to_string(arg) + " outside [-1, 1]");
    }
    arg = std::clamp(arg, -1.0, 1.0);
    return std::acos(arg);
}

QslResult qsl_time(const QuantumState& rho0, const Spectrum& spec, const ProjectorSpec& v, const ProjectorSpec& w,
                   const QslOptions& opts) {
    const int N = chain_length(spec.dim());
    const ComplexMatrix& V = spec.eigenvectors;
    const HermitianOperator H = HermitianOperator::trusted(V * spec.eigenvalues.cast<Complex>().asDiagonal() * V.adjoint());
    const HermitianOperator pi = embed_projector(v, N);
    const HermitianOperator xi = embed_projector(w, N);

    QslResult res;
    res.entry = Entry{v.outcome, w.outcome};

    const HermitianOperator rho_d = anticommutator_state(rho0, xi);
    const double tr_pi = pi.trace().real();
    res.x_initial = (rho_d.matrix() * pi.matrix()).trace().real() / tr_pi;

    if (opts.range == QslRange::StateSpectrum) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho_d.matrix(), Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw NumericError("qsl: eigensolver failed");
        res.x_min = es.eigenvalues().minCoeff();
        res.x_max = es.eigenvalues().maxCoeff();
    } else {
        res.x_min = 0.0;
        res.x_max = 1.0;
    }

    const HermitianOperator L = sld_operator(H, pi);
    const double var = sld_variance(rho0, L);
    res.delta_L = var > kZeroVariance ? std::sqrt(var) : 0.0;

    const double scale = std::max(std::abs(res.x_min), std::abs(res.x_max));
    if (res.x_initial <= 1e-14 * std::max(scale, 1e-300)) {
        res.T_qsl = 0.0;
        if (res.x_max > res.x_min) {
            res.tau_target = interpolation_angle(0.0, res.x_min, res.x_max, opts.clamp_band);
            res.tau_initial = res.tau_target;
        }
        return res;
    }
    if (res.delta_L == 0.0) {
        res.unbounded = true;
        if (res.x_max > res.x_min) {
            res.tau_target = interpolation_angle(0.0, res.x_min, res.x_max, opts.clamp_band);
            res.tau_initial = interpolation_angle(res.x_initial, res.x_min, res.x_max, opts.clamp_band);
        }
        return res;
    }
    if (!(res.x_max - res.x_min > 1e-14 * std::max(scale, 1e-300))) {
        throw NumericError("qsl: degenerate range x_max = x_min");
    }
    res.tau_target = interpolation_angle(0.0, res.x_min, res.x_max, opts.clamp_band);
    res.tau_initial = interpolation_angle(res.x_initial, res.x_min, res.x_max, opts.clamp_band);
    res.T_qsl = std::max(0.0, res.tau_target - res.tau_initial) / res.delta_L;
    return res;
}

}  // namespace ftnlab
