#include "ftnlab/model.hpp"

#include "ftnlab/error.hpp"

#include <cmath>
#include <cstdio>

namespace ftnlab {

namespace {

constexpr double kHermitianTol = 1e-12;

// Bit index of `site` in a basis label (site 1 is the most significant qubit).
inline int bit_of(int site, int N) { return N - site; }

void check_site(int site, int N) {
    if (site < 1 || site > N) {
        throw ArgumentError("site " + std::to_string(site) + " outside [1, " + std::to_string(N) + "]");
    }
}

}  // namespace

void ChainParams::validate() const {
    if (N < 2) throw ArgumentError("N must be >= 2, got " + std::to_string(N));
    if (!std::isfinite(J) || !std::isfinite(h_z) || !std::isfinite(h_x)) {
        throw ArgumentError("chain parameters must be finite");
    }
    if (h_z < 0.0 || h_x < 0.0) throw ArgumentError("fields h_z, h_x must be >= 0");
    if (J == 0.0 && h_z == 0.0 && h_x == 0.0) throw ArgumentError("J, h_z, h_x are all zero");
}

std::string ChainParams::key() const {
    char buf[128];
    std::snprintf(buf, sizeof buf, "N=%d;J=%.17g;hz=%.17g;hx=%.17g", N, J, h_z, h_x);
    return buf;
}

HermitianOperator::HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw ArgumentError("operator must be square");
    if (hermiticity_defect() > kHermitianTol) {
        throw ArgumentError("operator is not Hermitian (defect " + std::to_string(hermiticity_defect()) + ")");
    }
}

HermitianOperator HermitianOperator::trusted(ComplexMatrix m) {
    HermitianOperator op;
    op.m_ = std::move(m);
    return op;
}

bool HermitianOperator::is_real() const {
    return m_.imag().cwiseAbs().maxCoeff() == 0.0;
}

double HermitianOperator::hermiticity_defect() const {
    if (m_.size() == 0) return 0.0;
    const double scale = m_.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() / scale;
}

Axis parse_axis(const std::string& s) {
    if (s == "X" || s == "x") return Axis::X;
    if (s == "Y" || s == "y") return Axis::Y;
    if (s == "Z" || s == "z") return Axis::Z;
    throw ArgumentError("unknown axis '" + s + "' (expected X, Y or Z)");
}

char axis_name(Axis a) {
    switch (a) {
        case Axis::X: return 'X';
        case Axis::Y: return 'Y';
        case Axis::Z: return 'Z';
    }
    return '?';
}

HermitianOperator pauli_at(Axis axis, int site, int N) {
    check_site(site, N);
    const Eigen::Index d = Eigen::Index{1} << N;
    const Eigen::Index mask = Eigen::Index{1} << bit_of(site, N);
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (Eigen::Index s = 0; s < d; ++s) {
        const bool up = (s & mask) == 0;
        switch (axis) {
            case Axis::Z: m(s, s) = up ? 1.0 : -1.0; break;
            case Axis::X: m(s ^ mask, s) = 1.0; break;
            case Axis::Y: m(s ^ mask, s) = up ? Complex(0, 1) : Complex(0, -1); break;
        }
    }
    return HermitianOperator::trusted(std::move(m));
}

HermitianOperator parity_operator(int N) {
    const Eigen::Index d = Eigen::Index{1} << N;
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (Eigen::Index s = 0; s < d; ++s) {
        m(s, s) = (__builtin_popcountll(static_cast<unsigned long long>(s)) % 2 == 0) ? 1.0 : -1.0;
    }
    return HermitianOperator::trusted(std::move(m));
}

HermitianOperator build_hamiltonian(const ChainParams& p, int exact_cap) {
    p.validate();
    if (p.N > exact_cap) {
        throw CapacityError("N=" + std::to_string(p.N) + " exceeds the dense backend cap N <= " +
                            std::to_string(exact_cap));
    }
    const int N = p.N;
    const Eigen::Index d = Eigen::Index{1} << N;
    ComplexMatrix h = ComplexMatrix::Zero(d, d);
    for (Eigen::Index s = 0; s < d; ++s) {
        double diag = 0.0;
        for (int n = 1; n <= N; ++n) {
            const Eigen::Index mask = Eigen::Index{1} << bit_of(n, N);
            diag += (s & mask) ? p.h_z : -p.h_z;
            if (p.h_x != 0.0) h(s ^ mask, s) -= p.h_x;
            if (n < N && p.J != 0.0) {
                const Eigen::Index pair = mask | (Eigen::Index{1} << bit_of(n + 1, N));
                h(s ^ pair, s) -= p.J;
            }
        }
        h(s, s) += diag;
    }
    return HermitianOperator::trusted(std::move(h));
}

HermitianOperator embed_projector(const ProjectorSpec& spec, int N) {
    check_site(spec.site, N);
    if (spec.outcome != 1 && spec.outcome != -1) {
        throw ArgumentError("projector outcome must be +1 or -1");
    }
    ComplexMatrix m = pauli_at(spec.axis, spec.site, N).matrix() * (0.5 * spec.outcome);
    m.diagonal().array() += 0.5;
    return HermitianOperator::trusted(std::move(m));
}

double commutator_norm(const HermitianOperator& a, const HermitianOperator& b) {
    if (a.dim() != b.dim()) throw ArgumentError("commutator: dimension mismatch");
    const ComplexMatrix c = a.matrix() * b.matrix() - b.matrix() * a.matrix();
    return c.size() ? c.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace ftnlab
