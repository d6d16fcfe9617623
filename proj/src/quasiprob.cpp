#include "ftnlab/quasiprob.hpp"

#include "ftnlab/error.hpp"

#include <cmath>
#include <limits>

namespace ftnlab {

std::string Entry::label() const {
    std::string s;
    s += gamma > 0 ? 'p' : 'm';
    s += delta > 0 ? 'p' : 'm';
    return s;
}

Entry Entry::parse(const std::string& label) {
    if (label.size() == 2 && (label[0] == 'p' || label[0] == 'm') && (label[1] == 'p' || label[1] == 'm')) {
        return {label[0] == 'p' ? 1 : -1, label[1] == 'p' ? 1 : -1};
    }
    throw ArgumentError("entry label must be one of pp, pm, mp, mm; got '" + label + "'");
}

std::string EntryMask::label() const {
    if (is_all()) return "all";
    for (int i = 0; i < 4; ++i) {
        if (contains(i)) return Entry::from_index(i).label();
    }
    return "none";
}

std::pair<double, Entry> QPTable::min_entry(EntryMask mask) const {
    double best = std::numeric_limits<double>::infinity();
    int arg = 3;
    for (int i = 0; i < 4; ++i) {
        if (mask.contains(i) && mh[static_cast<std::size_t>(i)] < best) {
            best = mh[static_cast<std::size_t>(i)];
            arg = i;
        }
    }
    return {best, Entry::from_index(arg)};
}

double negativity(const QPTable& table) {
    double s = 0.0;
    for (double q : table.mh) s += std::abs(q);
    const double n = s - 1.0;
    return std::abs(n) <= 1e-12 ? 0.0 : n;
}

QPTable kd_table(const QuantumState& rho0, const Spectrum& spec, const Probe& v, const Probe& w, double t) {
    const Eigen::Index d = spec.dim();
    if (rho0.density.dim() != d) throw ArgumentError("kd_table: state and spectrum dimensions differ");
    const int N = static_cast<int>(std::lround(std::log2(static_cast<double>(d))));
    QPTable out;
    out.t = t;
    out.v = v;
    out.w = w;
    out.backend = "exact-dense";
    for (int gamma : {1, -1}) {
        const HermitianOperator pt = heisenberg_projector(spec, embed_projector(v.projector(gamma), N), t);
        for (int delta : {1, -1}) {
            const HermitianOperator xi = embed_projector(w.projector(delta), N);
            const Complex p = (pt.matrix() * xi.matrix() * rho0.density.matrix()).trace();
            const auto i = static_cast<std::size_t>(Entry{gamma, delta}.index());
            out.kd[i] = p;
            out.mh[i] = p.real();
        }
    }
    out.negativity = negativity(out);
    return out;
}

Reconstruction reconstruct(const QPTable& table) {
    Reconstruction r{0.0, 0.0};
    for (int i = 0; i < 4; ++i) {
        const Entry e = Entry::from_index(i);
        const double q = table.mh[static_cast<std::size_t>(i)];
        r.polarization_change += (e.gamma - e.delta) * q;
        r.correlator_real += e.gamma * e.delta * q;
    }
    return r;
}

QPTable table_from_mm(double t, Complex p_mm, double marginal_v, double marginal_w) {
    QPTable out;
    out.t = t;
    out.kd[static_cast<std::size_t>(Entry{-1, -1}.index())] = p_mm;
    out.kd[static_cast<std::size_t>(Entry{-1, 1}.index())] = marginal_v - p_mm;
    out.kd[static_cast<std::size_t>(Entry{1, -1}.index())] = marginal_w - p_mm;
    out.kd[static_cast<std::size_t>(Entry{1, 1}.index())] = 1.0 - marginal_v - marginal_w + p_mm;
    for (std::size_t i = 0; i < 4; ++i) out.mh[i] = out.kd[i].real();
    out.negativity = negativity(out);
    return out;
}

QPTable KdTrace::table(double t) const {
    QPTable out = table_from_mm(t, kd_mm(t), marginal_v(), marginal_w());
    out.backend = backend();
    if (!has_imaginary()) {
        for (auto& p : out.kd) p = {p.real(), std::numeric_limits<double>::quiet_NaN()};
    }
    return out;
}

ExactKdTrace::ExactKdTrace(const QuantumState& rho0, const Spectrum& spec, const Probe& v, const Probe& w) {
    const Eigen::Index d = spec.dim();
    if (rho0.weights.size() != d) {
        throw ArgumentError("ExactKdTrace: state was not built from a spectrum of this dimension");
    }
    const int N = static_cast<int>(std::lround(std::log2(static_cast<double>(d))));
    const ComplexMatrix& vec = spec.eigenvectors;
    const ComplexMatrix p_eig = vec.adjoint() * embed_projector(v.projector(-1), N).matrix() * vec;
    const ComplexMatrix x_eig = vec.adjoint() * embed_projector(w.projector(-1), N).matrix() * vec;
    const Eigen::VectorXd& e = spec.eigenvalues;
    const Eigen::VectorXd& wts = rho0.weights;

    for (Eigen::Index a = 0; a < d; ++a) {
        if (wts(a) == 0.0) continue;
        marginal_v_ += wts(a) * p_eig(a, a).real();
        marginal_w_ += wts(a) * x_eig(a, a).real();
        for (Eigen::Index b = 0; b < d; ++b) {
            const Complex amp = wts(a) * p_eig(a, b) * x_eig(b, a);
            if (std::abs(amp) < kPruneTol) continue;
            if (a == b) {
                series_.add_constant(amp);
            } else {
                series_.add_term(e(a) - e(b), amp);
            }
        }
    }
}

}  // namespace ftnlab
