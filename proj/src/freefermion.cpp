#include "ftnlab/freefermion.hpp"

#include "ftnlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ftnlab {

namespace {

constexpr double kPi = std::numbers::pi;

struct Condition {
    int N;
    double J, h;

    // J sin(kN) + h sin(k(N+1)), same sign as the divided form inside (0, pi).
    double raw(double k) const { return J * std::sin(k * N) + h * std::sin(k * (N + 1)); }

    // Divided form on panel node i of M; endpoint limits taken by index.
    double node(int i, int M) const {
        if (i == 0) return J * N + h * (N + 1);
        if (i == M) return ((N - 1) % 2 == 0 ? 1.0 : -1.0) * (J * N - h * (N + 1));
        const double k = kPi * i / M;
        return raw(k) / std::sin(k);
    }

    // h sinh((N+1)kappa)/sinh(N kappa) - |J|, the continued condition.
    double bound(double kappa) const {
        if (kappa < 1e-8) return h * (1.0 + 1.0 / N) - std::abs(J);
        return h * (std::cosh(kappa) + std::sinh(kappa) / std::tanh(N * kappa)) - std::abs(J);
    }
};

// Bisection for a sign change on [a, b]; fa_pos is the sign at a, passed in
// when f(a) itself vanishes (raw condition at k = 0).
template <class F>
double bisect(const F& f, double a, double b, bool fa_pos) {
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b || b - a < 1e-15) break;
        ((f(m) > 0.0) == fa_pos ? a : b) = m;
    }
    return 0.5 * (a + b);
}

std::vector<double> real_roots(const Condition& c, int M) {
    std::vector<double> vals(static_cast<std::size_t>(M) + 1);
    for (int i = 0; i <= M; ++i) vals[static_cast<std::size_t>(i)] = c.node(i, M);
    std::vector<double> roots;
    const auto f = [&](double k) { return c.raw(k); };
    for (int i = 0; i < M; ++i) {
        const double a = vals[static_cast<std::size_t>(i)];
        const double b = vals[static_cast<std::size_t>(i) + 1];
        if (a == 0.0) {
            if (i > 0) roots.push_back(kPi * i / M);
            continue;
        }
        if (b != 0.0 && (a > 0.0) != (b > 0.0)) roots.push_back(bisect(f, kPi * i / M, kPi * (i + 1) / M, a > 0.0));
    }
    return roots;
}

// sinh(m kappa)/sinh(N kappa) without overflow, m <= N.
double sinh_ratio(int m, int N, double kappa) {
    if (kappa < 1e-8) return static_cast<double>(m) / N;
    return std::exp((m - N) * kappa) * std::expm1(-2.0 * m * kappa) / std::expm1(-2.0 * N * kappa);
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

void normalize(Eigen::Ref<Eigen::VectorXd> v) {
    const double n = v.norm();
    if (n > 0.0) v /= n;
}

}  // namespace

double dispersion(double J, double h_z, double k) { return 2.0 * std::hypot(J + h_z * std::cos(k), h_z * std::sin(k)); }

double ModeSet::quantization_residual(int k) const {
    const Condition c{params.N, params.J, params.h_z};
    const double scale = std::abs(params.J) + std::abs(params.h_z);
    const auto i = static_cast<std::size_t>(k);
    switch (kinds[i]) {
        case ModeKind::Bulk: return std::abs(c.raw(momenta[i].real())) / scale;
        case ModeKind::BoundPi:
        case ModeKind::BoundZero: return std::abs(c.bound(kappa[i])) / scale;
        case ModeKind::EdgeZero: return std::abs(c.raw(kPi)) / scale;
    }
    return 0.0;
}

ModeSet solve_modes(const ChainParams& params) {
    params.validate();
    if (params.h_x != 0.0) throw ArgumentError("freefermion: requires h_x = 0");
    if (params.h_z < 0.0) throw ArgumentError("freefermion: requires h_z >= 0");
    if (params.J == 0.0 && params.h_z == 0.0) throw ArgumentError("freefermion: J and h_z both zero");

    const int N = params.N;
    const double J = params.J;
    const double h = params.h_z;
    const Condition cond{N, J, h};

    ModeSet ms;
    ms.params = params;
    ms.psi = Eigen::MatrixXd::Zero(N, N);
    ms.phi = Eigen::MatrixXd::Zero(N, N);
    ms.omegas = Eigen::VectorXd::Zero(N);

    std::vector<double> roots;
    double bound_kappa = -1.0;
    for (int refine = 1; refine <= 1024; refine *= 4) {
        roots = real_roots(cond, 4 * N * refine + 1);
        if (static_cast<int>(roots.size()) >= N || h == 0.0) break;
        if (static_cast<int>(roots.size()) == N - 1) {
            const auto r = [&](double kap) { return cond.bound(kap); };
            const double scale = std::abs(J) + h;
            if (std::abs(r(0.0)) <= 1e-12 * scale) {
                bound_kappa = 0.0;
                break;
            }
            if (r(0.0) < 0.0) {
                double hi = 20.0;
                while (r(hi) < 0.0 && hi < 640.0) hi *= 2.0;
                if (r(hi) > 0.0) {
                    bound_kappa = bisect(r, 0.0, hi, r(0.0) > 0.0);
                    break;
                }
            }
        }
    }

    const int need = (h == 0.0 || bound_kappa >= 0.0) ? N - 1 : N;
    if (static_cast<int>(roots.size()) != need) {
        std::ostringstream os;
        os.precision(17);
        os << "freefermion: found " << roots.size() << " of " << N << " modes for J=" << J << " h_z=" << h << "; roots:";
        for (double k : roots) os << ' ' << k;
        throw NumericError(os.str());
    }

    Eigen::ArrayXd n = Eigen::ArrayXd::LinSpaced(N, 1.0, static_cast<double>(N));
    Eigen::MatrixXd q_minus_p;
    int col = 0;
    for (double k : roots) {
        const double omega = dispersion(J, h, k);
        Eigen::VectorXd ps = (k * n).sin().matrix();
        Eigen::VectorXd ph = (k * (N + 1.0 - n)).sin().matrix();
        normalize(ps);
        normalize(ph);
        double s;
        if (h != 0.0 && std::abs(std::sin(k * N)) > 1e-14) {
            s = sign_of(-2.0 * h * std::sin(k) / (omega * std::sin(k * N)));
        } else {
            // Degenerate ratio: take the sign from (Q - P) psi = omega phi.
            if (q_minus_p.size() == 0) {
                const ModeEquationReport eqs = verify_mode_equations(params, ModeSet{});
                q_minus_p = eqs.Q - eqs.P;
            }
            s = sign_of((q_minus_p * ps).dot(ph));
        }
        ms.momenta.emplace_back(k, 0.0);
        ms.kinds.push_back(ModeKind::Bulk);
        ms.kappa.push_back(0.0);
        ms.omegas(col) = omega;
        ms.psi.col(col) = ps;
        ms.phi.col(col) = s * ph;
        ++col;
    }

    if (h == 0.0) {
        ms.momenta.emplace_back(kPi, 0.0);
        ms.kinds.push_back(ModeKind::EdgeZero);
        ms.kappa.push_back(0.0);
        ms.omegas(col) = 0.0;
        ms.psi(N - 1, col) = 1.0;
        ms.phi(0, col) = 1.0;
        ++col;
    } else if (bound_kappa >= 0.0) {
        const double kap = bound_kappa;
        const bool ferro = J > 0.0;
        Eigen::VectorXd ps(N), ph(N);
        for (int i = 1; i <= N; ++i) {
            const int m = N + 1 - i;
            const double alt_i = ferro && (i % 2) ? -1.0 : 1.0;
            const double alt_m = ferro && (m % 2) ? -1.0 : 1.0;
            ps(i - 1) = alt_i * sinh_ratio(i, N, kap);
            ph(i - 1) = alt_m * sinh_ratio(m, N, kap);
        }
        normalize(ps);
        normalize(ph);
        const double s = ferro ? (N % 2 ? -1.0 : 1.0) : -1.0;
        // |J| - h e^kappa = 2 h sinh(kappa)/expm1(2 N kappa), written without overflow.
        const double aJ = std::abs(J);
        const double gap_lo = kap < 1e-8
                                  ? h / N
                                  : h * std::exp(kap * (1.0 - 2.0 * N)) * std::expm1(-2.0 * kap) / std::expm1(-2.0 * N * kap);
        const double w2 = 4.0 * gap_lo * (aJ - h * std::exp(-kap));
        ms.momenta.emplace_back(ferro ? kPi : 0.0, kap);
        ms.kinds.push_back(ferro ? ModeKind::BoundPi : ModeKind::BoundZero);
        ms.kappa.push_back(kap);
        ms.omegas(col) = std::sqrt(std::max(w2, 0.0));
        ms.psi.col(col) = ps;
        ms.phi.col(col) = s * ph;
        ++col;
    }

    ms.A = 0.5 * (ms.phi + ms.psi);
    ms.B = 0.5 * (ms.phi - ms.psi);
    return ms;
}

namespace {

void check_site(const ModeSet& ms, int site) {
    if (site < 1 || site > ms.params.N) throw ArgumentError("freefermion: site out of range");
}

}  // namespace

double ff_occupation(const ModeSet& ms, int site) {
    check_site(ms, site);
    return ms.A.row(site - 1).squaredNorm();
}

Complex ff_kd_entry(const ModeSet& ms, int site, double t) {
    check_site(ms, site);
    const auto a = ms.A.row(site - 1);
    const auto b = ms.B.row(site - 1);
    Complex s1{}, s2{}, s3{};
    for (int k = 0; k < ms.size(); ++k) {
        const Complex e = std::polar(1.0, -ms.omegas(k) * t);
        s1 += a(k) * a(k) * e;
        s2 += b(k) * b(k) * e;
        s3 += a(k) * b(k) * e;
    }
    const double occ = a.squaredNorm();
    return occ * occ + s1 * s2 - s3 * s3;
}

double ff_mh_entry(const ModeSet& ms, int site, double t) { return ff_kd_entry(ms, site, t).real(); }

double ff_mh_entry_reference(const ModeSet& ms, int site, double t) {
    check_site(ms, site);
    const auto a = ms.A.row(site - 1);
    const auto b = ms.B.row(site - 1);
    double sum = 0.0;
    for (int k = 0; k < ms.size(); ++k) {
        for (int p = 0; p < ms.size(); ++p) {
            sum += a(k) * a(k) * a(p) * a(p);
            sum += (a(p) * a(p) * b(k) * b(k) - a(p) * b(k) * b(p) * a(k)) * std::cos((ms.omegas(p) + ms.omegas(k)) * t);
        }
    }
    return sum;
}

FreeFermionKdTrace::FreeFermionKdTrace(const ModeSet& ms, int site) {
    check_site(ms, site);
    const auto a = ms.A.row(site - 1);
    const auto b = ms.B.row(site - 1);
    for (int k = 0; k < ms.size(); ++k) {
        aa_.add_term(-ms.omegas(k), a(k) * a(k));
        bb_.add_term(-ms.omegas(k), b(k) * b(k));
        ab_.add_term(-ms.omegas(k), a(k) * b(k));
    }
    occupation_ = a.squaredNorm();
}

Complex FreeFermionKdTrace::kd_mm(double t) const {
    const Complex s3 = ab_(t);
    return occupation_ * occupation_ + aa_(t) * bb_(t) - s3 * s3;
}

void FreeFermionKdTrace::kd_mm_grid(std::int64_t first, double dt, std::span<Complex> out) const {
    std::vector<Complex> s2(out.size()), s3(out.size());
    kernels::evaluate_grid(aa_, first, dt, out);
    kernels::evaluate_grid(bb_, first, dt, s2);
    kernels::evaluate_grid(ab_, first, dt, s3);
    const double c = occupation_ * occupation_;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = c + out[j] * s2[j] - s3[j] * s3[j];
}

FtnResult ff_ftn(const ModeSet& ms, int site, const ScanConfig& cfg, EntryMask mask) {
    return first_time_negativity(FreeFermionKdTrace(ms, site), mask, cfg);
}

ModeEquationReport verify_mode_equations(const ChainParams& params, const ModeSet& ms) {
    const int N = params.N;
    ModeEquationReport rep;
    rep.Q = Eigen::MatrixXd::Zero(N, N);
    rep.P = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        rep.Q(i, i) = -2.0 * params.h_z;
        if (i + 1 < N) {
            rep.Q(i, i + 1) = rep.Q(i + 1, i) = -params.J;
            rep.P(i, i + 1) = -params.J;
            rep.P(i + 1, i) = params.J;
        }
    }
    const Eigen::MatrixXd qm = rep.Q - rep.P;
    const Eigen::MatrixXd qp = rep.Q + rep.P;
    rep.V = qm * qp;
    rep.W = qp * qm;
    for (int k = 0; k < static_cast<int>(ms.momenta.size()); ++k) {
        const double w = ms.omegas(k);
        const auto ps = ms.psi.col(k);
        const auto ph = ms.phi.col(k);
        rep.residual_w = std::max(rep.residual_w, (rep.W * ps - w * w * ps).norm());
        rep.residual_v = std::max(rep.residual_v, (rep.V * ph - w * w * ph).norm());
        rep.first_order = std::max({rep.first_order, (qm * ps - w * ph).norm(), (qp * ph - w * ps).norm()});
    }
    return rep;
}

}  // namespace ftnlab
