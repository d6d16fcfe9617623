#include "doctest.h"
#include "oracles.hpp"

#include "ftnlab/error.hpp"
#include "ftnlab/ftn.hpp"
#include "ftnlab/qsl.hpp"

#include <cmath>

using namespace ftnlab;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

QuantumState ground(const ChainParams& p, Spectrum* out = nullptr) {
    Spectrum s = spectral_decompose(build_hamiltonian(p));
    QuantumState g = ground_state(s);
    if (out) *out = s;
    return g;
}

}  // namespace

TEST_CASE("anticommutator state") {
    const Spectrum s = spectral_decompose(build_hamiltonian({2, 1.0, 1.0, 0.0}));
    const QuantumState mixed = gibbs_state(s, 0.0);
    const auto xi = embed_projector({1, Axis::Z, -1}, 2);
    CHECK(max_abs(anticommutator_state(mixed, xi).matrix() - xi.matrix() / 4.0) < 1e-15);

    // J = 0: rho commutes with any Z projector.
    const Spectrum s0 = spectral_decompose(build_hamiltonian({3, 0.0, 1.0, 0.0}));
    const QuantumState th = gibbs_state(s0, 0.8);
    const auto z2 = embed_projector({2, Axis::Z, +1}, 3);
    CHECK(max_abs(anticommutator_state(th, z2).matrix() - th.density.matrix() * z2.matrix()) < 1e-14);

    const QuantumState g = ground_state(s);
    const auto rd = anticommutator_state(g, xi);
    CHECK(rd.trace().real() == doctest::Approx((xi.matrix() * g.density.matrix()).trace().real()).epsilon(1e-14));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rd.matrix());
    MESSAGE("rho_delta eigenvalues (N=2, J=h=1): " << es.eigenvalues().transpose());
    CHECK(es.eigenvalues().minCoeff() < 0.0);
}

TEST_CASE("sld: vanishing cases and defining-equation residual") {
    const auto h0 = build_hamiltonian({3, 0.0, 1.0, 0.0});
    CHECK(max_abs(sld_operator(h0, embed_projector({1, Axis::Z, -1}, 3)).matrix()) < 1e-14);
    const auto h = build_hamiltonian({2, 1.0, 1.0, 0.0});
    const auto id = HermitianOperator{ComplexMatrix::Identity(4, 4)};
    CHECK(max_abs(sld_operator(h, id).matrix()) < 1e-14);

    const auto p = embed_projector({1, Axis::Z, -1}, 2);
    const auto L = sld_operator(h, p).matrix();
    const ComplexMatrix pn = p.matrix() / 2.0;
    const ComplexMatrix c = Complex(0, 1) * (h.matrix() * pn - pn * h.matrix());
    CHECK(max_abs(2.0 * c - (pn * L + L * pn)) <= 1e-10);
}

TEST_CASE("sld variance is invariant along the evolution") {
    const ChainParams prm{4, 1.0, 0.9, 0.2};
    Spectrum s;
    const QuantumState g = ground(prm, &s);
    const auto H = build_hamiltonian(prm);
    const auto p = embed_projector({2, Axis::Z, -1}, 4);
    const double v0 = sld_variance(g, sld_operator(H, p));
    for (double t : {0.7, 2.1}) {
        const auto pt = heisenberg_projector(s, p, t);
        // Variance in the state evolved backwards equals variance of L(t) in rho0 for stationary rho0.
        CHECK(sld_variance(g, sld_operator(H, pt)) == doctest::Approx(v0).epsilon(1e-8));
    }
}

TEST_CASE("interpolation angle") {
    CHECK(interpolation_angle(1.0, 0.0, 1.0) == doctest::Approx(0.0));
    CHECK(interpolation_angle(0.0, 0.0, 1.0) == doctest::Approx(std::acos(-1.0)));
    CHECK(interpolation_angle(0.5, 0.0, 1.0) == doctest::Approx(std::acos(0.0)));
    CHECK(interpolation_angle(1.0 + 1e-10, 0.0, 1.0) == 0.0);
    CHECK_THROWS_AS(interpolation_angle(1.1, 0.0, 1.0), NumericError);
    CHECK_THROWS_AS(interpolation_angle(0.5, 1.0, 1.0), NumericError);
}

TEST_CASE("qsl: two-qubit bound finite and below the FTN") {
    Spectrum s;
    const QuantumState g = ground({2, 1.0, 1.0, 0.0}, &s);
    const QslResult r = qsl_time(g, s, {1, Axis::Z, -1}, {1, Axis::Z, -1});
    REQUIRE(r.T_qsl);
    CHECK_FALSE(r.unbounded);
    CHECK(*r.T_qsl > 0.0);
    CHECK(r.tau_target >= r.tau_initial);
    CHECK(r.delta_L > 0.0);
    const ExactKdTrace tr(g, s, {1, Axis::Z}, {1, Axis::Z});
    ScanConfig cfg;
    cfg.t_max = 5.0;
    const auto f = first_time_negativity(tr, EntryMask::all(), cfg);
    REQUIRE(f.found);
    CHECK(*r.T_qsl <= *f.t_ftn);
    MESSAGE("T_qsl = " << *r.T_qsl << ", t_ftn = " << *f.t_ftn);
}

TEST_CASE("qsl: frozen dynamics is unbounded, zero initial value gives zero") {
    Spectrum s;
    const QuantumState g = ground({2, 0.0, 1.0, 0.0}, &s);
    const QslResult up = qsl_time(g, s, {1, Axis::Z, +1}, {1, Axis::Z, +1});
    CHECK(up.unbounded);
    CHECK_FALSE(up.T_qsl);
    CHECK(up.delta_L == 0.0);
    // The all-up ground state has <Pi_-> = 0: the target is already reached.
    const QslResult down = qsl_time(g, s, {1, Axis::Z, -1}, {1, Axis::Z, -1});
    REQUIRE(down.T_qsl);
    CHECK(*down.T_qsl == 0.0);
}

TEST_CASE("qsl: range switch") {
    Spectrum s;
    const QuantumState g = ground({3, 1.0, 0.8, 0.0}, &s);
    QslOptions o;
    o.range = QslRange::ProjectorSpectrum;
    const QslResult a = qsl_time(g, s, {1, Axis::Z, -1}, {1, Axis::Z, -1}, o);
    CHECK(a.x_min == 0.0);
    CHECK(a.x_max == 1.0);
    REQUIRE(a.T_qsl);
    const QslResult b = qsl_time(g, s, {1, Axis::Z, -1}, {1, Axis::Z, -1});
    REQUIRE(b.T_qsl);
    CHECK(a.delta_L == doctest::Approx(b.delta_L));
}

TEST_CASE("qsl: mirror symmetry") {
    Spectrum s;
    const QuantumState g = ground({6, 1.0, 0.7, 0.0}, &s);
    for (int m = 1; m <= 3; ++m) {
        const auto a = qsl_time(g, s, {m, Axis::Z, -1}, {m, Axis::Z, -1});
        const auto b = qsl_time(g, s, {7 - m, Axis::Z, -1}, {7 - m, Axis::Z, -1});
        REQUIRE(a.T_qsl);
        REQUIRE(b.T_qsl);
        CHECK(*a.T_qsl == doctest::Approx(*b.T_qsl).epsilon(1e-8));
    }
}
