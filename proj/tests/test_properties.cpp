#include "doctest.h"

#include "ftnlab/freefermion.hpp"
#include "ftnlab/quasiprob.hpp"

#include <random>

using namespace ftnlab;

// Randomised structural checks; one fixed seed so failures reproduce.

TEST_CASE("property: sum rule, stationary marginals, t = 0 positivity") {
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<int> Nd(2, 5), axis(0, 2);
    std::uniform_real_distribution<double> J(-1.5, 1.5), H(0.0, 3.0), T(0.0, 25.0), B(0.0, 5.0), coin(0.0, 1.0);
    for (int draw = 0; draw < 200; ++draw) {
        const int N = Nd(rng);
        const ChainParams p{N, J(rng), H(rng), coin(rng) < 0.5 ? 0.0 : H(rng)};
        std::uniform_int_distribution<int> site(1, N);
        const Probe v{site(rng), static_cast<Axis>(axis(rng))};
        const Probe w{site(rng), static_cast<Axis>(axis(rng))};
        const Spectrum s = spectral_decompose(build_hamiltonian(p));
        const QuantumState rho = coin(rng) < 0.5 ? ground_state(s) : gibbs_state(s, B(rng));
        CAPTURE(draw);
        CAPTURE(p.key());

        const QPTable t0 = kd_table(rho, s, v, w, 0.0);
        if (v.site == w.site && v.axis == w.axis) {
            for (double q : t0.mh) CHECK(q >= -1e-12);
        }
        if (v.site != w.site) {
            for (double q : t0.mh) CHECK(q >= -1e-12);
        }
        const double t = T(rng);
        const QPTable tt = kd_table(rho, s, v, w, t);
        Complex sum{};
        for (const auto& x : tt.kd) sum += x;
        CHECK(std::abs(sum.real() - 1.0) <= 1e-12);
        CHECK(std::abs(sum.imag()) <= 1e-12);
        for (int delta : {1, -1}) {
            const double m0 = t0.q({1, delta}) + t0.q({-1, delta});
            const double mt = tt.q({1, delta}) + tt.q({-1, delta});
            CHECK(std::abs(m0 - mt) <= 1e-10);
        }
        CHECK(tt.negativity >= -1e-12);

        const auto pt = heisenberg_projector(s, embed_projector(v.projector(-1), N), t).matrix();
        CHECK((pt * pt - pt).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("property: ModeSet canonical algebra") {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> Nd(2, 200);
    std::uniform_real_distribution<double> J(-2.0, 2.0), logh(-3.0, 1.5);
    for (int draw = 0; draw < 200; ++draw) {
        const int N = draw < 150 ? Nd(rng) % 40 + 2 : Nd(rng);
        const ChainParams p{N, J(rng), std::pow(10.0, logh(rng)), 0.0};
        CAPTURE(p.key());
        const ModeSet ms = solve_modes(p);
        REQUIRE(ms.size() == N);
        const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(N, N);
        CHECK((ms.A * ms.A.transpose() + ms.B * ms.B.transpose() - I).cwiseAbs().maxCoeff() <= 1e-8);
        CHECK((ms.A * ms.B.transpose() + ms.B * ms.A.transpose()).cwiseAbs().maxCoeff() <= 1e-8);
        CHECK((ms.psi.transpose() * ms.psi - I).cwiseAbs().maxCoeff() <= 1e-8);
        CHECK((ms.phi.transpose() * ms.phi - I).cwiseAbs().maxCoeff() <= 1e-8);
        for (int k = 0; k < N; ++k) CHECK(ms.quantization_residual(k) <= 1e-10);
        const ModeEquationReport r = verify_mode_equations(p, ms);
        CHECK(r.first_order <= 1e-8 * (std::abs(p.J) + p.h_z));
    }
}
