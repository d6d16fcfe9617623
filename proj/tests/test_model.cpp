#include "doctest.h"
#include "oracles.hpp"

#include "ftnlab/error.hpp"
#include "ftnlab/model.hpp"

using namespace ftnlab;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("hamiltonian: two-qubit matrix in the computational basis") {
    const auto h = build_hamiltonian({2, 1.0, 1.0, 0.0}).matrix();
    CHECK(h(0, 0).real() == doctest::Approx(-2.0));
    CHECK(h(1, 1).real() == doctest::Approx(0.0));
    CHECK(h(2, 2).real() == doctest::Approx(0.0));
    CHECK(h(3, 3).real() == doctest::Approx(2.0));
    CHECK(h(0, 3).real() == doctest::Approx(-1.0));
    CHECK(h(3, 0).real() == doctest::Approx(-1.0));
    CHECK(h(1, 2).real() == doctest::Approx(-1.0));
    CHECK(max_abs(h - oracle::hamiltonian(2, 1.0, 1.0, 0.0)) < 1e-14);
}

TEST_CASE("hamiltonian: longitudinal field only has zero diagonal") {
    const auto h = build_hamiltonian({2, 0.0, 0.0, 1.0}).matrix();
    CHECK(h.diagonal().cwiseAbs().maxCoeff() == 0.0);
    CHECK(max_abs(h + oracle::site_op(oracle::pauli('x'), 1, 2) + oracle::site_op(oracle::pauli('x'), 2, 2)) < 1e-14);
}

TEST_CASE("hamiltonian: matches the Kronecker oracle") {
    for (auto p : {ChainParams{3, 1.0, 0.5, 0.0}, ChainParams{4, -0.7, 0.3, 0.9}, ChainParams{5, 1.3, 2.0, 0.1}}) {
        const auto h = build_hamiltonian(p).matrix();
        const auto ref = oracle::hamiltonian(p.N, p.J, p.h_z, p.h_x);
        CHECK(max_abs(h - ref) < 1e-13);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> a(h), b(ref);
        CHECK((a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("hamiltonian: capacity and argument errors") {
    CHECK_THROWS_AS(build_hamiltonian({13, 1.0, 1.0, 0.0}), CapacityError);
    CHECK_NOTHROW(build_hamiltonian({3, 1.0, 1.0, 0.0}, 3));
    CHECK_THROWS_AS(build_hamiltonian({4, 1.0, 1.0, 0.0}, 3), CapacityError);
    CHECK_THROWS_AS(ChainParams({1, 1.0, 1.0, 0.0}).validate(), ArgumentError);
    CHECK_THROWS_AS(ChainParams({2, 0.0, 0.0, 0.0}).validate(), ArgumentError);
    CHECK_THROWS_AS(ChainParams({2, 1.0, -1.0, 0.0}).validate(), ArgumentError);
    CHECK_THROWS_AS(ChainParams({2, std::nan(""), 1.0, 0.0}).validate(), ArgumentError);
}

TEST_CASE("projectors: explicit cases") {
    const auto p = embed_projector({1, Axis::Z, -1}, 2).matrix();
    ComplexMatrix want = ComplexMatrix::Zero(4, 4);
    want(2, 2) = want(3, 3) = 1.0;
    CHECK(max_abs(p - want) == 0.0);

    const auto x2 = embed_projector({2, Axis::X, +1}, 2).matrix();
    CHECK(max_abs(x2 - oracle::projector('x', 2, 2, +1)) < 1e-15);

    CHECK_THROWS_AS(embed_projector({0, Axis::Z, 1}, 3), ArgumentError);
    CHECK_THROWS_AS(embed_projector({4, Axis::Z, 1}, 3), ArgumentError);
    CHECK_THROWS_AS(embed_projector({1, Axis::Z, 0}, 3), ArgumentError);
}

TEST_CASE("projectors: idempotent, complete, rank d/2, match oracle") {
    const char names[] = {'x', 'y', 'z'};
    for (int N = 2; N <= 4; ++N) {
        const Eigen::Index d = Eigen::Index{1} << N;
        for (int site = 1; site <= N; ++site) {
            for (int a = 0; a < 3; ++a) {
                const Axis axis = static_cast<Axis>(a);
                const auto plus = embed_projector({site, axis, +1}, N).matrix();
                const auto minus = embed_projector({site, axis, -1}, N).matrix();
                CHECK(max_abs(plus * plus - plus) < 1e-12);
                CHECK(max_abs(plus + minus - ComplexMatrix::Identity(d, d)) < 1e-12);
                CHECK(plus.trace().real() == doctest::Approx(d / 2));
                CHECK(max_abs(minus - oracle::projector(names[a], site, N, -1)) < 1e-14);
            }
        }
    }
}

TEST_CASE("hermitian operator validation") {
    ComplexMatrix m(2, 2);
    m << 1.0, Complex(0, 1), Complex(0, 1), 2.0;
    CHECK_THROWS_AS(HermitianOperator{m}, ArgumentError);
    CHECK_THROWS_AS(HermitianOperator{ComplexMatrix::Zero(2, 3)}, ArgumentError);
    m(1, 0) = Complex(0, -1);
    const HermitianOperator h{m};
    CHECK(h.hermiticity_defect() == 0.0);
    CHECK_FALSE(h.is_real());
    CHECK(build_hamiltonian({3, 1.0, 0.4, 0.2}).is_real());
}

TEST_CASE("commutators: classical and parity limits") {
    for (int N = 2; N <= 5; ++N) {
        const auto h0 = build_hamiltonian({N, 0.0, 0.8, 0.0});
        for (int m = 1; m <= N; ++m) {
            CHECK(commutator_norm(h0, embed_projector({m, Axis::Z, -1}, N)) <= 1e-12);
            CHECK(commutator_norm(h0, embed_projector({m, Axis::Z, +1}, N)) <= 1e-12);
        }
        CHECK(commutator_norm(build_hamiltonian({N, 1.0, 0.0, 0.0}), parity_operator(N)) <= 1e-12);
        CHECK(commutator_norm(build_hamiltonian({N, 1.0, 0.7, 0.0}), parity_operator(N)) <= 1e-12);
        CHECK(commutator_norm(build_hamiltonian({N, 1.0, 0.7, 0.3}), parity_operator(N)) > 1e-3);
    }
}

TEST_CASE("axis parsing") {
    CHECK(parse_axis("x") == Axis::X);
    CHECK(parse_axis("Z") == Axis::Z);
    CHECK_THROWS_AS(parse_axis("w"), ArgumentError);
    CHECK(axis_name(Axis::Y) == 'Y');
}
