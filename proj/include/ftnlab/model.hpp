#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <string>

namespace ftnlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Largest chain the dense backend accepts unless the caller raises it.
inline constexpr int kDefaultExactCap = 12;

struct ChainParams {
    int N = 2;
    double J = 1.0;
    double h_z = 0.0;
    double h_x = 0.0;

    /// Throws ArgumentError on N < 2, non-finite fields, negative fields or
    /// J = h_z = h_x = 0.
    void validate() const;

    bool integrable() const { return h_x == 0.0; }
    std::size_t dim() const { return std::size_t{1} << N; }
    std::string key() const;

    friend bool operator==(const ChainParams&, const ChainParams&) = default;
};

/// Dense complex matrix that is Hermitian to 1e-12 relative to its largest entry.
class HermitianOperator {
public:
    HermitianOperator() = default;
    /// Validates Hermiticity; throws ArgumentError if the input is not square
    /// or not Hermitian.
    explicit HermitianOperator(ComplexMatrix m);

    /// Skips the Hermiticity check. For results that are Hermitian by
    /// construction (V D V^dagger and friends).
    static HermitianOperator trusted(ComplexMatrix m);

    Eigen::Index dim() const { return m_.rows(); }
    const ComplexMatrix& matrix() const { return m_; }
    Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

    Complex trace() const { return m_.trace(); }
    bool is_real() const;

    /// max |M - M^dagger| / max |M| (0 for the zero matrix).
    double hermiticity_defect() const;

private:
    ComplexMatrix m_;
};

enum class Axis { X, Y, Z };

Axis parse_axis(const std::string& s);
char axis_name(Axis a);

/// Local projector onto the `outcome` (+1 / -1) eigenspace of sigma^axis at
/// `site` (1-based).
struct ProjectorSpec {
    int site = 1;
    Axis axis = Axis::Z;
    int outcome = -1;
};

/// Site-local observable without a chosen outcome; the projector pair
/// {+1, -1} is implied.
struct Probe {
    int site = 1;
    Axis axis = Axis::Z;

    ProjectorSpec projector(int outcome) const { return {site, axis, outcome}; }
};

/// sigma^axis acting on `site` of an N-site chain.
HermitianOperator pauli_at(Axis axis, int site, int N);

/// prod_n sigma^z_n.
HermitianOperator parity_operator(int N);

/// -J sum sx sx - h_z sum sz - h_x sum sx on an open chain. Site 1 is the most
/// significant qubit and sigma^z|0> = +|0>.
HermitianOperator build_hamiltonian(const ChainParams& params, int exact_cap = kDefaultExactCap);

HermitianOperator embed_projector(const ProjectorSpec& spec, int N);

/// Max-norm of the commutator [A, B].
double commutator_norm(const HermitianOperator& a, const HermitianOperator& b);

}  // namespace ftnlab
