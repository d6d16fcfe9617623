#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace ftnlab {

/// f(t) = constant + sum_j amplitude_j exp(i frequency_j t).
///
/// Every time-dependent quantity the scanners touch reduces to one or a few
/// of these: KD entries of the exact backend (frequencies are Bohr
/// frequencies E_a - E_b) and the single-mode sums of the free-fermion
/// backend (frequencies -omega_k).
class PhaseSeries {
public:
    PhaseSeries() = default;

    void set_constant(std::complex<double> c) { constant_ = c; }
    void add_constant(std::complex<double> c) { constant_ += c; }
    void add_term(double frequency, std::complex<double> amplitude);

    std::complex<double> constant() const { return constant_; }
    std::size_t size() const { return freq_.size(); }
    std::span<const double> frequencies() const { return freq_; }
    std::span<const double> amplitudes_re() const { return amp_re_; }
    std::span<const double> amplitudes_im() const { return amp_im_; }

    /// Direct evaluation with exact phases.
    std::complex<double> operator()(double t) const;

private:
    std::complex<double> constant_{0.0, 0.0};
    std::vector<double> freq_;
    std::vector<double> amp_re_;
    std::vector<double> amp_im_;
};

namespace kernels {

/// Points per reseeding block of the recurrence kernel. The phase recurrence
/// drifts by O(block * eps_machine), so this bounds the error near 1e-13.
inline constexpr std::int64_t kGridBlock = 512;

/// Serial reference: out[j] = f(times[j]) with std::polar per term.
void evaluate_serial(const PhaseSeries& f, std::span<const double> times, std::span<std::complex<double>> out);

/// Serial reference on the uniform grid t_j = (first + j) * dt.
void evaluate_grid_serial(const PhaseSeries& f, std::int64_t first, double dt,
                          std::span<std::complex<double>> out);

/// OpenMP kernel on the same grid. Blocks of kGridBlock points run in
/// parallel; inside a block phases advance by one complex multiply per term
/// and are reseeded exactly at every block start.
void evaluate_grid(const PhaseSeries& f, std::int64_t first, double dt, std::span<std::complex<double>> out);

}  // namespace kernels
}  // namespace ftnlab
