#include "ftnlab/series.hpp"

#include <cmath>

namespace ftnlab {

void PhaseSeries::add_term(double frequency, std::complex<double> amplitude) {
    freq_.push_back(frequency);
    amp_re_.push_back(amplitude.real());
    amp_im_.push_back(amplitude.imag());
}

std::complex<double> PhaseSeries::operator()(double t) const {
    double re = constant_.real();
    double im = constant_.imag();
    for (std::size_t k = 0; k < freq_.size(); ++k) {
        const double c = std::cos(freq_[k] * t);
        const double s = std::sin(freq_[k] * t);
        re += amp_re_[k] * c - amp_im_[k] * s;
        im += amp_re_[k] * s + amp_im_[k] * c;
    }
    return {re, im};
}

namespace kernels {

void evaluate_serial(const PhaseSeries& f, std::span<const double> times, std::span<std::complex<double>> out) {
    for (std::size_t j = 0; j < times.size(); ++j) {
        std::complex<double> acc = f.constant();
        const auto freq = f.frequencies();
        const auto ar = f.amplitudes_re();
        const auto ai = f.amplitudes_im();
        for (std::size_t k = 0; k < freq.size(); ++k) {
            acc += std::complex<double>(ar[k], ai[k]) * std::polar(1.0, freq[k] * times[j]);
        }
        out[j] = acc;
    }
}

void evaluate_grid_serial(const PhaseSeries& f, std::int64_t first, double dt,
                          std::span<std::complex<double>> out) {
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double t = static_cast<double>(first + static_cast<std::int64_t>(j)) * dt;
        out[j] = f(t);
    }
}

}  // namespace kernels
}  // namespace ftnlab
