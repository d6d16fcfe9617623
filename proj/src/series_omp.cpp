#include "ftnlab/series.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ftnlab::kernels {

void evaluate_grid(const PhaseSeries& f, std::int64_t first, double dt, std::span<std::complex<double>> out) {
    const auto freq = f.frequencies();
    const auto ar = f.amplitudes_re();
    const auto ai = f.amplitudes_im();
    const std::size_t terms = freq.size();
    const std::int64_t count = static_cast<std::int64_t>(out.size());
    const std::int64_t blocks = (count + kGridBlock - 1) / kGridBlock;
    const double c0r = f.constant().real();
    const double c0i = f.constant().imag();

    std::vector<double> step_re(terms), step_im(terms);
    for (std::size_t k = 0; k < terms; ++k) {
        step_re[k] = std::cos(freq[k] * dt);
        step_im[k] = std::sin(freq[k] * dt);
    }

#pragma omp parallel if (blocks > 1 && terms * static_cast<std::size_t>(count) > 65536)
    {
        std::vector<double> pr(terms), pi(terms);
#pragma omp for schedule(static)
        for (std::int64_t b = 0; b < blocks; ++b) {
            const std::int64_t j0 = b * kGridBlock;
            const std::int64_t j1 = std::min(count, j0 + kGridBlock);
            const double t0 = static_cast<double>(first + j0) * dt;
            for (std::size_t k = 0; k < terms; ++k) {
                // fold the amplitude into the running phase
                const double c = std::cos(freq[k] * t0);
                const double s = std::sin(freq[k] * t0);
                pr[k] = ar[k] * c - ai[k] * s;
                pi[k] = ar[k] * s + ai[k] * c;
            }
            for (std::int64_t j = j0; j < j1; ++j) {
                double re = c0r;
                double im = c0i;
#pragma omp simd reduction(+ : re, im)
                for (std::size_t k = 0; k < terms; ++k) {
                    re += pr[k];
                    im += pi[k];
                    const double nr = pr[k] * step_re[k] - pi[k] * step_im[k];
                    const double ni = pr[k] * step_im[k] + pi[k] * step_re[k];
                    pr[k] = nr;
                    pi[k] = ni;
                }
                out[static_cast<std::size_t>(j)] = {re, im};
            }
        }
    }
}

}  // namespace ftnlab::kernels
