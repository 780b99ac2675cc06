#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace vvb::detail {

// Iterative radix-2 Cooley-Tukey on a strided view. sign = -1 forward,
// +1 inverse (unnormalized). Length must be a power of two.
inline void fft_strided(std::complex<double>* data, std::size_t len, std::size_t stride, int sign) {
    // bit reversal
    for (std::size_t i = 1, j = 0; i < len; ++i) {
        std::size_t bit = len >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i * stride], data[j * stride]);
    }
    for (std::size_t half = 1; half < len; half <<= 1) {
        const double ang = sign * M_PI / static_cast<double>(half);
        const std::complex<double> wstep(std::cos(ang), std::sin(ang));
        for (std::size_t block = 0; block < len; block += 2 * half) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < half; ++k) {
                auto& a = data[(block + k) * stride];
                auto& b = data[(block + k + half) * stride];
                const std::complex<double> t = w * b;
                b = a - t;
                a += t;
                w *= wstep;
            }
        }
    }
}

/// d-dimensional in-place FFT over an n^dim cube, x-axis fastest.
/// Forward divides by n^dim so that the zero mode carries the mean.
inline void fft_nd(std::vector<std::complex<double>>& a, int dim, int n, bool forward) {
    const std::size_t len = static_cast<std::size_t>(n);
    const int sign = forward ? -1 : +1;
    std::size_t total = 1;
    for (int d = 0; d < dim; ++d) total *= len;

    // axis 0: contiguous lines
    for (std::size_t base = 0; base < total; base += len)
        fft_strided(a.data() + base, len, 1, sign);
    // axis 1: stride n
    if (dim >= 2) {
        const std::size_t planes = total / (len * len);
        for (std::size_t p = 0; p < planes; ++p)
            for (std::size_t x = 0; x < len; ++x)
                fft_strided(a.data() + p * len * len + x, len, len, sign);
    }
    // axis 2: stride n^2
    if (dim == 3) {
        for (std::size_t y = 0; y < len; ++y)
            for (std::size_t x = 0; x < len; ++x)
                fft_strided(a.data() + y * len + x, len, len * len, sign);
    }
    if (forward) {
        const double inv = 1.0 / static_cast<double>(total);
        for (auto& v : a) v *= inv;
    }
}

}  // namespace vvb::detail
