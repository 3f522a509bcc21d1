#include "degenop/fft.hpp"

#include <cmath>
#include <numbers>

namespace degenop {

namespace {

using cd = std::complex<double>;

bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<cd>& a, bool inverse) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) *
                           (inverse ? 1.0 : -1.0);
        const cd wlen(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            cd w(1.0);
            for (size_t j = 0; j < len / 2; ++j) {
                const cd u = a[i + j];
                const cd v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

void dft_naive(std::vector<cd>& a, bool inverse) {
    const size_t n = a.size();
    std::vector<cd> out(n, 0.0);
    const double sgn = inverse ? 1.0 : -1.0;
    for (size_t k = 0; k < n; ++k)
        for (size_t j = 0; j < n; ++j) {
            const double ang = sgn * 2.0 * std::numbers::pi *
                               static_cast<double>(k * j % n) / static_cast<double>(n);
            out[k] += a[j] * cd(std::cos(ang), std::sin(ang));
        }
    a = std::move(out);
}

}  // namespace

void dft(std::vector<cd>& data, bool inverse) {
    if (data.size() <= 1) return;
    if (is_pow2(data.size()))
        fft_radix2(data, inverse);
    else
        dft_naive(data, inverse);
}

}  // namespace degenop
