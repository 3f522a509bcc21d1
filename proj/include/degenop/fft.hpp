#pragma once

#include <complex>
#include <vector>

namespace degenop {

/// Unnormalized forward DFT: X_k = sum_n x_n e^{-2 pi i k n / N}.
/// Radix-2 when the length is a power of two, naive otherwise.
void dft(std::vector<std::complex<double>>& data, bool inverse);

}  // namespace degenop
