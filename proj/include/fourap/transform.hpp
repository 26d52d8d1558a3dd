#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace fourap {

using cplx = std::complex<double>;

// Additive character e_F(a) = exp(2 pi i a / p).
cplx character(uint32_t a, uint32_t p);

// Table of e_F(a) for a in [0, p).
std::vector<cplx> character_table(uint32_t p);

// Discrete Fourier transform on F_p^d with expectation normalization:
//   fhat(xi) = E_x f(x) e_F(-xi . x).
// Indexing is the canonical little-endian order; data.size() must be p^d.
// Runs one length-p pass per axis, O(d p^{d+1}) total.
std::vector<cplx> dft(const std::vector<cplx>& data, uint32_t p, int dim);

// Inverse transform: f(x) = sum_xi fhat(xi) e_F(xi . x).
std::vector<cplx> idft(const std::vector<cplx>& data, uint32_t p, int dim);

}  // namespace fourap
