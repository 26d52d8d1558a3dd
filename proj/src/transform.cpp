#include "fourap/transform.hpp"

#include <numbers>
#include <stdexcept>

namespace fourap {

cplx character(uint32_t a, uint32_t p) {
  double angle = 2.0 * std::numbers::pi * static_cast<double>(a % p) / static_cast<double>(p);
  return cplx(std::cos(angle), std::sin(angle));
}

std::vector<cplx> character_table(uint32_t p) {
  std::vector<cplx> table(p);
  for (uint32_t a = 0; a < p; ++a) table[a] = character(a, p);
  return table;
}

namespace {

uint64_t expect_length(uint32_t p, int dim) {
  if (dim < 0) throw std::invalid_argument("dft: negative dimension");
  uint64_t n = 1;
  for (int j = 0; j < dim; ++j) n *= p;
  return n;
}

// One pass along each axis with the naive length-p kernel. sign = -1 for the
// forward transform, +1 for the inverse; normalize divides each pass by p.
std::vector<cplx> axis_passes(const std::vector<cplx>& data, uint32_t p, int dim, int sign,
                              bool normalize) {
  uint64_t n = expect_length(p, dim);
  if (data.size() != n) throw std::invalid_argument("dft: data length is not p^dim");
  std::vector<cplx> cur = data;
  std::vector<cplx> kernel(static_cast<size_t>(p) * p);
  for (uint32_t j = 0; j < p; ++j) {
    for (uint32_t k = 0; k < p; ++k) {
      uint32_t e = static_cast<uint32_t>((static_cast<uint64_t>(j) * k) % p);
      cplx w = character(e, p);
      kernel[j * p + k] = sign < 0 ? std::conj(w) : w;
    }
  }
  double scale = normalize ? 1.0 / static_cast<double>(p) : 1.0;
  std::vector<cplx> line(p), next(n);
  uint64_t stride = 1;
  for (int axis = 0; axis < dim; ++axis) {
    uint64_t block = stride * p;
    for (uint64_t base = 0; base < n; base += block) {
      for (uint64_t off = 0; off < stride; ++off) {
        for (uint32_t j = 0; j < p; ++j) line[j] = cur[base + off + j * stride];
        for (uint32_t k = 0; k < p; ++k) {
          cplx acc(0.0, 0.0);
          for (uint32_t j = 0; j < p; ++j) acc += line[j] * kernel[static_cast<size_t>(j) * p + k];
          next[base + off + k * stride] = acc * scale;
        }
      }
    }
    std::swap(cur, next);
    stride = block;
  }
  return cur;
}

}  // namespace

std::vector<cplx> dft(const std::vector<cplx>& data, uint32_t p, int dim) {
  return axis_passes(data, p, dim, -1, true);
}

std::vector<cplx> idft(const std::vector<cplx>& data, uint32_t p, int dim) {
  return axis_passes(data, p, dim, +1, false);
}

}  // namespace fourap
