#pragma once

#include <vector>

#include "nugap/poly.hpp"

namespace nugap {

// In-place radix-2 FFT; a.size() must be a power of two. Forward uses the
// kernel exp(-i 2 pi j k / n); the inverse divides by n.
void fft_inplace(std::vector<Complex>& a, bool inverse);

inline int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace nugap
