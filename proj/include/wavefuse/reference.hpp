#pragma once

#include "wavefuse/wavelet.hpp"

namespace wavefuse::ref {

// Serial reference transforms, written independently of the main kernels:
// straight-line loops, columns filtered before rows, the undecimated pair
// expressed as explicit dilated convolutions. No pragmas. Used to cross-check
// the parallel implementation and as the baseline in the benchmark tool.
Decomposition dwt_forward(const Matrix& plane);
Matrix dwt_inverse(const Decomposition& d);
Decomposition udwt_forward(const Matrix& plane);
Matrix udwt_inverse(const Decomposition& d);

} // namespace wavefuse::ref
