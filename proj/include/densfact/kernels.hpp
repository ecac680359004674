#pragma once

#include <span>

#include "densfact/cmatrix.hpp"

// Data-parallel inner loops behind the matrix operations. Each kernel exists
// twice: a plain serial reference and an OpenMP version parallelised over
// output rows. Both accumulate every output entry in the same order, so the
// two produce bit-identical results; the serial one is the ground truth the
// tests compare against, and the dispatchers below pick the parallel one only
// when the work is large enough to amortise the fork/join.

namespace densfact::kernels {

CMatrix serial_matmul(const CMatrix& a, const CMatrix& b);
CMatrix parallel_matmul(const CMatrix& a, const CMatrix& b);

CMatrix serial_adjoint(const CMatrix& m);
CMatrix parallel_adjoint(const CMatrix& m);

// sum_t w[t] * col_t * col_t^*, for the columns of `states` (n x k).
CMatrix serial_weighted_outer_sum(const CMatrix& states, std::span<const double> w);
CMatrix parallel_weighted_outer_sum(const CMatrix& states, std::span<const double> w);

// Size-dispatching entry points used by the rest of the library.
CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix adjoint(const CMatrix& m);
CMatrix weighted_outer_sum(const CMatrix& states, std::span<const double> w);

} // namespace densfact::kernels
