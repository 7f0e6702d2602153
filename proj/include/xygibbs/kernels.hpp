#pragma once

#include <cstddef>

namespace xygibbs::kernels {

/// Batch arithmetic kernels behind the numeric hot paths: potential
/// evaluation on grids and quadrature nodes, the shifted exponential of the
/// Gibbs integrand, and weighted accumulation. Every entry point has a
/// scalar reference implementation and an AVX2 variant generated from the
/// same arithmetic template, so the two produce bitwise-identical results
/// and the variant in use is a pure speed choice.
struct KernelTable {
    const char* name;

    /// out[i] = polynomial(x[i]); coefficients highest degree first.
    void (*eval_poly)(const double* x, double* out, std::size_t n,
                      const double* coeffs, std::size_t ncoeffs);

    /// out[i] = 1 + 1/(x[i]^2 - 1).
    void (*eval_example1)(const double* x, double* out, std::size_t n);

    /// out[i] = -(x[i]^2)^(j+1) / (1 - x[i]^2).
    void (*eval_example1_tail)(const double* x, double* out, std::size_t n,
                               unsigned j);

    /// out[i] = exp(alpha * (f[i] - shift)).
    void (*exp_scaled)(const double* f, double* out, std::size_t n,
                       double alpha, double shift);

    /// Sum of w[i]*v[i] with a fixed four-slot accumulation pattern.
    double (*dot)(const double* w, const double* v, std::size_t n);
};

const KernelTable& scalar_table();

/// AVX2 variant; nullptr when the build or the CPU cannot run it.
const KernelTable* avx2_table();

/// Runtime-selected table. Honors XYGIBBS_KERNELS=scalar|avx2 (the latter
/// falls back to scalar when the CPU lacks AVX2+FMA).
const KernelTable& active();

}  // namespace xygibbs::kernels
