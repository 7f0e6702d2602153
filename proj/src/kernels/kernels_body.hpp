#pragma once

// Shared arithmetic bodies for the batch kernels. Each backend supplies a
// lane type L (plain double or a SIMD register) and the same expression tree
// is instantiated for both. Every lane op is one correctly-rounded IEEE
// operation (mul/add/div/fma) in either backend, and vector remainders run
// the scalar lane, so all backends produce bitwise-identical output.

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>

namespace xygibbs::kernels::body {

struct ScalarLane {
    using V = double;
    using I = std::int64_t;
    static constexpr std::size_t width = 1;

    static V load(const double* p) { return *p; }
    static void store(double* p, V v) { *p = v; }
    static V set1(double v) { return v; }
    static V add(V a, V b) { return a + b; }
    static V sub(V a, V b) { return a - b; }
    static V mul(V a, V b) { return a * b; }
    static V div(V a, V b) { return a / b; }
    static V fma(V a, V b, V c) { return std::fma(a, b, c); }
    static V round_nearest(V a) { return std::nearbyint(a); }
    static V cmp_lt(V a, V b) { return a < b ? all_bits() : 0.0; }
    static V cmp_gt(V a, V b) { return a > b ? all_bits() : 0.0; }
    static V blend(V a, V b, V mask) {
        return std::bit_cast<std::uint64_t>(mask) ? b : a;
    }
    static V infinity() { return std::numeric_limits<double>::infinity(); }

    static I to_bits(V a) { return std::bit_cast<I>(a); }
    static V from_bits(I a) { return std::bit_cast<V>(a); }
    static I iadd(I a, I b) { return a + b; }
    static I isub(I a, I b) { return a - b; }
    static I ishl52(I a) { return a << 52; }
    static I iset1(std::int64_t v) { return v; }

  private:
    static V all_bits() { return std::bit_cast<V>(~std::uint64_t{0}); }
};

inline constexpr double kLog2E = 1.4426950408889634074;
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kExpUnderflow = -745.2;  // below the smallest subnormal
inline constexpr double kExpOverflow = 709.9;    // above DBL_MAX
inline constexpr double kMagic = 6755399441055744.0;  // 1.5 * 2^52

// 1/k! for k = 13 down to 0.
inline constexpr double kExpTaylor[14] = {
    1.6059043836821614599e-10, 2.0876756987868098979e-9,
    2.5052108385441718775e-8,  2.7557319223985890653e-7,
    2.7557319223985892510e-6,  2.4801587301587301566e-5,
    1.9841269841269841253e-4,  1.3888888888888889419e-3,
    8.3333333333333332177e-3,  4.1666666666666664354e-2,
    1.6666666666666665741e-1,  5.0e-1,
    1.0,                       1.0};

// exp(x): Cody-Waite reduction x = n*ln2 + r, degree-13 Taylor on
// |r| <= ln(2)/2, scaling by 2^n through exponent-field integer arithmetic.
// The magic-number add recovers n as an int64 lane without a cvt
// instruction (AVX2 has no packed double->int64 conversion). Subnormal
// results are reached by a two-stage multiply so rounding into the
// subnormal range happens exactly once.
template <class L>
typename L::V exp_lane(typename L::V x) {
    using V = typename L::V;
    using I = typename L::I;

    const V n = L::round_nearest(L::mul(x, L::set1(kLog2E)));
    V r = L::fma(n, L::set1(-kLn2Hi), x);
    r = L::fma(n, L::set1(-kLn2Lo), r);

    V p = L::set1(kExpTaylor[0]);
    for (int k = 1; k < 14; ++k) p = L::fma(p, r, L::set1(kExpTaylor[k]));

    V stage =
        L::blend(L::set1(0.0), L::set1(512.0), L::cmp_lt(n, L::set1(-1021.0)));
    stage = L::blend(stage, L::set1(-512.0), L::cmp_gt(n, L::set1(1023.0)));
    const I in = L::isub(L::to_bits(L::add(n, L::set1(kMagic))),
                         L::iset1(std::bit_cast<std::int64_t>(kMagic)));
    const I is = L::isub(L::to_bits(L::add(stage, L::set1(kMagic))),
                         L::iset1(std::bit_cast<std::int64_t>(kMagic)));
    const I bias = L::iset1(1023);
    const V m1 = L::from_bits(L::ishl52(L::iadd(L::iadd(in, is), bias)));
    const V m2 = L::from_bits(L::ishl52(L::iadd(L::isub(L::iset1(0), is), bias)));
    V res = L::mul(L::mul(p, m1), m2);

    res = L::blend(res, L::set1(0.0), L::cmp_lt(x, L::set1(kExpUnderflow)));
    res = L::blend(res, L::infinity(), L::cmp_gt(x, L::set1(kExpOverflow)));
    return res;
}

template <class L>
void eval_poly(const double* x, double* out, std::size_t n, const double* c,
               std::size_t nc) {
    if (nc == 0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
        return;
    }
    std::size_t i = 0;
    for (; i + L::width <= n; i += L::width) {
        const typename L::V xv = L::load(x + i);
        typename L::V r = L::set1(c[0]);
        for (std::size_t k = 1; k < nc; ++k) r = L::fma(r, xv, L::set1(c[k]));
        L::store(out + i, r);
    }
    for (; i < n; ++i) {
        double r = c[0];
        for (std::size_t k = 1; k < nc; ++k) r = ScalarLane::fma(r, x[i], c[k]);
        out[i] = r;
    }
}

template <class L>
void eval_example1(const double* x, double* out, std::size_t n) {
    const typename L::V one = L::set1(1.0);
    std::size_t i = 0;
    for (; i + L::width <= n; i += L::width) {
        const typename L::V xv = L::load(x + i);
        const typename L::V t = L::fma(xv, xv, L::set1(-1.0));
        L::store(out + i, L::add(one, L::div(one, t)));
    }
    for (; i < n; ++i) {
        const double t = ScalarLane::fma(x[i], x[i], -1.0);
        out[i] = 1.0 + 1.0 / t;
    }
}

template <class L>
void eval_example1_tail(const double* x, double* out, std::size_t n,
                        unsigned j) {
    const typename L::V one = L::set1(1.0);
    std::size_t i = 0;
    for (; i + L::width <= n; i += L::width) {
        const typename L::V xv = L::load(x + i);
        const typename L::V q = L::mul(xv, xv);
        typename L::V p = q;
        for (unsigned k = 0; k < j; ++k) p = L::mul(p, q);
        // -(q^(j+1))/(1 - q) == q^(j+1)/(q - 1)
        L::store(out + i, L::div(p, L::sub(q, one)));
    }
    for (; i < n; ++i) {
        const double q = x[i] * x[i];
        double p = q;
        for (unsigned k = 0; k < j; ++k) p *= q;
        out[i] = p / (q - 1.0);
    }
}

template <class L>
void exp_scaled(const double* f, double* out, std::size_t n, double alpha,
                double shift) {
    const typename L::V va = L::set1(alpha);
    const typename L::V vs = L::set1(shift);
    std::size_t i = 0;
    for (; i + L::width <= n; i += L::width) {
        const typename L::V x = L::mul(va, L::sub(L::load(f + i), vs));
        L::store(out + i, exp_lane<L>(x));
    }
    for (; i < n; ++i)
        out[i] = exp_lane<ScalarLane>(alpha * (f[i] - shift));
}

// Four-slot accumulation: slot l collects indices congruent to l mod 4, the
// slots are combined pairwise at the end. The pattern is what the AVX2
// register naturally produces, and the scalar body reproduces it exactly.
template <class L>
double dot(const double* w, const double* v, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    if constexpr (L::width == 4) {
        typename L::V vacc = L::set1(0.0);
        for (; i + 4 <= n; i += 4)
            vacc = L::fma(L::load(w + i), L::load(v + i), vacc);
        L::store(acc, vacc);
    } else {
        for (; i + 4 <= n; i += 4)
            for (std::size_t l = 0; l < 4; ++l)
                acc[l] = ScalarLane::fma(w[i + l], v[i + l], acc[l]);
    }
    for (std::size_t l = 0; i < n; ++i, ++l)
        acc[l] = ScalarLane::fma(w[i], v[i], acc[l]);
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

}  // namespace xygibbs::kernels::body
