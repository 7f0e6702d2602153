// AVX2 backend. This translation unit is compiled with -mavx2 -mfma; the
// dispatcher only hands out this table after a runtime CPU check.

#include "xygibbs/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "kernels_body.hpp"

namespace xygibbs::kernels {

namespace {

struct Avx2Lane {
    using V = __m256d;
    using I = __m256i;
    static constexpr std::size_t width = 4;

    static V load(const double* p) { return _mm256_loadu_pd(p); }
    static void store(double* p, V v) { _mm256_storeu_pd(p, v); }
    static V set1(double v) { return _mm256_set1_pd(v); }
    static V add(V a, V b) { return _mm256_add_pd(a, b); }
    static V sub(V a, V b) { return _mm256_sub_pd(a, b); }
    static V mul(V a, V b) { return _mm256_mul_pd(a, b); }
    static V div(V a, V b) { return _mm256_div_pd(a, b); }
    static V fma(V a, V b, V c) { return _mm256_fmadd_pd(a, b, c); }
    static V round_nearest(V a) {
        return _mm256_round_pd(a, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    }
    static V cmp_lt(V a, V b) { return _mm256_cmp_pd(a, b, _CMP_LT_OQ); }
    static V cmp_gt(V a, V b) { return _mm256_cmp_pd(a, b, _CMP_GT_OQ); }
    static V blend(V a, V b, V mask) { return _mm256_blendv_pd(a, b, mask); }
    static V infinity() { return _mm256_set1_pd(__builtin_inf()); }

    static I to_bits(V a) { return _mm256_castpd_si256(a); }
    static V from_bits(I a) { return _mm256_castsi256_pd(a); }
    static I iadd(I a, I b) { return _mm256_add_epi64(a, b); }
    static I isub(I a, I b) { return _mm256_sub_epi64(a, b); }
    static I ishl52(I a) { return _mm256_slli_epi64(a, 52); }
    static I iset1(std::int64_t v) { return _mm256_set1_epi64x(v); }
};

}  // namespace

const KernelTable* avx2_table() {
    static const KernelTable table = {
        "avx2",
        &body::eval_poly<Avx2Lane>,
        &body::eval_example1<Avx2Lane>,
        &body::eval_example1_tail<Avx2Lane>,
        &body::exp_scaled<Avx2Lane>,
        &body::dot<Avx2Lane>,
    };
    return &table;
}

}  // namespace xygibbs::kernels

#else

namespace xygibbs::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace xygibbs::kernels

#endif
