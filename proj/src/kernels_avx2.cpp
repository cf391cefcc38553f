#include "cologic/kernels.hpp"

#include <immintrin.h>

#include <bit>

namespace cologic::kernels::avx2 {

void expand_reach(std::span<const std::uint64_t> adjacency, std::span<std::uint64_t> out)
{
    out[0] = 0;
    for (std::size_t k = 0; k < adjacency.size(); ++k) {
        const std::size_t half = std::size_t{1} << k;
        const std::uint64_t row = adjacency[k];
        std::size_t a = 0;
        if (half >= 4) {
            const __m256i vrow = _mm256_set1_epi64x(static_cast<long long>(row));
            for (; a + 4 <= half; a += 4) {
                const __m256i lo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(out.data() + a));
                _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + half + a), _mm256_or_si256(lo, vrow));
            }
        }
        for (; a < half; ++a) {
            out[half + a] = out[a] | row;
        }
    }
}

void contact_row(std::uint64_t reach, std::span<std::uint8_t> row, std::size_t count)
{
    const __m256i vreach = _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(reach)));
    const __m256i ones = _mm256_set1_epi8(1);
    const __m256i zero = _mm256_setzero_si256();
    const __m256i step = _mm256_set1_epi32(8);
    // packs interleave 128-bit lanes; this restores ascending order.
    const __m256i unshuffle = _mm256_setr_epi32(0, 4, 1, 5, 2, 6, 3, 7);
    __m256i base = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);

    std::size_t b = 0;
    for (; b + 32 <= count; b += 32) {
        __m256i hit[4];
        for (auto& h : hit) {
            // All-ones where (reach & b) != 0.
            h = _mm256_xor_si256(_mm256_cmpeq_epi32(_mm256_and_si256(base, vreach), zero), _mm256_set1_epi32(-1));
            base = _mm256_add_epi32(base, step);
        }
        const __m256i w01 = _mm256_packs_epi32(hit[0], hit[1]);
        const __m256i w23 = _mm256_packs_epi32(hit[2], hit[3]);
        __m256i bytes = _mm256_packs_epi16(w01, w23);
        bytes = _mm256_permutevar8x32_epi32(bytes, unshuffle);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(row.data() + b), _mm256_and_si256(bytes, ones));
    }
    for (; b < count; ++b) {
        row[b] = (reach & b) != 0 ? 1 : 0;
    }
}

std::uint64_t count_join_violations(std::span<const std::uint8_t> row, std::size_t count, std::uint32_t y)
{
    const std::uint8_t ry = row[y];
    const __m256i vy = _mm256_set1_epi32(static_cast<int>(y));
    const __m256i vry = _mm256_set1_epi32(ry);
    const __m256i low_byte = _mm256_set1_epi32(0xFF);
    const __m256i step = _mm256_set1_epi32(8);
    __m256i z = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
    const int* base = reinterpret_cast<const int*>(row.data());

    std::uint64_t bad = 0;
    std::size_t i = 0;
    for (; i + 8 <= count; i += 8) {
        const __m256i idx = _mm256_or_si256(z, vy);
        const __m256i joined = _mm256_and_si256(_mm256_i32gather_epi32(base, idx, 1), low_byte);
        const __m128i rz8 = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(row.data() + i));
        const __m256i expect = _mm256_or_si256(_mm256_cvtepu8_epi32(rz8), vry);
        const int same = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(joined, expect)));
        bad += static_cast<std::uint64_t>(8 - std::popcount(static_cast<unsigned>(same)));
        z = _mm256_add_epi32(z, step);
    }
    for (; i < count; ++i) {
        bad += row[y | i] != (ry | row[i]) ? 1 : 0;
    }
    return bad;
}

} // namespace cologic::kernels::avx2
