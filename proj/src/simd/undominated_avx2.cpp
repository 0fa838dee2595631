#include "kolchin/simd/undominated_count.hpp"

#include <bit>
#include <vector>

#include <immintrin.h>

// Compiled with -mavx2; only reached when the CPU reports AVX2.

namespace kolchin::simd {

std::uint64_t count_undominated_avx2(std::span<const std::uint32_t> gens, std::size_t m, std::uint32_t s)
{
    if (m == 0)
        return gens.empty() ? 1 : 0;
    const std::size_t num_gens = gens.size() / m;
    const std::size_t prefix_len = m - 1;

    std::vector<std::uint32_t> prefix(prefix_len, 0);
    std::vector<std::int32_t> thresholds;
    thresholds.reserve(num_gens);
    std::uint64_t sum = 0;
    std::uint64_t count = 0;

    const __m256i lane_offsets = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);

    for (;;) {
        // Generators whose first m-1 entries sit below the prefix dominate a
        // point of this row iff the last coordinate reaches their last entry.
        thresholds.clear();
        for (std::size_t g = 0; g < num_gens; ++g) {
            const std::uint32_t* gen = gens.data() + g * m;
            bool below = true;
            for (std::size_t k = 0; k < prefix_len; ++k)
                if (prefix[k] < gen[k]) {
                    below = false;
                    break;
                }
            if (below)
                thresholds.push_back(static_cast<std::int32_t>(gen[prefix_len]));
        }

        const std::uint64_t row_len = s - sum + 1;
        for (std::uint64_t base = 0; base < row_len; base += 8) {
            const __m256i last = _mm256_add_epi32(_mm256_set1_epi32(static_cast<std::int32_t>(base)), lane_offsets);
            __m256i dominated = _mm256_setzero_si256();
            for (std::int32_t t : thresholds) {
                // last >= t  <=>  last > t - 1
                const __m256i ge = _mm256_cmpgt_epi32(last, _mm256_set1_epi32(t - 1));
                dominated = _mm256_or_si256(dominated, ge);
            }
            const auto dom_bits = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(dominated)));
            const std::uint64_t lanes = row_len - base < 8 ? row_len - base : 8;
            const unsigned valid = lanes == 8 ? 0xFFu : ((1u << lanes) - 1u);
            count += static_cast<std::uint64_t>(std::popcount(valid & ~dom_bits));
        }

        std::size_t k = prefix_len;
        for (;;) {
            if (k == 0)
                return count;
            --k;
            if (sum < s) {
                ++prefix[k];
                ++sum;
                break;
            }
            sum -= prefix[k];
            prefix[k] = 0;
        }
    }
}

} // namespace kolchin::simd
