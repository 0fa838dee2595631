#include "kolchin/simd/undominated_count.hpp"

#include <vector>

namespace kolchin::simd {

std::uint64_t count_undominated_scalar(std::span<const std::uint32_t> gens, std::size_t m, std::uint32_t s)
{
    if (m == 0)
        return gens.empty() ? 1 : 0;
    const std::size_t num_gens = gens.size() / m;

    std::vector<std::uint32_t> point(m, 0);
    std::uint64_t sum = 0;
    std::uint64_t count = 0;
    for (;;) {
        bool dominated = false;
        for (std::size_t g = 0; g < num_gens && !dominated; ++g) {
            const std::uint32_t* gen = gens.data() + g * m;
            bool above = true;
            for (std::size_t k = 0; k < m; ++k)
                if (point[k] < gen[k]) {
                    above = false;
                    break;
                }
            dominated = above;
        }
        if (!dominated)
            ++count;

        // Next point of order <= s, last coordinate fastest.
        std::size_t k = m;
        for (;;) {
            if (k == 0)
                return count;
            --k;
            if (sum < s) {
                ++point[k];
                ++sum;
                break;
            }
            sum -= point[k];
            point[k] = 0;
        }
    }
}

} // namespace kolchin::simd
