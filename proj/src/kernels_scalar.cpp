#include "cologic/kernels.hpp"

namespace cologic::kernels::scalar {

void expand_reach(std::span<const std::uint64_t> adjacency, std::span<std::uint64_t> out)
{
    out[0] = 0;
    for (std::size_t k = 0; k < adjacency.size(); ++k) {
        const std::size_t half = std::size_t{1} << k;
        const std::uint64_t row = adjacency[k];
        for (std::size_t a = 0; a < half; ++a) {
            out[half + a] = out[a] | row;
        }
    }
}

void contact_row(std::uint64_t reach, std::span<std::uint8_t> row, std::size_t count)
{
    for (std::size_t b = 0; b < count; ++b) {
        row[b] = (reach & b) != 0 ? 1 : 0;
    }
}

std::uint64_t count_join_violations(std::span<const std::uint8_t> row, std::size_t count, std::uint32_t y)
{
    const std::uint8_t ry = row[y];
    std::uint64_t bad = 0;
    for (std::size_t z = 0; z < count; ++z) {
        bad += row[y | z] != (ry | row[z]) ? 1 : 0;
    }
    return bad;
}

} // namespace cologic::kernels::scalar
