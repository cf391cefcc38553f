#pragma once

// Data-parallel inner loops of the exhaustive contact-axiom checker.
//
// Every kernel has a scalar reference implementation; an AVX2 variant is
// compiled on x86-64 and selected at runtime when the CPU supports it.
// COLOGIC_KERNELS=scalar|avx2 forces a backend (an unavailable request
// falls back to scalar). Both backends must produce identical output.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace cologic::kernels {

/// Rows passed to count_join_violations need this many readable bytes past
/// the logical end (the AVX2 gather loads 32-bit words at byte offsets).
inline constexpr std::size_t kRowPadding = 4;

/// Largest supported power-set exponent (lane indices are 32-bit).
inline constexpr int kMaxKernelAtoms = 30;

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b);

struct KernelTable {
    /// out[a] = union of adjacency[p] over atoms p in a, for a < 2^n where
    /// n = adjacency.size(); out.size() must be 2^n.
    void (*expand_reach)(std::span<const std::uint64_t> adjacency, std::span<std::uint64_t> out);
    /// row[b] = (reach & b) != 0 for b < count.
    void (*contact_row)(std::uint64_t reach, std::span<std::uint8_t> row, std::size_t count);
    /// Number of z < count with row[y | z] != (row[y] | row[z]).
    /// Requires row.size() >= count + kRowPadding and y < count.
    std::uint64_t (*count_join_violations)(std::span<const std::uint8_t> row, std::size_t count, std::uint32_t y);
};

bool backend_available(Backend b);
const KernelTable& table(Backend b);

/// Backend chosen for this process (CPU detection plus the env override).
Backend active_backend();
const KernelTable& active();

namespace scalar {
void expand_reach(std::span<const std::uint64_t> adjacency, std::span<std::uint64_t> out);
void contact_row(std::uint64_t reach, std::span<std::uint8_t> row, std::size_t count);
std::uint64_t count_join_violations(std::span<const std::uint8_t> row, std::size_t count, std::uint32_t y);
} // namespace scalar

#if defined(COLOGIC_HAVE_AVX2_KERNELS)
namespace avx2 {
void expand_reach(std::span<const std::uint64_t> adjacency, std::span<std::uint64_t> out);
void contact_row(std::uint64_t reach, std::span<std::uint8_t> row, std::size_t count);
std::uint64_t count_join_violations(std::span<const std::uint8_t> row, std::size_t count, std::uint32_t y);
} // namespace avx2
#endif

} // namespace cologic::kernels
