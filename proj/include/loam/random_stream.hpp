#pragma once

#include <array>
#include <cstdint>

namespace loam {

/// Philox4x32-10 block function (Salmon et al., SC'11). Pure: the same
/// (counter, key) always yields the same four words.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based random stream.
///
/// A stream is addressed by a 64-bit seed and a (tag, index) pair; it owns a
/// private block counter so consecutive draws walk through independent Philox
/// blocks. Two streams with different addresses never share a block, which is
/// what lets the simulator hand every trial its own stream with no sequential
/// dependence between trials.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint32_t tag, std::uint64_t index) noexcept;

    /// Uniform on the open interval (0, 1), 52-bit resolution.
    double uniform() noexcept;

    /// Standard normal via Box-Muller (both outputs of a pair are used).
    double normal() noexcept;

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n) noexcept;

private:
    std::uint64_t next_word() noexcept;

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> buffer_{};
    int buffered_ = 0;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

} // namespace loam
