#include "loam/random_stream.hpp"

#include <cmath>
#include <numbers>

namespace loam {

namespace {

constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85;
constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53;
constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

} // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kPhiloxW32A;
            key[1] += kPhiloxW32B;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM4x32A, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM4x32B, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint32_t tag, std::uint64_t index) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      counter_{static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), tag, 0} {}

std::uint64_t RandomStream::next_word() noexcept {
    if (buffered_ == 0) {
        buffer_ = philox4x32_10(counter_, key_);
        ++counter_[3];
        buffered_ = 4;
    }
    const std::uint32_t hi = buffer_[4 - buffered_];
    const std::uint32_t lo = buffer_[5 - buffered_];
    buffered_ -= 2;
    return (static_cast<std::uint64_t>(hi) << 32) | lo;
}

double RandomStream::uniform() noexcept {
    // (k + 0.5) * 2^-52 keeps both 0 and 1 out of range exactly.
    return (static_cast<double>(next_word() >> 12) + 0.5) * 0x1.0p-52;
}

double RandomStream::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_normal_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

std::uint64_t RandomStream::below(std::uint64_t n) noexcept {
    // Lemire's multiply-shift; the bias is < n / 2^64 and irrelevant here.
    const unsigned __int128 product = static_cast<unsigned __int128>(next_word()) * n;
    return static_cast<std::uint64_t>(product >> 64);
}

} // namespace loam
