#pragma once

#include <array>
#include <cstdint>

namespace paygmix {

/// Counter-based random stream (Philox4x32-10).
///
/// The 64-bit master seed is the cipher key; the stream index occupies the
/// upper half of the 128-bit counter and the draw position the lower half.
/// Distinct (seed, index) pairs therefore address disjoint blocks of the
/// same keyed permutation, and a given pair always replays the same
/// sequence. Streams are cheap values; give each task its own index.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t index) noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t index() const noexcept { return index_; }

    /// Next 32 random bits.
    std::uint32_t next_u32() noexcept;

    /// Uniform on the open interval (0, 1) with 53-bit resolution.
    double uniform() noexcept;

    /// Standard normal variate (Box-Muller, both outputs used).
    double standard_normal() noexcept;

    /// Raw Philox4x32-10 block function, exposed for known-answer tests.
    static std::array<std::uint32_t, 4> philox_block(std::array<std::uint32_t, 4> counter,
                                                     std::array<std::uint32_t, 2> key) noexcept;

private:
    void refill() noexcept;

    std::uint64_t seed_;
    std::uint64_t index_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// One standard normal draw from the stream.
inline double sample_standard_normal(RngStream& stream) noexcept { return stream.standard_normal(); }

} // namespace paygmix
