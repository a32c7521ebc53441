// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace poissinc
{

//! Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
//! as easy as 1, 2, 3", SC11).
struct Philox4x32
{
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter apply(Counter ctr, Key key) noexcept;
};

std::uint64_t mix64(std::uint64_t x) noexcept;

//! Identity of a logical random stream.
//!
//! Every stream is keyed by (master seed, experiment id, replicate id). The
//! replicate id occupies the high half of the Philox counter, so distinct
//! replicates never share counter blocks and can be drawn in any order.
struct StreamKey
{
    std::uint64_t master = 0;
    std::uint64_t experiment = 0;
    std::uint64_t replicate = 0;

    //! Derive an independent lane (e.g. markers vs arrivals of one replicate).
    StreamKey lane(std::uint64_t lane_id) const noexcept
    {
        return {master, mix64(experiment ^ mix64(lane_id + 0x632be59bd9b4e019ull)),
                replicate};
    }
};

//! Counter-based random stream producing 64-bit words and uniforms.
//!
//! Satisfies UniformRandomBitGenerator, but the library only uses its own
//! transforms so that draws are identical across standard libraries.
class RngStream
{
  public:
    using result_type = std::uint64_t;

    RngStream() : RngStream(StreamKey{}) {}
    explicit RngStream(StreamKey key);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max()
    {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() { return next_u64(); }
    std::uint64_t next_u64();

    //! Uniform on the open interval (0, 1) with 53 bits of resolution.
    double uniform();
    //! Unbiased integer in [0, bound), bound > 0 (Lemire's method).
    std::uint64_t below(std::uint64_t bound);
    //! Standard normal via Box-Muller.
    double normal();

    StreamKey const& key() const noexcept { return key_; }
    //! Number of 64-bit words consumed so far.
    std::uint64_t position() const noexcept { return words_; }

  private:
    void refill();

    StreamKey key_;
    Philox4x32::Key philox_key_{};
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    unsigned buffered_ = 0;
    std::uint64_t words_ = 0;
    double spare_normal_ = 0;
    bool has_spare_ = false;
};

}  // namespace poissinc
