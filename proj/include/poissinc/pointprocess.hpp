// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "poissinc/distributions.hpp"
#include "poissinc/numeric.hpp"
#include "poissinc/rng.hpp"

namespace poissinc
{

//! Renewal arrivals S_n = X_1 + ... + X_n, realized lazily.
//!
//! The realized prefix only grows; extending draws the next increments from
//! the stream's own counter, so extend(100) followed by extend(200) yields
//! the same prefix as extend(200). Single writer.
class ArrivalStream
{
  public:
    ArrivalStream(DistributionSpec spec, StreamKey key);

    //! Fixed path from explicit arrivals (tests, adversarial inputs). Such a
    //! stream cannot be extended past its given length.
    static ArrivalStream from_arrivals(std::vector<double> arrivals);

    //! Realize arrivals up to index `up_to` (no-op if already realized).
    void extend(std::size_t up_to);
    //! Realize until the last arrival exceeds `horizon`.
    void extend_past(double horizon);

    std::size_t size() const noexcept { return arrivals_.size(); }
    //! S_1..S_n as a 0-based span.
    std::span<double const> arrivals() const noexcept { return arrivals_; }
    //! X_1..X_n as a 0-based span.
    std::span<double const> increments() const noexcept { return increments_; }
    //! S_n with 1-based n.
    double at(std::size_t n) const;
    //! Number of realized arrivals in [0, t]; requires the prefix to pass t.
    std::size_t count_up_to(double t) const;

    std::optional<DistributionSpec> const& spec() const noexcept { return spec_; }
    StreamKey const& key() const noexcept { return key_; }

    //! CSV debug dump with columns n, S_n.
    void write_csv(std::ostream& os) const;

  private:
    ArrivalStream() = default;

    std::optional<DistributionSpec> spec_;
    StreamKey key_;
    RngStream rng_;
    bool fixed_ = false;
    CompensatedSum total_;
    std::vector<double> arrivals_;
    std::vector<double> increments_;
};

//! Functional form: returns a copy extended to `up_to`.
ArrivalStream extend(ArrivalStream stream, std::size_t up_to);

struct Reciprocals
{
    std::vector<double> r;  // R_1..R_N, R_n = 1/S_n
    std::vector<double> d;  // D_1..D_{N-1}, D_n = R_n - R_{n+1}
};

//! R_n = 1/S_n for n <= N and D_n = R_n - R_{n+1} for n < N.
//! Throws DomainError if some S_n = 0.
Reciprocals reciprocals(ArrivalStream const& stream, std::size_t n);

//! Smallest n for which averages of R_n^p are formed: ceil(4p) + 1.
std::size_t reciprocal_moment_floor(double p);

}  // namespace poissinc
