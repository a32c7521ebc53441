// SPDX-License-Identifier: Apache-2.0
#include "poissinc/pointprocess.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "poissinc/errors.hpp"

namespace poissinc
{

ArrivalStream::ArrivalStream(DistributionSpec spec, StreamKey key)
    : spec_(std::move(spec)), key_(key), rng_(key)
{
}

ArrivalStream ArrivalStream::from_arrivals(std::vector<double> arrivals)
{
    ArrivalStream s;
    s.fixed_ = true;
    double prev = 0;
    s.increments_.reserve(arrivals.size());
    for (double a : arrivals)
    {
        if (!(a >= prev) || !std::isfinite(a))
            throw ParameterError("arrivals must be finite, nonnegative and nondecreasing");
        s.increments_.push_back(a - prev);
        prev = a;
    }
    s.arrivals_ = std::move(arrivals);
    return s;
}

void ArrivalStream::extend(std::size_t up_to)
{
    if (up_to <= arrivals_.size())
        return;
    if (fixed_)
    {
        throw ExtensionRequired("fixed arrival path has only " + std::to_string(arrivals_.size()) +
                                    " arrivals",
                                arrivals_.empty() ? 0.0 : arrivals_.back());
    }
    arrivals_.reserve(up_to);
    increments_.reserve(up_to);
    while (arrivals_.size() < up_to)
    {
        double const x = sample_one(*spec_, rng_);
        total_ += x;
        increments_.push_back(x);
        arrivals_.push_back(total_.value());
    }
}

void ArrivalStream::extend_past(double horizon)
{
    while (arrivals_.empty() || !(arrivals_.back() > horizon))
    {
        if (fixed_)
            throw ExtensionRequired("fixed arrival path ends before the horizon", horizon);
        std::size_t const grow = std::max<std::size_t>(64, arrivals_.size() / 2);
        extend(arrivals_.size() + grow);
    }
}

double ArrivalStream::at(std::size_t n) const
{
    if (n == 0 || n > arrivals_.size())
        throw std::out_of_range("arrival index " + std::to_string(n) + " not realized");
    return arrivals_[n - 1];
}

std::size_t ArrivalStream::count_up_to(double t) const
{
    if (arrivals_.empty() || !(arrivals_.back() > t))
        throw ExtensionRequired("arrivals not realized past t", t);
    return static_cast<std::size_t>(
        std::upper_bound(arrivals_.begin(), arrivals_.end(), t) - arrivals_.begin());
}

void ArrivalStream::write_csv(std::ostream& os) const
{
    os << "n,S_n\n";
    for (std::size_t i = 0; i < arrivals_.size(); ++i)
        os << (i + 1) << ',' << format_number(arrivals_[i]) << '\n';
}

ArrivalStream extend(ArrivalStream stream, std::size_t up_to)
{
    stream.extend(up_to);
    return stream;
}

Reciprocals reciprocals(ArrivalStream const& stream, std::size_t n)
{
    if (n > stream.size())
        throw ExtensionRequired("reciprocals: stream realized to " + std::to_string(stream.size()) +
                                    " < " + std::to_string(n),
                                0.0);
    auto const s = stream.arrivals();
    Reciprocals out;
    out.r.resize(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        if (s[i] == 0)
            throw DomainError("reciprocals: S_" + std::to_string(i + 1) + " = 0");
        out.r[i] = 1.0 / s[i];
    }
    out.d.resize(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i + 1 < n; ++i)
        out.d[i] = out.r[i] - out.r[i + 1];
    return out;
}

std::size_t reciprocal_moment_floor(double p)
{
    return static_cast<std::size_t>(std::ceil(4 * p)) + 1;
}

}  // namespace poissinc
