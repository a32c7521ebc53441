// SPDX-License-Identifier: Apache-2.0
#include "poissinc/levy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "poissinc/errors.hpp"
#include "poissinc/expint.hpp"
#include "poissinc/numeric.hpp"

namespace poissinc
{

LevyModel LevyModel::poisson_unit()
{
    return LevyModel{};
}

LevyModel LevyModel::stable(double alpha)
{
    if (!(alpha > 0 && alpha < 1))
        throw ParameterError("stable model: alpha must lie in (0, 1)");
    LevyModel m;
    m.kind_ = Kind::stable;
    m.alpha_ = alpha;
    return m;
}

LevyModel LevyModel::gamma_unit()
{
    LevyModel m;
    m.kind_ = Kind::gamma_unit;
    return m;
}

std::pair<double, double> LevyModel::psi(double theta) const
{
    if (!std::isfinite(theta))
        throw ParameterError("psi: theta must be finite");
    switch (kind_)
    {
        case Kind::poisson_unit:
            return {1 - std::cos(theta), std::sin(theta)};
        case Kind::stable: {
            if (theta == 0)
                return {0, 0};
            double const g = std::tgamma(1 - alpha_);
            double const h = 0.5 * alpha_ * std::numbers::pi;
            double const mag = std::pow(std::abs(theta), alpha_);
            return {g * std::cos(h) * mag, std::copysign(g * std::sin(h) * mag, theta)};
        }
        case Kind::gamma_unit:
            return {0.5 * std::log1p(theta * theta), std::atan(theta)};
    }
    return {0, 0};
}

double LevyModel::laplace_exponent(double theta) const
{
    if (!(theta >= 0))
        throw DomainError("laplace_exponent: theta must be non-negative");
    switch (kind_)
    {
        case Kind::poisson_unit:
            return -std::expm1(-theta);
        case Kind::stable:
            return std::tgamma(1 - alpha_) * std::pow(theta, alpha_);
        case Kind::gamma_unit:
            return std::log1p(theta);
    }
    return 0;
}

double LevyModel::tail(double x) const
{
    if (!(x > 0))
        throw DomainError("tail G(x) requires x > 0");
    switch (kind_)
    {
        case Kind::poisson_unit:
            return x < 1 ? 1.0 : 0.0;
        case Kind::stable:
            return std::pow(x, -alpha_);
        case Kind::gamma_unit:
            return expint_e1(x);
    }
    return 0;
}

double LevyModel::inverse_tail(double u) const
{
    if (!(u > 0))
        throw DomainError("inverse tail H(u) requires u > 0");
    if (std::isinf(u))
        return 0;
    switch (kind_)
    {
        case Kind::poisson_unit:
            return u <= 1 ? 1.0 : 0.0;
        case Kind::stable:
            return std::pow(u, -1 / alpha_);
        case Kind::gamma_unit:
            return expint_e1_inverse(u);
    }
    return 0;
}

double LevyModel::truncated_first_moment(double b) const
{
    if (!(b >= 0))
        throw DomainError("truncated moment requires b >= 0");
    switch (kind_)
    {
        case Kind::poisson_unit:
            return b >= 1 ? 1.0 : 0.0;
        case Kind::stable:
            return alpha_ * std::pow(b, 1 - alpha_) / (1 - alpha_);
        case Kind::gamma_unit:
            return -std::expm1(-b);
    }
    return 0;
}

double LevyModel::truncated_second_moment(double b) const
{
    if (!(b >= 0))
        throw DomainError("truncated moment requires b >= 0");
    switch (kind_)
    {
        case Kind::poisson_unit:
            return b >= 1 ? 1.0 : 0.0;
        case Kind::stable:
            return alpha_ * std::pow(b, 2 - alpha_) / (2 - alpha_);
        case Kind::gamma_unit:
            if (std::isinf(b))
                return 1;
            // 1 - exp(-b)(1 + b), written to keep precision for small b
            return b < 1e-3 ? b * b * (0.5 - b / 3 + b * b / 8) : -std::expm1(-b) - b * std::exp(-b);
    }
    return 0;
}

std::string LevyModel::to_string() const
{
    switch (kind_)
    {
        case Kind::poisson_unit:
            return "poisson";
        case Kind::stable:
            return "stable(alpha=" + format_number(alpha_) + ")";
        case Kind::gamma_unit:
            return "gamma";
    }
    return "?";
}

LevyModel parse_levy_model(std::string_view text)
{
    auto const call = parse_call(text);
    if (call.name == "poisson")
        return LevyModel::poisson_unit();
    if (call.name == "stable")
        return LevyModel::stable(call.number("alpha", 0));
    if (call.name == "gamma")
        return LevyModel::gamma_unit();
    throw ParameterError("unknown Levy model '" + call.name + "' (expected poisson, stable, gamma)");
}

//---------------------------------------------------------------------------//
char const* to_string(IntegralVerdict::Kind k)
{
    switch (k)
    {
        case IntegralVerdict::Kind::finite:
            return "finite";
        case IntegralVerdict::Kind::divergent:
            return "divergent";
        case IntegralVerdict::Kind::inconclusive:
            return "inconclusive";
    }
    return "?";
}

namespace
{
constexpr std::size_t kDivergenceRun = 8;
// dyadic windows up to 2^16; longer ones exceed the per-window piece budget
constexpr std::size_t kDyadicWindows = 22;
}  // namespace

IntegralVerdict nonnegative_integral(RealIntegrand const& g, std::optional<double> support_end,
                                     double tolerance)
{
    IntegralVerdict out;
    if (support_end)
    {
        double const end = *support_end;
        if (!(end > 0))
        {
            out.kind = IntegralVerdict::Kind::finite;
            out.value = 0.0;
            return out;
        }
        QuadratureOptions opts;
        auto const pieces = static_cast<std::size_t>(std::max(1.0, std::ceil(end / std::numbers::pi)));
        CompensatedSum sum;
        for (std::size_t p = 0; p < pieces; ++p)
        {
            double const a = end * static_cast<double>(p) / static_cast<double>(pieces);
            double const b = end * static_cast<double>(p + 1) / static_cast<double>(pieces);
            sum += integrate_piecewise(g.f, a, b, g.breakpoints, opts).value;
        }
        out.kind = IntegralVerdict::Kind::finite;
        out.value = sum.value();
        out.note = "bounded support";
        return out;
    }

    auto scheme = ImproperScheme::dyadic(0, 1);
    scheme.acceleration = ImproperScheme::Acceleration::none;
    scheme.tolerance = tolerance;
    scheme.window_tolerance = 1e-3 * tolerance;
    scheme.max_windows = kDyadicWindows;
    scheme.max_pieces_per_window = 1u << 20;
    auto const r = improper_integral(g, scheme);
    out.trace = r.trace;
    if (r.converged())
    {
        out.kind = IntegralVerdict::Kind::finite;
        out.value = r.value;
        out.note = std::string("tail accepted by ") + to_string(r.method);
        return out;
    }
    if (r.trace.size() >= kDivergenceRun)
    {
        auto const first = r.trace.end() - static_cast<std::ptrdiff_t>(kDivergenceRun);
        double const floor = 0.5 * first->contribution;
        bool const bounded_below =
            floor > 0 && std::all_of(first, r.trace.end(), [&](ImproperWindow const& w) {
                return w.contribution >= floor;
            });
        if (bounded_below)
        {
            out.kind = IntegralVerdict::Kind::divergent;
            out.note = "dyadic window contributions bounded below";
            return out;
        }
    }
    out.kind = IntegralVerdict::Kind::inconclusive;
    out.note = r.note.empty() ? "tail neither decays nor stays bounded below" : r.note;
    return out;
}

Modulars modulars(SeriesFunction const& f, LevyModel const& model)
{
    // inner nu-integrals in closed form, with y = |f(t)| and b = 1/y:
    //   int (x y)^2 ^ 1 nu(dx) = y^2 m2(b) + G(b),  int |x y| ^ 1 nu(dx) = y m1(b) + G(b)
    auto inner = [model](double y, bool square) {
        if (y == 0)
            return 0.0;
        double const b = 1 / y;
        double const m = square ? y * y * model.truncated_second_moment(b)
                                : y * model.truncated_first_moment(b);
        return m + model.tail(b);
    };
    auto const breaks = f.breakpoints();
    auto const end = f.support_end();
    Modulars out;
    out.psi1 = nonnegative_integral(
        {[&f, inner](double t) { return inner(std::abs(f(t)), false); }, breaks}, end);
    out.psi2 = nonnegative_integral(
        {[&f, inner](double t) { return inner(std::abs(f(t)), true); }, breaks}, end);
    return out;
}

//---------------------------------------------------------------------------//
LePagePath lepage_evaluate(LevyModel const& model, MarkerDensity const& marker,
                           SeriesFunction const& f, ArrivalStream const& arrivals,
                           StreamKey marker_key, std::size_t n)
{
    if (arrivals.size() < n)
    {
        throw ExtensionRequired("lepage_evaluate: arrivals realized to " +
                                    std::to_string(arrivals.size()) + ", need " + std::to_string(n),
                                0.0);
    }
    LePagePath path;
    path.markers.resize(n);
    path.heights.resize(n);
    path.partial.resize(n);
    RngStream stream(marker_key);
    auto const s = arrivals.arrivals();
    ComplexCompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i)
    {
        double const v = marker_sample_one(marker, stream);
        double const h = model.inverse_tail(s[i] * marker.density(v));
        path.markers[i] = v;
        path.heights[i] = h;
        if (h != 0)
            acc += h * f(v);
        path.partial[i] = acc.value();
    }
    return path;
}

}  // namespace poissinc
