// SPDX-License-Identifier: Apache-2.0
#include "poissinc/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "poissinc/errors.hpp"
#include "poissinc/improper.hpp"
#include "poissinc/numeric.hpp"

namespace poissinc
{
namespace
{
constexpr double kInf = std::numeric_limits<double>::infinity();

template<class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template<class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool positive_finite(double x)
{
    return x > 0 && std::isfinite(x);
}

void validate(DistributionSpec::Family const& family)
{
    std::visit(overloaded{
                   [](Exponential const& d) {
                       if (!positive_finite(d.rate))
                           throw ParameterError("exponential: rate must be positive");
                   },
                   [](Pareto const& d) {
                       if (!(d.index > 1) || !std::isfinite(d.index))
                           throw ParameterError("pareto: index must exceed 1");
                       if (!positive_finite(d.scale))
                           throw ParameterError("pareto: scale must be positive");
                   },
                   [](GammaLaw const& d) {
                       if (!positive_finite(d.shape) || !positive_finite(d.rate))
                           throw ParameterError("gamma: shape and rate must be positive");
                   },
                   [](Deterministic const& d) {
                       if (!positive_finite(d.value))
                           throw ParameterError("deterministic: value must be positive");
                   },
                   [](UniformInterval const& d) {
                       if (!(d.lo >= 0) || !(d.hi > d.lo) || !std::isfinite(d.hi))
                           throw ParameterError("uniform: need 0 <= lo < hi");
                   },
               },
               family);
}

// Marsaglia and Tsang, "A simple method for generating gamma variables".
double sample_gamma(double shape, RngStream& stream)
{
    if (shape < 1)
    {
        double const u = stream.uniform();
        return sample_gamma(shape + 1, stream) * std::pow(u, 1.0 / shape);
    }
    double const d = shape - 1.0 / 3.0;
    double const c = 1.0 / std::sqrt(9.0 * d);
    for (;;)
    {
        double x, v;
        do
        {
            x = stream.normal();
            v = 1.0 + c * x;
        } while (v <= 0);
        v = v * v * v;
        double const u = stream.uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x)
            return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return d * v;
    }
}

//! E exp(iX) for an absolutely continuous law with density on [lo, inf).
std::complex<double> oscillatory_transform(std::function<double(double)> const& density,
                                           double lo, double hi)
{
    if (std::isfinite(hi))
    {
        QuadratureOptions opts;
        opts.abs_tol = 1e-13;
        std::vector<double> cuts;
        for (double x = std::ceil(lo / std::numbers::pi) * std::numbers::pi; x < hi;
             x += std::numbers::pi)
            cuts.push_back(x);
        auto const re = integrate_piecewise(
            [&](double x) { return std::cos(x) * density(x); }, lo, hi, cuts, opts);
        auto const im = integrate_piecewise(
            [&](double x) { return std::sin(x) * density(x); }, lo, hi, cuts, opts);
        return {re.value, im.value};
    }
    auto part = [&](bool imaginary) {
        RealIntegrand integrand{
            [&, imaginary](double x) {
                return (imaginary ? std::sin(x) : std::cos(x)) * density(x);
            },
            {}};
        auto scheme =
            ImproperScheme::half_periods(lo, imaginary ? 0.0 : 0.5 * std::numbers::pi);
        scheme.tolerance = 1e-11;
        scheme.max_windows = 400;
        auto const r = improper_integral(integrand, scheme);
        if (!r.converged())
            throw NumericError("characteristic value quadrature did not converge: " + r.note,
                               r.achieved_tolerance);
        return *r.value;
    };
    return {part(false), part(true)};
}

std::string lower_trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    std::string out(s.substr(b, e - b));
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

double to_double(std::string const& s, std::string_view what)
{
    double v = 0;
    auto const* first = s.data();
    auto const* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
    {
        // accept "pi", "pi/2" style constants for convenience
        if (s == "pi")
            return std::numbers::pi;
        if (s.rfind("pi/", 0) == 0)
            return std::numbers::pi / to_double(s.substr(3), what);
        throw ParameterError("cannot parse number '" + s + "' for " + std::string(what));
    }
    return v;
}
}  // namespace

double parse_number(std::string_view text, std::string_view what)
{
    return to_double(lower_trim(text), what);
}

//---------------------------------------------------------------------------//
// CallSyntax
//---------------------------------------------------------------------------//
CallSyntax parse_call(std::string_view text)
{
    std::string const s = lower_trim(text);
    if (s.empty())
        throw ParameterError("empty specification");
    CallSyntax call;
    auto const open = s.find('(');
    if (open == std::string::npos)
    {
        call.name = s;
        return call;
    }
    if (s.back() != ')')
        throw ParameterError("missing ')' in '" + s + "'");
    call.name = lower_trim(s.substr(0, open));
    std::string const body = s.substr(open + 1, s.size() - open - 2);
    // split at top-level commas
    int depth = 0;
    std::size_t begin = 0;
    auto flush = [&](std::size_t end) {
        std::string item = lower_trim(std::string_view(body).substr(begin, end - begin));
        if (item.empty())
            return;
        auto const eq = item.find('=');
        std::size_t const paren = item.find('(');
        if (eq != std::string::npos && (paren == std::string::npos || eq < paren))
            call.args.emplace_back(lower_trim(item.substr(0, eq)), lower_trim(item.substr(eq + 1)));
        else
            call.args.emplace_back("", item);
    };
    for (std::size_t i = 0; i < body.size(); ++i)
    {
        if (body[i] == '(')
            ++depth;
        else if (body[i] == ')')
            --depth;
        else if (body[i] == ',' && depth == 0)
        {
            flush(i);
            begin = i + 1;
        }
    }
    flush(body.size());
    if (depth != 0)
        throw ParameterError("unbalanced parentheses in '" + s + "'");
    return call;
}

std::string const* CallSyntax::text(std::string_view key, std::size_t position) const
{
    for (auto const& [k, v] : args)
    {
        if (k == key)
            return &v;
    }
    std::size_t pos = 0;
    for (auto const& [k, v] : args)
    {
        if (k.empty())
        {
            if (pos == position)
                return &v;
            ++pos;
        }
    }
    return nullptr;
}

double CallSyntax::number(std::string_view key, std::size_t position) const
{
    auto const* t = text(key, position);
    if (!t)
        throw ParameterError(name + ": missing parameter '" + std::string(key) + "'");
    return to_double(*t, key);
}

double CallSyntax::number_or(std::string_view key, std::size_t position, double fallback) const
{
    auto const* t = text(key, position);
    return t ? to_double(*t, key) : fallback;
}

std::string format_number(double x)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

//---------------------------------------------------------------------------//
// DistributionSpec
//---------------------------------------------------------------------------//
DistributionSpec::DistributionSpec(Family family) : family_(family)
{
    validate(family_);
}

bool DistributionSpec::nondegenerate() const noexcept
{
    return !std::holds_alternative<Deterministic>(family_);
}

double DistributionSpec::mean() const
{
    return std::visit(overloaded{
                          [](Exponential const& d) { return 1.0 / d.rate; },
                          [](Pareto const& d) { return d.index * d.scale / (d.index - 1); },
                          [](GammaLaw const& d) { return d.shape / d.rate; },
                          [](Deterministic const& d) { return d.value; },
                          [](UniformInterval const& d) { return 0.5 * (d.lo + d.hi); },
                      },
                      family_);
}

double DistributionSpec::variance() const
{
    return std::visit(
        overloaded{
            [](Exponential const& d) { return 1.0 / (d.rate * d.rate); },
            [](Pareto const& d) {
                if (d.index <= 2)
                    return kInf;
                double const a = d.index;
                return d.scale * d.scale * a / ((a - 1) * (a - 1) * (a - 2));
            },
            [](GammaLaw const& d) { return d.shape / (d.rate * d.rate); },
            [](Deterministic const&) { return 0.0; },
            [](UniformInterval const& d) { return (d.hi - d.lo) * (d.hi - d.lo) / 12.0; },
        },
        family_);
}

std::string DistributionSpec::to_string() const
{
    return std::visit(
        overloaded{
            [](Exponential const& d) { return "exponential(rate=" + format_number(d.rate) + ")"; },
            [](Pareto const& d) {
                return "pareto(index=" + format_number(d.index) +
                       ",scale=" + format_number(d.scale) + ")";
            },
            [](GammaLaw const& d) {
                return "gamma(shape=" + format_number(d.shape) +
                       ",rate=" + format_number(d.rate) + ")";
            },
            [](Deterministic const& d) {
                return "deterministic(value=" + format_number(d.value) + ")";
            },
            [](UniformInterval const& d) {
                return "uniform(lo=" + format_number(d.lo) + ",hi=" + format_number(d.hi) + ")";
            },
        },
        family_);
}

DistributionSpec parse_distribution(std::string_view text)
{
    auto const call = parse_call(text);
    if (call.name == "exponential" || call.name == "exp" || call.name == "poisson")
        return DistributionSpec(Exponential{call.number_or("rate", 0, 1.0)});
    if (call.name == "pareto")
        return DistributionSpec(Pareto{call.number("index", 0), call.number_or("scale", 1, 1.0)});
    if (call.name == "gamma")
        return DistributionSpec(GammaLaw{call.number("shape", 0), call.number_or("rate", 1, 1.0)});
    if (call.name == "deterministic" || call.name == "constant")
        return DistributionSpec(Deterministic{call.number("value", 0)});
    if (call.name == "uniform")
        return DistributionSpec(UniformInterval{call.number("lo", 0), call.number("hi", 1)});
    throw ParameterError("unknown distribution family '" + call.name +
                         "' (expected exponential, pareto, gamma, deterministic, uniform)");
}

double sample_one(DistributionSpec const& spec, RngStream& stream)
{
    return std::visit(
        overloaded{
            [&](Exponential const& d) { return -std::log(stream.uniform()) / d.rate; },
            [&](Pareto const& d) {
                return d.scale * std::pow(1.0 - stream.uniform(), -1.0 / d.index);
            },
            [&](GammaLaw const& d) { return sample_gamma(d.shape, stream) / d.rate; },
            [&](Deterministic const& d) { return d.value; },
            [&](UniformInterval const& d) { return d.lo + (d.hi - d.lo) * stream.uniform(); },
        },
        spec.family());
}

std::vector<double> sample(DistributionSpec const& spec, std::size_t n, RngStream& stream)
{
    if (n == 0)
        throw ParameterError("sample: n must be at least 1");
    std::vector<double> out(n);
    for (auto& x : out)
        x = sample_one(spec, stream);
    return out;
}

std::complex<double> char_value(DistributionSpec const& spec)
{
    using C = std::complex<double>;
    C const i{0, 1};
    return std::visit(
        overloaded{
            [&](Exponential const& d) { return d.rate / (d.rate - i); },
            [&](Pareto const&) { return char_value_by_quadrature(spec); },
            [&](GammaLaw const& d) { return std::pow(1.0 - i / d.rate, -d.shape); },
            [&](Deterministic const& d) { return std::exp(i * d.value); },
            [&](UniformInterval const& d) {
                return (std::exp(i * d.hi) - std::exp(i * d.lo)) / (i * (d.hi - d.lo));
            },
        },
        spec.family());
}

std::complex<double> char_value_by_quadrature(DistributionSpec const& spec)
{
    return std::visit(
        overloaded{
            [](Exponential const& d) {
                return oscillatory_transform(
                    [=](double x) { return d.rate * std::exp(-d.rate * x); }, 0.0, kInf);
            },
            [](Pareto const& d) {
                double const c = d.index * std::pow(d.scale, d.index);
                return oscillatory_transform(
                    [=](double x) { return c * std::pow(x, -d.index - 1); }, d.scale, kInf);
            },
            [](GammaLaw const& d) {
                double const logc = d.shape * std::log(d.rate) - std::lgamma(d.shape);
                return oscillatory_transform(
                    [=](double x) {
                        return std::exp(logc + (d.shape - 1) * std::log(x) - d.rate * x);
                    },
                    0.0, kInf);
            },
            [](Deterministic const&) -> std::complex<double> {
                throw UnsupportedError("deterministic law has no density to integrate");
            },
            [](UniformInterval const& d) {
                double const h = 1.0 / (d.hi - d.lo);
                return oscillatory_transform([=](double) { return h; }, d.lo, d.hi);
            },
        },
        spec.family());
}

double cz_constant(std::complex<double> z)
{
    if (!(std::abs(z) < 1.0 - kDegeneracyMargin))
        throw DegeneracyError("degenerate increment law: |z| = 1");
    return 1.0 + 2.0 * (z / (1.0 - z)).real();
}

double cz_constant(DistributionSpec const& spec)
{
    if (!spec.nondegenerate())
        throw DegeneracyError("degenerate increment law: " + spec.to_string());
    return cz_constant(char_value(spec));
}

//---------------------------------------------------------------------------//
// MarkerDensity
//---------------------------------------------------------------------------//
MarkerDensity::MarkerDensity(Family family) : family_(family)
{
    if (auto const* p = std::get_if<ParetoTail>(&family_))
    {
        if (!(p->r > 1) || !std::isfinite(p->r))
            throw ParameterError("pareto marker: r must exceed 1");
        if (!positive_finite(p->cutoff))
            throw ParameterError("pareto marker: cutoff must be positive");
    }
}

double MarkerDensity::density(double v) const
{
    return std::visit(overloaded{
                          [&](ParetoTail const& p) {
                              if (p.unnormalized)
                                  return v > 0 ? std::pow(v, -p.r) : kInf;
                              if (v < p.cutoff)
                                  return 0.0;
                              return (p.r - 1) * std::pow(p.cutoff, p.r - 1) * std::pow(v, -p.r);
                          },
                          [&](ExponentialUnit const&) { return v < 0 ? 0.0 : std::exp(-v); },
                          [&](UniformUnit const&) { return (v >= 0 && v <= 1) ? 1.0 : 0.0; },
                      },
                      family_);
}

double MarkerDensity::inverse(double y) const
{
    if (!(y > 0))
        throw DomainError("marker inverse needs y > 0");
    return std::visit(overloaded{
                          [&](ParetoTail const& p) {
                              double const c =
                                  p.unnormalized ? 1.0 : (p.r - 1) * std::pow(p.cutoff, p.r - 1);
                              return std::pow(c / y, 1.0 / p.r);
                          },
                          [&](ExponentialUnit const&) { return -std::log(y); },
                          [&](UniformUnit const&) -> double {
                              throw UnsupportedError(
                                  "uniform marker is not strictly decreasing; no tail inverse");
                          },
                      },
                      family_);
}

bool MarkerDensity::strictly_decreasing() const noexcept
{
    return !std::holds_alternative<UniformUnit>(family_);
}

double MarkerDensity::support_lo() const noexcept
{
    if (auto const* p = std::get_if<ParetoTail>(&family_))
        return p->unnormalized ? 0.0 : p->cutoff;
    return 0.0;
}

double MarkerDensity::support_hi() const noexcept
{
    return std::holds_alternative<UniformUnit>(family_) ? 1.0 : kInf;
}

double MarkerDensity::max_density() const noexcept
{
    if (auto const* p = std::get_if<ParetoTail>(&family_))
        return p->unnormalized ? kInf : (p->r - 1) / p->cutoff;
    return 1.0;
}

std::string MarkerDensity::to_string() const
{
    return std::visit(overloaded{
                          [](ParetoTail const& p) {
                              return "pareto_tail(r=" + format_number(p.r) +
                                     ",cutoff=" + format_number(p.cutoff) +
                                     (p.unnormalized ? ",unnormalized=1" : "") + ")";
                          },
                          [](ExponentialUnit const&) { return std::string("exponential_unit"); },
                          [](UniformUnit const&) { return std::string("uniform_unit"); },
                      },
                      family_);
}

MarkerDensity parse_marker(std::string_view text)
{
    auto const call = parse_call(text);
    if (call.name == "pareto_tail" || call.name == "pareto")
    {
        return MarkerDensity(ParetoTail{call.number("r", 0), call.number_or("cutoff", 1, 1.0),
                                        call.number_or("unnormalized", 2, 0.0) != 0.0});
    }
    if (call.name == "exponential_unit" || call.name == "exponential")
        return MarkerDensity(ExponentialUnit{});
    if (call.name == "uniform_unit" || call.name == "uniform")
        return MarkerDensity(UniformUnit{});
    throw ParameterError("unknown marker family '" + call.name +
                         "' (expected pareto_tail, exponential_unit, uniform_unit)");
}

double marker_sample_one(MarkerDensity const& md, RngStream& stream)
{
    double const u = stream.uniform();
    return std::visit(overloaded{
                          [&](ParetoTail const& p) {
                              // the unnormalized evaluation mode samples the normalized law
                              return p.cutoff * std::pow(1.0 - u, -1.0 / (p.r - 1));
                          },
                          [&](ExponentialUnit const&) { return -std::log1p(-u); },
                          [&](UniformUnit const&) { return u; },
                      },
                      md.family());
}

std::vector<double> marker_sample(MarkerDensity const& md, std::size_t n, RngStream& stream)
{
    std::vector<double> out(n);
    for (auto& v : out)
        v = marker_sample_one(md, stream);
    return out;
}

}  // namespace poissinc
