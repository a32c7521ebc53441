// SPDX-License-Identifier: Apache-2.0
#include "poissinc/kfunctions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "poissinc/errors.hpp"
#include "poissinc/expint.hpp"

namespace poissinc
{
namespace
{
using C = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMonotoneRelTol = 1e-7;

double magnitude_at(std::function<C(double)> const& g, double start)
{
    double m = 0;
    for (int j = 0; j < 64; ++j)
        m = std::max(m, std::abs(g(start + (j + 0.5) * (2 * kPi / 64))));
    return m * kPi;
}

//! Size of g over the first period where it is nonzero; 0 if g vanishes
//! on every probed period up to start + 1e6.
double magnitude_near(std::function<C(double)> const& g, double start)
{
    double const m = magnitude_at(g, start);
    if (m > 0)
        return m;
    for (double d = 1; d < 1e6; d *= 2)
        if (double const probe = magnitude_at(g, start + d); probe > 0)
            return probe;
    return 0;
}

C finite_integral(std::function<C(double)> const& g, double lo, double hi,
                  std::vector<double> const& breaks)
{
    if (!(hi > lo))
        return {};
    QuadratureOptions opts;
    opts.abs_tol = 1e-15;
    auto const pieces = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / kPi)));
    ComplexCompensatedSum acc;
    for (std::size_t p = 0; p < pieces; ++p)
    {
        double const a = lo + (hi - lo) * static_cast<double>(p) / static_cast<double>(pieces);
        double const b = (p + 1 == pieces) ? hi : lo + (hi - lo) * static_cast<double>(p + 1) / static_cast<double>(pieces);
        acc += integrate_piecewise(g, a, b, breaks, opts).value;
    }
    return acc.value();
}

double require_value(ImproperResult const& r, char const* what)
{
    if (!r.converged())
        throw NumericError(std::string(what) + ": " + r.note, r.achieved_tolerance);
    return *r.value;
}

//! int_start^inf of a non-oscillating g >= 0 over geometrically growing windows.
double monotone_tail(std::function<double(double)> const& g, double start,
                     std::vector<double> const& breaks)
{
    double const m = magnitude_near([&](double v) { return C{g(v)}; }, start);
    if (m == 0)
        return 0;
    double const unit = std::max(1.0, start);
    auto scheme = ImproperScheme::dyadic(start, start + unit);
    scheme.acceleration = ImproperScheme::Acceleration::none;
    scheme.tolerance = std::max(kMonotoneRelTol * m, 1e-300);
    scheme.window_tolerance = 1e-3 * scheme.tolerance;
    scheme.max_windows = 16;
    scheme.max_pieces_per_window = 1000000;
    return require_value(improper_integral({g, breaks}, scheme), "monotone tail");
}

struct Integrands
{
    std::function<double(double)> k1;
    std::function<C(double)> k2;
    std::function<double(double)> k3;
    double lo = 0;
    double hi = kInf;
    std::vector<double> breaks;
};

KValues evaluate(Integrands const& in, SeriesFunction const& f, double rel_tol)
{
    KValues out;
    if (std::isfinite(in.hi))
    {
        out.k1 = finite_integral([&](double v) { return C{in.k1(v)}; }, in.lo, in.hi, in.breaks).real();
        out.k2 = finite_integral(in.k2, in.lo, in.hi, in.breaks);
        out.k3 = finite_integral([&](double v) { return C{in.k3(v)}; }, in.lo, in.hi, in.breaks).real();
        return out;
    }
    out.k1 = monotone_tail(in.k1, in.lo, in.breaks);
    out.k2 = oscillatory_tail(in.k2, in.lo, f.zero_phase().value_or(0.0), in.breaks, rel_tol);
    out.k3 = monotone_tail(in.k3, in.lo, in.breaks);
    return out;
}

bool reduction_applies(KFunctionSet const& set)
{
    return set.model.kind() == LevyModel::Kind::poisson_unit && set.marker.strictly_decreasing();
}

double upper_limit(KFunctionSet const& set)
{
    double hi = set.marker.support_hi();
    if (auto const end = set.f.support_end())
        hi = std::min(hi, *end);
    return hi;
}
}  // namespace

double reduction_lower_limit(MarkerDensity const& marker, double s)
{
    if (!(s > 0))
        throw DomainError("K functions need s > 0");
    double const y = 1 / s;
    if (y >= marker.max_density())
        return marker.support_lo();
    return std::max(marker.support_lo(), marker.inverse(y));
}

C oscillatory_tail(std::function<C(double)> const& g, double start, double phase,
                   std::vector<double> const& breaks, double rel_tol)
{
    double const m = magnitude_near(g, start);
    if (m == 0)
        return {};
    bool has_imag = false;
    for (int j = 0; j < 16 && !has_imag; ++j)
        has_imag = g(start + (j + 0.5) * (2 * kPi / 16)).imag() != 0;

    auto run = [&](std::function<double(double)> part, double anchor, char const* what) {
        auto scheme = ImproperScheme::half_periods(start, anchor);
        scheme.tolerance = std::max(rel_tol * m, 1e-300);
        scheme.window_tolerance = 1e-3 * scheme.tolerance;
        scheme.max_windows = 400;
        return require_value(improper_integral({std::move(part), breaks}, scheme), what);
    };
    double const re = run([&](double v) { return g(v).real(); }, phase, "oscillatory tail (real part)");
    double const im = has_imag ? run([&](double v) { return g(v).imag(); }, phase - 0.5 * kPi,
                                     "oscillatory tail (imaginary part)")
                               : 0.0;
    return {re, im};
}

KValues k_functions(KFunctionSet const& set, double s, KOptions const& opts)
{
    if (!(s > 0))
        throw DomainError("K functions need s > 0");
    if (!(set.cutoff > 0))
        throw ParameterError("K functions need a positive cut-off");
    auto const& f = set.f;
    auto const& marker = set.marker;
    double const c = set.cutoff;

    bool use_reduction = false;
    switch (opts.route)
    {
        case KRoute::automatic:
            use_reduction = reduction_applies(set);
            break;
        case KRoute::reduction:
            if (set.model.kind() != LevyModel::Kind::poisson_unit)
                throw UnsupportedError("the K reduction needs the unit Poisson model");
            if (!marker.strictly_decreasing())
                throw UnsupportedError("the K reduction needs a strictly decreasing marker density, got " +
                                       marker.to_string());
            use_reduction = true;
            break;
        case KRoute::quadrature:
            break;
    }

    Integrands in;
    in.hi = upper_limit(set);
    in.breaks = f.breakpoints();
    if (use_reduction)
    {
        in.lo = reduction_lower_limit(marker, s);
        in.k1 = [&](double v) { return std::abs(f(v)) > c ? marker.density(v) : 0.0; };
        in.k2 = [&](double v) {
            C const fv = f(v);
            return std::abs(fv) <= c ? fv * marker.density(v) : C{};
        };
        in.k3 = [&](double v) {
            double const y = std::abs(f(v));
            return y <= c ? y * y * marker.density(v) : 0.0;
        };
    }
    else
    {
        in.lo = marker.support_lo();
        if (set.model.kind() == LevyModel::Kind::poisson_unit && marker.strictly_decreasing())
            in.breaks.push_back(reduction_lower_limit(marker, s));
        auto const& model = set.model;
        // (H(s p(v)), p(v)); H vanishes where s p(v) overflows
        auto height = [&model, &marker, s](double v) -> std::pair<double, double> {
            double const p = marker.density(v);
            if (p == 0)
                return {0.0, 0.0};
            double const sp = s * p;
            return {std::isinf(sp) ? 0.0 : model.inverse_tail(sp), p};
        };
        in.k1 = [&f, c, height](double v) {
            auto const [h, p] = height(v);
            return (h != 0 && h * std::abs(f(v)) > c) ? p : 0.0;
        };
        in.k2 = [&f, c, height](double v) {
            auto const [h, p] = height(v);
            if (h == 0)
                return C{};
            C const x = h * f(v);
            return std::abs(x) <= c ? x * p : C{};
        };
        in.k3 = [&f, c, height](double v) {
            auto const [h, p] = height(v);
            if (h == 0)
                return 0.0;
            double const y = h * std::abs(f(v));
            return y <= c ? y * y * p : 0.0;
        };
    }
    if (in.lo >= in.hi)
        return {};
    return evaluate(in, f, opts.rel_tol);
}

double k_envelope(KFunctionSet const& set, double s, KOptions const& opts)
{
    KFunctionSet analytic = set;
    analytic.f = set.f.analytic();
    return std::abs(k_functions(analytic, s, opts).k2);
}

double exponential_marker_k(double s)
{
    if (!(s > 1))
        throw DomainError("exponential_marker_k needs s > 1");
    return expint_e1(C{1, -1} * std::log(s)).imag();
}

//---------------------------------------------------------------------------//
namespace
{
std::optional<double> abs_integral_estimate(std::vector<double> const& s, std::vector<double> const& env,
                                            LinearFit const& fit)
{
    if (s.size() < 2 || !(fit.slope < -1))
        return std::nullopt;
    CompensatedSum sum;
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
    {
        // trapezoid in log s: int env ds = int env * s dlog s
        double const h = std::log(s[i + 1] / s[i]);
        sum += 0.5 * h * (env[i] * s[i] + env[i + 1] * s[i + 1]);
    }
    sum += env.back() * s.back() / (-fit.slope - 1);
    return sum.value();
}
}  // namespace

ThreeSeriesReport three_series_check(KFunctionSet const& set, std::vector<double> const& s_grid,
                                     KOptions const& opts)
{
    auto const& f = set.f;
    auto const& model = set.model;
    double const c = set.cutoff;
    if (!(c > 0))
        throw ParameterError("three_series_check needs a positive cut-off");
    auto const breaks = f.breakpoints();
    auto const end = f.support_end();

    ThreeSeriesReport rep;
    rep.k1 = nonnegative_integral(
        {[&](double v) {
             double const y = std::abs(f(v));
             return y == 0 ? 0.0 : model.tail(c / y);
         },
         breaks},
        end);
    rep.k3 = nonnegative_integral(
        {[&](double v) {
             double const y = std::abs(f(v));
             return y == 0 ? 0.0 : y * y * model.truncated_second_moment(c / y);
         },
         breaks},
        end);

    auto k2_part = [&](bool imag_part) {
        RealIntegrand g{[&, imag_part](double v) {
                            C const fv = f(v);
                            double const y = std::abs(fv);
                            if (y == 0)
                                return 0.0;
                            double const w = model.truncated_first_moment(c / y);
                            return (imag_part ? fv.imag() : fv.real()) * w;
                        },
                        breaks};
        double const phase = f.zero_phase().value_or(0.0) - (imag_part ? 0.5 * kPi : 0.0);
        if (end)
        {
            ImproperResult r;
            r.status = ImproperResult::Status::converged;
            r.method = ImproperResult::Method::cauchy;
            r.value = finite_integral([&](double v) { return C{g.f(v)}; }, 0, *end, breaks).real();
            r.note = "bounded support";
            return r;
        }
        return improper_integral(g, ImproperScheme::half_periods(0, phase));
    };
    rep.k2_real = k2_part(false);
    if (f.complex_valued())
        rep.k2_imag = k2_part(true);

    if (!s_grid.empty())
    {
        EnvelopeFit env;
        env.s = s_grid;
        for (double s : s_grid)
            env.envelope.push_back(k_envelope(set, s, opts));
        bool const positive = std::all_of(env.envelope.begin(), env.envelope.end(),
                                          [](double e) { return e > 0; });
        if (s_grid.size() >= 2 && positive)
        {
            env.fit = fit_loglog(env.s, env.envelope);
            env.abs_integral = abs_integral_estimate(env.s, env.envelope, env.fit);
        }
        rep.k2_envelope = std::move(env);
    }
    return rep;
}

//---------------------------------------------------------------------------//
AmplitudeReport amplitude_k_bound(Amplitude const& amplitude, double r, std::vector<double> const& s_grid)
{
    if (!(r > 1))
        throw ParameterError("amplitude_k_bound needs r > 1");
    if (!amplitude.value || !amplitude.derivative)
        throw ParameterError("amplitude_k_bound needs A and A'");
    auto const A = amplitude.value;
    auto const dA = amplitude.derivative;
    auto B = [A](double x) { return A(x) / x; };
    auto dB = [A, dA](double x) { return dA(x) / x - A(x) / (x * x); };

    AmplitudeReport rep;
    rep.amplitude = amplitude.name;
    rep.r = r;
    rep.l2_tail = nonnegative_integral({[&](double t) { return std::pow(B(1 + t), 2); }, {}}, std::nullopt);
    rep.l1_derivative_tail = nonnegative_integral({[&](double t) { return std::abs(dB(1 + t)); }, {}}, std::nullopt);
    if (rep.l2_tail.kind == IntegralVerdict::Kind::divergent)
        throw PreconditionError("amplitude '" + amplitude.name + "': A(x)/x is not square integrable at infinity");
    if (rep.l1_derivative_tail.kind == IntegralVerdict::Kind::divergent)
        throw PreconditionError("amplitude '" + amplitude.name + "': (A(x)/x)' is not integrable at infinity");

    constexpr double rel_tol = 1e-11;
    constexpr double identity_tol = 1e-8;
    double const phase = 0.5 * kPi;  // Re e^{ix} = cos x
    for (double s : s_grid)
    {
        if (!(s > 0))
            throw DomainError("amplitude_k_bound: s must be positive");
        AmplitudeRow row;
        row.s = s;
        row.a = std::pow(s, 1 / r);
        double const a = row.a;
        auto cis = [](double x) { return C{std::cos(x), std::sin(x)}; };
        C const i{0, 1};
        row.quotient = i * B(a) * cis(a) * std::pow(a, -r);
        row.first_integral =
            i * oscillatory_tail([&](double x) { return dB(x) * cis(x) * std::pow(x, -r); }, a, phase, {}, rel_tol);
        row.second_integral = -i * r *
            oscillatory_tail([&](double x) { return B(x) * cis(x) * std::pow(x, -r - 1); }, a, phase, {}, rel_tol);
        row.direct = oscillatory_tail([&](double x) { return B(x) * cis(x) * std::pow(x, -r); }, a, phase, {}, rel_tol);
        C const sum = row.quotient + row.first_integral + row.second_integral;
        row.mismatch = std::abs(sum - row.direct) / std::abs(row.direct);
        if (!(row.mismatch <= identity_tol))
        {
            throw IdentityViolation("integration-by-parts components miss the direct value at s = " +
                                    format_number(s) + " (relative " + format_number(row.mismatch) + ")");
        }
        rep.rows.push_back(row);
    }
    if (rep.rows.size() >= 2)
    {
        std::vector<double> s, env;
        for (auto const& row : rep.rows)
        {
            s.push_back(row.s);
            env.push_back(std::abs(row.direct));
        }
        rep.abs_integral = abs_integral_estimate(s, env, fit_loglog(s, env));
    }
    return rep;
}

void write_k_sweep_csv(std::vector<double> const& s, std::vector<KValues> const& values, std::ostream& os)
{
    if (s.size() != values.size())
        throw ParameterError("write_k_sweep_csv: size mismatch");
    os << "s,K1,K2_real,K2_imag,K3\n";
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        os << format_number(s[i]) << ',' << format_number(values[i].k1) << ','
           << format_number(values[i].k2.real()) << ',' << format_number(values[i].k2.imag()) << ','
           << format_number(values[i].k3) << '\n';
    }
}

}  // namespace poissinc
