// SPDX-License-Identifier: Apache-2.0
#include "poissinc/chf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "poissinc/errors.hpp"
#include "poissinc/improper.hpp"
#include "poissinc/numeric.hpp"

namespace poissinc
{
namespace
{
using C = std::complex<double>;

double finite_real_integral(std::function<double(double)> const& g, double end,
                            std::vector<double> const& breaks)
{
    auto const pieces = static_cast<std::size_t>(std::max(1.0, std::ceil(end / std::numbers::pi)));
    QuadratureOptions opts;
    opts.abs_tol = 1e-14;
    CompensatedSum sum;
    for (std::size_t p = 0; p < pieces; ++p)
    {
        double const a = end * static_cast<double>(p) / static_cast<double>(pieces);
        double const b = end * static_cast<double>(p + 1) / static_cast<double>(pieces);
        sum += integrate_piecewise(g, a, b, breaks, opts).value;
    }
    return sum.value();
}

//! (int g_even, int g_odd) where g_even >= 0 and g_odd oscillates like f.
std::pair<double, double> exponent_integrals(SeriesFunction const& f, std::function<double(double)> even,
                                             std::function<double(double)> odd)
{
    if (f.complex_valued())
        throw ParameterError("characteristic functionals need a real function");
    auto const breaks = f.breakpoints();
    if (auto const end = f.support_end())
    {
        if (!(*end > 0))
            return {0, 0};
        return {finite_real_integral(even, *end, breaks), finite_real_integral(odd, *end, breaks)};
    }
    auto const r = nonnegative_integral({even, breaks}, std::nullopt, 1e-8);
    if (r.kind != IntegralVerdict::Kind::finite)
        throw NumericError(std::string("exponent integral is ") + to_string(r.kind) + ": " + r.note, 0);
    auto const im = improper_integral({odd, breaks}, ImproperScheme::half_periods(0, f.zero_phase().value_or(0.0)));
    if (!im.converged())
        throw NumericError("odd exponent integral: " + im.note, im.achieved_tolerance);
    return {*r.value, *im.value};
}
}  // namespace

EmpiricalChf empirical_chf(std::span<double const> samples, std::vector<double> const& t_grid)
{
    if (samples.size() < 2)
        throw ParameterError("empirical_chf needs at least two samples");
    EmpiricalChf out;
    out.t = t_grid;
    out.samples = samples.size();
    out.wide_ci = samples.size() < kMinChfSamples;
    double const n = static_cast<double>(samples.size());
    for (double t : t_grid)
    {
        CompensatedSum c, s, cc, ss;
        for (double w : samples)
        {
            double const x = std::cos(t * w), y = std::sin(t * w);
            c += x;
            s += y;
            cc += x * x;
            ss += y * y;
        }
        double const mc = c.value() / n, ms = s.value() / n;
        double const vc = std::max(0.0, (cc.value() - n * mc * mc) / (n - 1));
        double const vs = std::max(0.0, (ss.value() - n * ms * ms) / (n - 1));
        out.value.emplace_back(mc, ms);
        out.se_real.push_back(std::sqrt(vc / n));
        out.se_imag.push_back(std::sqrt(vs / n));
    }
    return out;
}

std::vector<C> analytic_chf_Nf(SeriesFunction const& f, std::vector<double> const& t_grid)
{
    std::vector<C> out;
    for (double t : t_grid)
    {
        if (t == 0)
        {
            out.emplace_back(1.0);
            continue;
        }
        auto const [a, b] = exponent_integrals(
            f, [&](double v) { return 1 - std::cos(t * f(v).real()); },
            [&](double v) { return std::sin(t * f(v).real()); });
        out.push_back(std::exp(C{-a, b}));
    }
    return out;
}

std::vector<C> analytic_chf_Xf(LevyModel const& model, SeriesFunction const& f, std::vector<double> const& t_grid)
{
    std::vector<C> out;
    for (double t : t_grid)
    {
        if (t == 0)
        {
            out.emplace_back(1.0);
            continue;
        }
        auto const [a, b] = exponent_integrals(
            f, [&](double v) { return model.psi(t * f(v).real()).first; },
            [&](double v) { return model.psi(t * f(v).real()).second; });
        out.push_back(std::exp(C{-a, b}));
    }
    return out;
}

ChfComparison compare(EmpiricalChf const& empirical, std::vector<C> const& analytic, double z_threshold)
{
    if (analytic.size() != empirical.t.size())
        throw ParameterError("compare: t grids differ in length");
    if (!(z_threshold > 0))
        throw ParameterError("compare: threshold must be positive");
    ChfComparison cmp;
    cmp.empirical = empirical;
    cmp.analytic = analytic;
    cmp.threshold = z_threshold;
    cmp.pass = true;
    auto z_of = [](double d, double se) {
        if (d == 0)
            return 0.0;
        return se > 0 ? std::abs(d) / se : INFINITY;
    };
    for (std::size_t i = 0; i < analytic.size(); ++i)
    {
        C const d = empirical.value[i] - analytic[i];
        double const z = std::max(z_of(d.real(), empirical.se_real[i]), z_of(d.imag(), empirical.se_imag[i]));
        cmp.zscore.push_back(z);
        cmp.max_abs_discrepancy = std::max(cmp.max_abs_discrepancy, std::abs(d));
        cmp.pass = cmp.pass && z <= z_threshold;
    }
    cmp.note = std::to_string(2 * analytic.size()) + " componentwise tests at " + format_number(z_threshold) +
               " sigma; Bonferroni family level " +
               format_number(std::min(1.0, 2.0 * static_cast<double>(analytic.size()) *
                                               std::erfc(z_threshold / std::numbers::sqrt2)));
    if (empirical.wide_ci)
        cmp.note += "; fewer than 1000 samples, intervals unreliable";
    return cmp;
}

void write_csv(ChfComparison const& cmp, std::ostream& os)
{
    os << "t,emp_re,emp_im,ci,ana_re,ana_im,zscore\n";
    auto const& e = cmp.empirical;
    for (std::size_t i = 0; i < e.t.size(); ++i)
    {
        os << format_number(e.t[i]) << ',' << format_number(e.value[i].real()) << ','
           << format_number(e.value[i].imag()) << ','
           << format_number(cmp.threshold * std::max(e.se_real[i], e.se_imag[i])) << ','
           << format_number(cmp.analytic[i].real()) << ',' << format_number(cmp.analytic[i].imag()) << ','
           << format_number(cmp.zscore[i]) << '\n';
    }
}

}  // namespace poissinc
