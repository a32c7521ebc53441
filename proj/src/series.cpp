// SPDX-License-Identifier: Apache-2.0
#include "poissinc/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "poissinc/distributions.hpp"
#include "poissinc/errors.hpp"
#include "poissinc/numeric.hpp"

namespace poissinc
{
namespace
{
using C = std::complex<double>;

C integrate_segmented(std::function<C(double)> const& g, double lo, double hi,
                      std::vector<double> const& breaks)
{
    QuadratureOptions opts;
    opts.abs_tol = 1e-13;
    auto const pieces =
        static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / std::numbers::pi)));
    double const step = (hi - lo) / static_cast<double>(pieces);
    ComplexCompensatedSum acc;
    for (std::size_t p = 0; p < pieces; ++p)
    {
        double const a = lo + step * static_cast<double>(p);
        double const b = (p + 1 == pieces) ? hi : lo + step * static_cast<double>(p + 1);
        acc += integrate_piecewise(g, a, b, breaks, opts).value;
    }
    return acc.value();
}
}  // namespace

//---------------------------------------------------------------------------//
// Amplitudes and functions
//---------------------------------------------------------------------------//
Amplitude named_amplitude(std::string_view name)
{
    if (name == "one")
        return {"one", [](double) { return 1.0; }, [](double) { return 0.0; }};
    if (name == "inv")
        return {"inv", [](double x) { return 1.0 / x; }, [](double x) { return -1.0 / (x * x); }};
    if (name == "inv_log")
    {
        return {"inv_log", [](double x) { return 1.0 / std::log(x + 2); },
                [](double x) {
                    double const l = std::log(x + 2);
                    return -1.0 / ((x + 2) * l * l);
                }};
    }
    if (name == "linear")
        return {"linear", [](double x) { return x; }, [](double) { return 1.0; }};
    throw ParameterError("unknown amplitude '" + std::string(name) +
                         "' (expected one, inv, inv_log, linear)");
}

SeriesFunction SeriesFunction::sinc()
{
    SeriesFunction f;
    f.kind_ = Kind::sinc;
    return f;
}

SeriesFunction SeriesFunction::cis_over_x()
{
    SeriesFunction f;
    f.kind_ = Kind::cis_over_x;
    return f;
}

SeriesFunction SeriesFunction::cos_over_x()
{
    SeriesFunction f;
    f.kind_ = Kind::cos_over_x;
    return f;
}

SeriesFunction SeriesFunction::amplitude_sin(Amplitude amplitude)
{
    if (!amplitude.value)
        throw ParameterError("amplitude_sin: empty amplitude");
    SeriesFunction f;
    f.kind_ = Kind::amplitude_sin;
    f.amplitude_ = std::make_shared<Amplitude const>(std::move(amplitude));
    return f;
}

SeriesFunction SeriesFunction::indicator(double lo, double hi)
{
    if (!(lo >= 0) || !(hi > lo))
        throw ParameterError("indicator: need 0 <= lo < hi");
    SeriesFunction f;
    f.kind_ = Kind::indicator;
    f.lo_ = lo;
    f.hi_ = hi;
    return f;
}

SeriesFunction SeriesFunction::truncated(SeriesFunction base, double cutoff)
{
    if (!(cutoff > 0))
        throw ParameterError("truncated: cutoff must be positive");
    SeriesFunction f;
    f.kind_ = Kind::truncated;
    f.hi_ = cutoff;
    f.base_ = std::make_shared<SeriesFunction const>(std::move(base));
    return f;
}

SeriesFunction SeriesFunction::zero()
{
    return SeriesFunction{};
}

std::complex<double> SeriesFunction::operator()(double x) const
{
    switch (kind_)
    {
        case Kind::sinc:
            return x == 0 ? 1.0 : std::sin(x) / x;
        case Kind::cis_over_x:
            if (x == 0)
                throw DomainError("exp(ix)/x is singular at 0");
            return C{std::cos(x), std::sin(x)} / x;
        case Kind::cos_over_x:
            if (x == 0)
                throw DomainError("cos(x)/x is singular at 0");
            return std::cos(x) / x;
        case Kind::amplitude_sin: {
            double const a = amplitude_->value(x);
            if (analytic_amplitude_)
                return a * C{std::cos(x), std::sin(x)};
            return a * std::sin(x);
        }
        case Kind::indicator:
            return (x >= lo_ && x < hi_) ? 1.0 : 0.0;
        case Kind::truncated:
            return x < hi_ ? (*base_)(x) : C{};
        case Kind::zero:
            return {};
    }
    return {};
}

bool SeriesFunction::complex_valued() const noexcept
{
    switch (kind_)
    {
        case Kind::cis_over_x:
            return true;
        case Kind::amplitude_sin:
            return analytic_amplitude_;
        case Kind::truncated:
            return base_->complex_valued();
        default:
            return false;
    }
}

std::vector<double> SeriesFunction::breakpoints() const
{
    switch (kind_)
    {
        case Kind::indicator:
            return {lo_, hi_};
        case Kind::truncated: {
            auto b = base_->breakpoints();
            b.push_back(hi_);
            return b;
        }
        default:
            return {};
    }
}

std::optional<double> SeriesFunction::support_end() const
{
    switch (kind_)
    {
        case Kind::indicator:
            return hi_;
        case Kind::truncated: {
            auto const inner = base_->support_end();
            return inner ? std::min(*inner, hi_) : hi_;
        }
        case Kind::zero:
            return 0.0;
        default:
            return std::nullopt;
    }
}

std::optional<double> SeriesFunction::zero_phase() const
{
    switch (kind_)
    {
        case Kind::sinc:
            return 0.0;
        case Kind::cis_over_x:
        case Kind::cos_over_x:
            return 0.5 * std::numbers::pi;
        case Kind::amplitude_sin:
            return analytic_amplitude_ ? 0.5 * std::numbers::pi : 0.0;
        default:
            return std::nullopt;
    }
}

SeriesFunction SeriesFunction::analytic() const
{
    switch (kind_)
    {
        case Kind::sinc:
        case Kind::cos_over_x:
            return cis_over_x();
        case Kind::amplitude_sin: {
            SeriesFunction f = *this;
            f.analytic_amplitude_ = true;
            return f;
        }
        case Kind::truncated:
            return truncated(base_->analytic(), hi_);
        default:
            return *this;
    }
}

std::string SeriesFunction::to_string() const
{
    switch (kind_)
    {
        case Kind::sinc:
            return "sinc";
        case Kind::cis_over_x:
            return "cis_over_x";
        case Kind::cos_over_x:
            return "cos_over_x";
        case Kind::amplitude_sin:
            return std::string(analytic_amplitude_ ? "amplitude_cis" : "amplitude_sin") +
                   "(a=" + amplitude_->name + ")";
        case Kind::indicator:
            return "indicator(lo=" + format_number(lo_) + ",hi=" + format_number(hi_) + ")";
        case Kind::truncated:
            return "truncated(base=" + base_->to_string() + ",cutoff=" + format_number(hi_) + ")";
        case Kind::zero:
            return "zero";
    }
    return "?";
}

SeriesFunction parse_function(std::string_view text)
{
    auto const call = parse_call(text);
    if (call.name == "sinc")
        return SeriesFunction::sinc();
    if (call.name == "cis_over_x")
        return SeriesFunction::cis_over_x();
    if (call.name == "cos_over_x")
        return SeriesFunction::cos_over_x();
    if (call.name == "zero")
        return SeriesFunction::zero();
    if (call.name == "indicator")
        return SeriesFunction::indicator(call.number("lo", 0), call.number("hi", 1));
    if (call.name == "amplitude_sin" || call.name == "amplitude_cis")
    {
        auto const* a = call.text("a", 0);
        auto f = SeriesFunction::amplitude_sin(named_amplitude(a ? *a : "one"));
        return call.name == "amplitude_cis" ? f.analytic() : f;
    }
    if (call.name == "truncated")
    {
        auto const* base = call.text("base", 0);
        if (!base)
            throw ParameterError("truncated: missing base");
        return SeriesFunction::truncated(parse_function(*base), call.number("cutoff", 1));
    }
    throw ParameterError("unknown function '" + call.name +
                         "' (expected sinc, cis_over_x, cos_over_x, indicator, amplitude_sin, "
                         "truncated, zero)");
}

//---------------------------------------------------------------------------//
// Evaluations
//---------------------------------------------------------------------------//
char const* to_string(SeriesEvaluation::Method m)
{
    switch (m)
    {
        case SeriesEvaluation::Method::direct:
            return "direct";
        case SeriesEvaluation::Method::abel:
            return "abel";
        case SeriesEvaluation::Method::permuted:
            return "permuted";
        case SeriesEvaluation::Method::blocked:
            return "blocked";
    }
    return "?";
}

namespace
{
void require_realized(ArrivalStream const& arrivals, std::size_t n)
{
    if (arrivals.size() < n)
    {
        throw ExtensionRequired("arrivals realized to " + std::to_string(arrivals.size()) +
                                    ", need " + std::to_string(n),
                                0.0);
    }
}
}  // namespace

std::complex<double> partial_sum(SeriesFunction const& f, ArrivalStream const& arrivals, std::size_t n)
{
    require_realized(arrivals, n);
    auto const s = arrivals.arrivals();
    ComplexCompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i)
        acc += f(s[i]);
    return acc.value();
}

SeriesEvaluation direct_evaluate(SeriesFunction const& f, ArrivalStream const& arrivals, std::size_t n)
{
    require_realized(arrivals, n);
    auto const s = arrivals.arrivals();
    SeriesEvaluation eval;
    eval.method = SeriesEvaluation::Method::direct;
    eval.partial.resize(n);
    ComplexCompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i)
    {
        acc += f(s[i]);
        eval.partial[i] = acc.value();
    }
    return eval;
}

SeriesEvaluation abel_evaluate(ArrivalStream const& arrivals, std::size_t n)
{
    if (n == 0)
        throw ParameterError("abel_evaluate: N must be at least 1");
    require_realized(arrivals, n);
    auto const rec = reciprocals(arrivals, n);
    auto const s = arrivals.arrivals();

    SeriesEvaluation eval;
    eval.method = SeriesEvaluation::Method::abel;
    eval.partial.resize(n);
    eval.boundary.resize(n);
    eval.series_part.resize(n);

    ComplexCompensatedSum zsum;     // Z_n
    ComplexCompensatedSum dz_sum;   // sum_{k<n} D_k Z_k
    C z_prev{};
    for (std::size_t i = 0; i < n; ++i)
    {
        if (i > 0)
            dz_sum += rec.d[i - 1] * z_prev;
        zsum += C{std::cos(s[i]), std::sin(s[i])};
        C const z_now = zsum.value();
        eval.boundary[i] = rec.r[i] * z_now;
        eval.series_part[i] = dz_sum.value();
        eval.partial[i] = eval.boundary[i] + eval.series_part[i];
        z_prev = z_now;
    }
    return eval;
}

namespace
{
SeriesEvaluation walk_order(SeriesFunction const& f, ArrivalStream const& arrivals,
                            std::vector<std::size_t> order)
{
    auto const s = arrivals.arrivals();
    SeriesEvaluation eval;
    eval.method = SeriesEvaluation::Method::permuted;
    eval.partial.resize(order.size());
    ComplexCompensatedSum acc;
    for (std::size_t i = 0; i < order.size(); ++i)
    {
        acc += f(s[order[i]]);
        eval.partial[i] = acc.value();
    }
    eval.order = std::move(order);
    return eval;
}
}  // namespace

SeriesEvaluation permuted_sum(SeriesFunction const& f, ArrivalStream const& arrivals,
                              std::size_t n, std::uint64_t perm_seed)
{
    if (n == 0)
        throw ParameterError("permuted_sum: N must be at least 1");
    require_realized(arrivals, n);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    RngStream rng(StreamKey{perm_seed, 0x5045524d, 0});
    for (std::size_t i = n - 1; i > 0; --i)
    {
        auto const j = static_cast<std::size_t>(rng.below(i + 1));
        std::swap(order[i], order[j]);
    }
    auto eval = walk_order(f, arrivals, std::move(order));
    eval.perm_seed = perm_seed;
    return eval;
}

SeriesEvaluation identity_permuted_sum(SeriesFunction const& f, ArrivalStream const& arrivals,
                                       std::size_t n)
{
    require_realized(arrivals, n);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    return walk_order(f, arrivals, std::move(order));
}

double fluctuation(SeriesEvaluation const& eval)
{
    if (eval.partial.empty())
        return 0;
    C const last = eval.partial.back();
    double worst = 0;
    for (auto const& p : eval.partial)
        worst = std::max(worst, std::abs(p - last));
    return worst;
}

std::vector<double> uniform_partition(double length, std::size_t count)
{
    if (!(length > 0) || count == 0)
        throw ParameterError("uniform_partition: need positive length and count");
    std::vector<double> e(count + 1);
    for (std::size_t k = 0; k <= count; ++k)
        e[k] = length * static_cast<double>(k);
    return e;
}

SeriesEvaluation block_sum(SeriesFunction const& f, ArrivalStream const& arrivals,
                           std::vector<double> const& partition, std::size_t blocks,
                           bool with_integrals)
{
    if (partition.size() < 2 || blocks == 0 || blocks > partition.size() - 1)
        throw ParameterError("block_sum: need 1 <= K <= partition.size() - 1");
    if (partition.front() != 0)
        throw ParameterError("block_sum: partition must start at 0");
    for (std::size_t k = 1; k < partition.size(); ++k)
    {
        if (!(partition[k] > partition[k - 1]))
            throw ParameterError("block_sum: partition endpoints must increase");
    }
    double const end = partition[blocks];
    if (arrivals.size() == 0 || !(arrivals.arrivals().back() >= end))
        throw ExtensionRequired("block_sum: arrivals must be realized past the last endpoint", end);

    SeriesEvaluation eval;
    eval.method = SeriesEvaluation::Method::blocked;
    eval.partition.assign(partition.begin(), partition.begin() + static_cast<std::ptrdiff_t>(blocks) + 1);
    eval.blocks.resize(blocks);
    eval.partial.resize(blocks);
    eval.arrivals_through.resize(blocks);

    auto const s = arrivals.arrivals();
    ComplexCompensatedSum running;
    std::size_t i = 0;
    for (std::size_t k = 0; k < blocks; ++k)
    {
        ComplexCompensatedSum block;
        while (i < s.size() && s[i] < partition[k + 1])
        {
            C const term = f(s[i]);
            block += term;
            running += term;
            ++i;
        }
        eval.blocks[k] = block.value();
        eval.partial[k] = running.value();
        eval.arrivals_through[k] = i;
    }

    if (with_integrals)
    {
        eval.block_integrals.resize(blocks);
        auto const breaks = f.breakpoints();
        for (std::size_t k = 0; k < blocks; ++k)
            eval.block_integrals[k] =
                integrate_segmented([&](double x) { return f(x); }, partition[k], partition[k + 1], breaks);
    }
    return eval;
}

CampbellMoments campbell_moments(SeriesFunction const& f, double lo, double hi)
{
    if (!(hi > lo) || !(lo >= 0))
        throw ParameterError("campbell_moments: need 0 <= lo < hi");
    auto const breaks = f.breakpoints();
    CampbellMoments m;
    m.mean = integrate_segmented([&](double x) { return f(x); }, lo, hi, breaks);
    m.variance = integrate_segmented([&](double x) { return C{std::norm(f(x))}; }, lo, hi, breaks).real();
    return m;
}

//---------------------------------------------------------------------------//
// Tail diagnostics
//---------------------------------------------------------------------------//
std::vector<IndexWindow> dyadic_windows(unsigned lo_exp, unsigned hi_exp)
{
    std::vector<IndexWindow> out;
    for (auto n : dyadic_grid(lo_exp, hi_exp))
        out.push_back({n, 2 * n});
    return out;
}

namespace
{
std::optional<double> fit_decay(std::vector<IndexWindow> const& windows,
                                std::vector<double> const& osc)
{
    if (windows.size() < 2)
        return std::nullopt;
    std::vector<double> x(windows.size());
    for (std::size_t i = 0; i < windows.size(); ++i)
    {
        if (!(osc[i] > 0))
            return std::nullopt;
        x[i] = static_cast<double>(windows[i].lo);
    }
    return -fit_loglog(x, osc).slope;
}
}  // namespace

TailReport tail_diagnostics(SeriesEvaluation const& eval, std::vector<IndexWindow> const& windows)
{
    if (windows.size() < 2)
        throw ParameterError("tail_diagnostics needs at least two windows");
    TailReport rep;
    rep.windows = windows;
    for (auto const& w : windows)
    {
        if (w.lo == 0 || w.hi < w.lo || w.hi > eval.partial.size())
            throw ParameterError("tail_diagnostics: window outside the evaluated prefix");
        double re_lo = INFINITY, re_hi = -INFINITY, im_lo = INFINITY, im_hi = -INFINITY;
        for (std::size_t n = w.lo; n <= w.hi; ++n)
        {
            C const p = eval.partial[n - 1];
            re_lo = std::min(re_lo, p.real());
            re_hi = std::max(re_hi, p.real());
            im_lo = std::min(im_lo, p.imag());
            im_hi = std::max(im_hi, p.imag());
        }
        rep.oscillation.push_back(std::hypot(re_hi - re_lo, im_hi - im_lo));
    }
    rep.decay_exponent = fit_decay(rep.windows, rep.oscillation);
    return rep;
}

TailReport average_tail_reports(std::vector<TailReport> const& reports)
{
    if (reports.empty())
        throw ParameterError("average_tail_reports: no reports");
    TailReport avg;
    avg.windows = reports.front().windows;
    avg.oscillation.assign(avg.windows.size(), 0.0);
    for (auto const& r : reports)
    {
        if (r.windows.size() != avg.windows.size())
            throw ParameterError("average_tail_reports: window sets differ");
        for (std::size_t i = 0; i < r.oscillation.size(); ++i)
            avg.oscillation[i] += r.oscillation[i];
    }
    for (auto& o : avg.oscillation)
        o /= static_cast<double>(reports.size());
    avg.decay_exponent = fit_decay(avg.windows, avg.oscillation);
    return avg;
}

void write_trace_csv(SeriesEvaluation const& eval, std::ostream& os, bool header)
{
    if (header)
        os << "method,n_or_k,partial_real,partial_imag\n";
    char const* method = to_string(eval.method);
    for (std::size_t i = 0; i < eval.partial.size(); ++i)
    {
        os << method << ',' << (i + 1) << ',' << format_number(eval.partial[i].real()) << ','
           << format_number(eval.partial[i].imag()) << '\n';
    }
}

void write_diagnostics_csv(TailReport const& report, std::ostream& os)
{
    os << "window_lo,window_hi,oscillation\n";
    for (std::size_t i = 0; i < report.windows.size(); ++i)
    {
        os << report.windows[i].lo << ',' << report.windows[i].hi << ','
           << format_number(report.oscillation[i]) << '\n';
    }
}

}  // namespace poissinc
