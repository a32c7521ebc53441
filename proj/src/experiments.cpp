// SPDX-License-Identifier: Apache-2.0
#include "poissinc/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "poissinc/chf.hpp"
#include "poissinc/csv.hpp"
#include "poissinc/distributions.hpp"
#include "poissinc/errors.hpp"
#include "poissinc/improper.hpp"
#include "poissinc/kfunctions.hpp"
#include "poissinc/levy.hpp"
#include "poissinc/parallel.hpp"
#include "poissinc/pointprocess.hpp"
#include "poissinc/series.hpp"
#include "poissinc/stats.hpp"
#include "poissinc/trigsums.hpp"

namespace poissinc
{

bool ExperimentResult::any_fail() const
{
    return std::any_of(rows.begin(), rows.end(), [](SummaryRow const& r) { return r.verdict == "fail"; });
}

namespace
{
using C = std::complex<double>;
constexpr double kZ95 = 1.959963984540054;

std::uint64_t experiment_id(ExperimentKind kind)
{
    return 0x100 + static_cast<std::uint64_t>(kind);
}

class Outputs
{
  public:
    Outputs(std::string dir, std::string config, ExperimentResult& result)
        : dir_(std::move(dir)), config_(std::move(config)), result_(result)
    {
        std::filesystem::create_directories(dir_);
    }

    std::ofstream open(std::string const& name)
    {
        auto const path = std::filesystem::path(dir_) / name;
        std::ofstream os(path, std::ios::binary);
        if (!os)
            throw std::runtime_error("cannot write " + path.string());
        write_csv_preamble(os, config_);
        result_.files.push_back(name);
        return os;
    }

  private:
    std::string dir_;
    std::string config_;
    ExperimentResult& result_;
};

SummaryRow mean_row(std::string metric, std::vector<double> const& xs)
{
    auto const m = estimate_mean(xs);
    return {std::move(metric), m.mean, m.mean - kZ95 * m.stderr_mean, m.mean + kZ95 * m.stderr_mean, "report"};
}

SummaryRow value_row(std::string metric, std::optional<double> value, std::string verdict = "report")
{
    return {std::move(metric), value, std::nullopt, std::nullopt, std::move(verdict)};
}

std::string opt_number(std::optional<double> x)
{
    return x ? format_number(*x) : std::string();
}

//! Realized arrivals for one replicate: past the support of f when it is
//! bounded, otherwise n terms. Returns the number of terms to sum.
std::size_t realize(ArrivalStream& a, SeriesFunction const& f, std::size_t n)
{
    if (auto const end = f.support_end())
    {
        a.extend_past(*end);
        return a.size();
    }
    a.extend(n);
    return n;
}

std::vector<C> replicate_sums(ExperimentConfig const& cfg, SeriesFunction const& f, unsigned workers)
{
    auto const spec = parse_distribution(cfg.increment);
    std::vector<C> values(cfg.replicates);
    parallel_for(cfg.replicates, workers, [&](std::size_t r) {
        ArrivalStream a(spec, StreamKey{cfg.seed, experiment_id(cfg.kind), r});
        values[r] = partial_sum(f, a, realize(a, f, cfg.n));
    });
    return values;
}

std::vector<double> real_parts(std::vector<C> const& xs)
{
    std::vector<double> out;
    for (auto const& x : xs)
        out.push_back(x.real());
    return out;
}

//---------------------------------------------------------------------------//
void run_series(ExperimentConfig const& cfg, Outputs& out, ExperimentResult& res, unsigned workers)
{
    auto const f = parse_function(cfg.function);
    auto const values = replicate_sums(cfg, f, workers);
    {
        auto os = out.open("series_values.csv");
        os << "replicate,value_real,value_imag\n";
        for (std::size_t r = 0; r < values.size(); ++r)
            os << r << ',' << format_number(values[r].real()) << ',' << format_number(values[r].imag()) << '\n';
    }
    {
        ArrivalStream a(parse_distribution(cfg.increment), StreamKey{cfg.seed, experiment_id(cfg.kind), 0});
        auto const terms = realize(a, f, cfg.n);
        auto os = out.open("series_trace.csv");
        write_trace_csv(direct_evaluate(f, a, terms), os);
    }
    auto const re = real_parts(values);
    res.rows.push_back(mean_row("mean_real", re));
    if (f.complex_valued())
    {
        std::vector<double> im;
        for (auto const& v : values)
            im.push_back(v.imag());
        res.rows.push_back(mean_row("mean_imag", im));
    }
    if (values.size() >= 2)
        res.rows.push_back(value_row("variance_real", estimate_mean(re).variance));
}

void run_abel(ExperimentConfig const& cfg, Outputs& out, ExperimentResult& res, unsigned workers)
{
    auto const spec = parse_distribution(cfg.increment);
    auto const f = SeriesFunction::cis_over_x();
    std::vector<double> plain(cfg.replicates), l1(cfg.replicates);
    parallel_for(cfg.replicates, workers, [&](std::size_t r) {
        ArrivalStream a(spec, StreamKey{cfg.seed, experiment_id(cfg.kind), r});
        a.extend(cfg.n);
        auto const d = direct_evaluate(f, a, cfg.n);
        auto const ab = abel_evaluate(a, cfg.n);
        double worst = 0, worst_l1 = 0, mass = 0;
        for (std::size_t i = 0; i < cfg.n; ++i)
        {
            mass += 1 / a.arrivals()[i];
            double const diff = std::abs(d.partial[i] - ab.partial[i]);
            worst = std::max(worst, diff / std::abs(d.partial[i]));
            worst_l1 = std::max(worst_l1, diff / mass);
        }
        plain[r] = worst;
        l1[r] = worst_l1;
    });
    {
        ArrivalStream a(spec, StreamKey{cfg.seed, experiment_id(cfg.kind), 0});
        a.extend(cfg.n);
        auto os = out.open("abel_trace.csv");
        write_trace_csv(direct_evaluate(f, a, cfg.n), os);
        write_trace_csv(abel_evaluate(a, cfg.n), os, false);
    }
    double const p = *std::max_element(plain.begin(), plain.end());
    double const q = *std::max_element(l1.begin(), l1.end());
    res.rows.push_back(value_row("max_relative_error", p, p <= 1e-9 ? "pass" : "fail"));
    res.rows.push_back(value_row("max_l1_relative_error", q, q <= 1e-9 ? "pass" : "fail"));
}

void run_permute(ExperimentConfig const& cfg, Outputs& out, ExperimentResult& res, unsigned workers)
{
    auto const spec = parse_distribution(cfg.increment);
    auto const f = parse_function(cfg.function);
    std::size_t const k = cfg.permutations;
    struct Slot
    {
        C direct;
        double direct_fluct = 0;
        std::vector<C> totals;
        std::vector<double> fluct;
    };
    std::vector<Slot> slots(cfg.replicates);
    parallel_for(cfg.replicates, workers, [&](std::size_t r) {
        ArrivalStream a(spec, StreamKey{cfg.seed, experiment_id(cfg.kind), r});
        a.extend(cfg.n);
        auto const d = direct_evaluate(f, a, cfg.n);
        auto& s = slots[r];
        s.direct = d.total();
        s.direct_fluct = fluctuation(d);
        for (std::size_t j = 0; j < k; ++j)
        {
            auto const perm = permuted_sum(f, a, cfg.n, mix64(cfg.seed ^ mix64(r * 0x10001 + j + 1)));
            s.totals.push_back(perm.total());
            s.fluct.push_back(fluctuation(perm));
        }
    });
    auto os = out.open("permute.csv");
    os << "replicate,permutation,total_real,total_imag,fluctuation\n";
    double worst = 0;
    std::vector<double> ratios;
    for (std::size_t r = 0; r < slots.size(); ++r)
    {
        auto const& s = slots[r];
        os << r << ",identity," << format_number(s.direct.real()) << ',' << format_number(s.direct.imag()) << ','
           << format_number(s.direct_fluct) << '\n';
        for (std::size_t j = 0; j < k; ++j)
        {
            os << r << ',' << j << ',' << format_number(s.totals[j].real()) << ','
               << format_number(s.totals[j].imag()) << ',' << format_number(s.fluct[j]) << '\n';
            worst = std::max(worst, std::abs(s.totals[j] - s.direct) / std::abs(s.direct));
            if (s.direct_fluct > 0)
                ratios.push_back(s.fluct[j] / s.direct_fluct);
        }
    }
    if (k > 0)
        res.rows.push_back(value_row("max_total_relative_difference", worst, worst <= 1e-9 ? "pass" : "fail"));
    if (!ratios.empty())
    {
        res.rows.push_back(value_row("fluctuation_ratio_median", quantile(ratios, 0.5)));
        res.rows.push_back(value_row("fluctuation_ratio_q95", quantile(ratios, 0.95)));
    }
}

void run_blocks(ExperimentConfig const& cfg, Outputs& out, ExperimentResult& res, unsigned workers)
{
    auto const spec = parse_distribution(cfg.increment);
    auto const f = parse_function(cfg.function);
    auto const partition = uniform_partition(cfg.block_length, cfg.blocks);
    double const end = partition.back();
    std::vector<C> totals(cfg.replicates);
    std::vector<std::size_t> mismatches(cfg.replicates);
    SeriesEvaluation first;
    parallel_for(cfg.replicates, workers, [&](std::size_t r) {
        ArrivalStream a(spec, StreamKey{cfg.seed, experiment_id(cfg.kind), r});
        a.extend_past(end);
        auto ev = block_sum(f, a, partition, cfg.blocks, r == 0);
        std::size_t const through = ev.arrivals_through.back();
        std::size_t bad = 0;
        if (through > 0)
        {
            auto const d = direct_evaluate(f, a, through);
            for (std::size_t b = 0; b < cfg.blocks; ++b)
            {
                std::size_t const m = ev.arrivals_through[b];
                C const expect = m == 0 ? C{} : d.partial[m - 1];
                bad += !(ev.partial[b] == expect);
            }
        }
        totals[r] = ev.partial.back();
        mismatches[r] = bad;
        if (r == 0)
            first = std::move(ev);
    });
    {
        auto os = out.open("blocks.csv");
        os << "k,lo,hi,arrivals_through,block_real,block_imag,integral_real,integral_imag\n";
        for (std::size_t b = 0; b < cfg.blocks; ++b)
        {
            os << b << ',' << format_number(partition[b]) << ',' << format_number(partition[b + 1]) << ','
               << first.arrivals_through[b] << ',' << format_number(first.blocks[b].real()) << ','
               << format_number(first.blocks[b].imag()) << ',' << format_number(first.block_integrals[b].real())
               << ',' << format_number(first.block_integrals[b].imag()) << '\n';
        }
    }
    std::size_t bad = 0;
    for (auto m : mismatches)
        bad += m;
    res.rows.push_back(value_row("boundary_mismatches", static_cast<double>(bad), bad == 0 ? "pass" : "fail"));

    auto const campbell = campbell_moments(f, 0, end);
    std::vector<double> re, im;
    for (auto const& t : totals)
    {
        re.push_back(t.real());
        im.push_back(t.imag());
    }
    res.rows.push_back(mean_row("mean_real", re));
    res.rows.push_back(value_row("campbell_mean_real", campbell.mean.real()));
    if (totals.size() >= 2)
    {
        double const var = estimate_mean(re).variance + (f.complex_valued() ? estimate_mean(im).variance : 0.0);
        double const ratio = var / campbell.variance;
        res.rows.push_back(value_row("variance", var));
        res.rows.push_back(value_row("campbell_variance", campbell.variance));
        res.rows.push_back(value_row("variance_ratio", ratio, std::abs(ratio - 1) <= 0.1 ? "pass" : "fail"));
    }
}

void run_norm_growth(ExperimentConfig const& cfg, Outputs& out, ExperimentResult& res, unsigned workers)
{
    auto const spec = parse_distribution(cfg.increment);
    auto const grid = dyadic_grid(cfg.lo_exp, cfg.hi_exp);
    double const cz = cz_constant(spec);
    auto const moduli =
        sample_z_moduli(spec, grid, cfg.replicates, StreamKey{cfg.seed, experiment_id(cfg.kind), 0}, workers);
    NormGrowthOptions opts;
    opts.workers = workers;
    res.rows.push_back(value_row("cz", cz));
    for (double p : cfg.p_values)
    {
        auto const rep = norm_growth_from_moduli(moduli, grid, p, cz, cfg.seed, opts);
        auto os = out.open("norm_growth_p" + format_number(p) + ".csv");
        write_csv(rep, os);
        res.rows.push_back({"slope_p" + format_number(p), rep.slope, rep.slope_ci.lo, rep.slope_ci.hi,
                            rep.ci_too_wide ? "inconclusive" : "report"});
    }
    std::vector<double> last;
    for (auto const& row : moduli)
        last.push_back(row.back() * row.back() / static_cast<double>(grid.back()));
    res.rows.push_back(mean_row("second_moment_over_n_at_" + std::to_string(grid.back()), last));
}

void emit_chf(ChfComparison const& cmp, Outputs& out, ExperimentResult& res, char const* name)
{
    auto os = out.open(name);
    write_csv(cmp, os);
    double const zmax = cmp.zscore.empty() ? 0 : *std::max_element(cmp.zscore.begin(), cmp.zscore.end());
    res.rows.push_back(value_row("max_zscore", zmax, cmp.pass ? "pass" : "fail"));
    res.rows.push_back(value_row("max_abs_discrepancy", cmp.max_abs_discrepancy));
}

void run_chf(ExperimentConfig const& cfg, Outputs& out, ExperimentResult& res, unsigned workers)
{
    auto const f = parse_function(cfg.function);
    if (f.complex_valued())
        throw ParameterError("chf experiment needs a real function");
    auto const samples = real_parts(replicate_sums(cfg, f, workers));
    auto const emp = empirical_chf(samples, cfg.t_grid);
    auto const cmp = compare(emp, analytic_chf_Nf(f, cfg.t_grid), cfg.z_threshold);
    res.rows.push_back(mean_row("mean", samples));
    emit_chf(cmp, out, res, "chf.csv");
}

void run_lepage(ExperimentConfig const& cfg, Outputs& out, ExperimentResult& res, unsigned workers)
{
    auto const spec = parse_distribution(cfg.increment);
    auto const model = parse_levy_model(cfg.model);
    auto const marker = parse_marker(cfg.marker);
    auto const f = parse_function(cfg.function);
    if (f.complex_valued())
        throw ParameterError("lepage experiment needs a real function");
    std::vector<double> samples(cfg.replicates);
    parallel_for(cfg.replicates, workers, [&](std::size_t r) {
        StreamKey const key{cfg.seed, experiment_id(cfg.kind), r};
        ArrivalStream a(spec, key);
        a.extend(cfg.n);
        samples[r] = lepage_evaluate(model, marker, f, a, key.lane(1), cfg.n).value().real();
    });
    {
        auto os = out.open("lepage_values.csv");
        os << "replicate,value\n";
        for (std::size_t r = 0; r < samples.size(); ++r)
            os << r << ',' << format_number(samples[r]) << '\n';
    }
    res.rows.push_back(mean_row("mean", samples));
    auto const emp = empirical_chf(samples, cfg.t_grid);
    emit_chf(compare(emp, analytic_chf_Xf(model, f, cfg.t_grid), cfg.z_threshold), out, res, "chf.csv");
}

KRoute parse_route(std::string const& s)
{
    if (s == "reduction")
        return KRoute::reduction;
    if (s == "quadrature")
        return KRoute::quadrature;
    return KRoute::automatic;
}

KFunctionSet make_set(ExperimentConfig const& cfg)
{
    return {parse_marker(cfg.marker), parse_levy_model(cfg.model), parse_function(cfg.function), cfg.cutoff};
}

void envelope_rows(std::vector<double> const& s, std::vector<double> const& env, ExperimentResult& res)
{
    bool const positive = std::all_of(env.begin(), env.end(), [](double e) { return e > 0; });
    if (s.size() < 2 || !positive)
        return;
    auto const fit = fit_loglog(s, env);
    res.rows.push_back({"envelope_slope", fit.slope, fit.slope - kZ95 * fit.slope_stderr,
                        fit.slope + kZ95 * fit.slope_stderr, "report"});
}

void run_kfun(ExperimentConfig const& cfg, Outputs& out, ExperimentResult& res, unsigned workers)
{
    auto const set = make_set(cfg);
    KOptions opts;
    opts.route = parse_route(cfg.route);
    auto const& s = cfg.s_grid;
    std::vector<KValues> values(s.size());
    std::vector<double> env(s.size());
    parallel_for(s.size(), workers, [&](std::size_t i) {
        values[i] = k_functions(set, s[i], opts);
        env[i] = k_envelope(set, s[i], opts);
    });
    {
        auto os = out.open("k_sweep.csv");
        write_k_sweep_csv(s, values, os);
    }
    {
        auto os = out.open("k_envelope.csv");
        os << "s,envelope\n";
        for (std::size_t i = 0; i < s.size(); ++i)
            os << format_number(s[i]) << ',' << format_number(env[i]) << '\n';
    }
    bool bounded = true;
    for (auto const& v : values)
    {
        bounded = bounded && v.k1 >= 0 && v.k1 <= 1 + 1e-12 && std::abs(v.k2) <= cfg.cutoff * (1 + 1e-12) &&
                  v.k3 >= 0 && v.k3 <= cfg.cutoff * cfg.cutoff * (1 + 1e-12);
    }
    res.rows.push_back(value_row("bounds_hold", bounded ? 1.0 : 0.0, bounded ? "pass" : "fail"));
    envelope_rows(s, env, res);
}

std::string verdict_text(IntegralVerdict const& v)
{
    return to_string(v.kind);
}

void run_three_series(ExperimentConfig const& cfg, Outputs& out, ExperimentResult& res, unsigned)
{
    auto const set = make_set(cfg);
    KOptions opts;
    opts.route = parse_route(cfg.route);
    auto const rep = three_series_check(set, cfg.s_grid, opts);
    res.rows.push_back(value_row("nk1_integral", rep.k1.value, verdict_text(rep.k1)));
    res.rows.push_back(value_row("nk3_integral", rep.k3.value, verdict_text(rep.k3)));
    auto improper_verdict = [](ImproperResult const& r) {
        return r.converged() ? std::string("converged (") + to_string(r.method) + ")" : std::string("non_convergent");
    };
    res.rows.push_back(value_row("k2_improper_real", rep.k2_real.value, improper_verdict(rep.k2_real)));
    if (rep.k2_imag)
        res.rows.push_back(value_row("k2_improper_imag", rep.k2_imag->value, improper_verdict(*rep.k2_imag)));
    if (rep.k2_envelope)
    {
        auto const& e = *rep.k2_envelope;
        auto os = out.open("k_envelope.csv");
        os << "s,envelope\n";
        for (std::size_t i = 0; i < e.s.size(); ++i)
            os << format_number(e.s[i]) << ',' << format_number(e.envelope[i]) << '\n';
        envelope_rows(e.s, e.envelope, res);
        res.rows.push_back(value_row("k2_abs_integral", e.abs_integral, e.abs_integral ? "finite" : "inconclusive"));
    }
}

void run_improper(ExperimentConfig const& cfg, Outputs& out, ExperimentResult& res, unsigned)
{
    auto const f = parse_function(cfg.function);
    ImproperScheme scheme;
    if (cfg.scheme == "dyadic")
    {
        scheme = ImproperScheme::dyadic(0, 1);
    }
    else
    {
        double const anchor = cfg.anchor.empty() ? f.zero_phase().value_or(0.0) : parse_number(cfg.anchor, "anchor");
        scheme = ImproperScheme::half_periods(0, anchor);
    }
    scheme.acceleration =
        cfg.acceleration == "none" ? ImproperScheme::Acceleration::none : ImproperScheme::Acceleration::euler;
    scheme.tolerance = cfg.tolerance;
    scheme.max_windows = cfg.max_windows;
    auto const r = improper_integral({[&f](double x) { return f(x).real(); }, f.breakpoints()}, scheme);
    {
        auto os = out.open("improper.csv");
        os << "window_index,endpoint,partial_value\n";
        for (auto const& w : r.trace)
            os << w.index << ',' << format_number(w.endpoint) << ',' << format_number(w.partial_value) << '\n';
    }
    std::string const status =
        r.converged() ? std::string("converged (") + to_string(r.method) + ")" : std::string("non_convergent");
    res.rows.push_back(value_row("value", r.value, status));
    res.rows.push_back(value_row("achieved_tolerance", r.achieved_tolerance));
    res.rows.push_back(value_row("windows_used", static_cast<double>(r.windows_used)));
}
}  // namespace

ExperimentResult run_experiment(ExperimentConfig const& cfg, std::string const& out_dir, unsigned workers)
{
    auto const t0 = std::chrono::steady_clock::now();
    ExperimentResult res;
    res.config = cfg.canonical();
    res.version = library_version();
    Outputs out(out_dir, res.config, res);
    workers = std::max(1u, workers);

    switch (cfg.kind)
    {
        case ExperimentKind::series:
            run_series(cfg, out, res, workers);
            break;
        case ExperimentKind::abel:
            run_abel(cfg, out, res, workers);
            break;
        case ExperimentKind::permute:
            run_permute(cfg, out, res, workers);
            break;
        case ExperimentKind::blocks:
            run_blocks(cfg, out, res, workers);
            break;
        case ExperimentKind::norm_growth:
            run_norm_growth(cfg, out, res, workers);
            break;
        case ExperimentKind::chf:
            run_chf(cfg, out, res, workers);
            break;
        case ExperimentKind::lepage:
            run_lepage(cfg, out, res, workers);
            break;
        case ExperimentKind::kfun:
            run_kfun(cfg, out, res, workers);
            break;
        case ExperimentKind::three_series:
            run_three_series(cfg, out, res, workers);
            break;
        case ExperimentKind::improper:
            run_improper(cfg, out, res, workers);
            break;
    }

    {
        auto os = out.open("summary.csv");
        os << "metric,value,ci_lo,ci_hi,verdict\n";
        for (auto const& row : res.rows)
        {
            os << row.metric << ',' << opt_number(row.value) << ',' << opt_number(row.ci_lo) << ','
               << opt_number(row.ci_hi) << ',' << row.verdict << '\n';
        }
    }
    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace poissinc
