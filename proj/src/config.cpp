// SPDX-License-Identifier: Apache-2.0
#include "poissinc/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "poissinc/distributions.hpp"
#include "poissinc/errors.hpp"
#include "poissinc/levy.hpp"
#include "poissinc/series.hpp"

namespace poissinc
{

std::vector<ExperimentInfo> const& experiment_catalog()
{
    static std::vector<ExperimentInfo> const catalog{
        {ExperimentKind::series, "series", "partial sums of f over renewal arrivals"},
        {ExperimentKind::abel, "abel", "direct vs Abel-decomposed sums of exp(iS_n)/S_n"},
        {ExperimentKind::permute, "permute", "finite sums under random rearrangements"},
        {ExperimentKind::blocks, "blocks", "block sums on a partition with Campbell moments"},
        {ExperimentKind::norm_growth, "norm-growth", "Monte Carlo growth of ||Z_n||_p"},
        {ExperimentKind::chf, "chf", "empirical vs analytic characteristic function of Nf"},
        {ExperimentKind::lepage, "lepage", "LePage series Xf and its characteristic function"},
        {ExperimentKind::kfun, "kfun", "three-series functions K1, K2, K3 over an s grid"},
        {ExperimentKind::three_series, "three-series", "integrability verdicts for K1, K3 and K2"},
        {ExperimentKind::improper, "improper", "windowed improper integral of f over (0, inf)"},
    };
    return catalog;
}

char const* to_string(ExperimentKind kind)
{
    for (auto const& e : experiment_catalog())
    {
        if (e.kind == kind)
            return e.name;
    }
    return "?";
}

ExperimentKind parse_experiment_kind(std::string_view text)
{
    std::string names;
    for (auto const& e : experiment_catalog())
    {
        if (text == e.name)
            return e.kind;
        names += names.empty() ? "" : ", ";
        names += e.name;
    }
    throw ParameterError("unknown experiment kind '" + std::string(text) + "'; expected one of: " + names);
}

namespace
{
namespace pt = boost::property_tree;

std::string join(std::vector<double> const& xs)
{
    std::string out;
    for (double x : xs)
    {
        out += out.empty() ? "" : ",";
        out += format_number(x);
    }
    return out;
}

std::string trim(std::string const& s)
{
    auto const b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    auto const e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template<class T>
T parse_unsigned(std::string const& text, std::string const& what)
{
    std::string s = trim(text);
    int base = 10;
    if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0)
    {
        s = s.substr(2);
        base = 16;
    }
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw ParameterError(what + ": expected a non-negative integer, got '" + text + "'");
    return v;
}

std::vector<double> parse_list(std::string const& text, std::string const& what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_number(item, what));
    if (out.empty())
        throw ParameterError(what + ": empty list");
    return out;
}

struct Key
{
    char const* section;
    char const* name;
    std::function<void(ExperimentConfig&, std::string const&, std::string const&)> set;
};

std::vector<Key> const& key_table()
{
    using C = ExperimentConfig;
    using S = std::string const&;
    static std::vector<Key> const keys{
        {"experiment", "kind", [](C& c, S v, S) { c.kind = parse_experiment_kind(trim(v)); }},
        {"experiment", "seed", [](C& c, S v, S w) { c.seed = parse_unsigned<std::uint64_t>(v, w); }},
        {"experiment", "replicates", [](C& c, S v, S w) { c.replicates = parse_unsigned<std::size_t>(v, w); }},
        {"process", "increment", [](C& c, S v, S) { c.increment = parse_distribution(v).to_string(); }},
        {"process", "n", [](C& c, S v, S w) { c.n = parse_unsigned<std::size_t>(v, w); }},
        {"series", "function", [](C& c, S v, S) { c.function = parse_function(v).to_string(); }},
        {"series", "permutations", [](C& c, S v, S w) { c.permutations = parse_unsigned<std::size_t>(v, w); }},
        {"series", "block_length", [](C& c, S v, S w) { c.block_length = parse_number(v, w); }},
        {"series", "blocks", [](C& c, S v, S w) { c.blocks = parse_unsigned<std::size_t>(v, w); }},
        {"levy", "model", [](C& c, S v, S) { c.model = parse_levy_model(v).to_string(); }},
        {"levy", "marker", [](C& c, S v, S) { c.marker = parse_marker(v).to_string(); }},
        {"levy", "cutoff", [](C& c, S v, S w) { c.cutoff = parse_number(v, w); }},
        {"levy", "route", [](C& c, S v, S) { c.route = trim(v); }},
        {"grids", "t", [](C& c, S v, S w) { c.t_grid = parse_list(v, w); }},
        {"grids", "s", [](C& c, S v, S w) { c.s_grid = parse_list(v, w); }},
        {"grids", "p", [](C& c, S v, S w) { c.p_values = parse_list(v, w); }},
        {"grids", "lo_exp", [](C& c, S v, S w) { c.lo_exp = parse_unsigned<unsigned>(v, w); }},
        {"grids", "hi_exp", [](C& c, S v, S w) { c.hi_exp = parse_unsigned<unsigned>(v, w); }},
        {"numerics", "scheme", [](C& c, S v, S) { c.scheme = trim(v); }},
        {"numerics", "anchor", [](C& c, S v, S w) { c.anchor = v == "auto" ? "" : format_number(parse_number(v, w)); }},
        {"numerics", "acceleration", [](C& c, S v, S) { c.acceleration = trim(v); }},
        {"numerics", "tolerance", [](C& c, S v, S w) { c.tolerance = parse_number(v, w); }},
        {"numerics", "max_windows", [](C& c, S v, S w) { c.max_windows = parse_unsigned<std::size_t>(v, w); }},
        {"numerics", "z_threshold", [](C& c, S v, S w) { c.z_threshold = parse_number(v, w); }},
    };
    return keys;
}

void require(bool ok, std::string const& message)
{
    if (!ok)
        throw ParameterError(message);
}

void check_one_of(std::string const& value, std::vector<std::string> const& allowed, std::string const& what)
{
    if (std::find(allowed.begin(), allowed.end(), value) != allowed.end())
        return;
    std::string names;
    for (auto const& a : allowed)
        names += (names.empty() ? "" : ", ") + a;
    throw ParameterError(what + ": '" + value + "' is not one of " + names);
}

void validate(ExperimentConfig const& c)
{
    require(c.replicates >= 1, "[experiment] replicates must be at least 1");
    require(c.n >= 1, "[process] n must be at least 1");
    require(c.blocks >= 1 && c.block_length > 0, "[series] blocks and block_length must be positive");
    require(c.cutoff > 0, "[levy] cutoff must be positive");
    require(c.lo_exp < c.hi_exp && c.hi_exp < 40, "[grids] need lo_exp < hi_exp < 40");
    require(c.tolerance > 0 && c.max_windows >= 1, "[numerics] tolerance and max_windows must be positive");
    require(c.z_threshold > 0, "[numerics] z_threshold must be positive");
    for (double s : c.s_grid)
        require(s > 0, "[grids] s values must be positive");
    for (double p : c.p_values)
        require(p >= 1, "[grids] p values must be at least 1");
    check_one_of(c.route, {"automatic", "reduction", "quadrature"}, "[levy] route");
    check_one_of(c.scheme, {"half_periods", "dyadic"}, "[numerics] scheme");
    check_one_of(c.acceleration, {"euler", "none"}, "[numerics] acceleration");
}
}  // namespace

std::string ExperimentConfig::canonical() const
{
    std::ostringstream os;
    os << "[experiment]\nkind = " << to_string(kind) << "\nseed = " << seed << "\nreplicates = " << replicates
       << "\n\n[process]\nincrement = " << increment << "\nn = " << n
       << "\n\n[series]\nfunction = " << function << "\npermutations = " << permutations
       << "\nblock_length = " << format_number(block_length) << "\nblocks = " << blocks
       << "\n\n[levy]\nmodel = " << model << "\nmarker = " << marker << "\ncutoff = " << format_number(cutoff)
       << "\nroute = " << route << "\n\n[grids]\nt = " << join(t_grid) << "\ns = " << join(s_grid)
       << "\np = " << join(p_values) << "\nlo_exp = " << lo_exp << "\nhi_exp = " << hi_exp
       << "\n\n[numerics]\nscheme = " << scheme << "\nanchor = " << (anchor.empty() ? "auto" : anchor)
       << "\nacceleration = " << acceleration << "\ntolerance = " << format_number(tolerance)
       << "\nmax_windows = " << max_windows << "\nz_threshold = " << format_number(z_threshold) << '\n';
    return os.str();
}

ExperimentConfig parse_config(std::istream& in, std::string const& source)
{
    pt::ptree tree;
    try
    {
        pt::ini_parser::read_ini(in, tree);
    }
    catch (pt::ini_parser_error const& e)
    {
        throw ParameterError(source + ":" + std::to_string(e.line()) + ": " + e.message());
    }

    ExperimentConfig cfg;
    std::map<std::string, bool> seen;
    for (auto const& [section, body] : tree)
    {
        if (body.empty())
            throw ParameterError(source + ": key '" + section + "' must sit under a [section] header");
        bool known_section = false;
        for (auto const& k : key_table())
            known_section = known_section || section == k.section;
        if (!known_section)
        {
            throw ParameterError(source + ": unknown section [" + section +
                                 "]; expected experiment, process, series, levy, grids, numerics");
        }
        for (auto const& [name, value] : body)
        {
            auto const it = std::find_if(key_table().begin(), key_table().end(), [&](Key const& k) {
                return section == k.section && name == k.name;
            });
            if (it == key_table().end())
            {
                std::string names;
                for (auto const& k : key_table())
                {
                    if (section == k.section)
                        names += (names.empty() ? "" : ", ") + std::string(k.name);
                }
                throw ParameterError(source + ": unknown key '" + name + "' in [" + section + "]; known: " + names);
            }
            std::string const what = "[" + section + "] " + name;
            try
            {
                it->set(cfg, value.data(), what);
            }
            catch (ParameterError const& e)
            {
                throw ParameterError(source + ": " + what + ": " + e.what());
            }
            seen[what] = true;
        }
    }

    std::string missing;
    for (char const* req : {"[experiment] kind", "[experiment] seed"})
    {
        if (!seen.count(req))
            missing += (missing.empty() ? "" : ", ") + std::string(req);
    }
    if (!missing.empty())
        throw ParameterError(source + ": missing required fields: " + missing);

    for (auto const& k : key_table())
    {
        std::string const what = std::string("[") + k.section + "] " + k.name;
        if (!seen.count(what))
            cfg.defaulted.push_back(what);
    }
    validate(cfg);
    return cfg;
}

ExperimentConfig load_config(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParameterError("cannot open config file '" + path + "'");
    return parse_config(in, path);
}

}  // namespace poissinc
