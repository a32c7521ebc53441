// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace poissinc
{

enum class ExperimentKind
{
    series,
    abel,
    permute,
    blocks,
    norm_growth,
    chf,
    lepage,
    kfun,
    three_series,
    improper
};

struct ExperimentInfo
{
    ExperimentKind kind;
    char const* name;
    char const* summary;
};

std::vector<ExperimentInfo> const& experiment_catalog();
char const* to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view text);

//! Parsed experiment configuration.
//!
//! The file format is INI: `key = value` lines under `[section]` headers,
//! `;` or `#` comments. Only kind and seed are required.
struct ExperimentConfig
{
    ExperimentKind kind = ExperimentKind::series;
    std::uint64_t seed = 0;
    std::size_t replicates = 1000;

    std::string increment = "exponential(rate=1)";
    std::size_t n = 10000;

    std::string function = "sinc";
    std::size_t permutations = 10;
    double block_length = 3.141592653589793;
    std::size_t blocks = 200;

    std::string model = "poisson";
    std::string marker = "exponential_unit";
    double cutoff = 1;
    std::string route = "automatic";

    std::vector<double> t_grid{0.5, 1, 2};
    std::vector<double> s_grid{1e2, 1e3, 1e4, 1e5, 1e6};
    std::vector<double> p_values{2, 4};
    unsigned lo_exp = 7;
    unsigned hi_exp = 14;

    std::string scheme = "half_periods";
    //! Phase of the half-period grid; empty means the function's own zero phase.
    std::string anchor;
    std::string acceleration = "euler";
    double tolerance = 1e-10;
    std::size_t max_windows = 200;
    double z_threshold = 4;

    //! "[section] key" entries that were not given and took defaults.
    std::vector<std::string> defaulted;

    //! Normalized INI text of every field; the CSV config hash is taken over it.
    std::string canonical() const;
};

//! Parse and validate; throws ParameterError naming the line or key at fault.
ExperimentConfig parse_config(std::istream& in, std::string const& source = "<config>");
ExperimentConfig load_config(std::string const& path);

}  // namespace poissinc
