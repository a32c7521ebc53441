// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poissinc/config.hpp"

namespace poissinc
{

struct SummaryRow
{
    std::string metric;
    std::optional<double> value;
    std::optional<double> ci_lo;
    std::optional<double> ci_hi;
    //! pass, fail, inconclusive or report
    std::string verdict = "report";
};

struct ExperimentResult
{
    std::string config;
    std::string version;
    std::vector<SummaryRow> rows;
    //! CSV files written, relative to the output directory.
    std::vector<std::string> files;
    double wall_seconds = 0;

    bool any_fail() const;
};

//! Run the configured experiment and write summary.csv plus trace CSVs to
//! `out_dir`. Outputs depend only on the configuration, never on `workers`.
ExperimentResult run_experiment(ExperimentConfig const& cfg, std::string const& out_dir, unsigned workers = 1);

}  // namespace poissinc
