// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "poissinc/levy.hpp"
#include "poissinc/series.hpp"

namespace poissinc
{

//! Sample mean of exp(itW) with componentwise standard errors.
struct EmpiricalChf
{
    std::vector<double> t;
    std::vector<std::complex<double>> value;
    std::vector<double> se_real;
    std::vector<double> se_imag;
    std::size_t samples = 0;
    //! Fewer than 1000 samples: the normal approximation is not trusted.
    bool wide_ci = false;
};

inline constexpr std::size_t kMinChfSamples = 1000;

EmpiricalChf empirical_chf(std::span<double const> samples, std::vector<double> const& t_grid);

//! E exp(it Nf) = exp(-int (1 - cos tf) + i int sin tf) for a unit-rate
//! Poisson measure on (0, inf). Throws NumericError when either integral
//! cannot be established.
std::vector<std::complex<double>> analytic_chf_Nf(SeriesFunction const& f, std::vector<double> const& t_grid);

//! E exp(it Xf) = exp(-int psi_r(t f) + i int psi_i(t f)).
std::vector<std::complex<double>> analytic_chf_Xf(LevyModel const& model, SeriesFunction const& f,
                                                  std::vector<double> const& t_grid);

struct ChfComparison
{
    EmpiricalChf empirical;
    std::vector<std::complex<double>> analytic;
    //! max over real and imaginary parts of |empirical - analytic| / se
    std::vector<double> zscore;
    double threshold = 4;
    double max_abs_discrepancy = 0;
    bool pass = false;
    std::string note;
};

ChfComparison compare(EmpiricalChf const& empirical, std::vector<std::complex<double>> const& analytic,
                      double z_threshold = 4);

//! Columns t, emp_re, emp_im, ci, ana_re, ana_im, zscore; ci is the
//! threshold times the larger componentwise standard error.
void write_csv(ChfComparison const& cmp, std::ostream& os);

}  // namespace poissinc
