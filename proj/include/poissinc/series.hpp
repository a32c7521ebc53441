// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "poissinc/pointprocess.hpp"

namespace poissinc
{

//! Amplitude A with derivative A' for f(x) = A(x) sin x.
struct Amplitude
{
    std::string name;
    std::function<double(double)> value;
    std::function<double(double)> derivative;
};

//! Named amplitudes: one, inv (1/x), inv_log (1/ln(x+2)), linear (x).
Amplitude named_amplitude(std::string_view name);

//! Functions f on (0, inf) summed over arrivals.
class SeriesFunction
{
  public:
    enum class Kind
    {
        sinc,
        cis_over_x,
        cos_over_x,
        amplitude_sin,
        indicator,
        truncated,
        zero
    };

    static SeriesFunction sinc();
    static SeriesFunction cis_over_x();
    static SeriesFunction cos_over_x();
    static SeriesFunction amplitude_sin(Amplitude amplitude);
    //! 1 on [lo, hi), 0 elsewhere.
    static SeriesFunction indicator(double lo, double hi);
    //! base * 1{x < cutoff}.
    static SeriesFunction truncated(SeriesFunction base, double cutoff);
    static SeriesFunction zero();

    Kind kind() const noexcept { return kind_; }
    //! Complex value; real kinds have zero imaginary part. Throws DomainError
    //! at x = 0 for kinds singular there.
    std::complex<double> operator()(double x) const;
    double real(double x) const { return (*this)(x).real(); }
    bool complex_valued() const noexcept;
    //! Points where f jumps (for quadrature splitting).
    std::vector<double> breakpoints() const;
    //! Right end of the support when bounded.
    std::optional<double> support_end() const;
    //! Phase a such that the real part is g(x) sin(x - a) with g of one sign
    //! eventually (oscillatory kinds only).
    std::optional<double> zero_phase() const;
    //! Complex counterpart with the same modulus envelope:
    //! sinc, cos_over_x -> cis_over_x; A sin x -> A exp(ix).
    SeriesFunction analytic() const;
    Amplitude const* amplitude() const noexcept { return amplitude_.get(); }
    std::string to_string() const;

  private:
    SeriesFunction() = default;

    Kind kind_ = Kind::zero;
    bool analytic_amplitude_ = false;
    double lo_ = 0;
    double hi_ = 0;
    std::shared_ptr<Amplitude const> amplitude_;
    std::shared_ptr<SeriesFunction const> base_;
};

SeriesFunction parse_function(std::string_view text);

//---------------------------------------------------------------------------//
// Evaluations
//---------------------------------------------------------------------------//
struct SeriesEvaluation
{
    enum class Method
    {
        direct,
        abel,
        permuted,
        blocked
    };

    Method method = Method::direct;
    //! Partial sums: by n for direct/abel/permuted, by block for blocked.
    std::vector<std::complex<double>> partial;
    //! abel: R_n Z_n and sum_{k<n} D_k Z_k per prefix n.
    std::vector<std::complex<double>> boundary;
    std::vector<std::complex<double>> series_part;
    //! permuted: seed and visiting order (0-based indices).
    std::uint64_t perm_seed = 0;
    std::vector<std::size_t> order;
    //! blocked: endpoints, per-block values X_k, block integrals lambda f_k,
    //! and the arrival count consumed through each block.
    std::vector<double> partition;
    std::vector<std::complex<double>> blocks;
    std::vector<std::complex<double>> block_integrals;
    std::vector<std::size_t> arrivals_through;

    std::complex<double> total() const { return partial.empty() ? std::complex<double>{} : partial.back(); }
};

char const* to_string(SeriesEvaluation::Method m);

//! sum_{n<=N} f(S_n) with compensated summation.
std::complex<double> partial_sum(SeriesFunction const& f, ArrivalStream const& arrivals, std::size_t n);

//! Every prefix of the direct sum.
SeriesEvaluation direct_evaluate(SeriesFunction const& f, ArrivalStream const& arrivals, std::size_t n);

//! Summation by parts for f = exp(ix)/x:
//! sum_{n<=N} zeta_n/S_n = R_N Z_N + sum_{n<N} D_n Z_n, recorded per prefix.
SeriesEvaluation abel_evaluate(ArrivalStream const& arrivals, std::size_t n);

//! Prefix sums along a uniform random permutation of the first N indices.
SeriesEvaluation permuted_sum(SeriesFunction const& f, ArrivalStream const& arrivals,
                              std::size_t n, std::uint64_t perm_seed);

//! Identity permutation expressed as a permuted evaluation.
SeriesEvaluation identity_permuted_sum(SeriesFunction const& f, ArrivalStream const& arrivals,
                                       std::size_t n);

//! max_k |P_k - P_final| along the evaluation's prefix walk.
double fluctuation(SeriesEvaluation const& eval);

//! Block values X_k = sum_n f(S_n) 1{S_n in [e_k, e_{k+1})} for the first
//! `blocks` intervals of the partition (e_0 < e_1 < ...). The running sum
//! over blocks continues the direct compensated sum term by term, so it
//! equals the direct partial sum at each block boundary bit for bit.
//! Throws ExtensionRequired when arrivals do not pass e_K.
SeriesEvaluation block_sum(SeriesFunction const& f, ArrivalStream const& arrivals,
                           std::vector<double> const& partition, std::size_t blocks,
                           bool with_integrals = true);

//! e_k = k * length for k = 0..count.
std::vector<double> uniform_partition(double length, std::size_t count);

struct CampbellMoments
{
    std::complex<double> mean;  // int f
    double variance = 0;        // int |f|^2
};

//! Mean and variance of N(f 1_[lo,hi)) for a unit-rate Poisson measure.
CampbellMoments campbell_moments(SeriesFunction const& f, double lo, double hi);

//---------------------------------------------------------------------------//
// Tail diagnostics
//---------------------------------------------------------------------------//
struct IndexWindow
{
    std::size_t lo = 1;  // 1-based, inclusive
    std::size_t hi = 1;
};

struct TailReport
{
    std::vector<IndexWindow> windows;
    std::vector<double> oscillation;
    //! -slope of log oscillation against log window start; absent when some
    //! oscillation is zero.
    std::optional<double> decay_exponent;
};

//! Dyadic windows [N, 2N] for N = 2^lo .. 2^hi.
std::vector<IndexWindow> dyadic_windows(unsigned lo_exp, unsigned hi_exp);

//! Oscillation = diameter of the bounding box of the partial sums in each window.
TailReport tail_diagnostics(SeriesEvaluation const& eval, std::vector<IndexWindow> const& windows);

//! Average oscillations over replicate reports (fixed order) and refit.
TailReport average_tail_reports(std::vector<TailReport> const& reports);

//! CSV writers: trace (method, n_or_k, partial_real, partial_imag) and
//! diagnostics (window_lo, window_hi, oscillation).
void write_trace_csv(SeriesEvaluation const& eval, std::ostream& os, bool header = true);
void write_diagnostics_csv(TailReport const& report, std::ostream& os);

}  // namespace poissinc
