// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

namespace poissinc
{

//! Exponential integral E1(x) = int_x^inf exp(-u)/u du for x > 0.
double expint_e1(double x);

//! Principal branch of E1(w) for w off the closed negative real axis.
std::complex<double> expint_e1(std::complex<double> w);

//! Inverse of E1 on (0, inf): the x > 0 with E1(x) = u.
double expint_e1_inverse(double u);

}  // namespace poissinc
