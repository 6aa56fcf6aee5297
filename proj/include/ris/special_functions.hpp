// SPDX-License-Identifier: Apache-2.0
//
// ris-channel: physics-based channel modelling for reconfigurable surfaces
// Copyright (C) 2026 The ris-channel authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RIS_SPECIAL_FUNCTIONS_HPP
#define RIS_SPECIAL_FUNCTIONS_HPP

namespace ris
{
    /// exp(-x) * I_0(x) for x >= 0. Finite for every finite x.
    double bessel_i0_scaled(double x);

    /// exp(-x) * I_1(x) for x >= 0.
    double bessel_i1_scaled(double x);

    /// log(I_0(x)) for x >= 0, without overflow.
    double log_bessel_i0(double x);

    /// First-order Marcum Q-function
    ///
    ///   Q_1(a, b) = integral_b^inf x exp(-(x^2 + a^2)/2) I_0(a x) dx.
    ///
    /// Evaluated through the Poisson representation Q_1(a, b) = Pr{J <= K} with
    /// K ~ Poisson(a^2/2) and J ~ Poisson(b^2/2) independent. Every term of the
    /// sums is positive, so whichever of Q_1 and 1 - Q_1 is smaller is computed
    /// directly and keeps full relative accuracy.
    double marcum_q1(double a, double b);

    /// 1 - Q_1(a, b), accurate in relative terms when the result is tiny
    /// (deep-outage region).
    double marcum_q1_complement(double a, double b);
}

#endif
