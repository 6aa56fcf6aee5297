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

#ifndef RIS_ERRORS_HPP
#define RIS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ris
{
    /// Base class for all errors raised by the library.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// A parameter violates the invariant of the type or operation it was passed to.
    /// The message always starts with the parameter name.
    class InvalidArgument : public Error
    {
    public:
        InvalidArgument(const std::string &field, const std::string &what)
            : Error(field + ": " + what), field_(field) {}

        const std::string &field() const noexcept { return field_; }

    private:
        std::string field_;
    };

    /// Load and free-space impedance cancel (z_l + z_0 == 0).
    class DegenerateImpedance : public Error
    {
    public:
        using Error::Error;
    };

    /// An operation defined only for the planar (x-z plane) problem was called with nonzero azimuth.
    class ModeError : public Error
    {
    public:
        using Error::Error;
    };

    /// Multi-access setup that cannot be served, e.g. a NOMA allocation that violates decodability.
    class InfeasibleError : public Error
    {
    public:
        using Error::Error;
    };

    namespace detail
    {
        inline void require(bool ok, const char *field, const char *what)
        {
            if (!ok)
                throw InvalidArgument(field, what);
        }
    }
}

#endif
