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

#ifndef RIS_CSV_HPP
#define RIS_CSV_HPP

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>

namespace ris::csv
{
    /// Shortest round-trip representation, '.' decimal point regardless of locale.
    std::string number(double value);
    std::string number(std::int64_t value);
    inline std::string number(int value) { return number(static_cast<std::int64_t>(value)); }
    inline std::string number(std::size_t value) { return number(static_cast<std::int64_t>(value)); }

    /// Writes cells joined by ',' and terminated by '\n'.
    void write_row(std::ostream &os, std::initializer_list<std::string_view> cells);

    /// Writes a '#'-prefixed metadata line.
    void write_comment(std::ostream &os, std::string_view text);
}

#endif
