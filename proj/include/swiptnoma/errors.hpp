// SPDX-License-Identifier: Apache-2.0
//
// swiptnoma: outage analysis toolkit for energy-harvesting NOMA relaying
// Copyright (C) 2026 The swiptnoma authors
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

#ifndef SWIPTNOMA_ERRORS_HPP
#define SWIPTNOMA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace swiptnoma
{

// Input that violates a documented range or precondition. Maps to CLI exit code 2.
class invalid_config : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Quadrature or other numerical procedure that could not reach its tolerance.
// Maps to CLI exit code 1.
class numerical_failure : public std::runtime_error
{
public:
    numerical_failure(const std::string &what, double error_estimate)
        : std::runtime_error(what + " (achieved error estimate " + std::to_string(error_estimate) + ")"),
          error_estimate_(error_estimate)
    {
    }

    double error_estimate() const noexcept { return error_estimate_; }

private:
    double error_estimate_;
};

} // namespace swiptnoma

#endif
