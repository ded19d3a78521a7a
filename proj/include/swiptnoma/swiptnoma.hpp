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

#ifndef SWIPTNOMA_SWIPTNOMA_HPP
#define SWIPTNOMA_SWIPTNOMA_HPP

#include "analytic.hpp"
#include "csv.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "model.hpp"
#include "montecarlo.hpp"
#include "quadrature.hpp"
#include "scenario.hpp"

#endif
