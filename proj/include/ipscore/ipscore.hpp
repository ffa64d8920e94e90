/*
 * Copyright (c) 2026 The ipscore Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef IPSCORE_IPSCORE_HPP
#define IPSCORE_IPSCORE_HPP

#include "ipscore/aggregation.hpp"
#include "ipscore/decision.hpp"
#include "ipscore/harness.hpp"
#include "ipscore/ip_scoring.hpp"
#include "ipscore/json_io.hpp"
#include "ipscore/probability.hpp"
#include "ipscore/sampling.hpp"
#include "ipscore/scoring_precise.hpp"

#endif  // IPSCORE_IPSCORE_HPP
