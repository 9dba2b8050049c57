//
// Copyright 2026 The dpbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPBOX_DPBOX_HPP_
#define DPBOX_DPBOX_HPP_

#include "dpbox/baselines.hpp"
#include "dpbox/boxplot.hpp"
#include "dpbox/dataset.hpp"
#include "dpbox/distribution.hpp"
#include "dpbox/dp_boxplot.hpp"
#include "dpbox/jointexp.hpp"
#include "dpbox/metrics.hpp"
#include "dpbox/noisy_count.hpp"
#include "dpbox/random.hpp"
#include "dpbox/simulation.hpp"
#include "dpbox/unbounded.hpp"

#endif  // DPBOX_DPBOX_HPP_
