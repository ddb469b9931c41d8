/*
 * Copyright 2026 The hrsim Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "hrsim/catalog.hpp"
#include "hrsim/config.hpp"
#include "hrsim/event_queue.hpp"
#include "hrsim/experiment.hpp"
#include "hrsim/metrics.hpp"
#include "hrsim/prng.hpp"
#include "hrsim/replication.hpp"
#include "hrsim/scheduling.hpp"
#include "hrsim/simulation.hpp"
#include "hrsim/topology.hpp"
#include "hrsim/types.hpp"
#include "hrsim/workload.hpp"
