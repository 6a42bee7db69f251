// Copyright 2026 The mcldp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MCLDP_MCLDP_H_
#define MCLDP_MCLDP_H_

// Umbrella header for the multi-class LDP mining library.

#include "mcldp/bitvec.h"
#include "mcldp/buckets.h"
#include "mcldp/config.h"
#include "mcldp/datagen.h"
#include "mcldp/dataset.h"
#include "mcldp/errors.h"
#include "mcldp/estimation.h"
#include "mcldp/frameworks.h"
#include "mcldp/harness.h"
#include "mcldp/mechanisms.h"
#include "mcldp/metrics.h"
#include "mcldp/privacy_audit.h"
#include "mcldp/rng.h"
#include "mcldp/topk.h"

#endif  // MCLDP_MCLDP_H_
