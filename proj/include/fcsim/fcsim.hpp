// Copyright 2026 The fcsim Authors
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

#pragma once

// Umbrella header. config.hpp is left out because it pulls in the JSON parser.

#include "fcsim/error.hpp"
#include "fcsim/fcf.hpp"
#include "fcsim/fockspace.hpp"
#include "fcsim/gaussian.hpp"
#include "fcsim/hardware.hpp"
#include "fcsim/io.hpp"
#include "fcsim/measurement.hpp"
#include "fcsim/molparams.hpp"
#include "fcsim/noise.hpp"
#include "fcsim/rng.hpp"
