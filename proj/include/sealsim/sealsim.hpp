// Copyright 2026 The sealsim Authors
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

#include "sealsim/analysis.hpp"
#include "sealsim/attack.hpp"
#include "sealsim/claims.hpp"
#include "sealsim/errors.hpp"
#include "sealsim/lambda_io.hpp"
#include "sealsim/linalg.hpp"
#include "sealsim/montecarlo.hpp"
#include "sealsim/report.hpp"
#include "sealsim/rng.hpp"
#include "sealsim/seal.hpp"
