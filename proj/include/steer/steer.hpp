// Copyright 2026 The Steer Authors
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

#include "steer/qmat.hpp"
#include "steer/io.hpp"
#include "steer/loo.hpp"
#include "steer/criteria.hpp"
#include "steer/states.hpp"
#include "steer/scan.hpp"
#include "steer/estimate.hpp"
#include "steer/selftest.hpp"
