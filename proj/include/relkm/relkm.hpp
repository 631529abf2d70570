// Copyright 2026 The relkm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header for the relkm library. The test-only reference
// implementations in relkm/oracle.hpp are deliberately not included here.

#pragma once

#include "relkm/core.hpp"
#include "relkm/errors.hpp"
#include "relkm/io.hpp"
#include "relkm/search.hpp"
#include "relkm/spread.hpp"
#include "relkm/types.hpp"
