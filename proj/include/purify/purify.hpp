// Copyright 2026 The Purify Authors
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


// Convenience header pulling in the whole library.

#pragma once

#include "purify/core.hpp"
#include "purify/dense_oracle.hpp"
#include "purify/gadget.hpp"
#include "purify/gf2.hpp"
#include "purify/mixedness.hpp"
#include "purify/recurrence.hpp"
#include "purify/simon.hpp"
#include "purify/streaming.hpp"
#include "purify/verify.hpp"
