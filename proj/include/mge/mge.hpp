// Copyright 2026 The mge Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header for the evaluation library (everything except the CLI).

#pragma once

#include "mge/chain_metrics.hpp"
#include "mge/corpus.hpp"
#include "mge/error.hpp"
#include "mge/iaa.hpp"
#include "mge/matcher.hpp"
#include "mge/ooc.hpp"
#include "mge/report.hpp"
#include "mge/synthgen.hpp"
#include "mge/textnorm.hpp"
#include "mge/word_metrics.hpp"
