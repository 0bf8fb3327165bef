// Copyright 2026 The bfdcqo Authors
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

#pragma once

#include "bfdcqo/bfdcqo.hpp"
#include "bfdcqo/cd.hpp"
#include "bfdcqo/errors.hpp"
#include "bfdcqo/hubo.hpp"
#include "bfdcqo/hubo_io.hpp"
#include "bfdcqo/mps.hpp"
#include "bfdcqo/parallel.hpp"
#include "bfdcqo/pauli.hpp"
#include "bfdcqo/resources.hpp"
#include "bfdcqo/rng.hpp"
#include "bfdcqo/samples.hpp"
#include "bfdcqo/solvers.hpp"
#include "bfdcqo/statevector.hpp"
