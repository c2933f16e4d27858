// Copyright 2026 The mbqc Authors
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

#include "mbqc/annealer.hpp"
#include "mbqc/demos.hpp"
#include "mbqc/dense.hpp"
#include "mbqc/expansion.hpp"
#include "mbqc/fixtures.hpp"
#include "mbqc/graph_register.hpp"
#include "mbqc/hamiltonian.hpp"
#include "mbqc/hybrid.hpp"
#include "mbqc/local_clifford.hpp"
#include "mbqc/pattern.hpp"
#include "mbqc/pauli.hpp"
#include "mbqc/rng.hpp"
#include "mbqc/serialization.hpp"
