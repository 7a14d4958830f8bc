// Copyright 2026 The FCQEM Authors
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

#include "fcqem/bitstring.hpp"
#include "fcqem/circuit.hpp"
#include "fcqem/dense.hpp"
#include "fcqem/distribution.hpp"
#include "fcqem/errors.hpp"
#include "fcqem/frame.hpp"
#include "fcqem/mitigation.hpp"
#include "fcqem/models_io.hpp"
#include "fcqem/pauli.hpp"
#include "fcqem/qcm.hpp"
#include "fcqem/rng.hpp"
#include "fcqem/simulator.hpp"
