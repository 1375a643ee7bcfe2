/*
 * Copyright 2025 bosonlines contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "bosonlines/bits.hpp"
#include "bosonlines/complex_matrix.hpp"
#include "bosonlines/dephasing.hpp"
#include "bosonlines/distinguishability.hpp"
#include "bosonlines/errors.hpp"
#include "bosonlines/fock_tensor.hpp"
#include "bosonlines/lines.hpp"
#include "bosonlines/loss.hpp"
#include "bosonlines/operator_basis.hpp"
#include "bosonlines/oracles.hpp"
#include "bosonlines/pattern.hpp"
#include "bosonlines/rng.hpp"
#include "bosonlines/unitary.hpp"
