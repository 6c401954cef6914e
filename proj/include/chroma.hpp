/*
 * Copyright 2026 The chroma authors
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

#include "chroma/arena.hpp"
#include "chroma/cycles.hpp"
#include "chroma/equilibrium.hpp"
#include "chroma/error.hpp"
#include "chroma/io.hpp"
#include "chroma/lifting.hpp"
#include "chroma/memory.hpp"
#include "chroma/parity.hpp"
#include "chroma/payoffs.hpp"
#include "chroma/probes.hpp"
#include "chroma/product.hpp"
#include "chroma/skeletons.hpp"
#include "chroma/value.hpp"
