// Copyright 2026 The sicforge Authors
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

#ifndef SICFORGE_SICFORGE_HPP
#define SICFORGE_SICFORGE_HPP

// Everything except JSON persistence (sicforge/io.hpp), which additionally
// needs the vendored nlohmann/json header.

#include "sicforge/equivalence.hpp"
#include "sicforge/error.hpp"
#include "sicforge/group.hpp"
#include "sicforge/hermitian.hpp"
#include "sicforge/irreps.hpp"
#include "sicforge/jordan.hpp"
#include "sicforge/lie.hpp"
#include "sicforge/random.hpp"
#include "sicforge/report.hpp"
#include "sicforge/sic.hpp"
#include "sicforge/simplex.hpp"
#include "sicforge/structure.hpp"

#endif  // SICFORGE_SICFORGE_HPP
