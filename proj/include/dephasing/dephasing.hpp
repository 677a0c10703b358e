// Copyright 2026 The Dephasing Authors
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

#ifndef DEPHASING_DEPHASING_HPP
#define DEPHASING_DEPHASING_HPP

#include "dephasing/channels.hpp"
#include "dephasing/linalg.hpp"
#include "dephasing/matrix.hpp"
#include "dephasing/metrics.hpp"
#include "dephasing/oracle.hpp"
#include "dephasing/state.hpp"

#endif  // DEPHASING_DEPHASING_HPP
