// Copyright 2026 The divsum Authors
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

#ifndef DIVSUM_DIVSUM_HPP
#define DIVSUM_DIVSUM_HPP

#include "divsum/afe.hpp"
#include "divsum/arithmetic.hpp"
#include "divsum/bessel.hpp"
#include "divsum/dd.hpp"
#include "divsum/expsum.hpp"
#include "divsum/farey.hpp"
#include "divsum/oscint.hpp"
#include "divsum/parallel.hpp"
#include "divsum/quadrature.hpp"
#include "divsum/rng.hpp"
#include "divsum/voronoi.hpp"
#include "divsum/weight.hpp"

#endif  // DIVSUM_DIVSUM_HPP
