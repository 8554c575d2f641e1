// Copyright 2026 The shadowfit Authors
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

#ifndef SHADOWFIT_SHADOWFIT_HPP
#define SHADOWFIT_SHADOWFIT_HPP

#include "shadowfit/datasets.hpp"
#include "shadowfit/domain.hpp"
#include "shadowfit/error.hpp"
#include "shadowfit/estimation.hpp"
#include "shadowfit/format.hpp"
#include "shadowfit/io.hpp"
#include "shadowfit/localization.hpp"
#include "shadowfit/numerics.hpp"
#include "shadowfit/simulation.hpp"
#include "shadowfit/survey.hpp"

#endif // SHADOWFIT_SHADOWFIT_HPP
