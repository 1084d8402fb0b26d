// Copyright 2026 The Petition Authors.
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

#include "petition/groups/codec.hpp"
#include "petition/groups/curve.hpp"
#include "petition/groups/field.hpp"
#include "petition/groups/hash_to_curve.hpp"
#include "petition/groups/pairing.hpp"
#include "petition/groups/params.hpp"
#include "petition/groups/rng.hpp"
