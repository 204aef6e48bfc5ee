// Copyright 2026 The urfock Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header.
#ifndef URFOCK_URFOCK_HPP
#define URFOCK_URFOCK_HPP

#include "urfock/common.hpp"
#include "urfock/fock.hpp"
#include "urfock/modeops.hpp"
#include "urfock/spatial.hpp"
#include "urfock/dynamics.hpp"
#include "urfock/algebra.hpp"
#include "urfock/internal.hpp"
#include "urfock/manybody.hpp"
#include "urfock/gravity.hpp"
#include "urfock/config.hpp"
#include "urfock/io.hpp"
#include "urfock/checks.hpp"

#endif  // URFOCK_URFOCK_HPP
