// Copyright 2026 The maxrpc Authors
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

#ifndef MAXRPC_MAXRPC_HPP_
#define MAXRPC_MAXRPC_HPP_

#include "maxrpc/bench.hpp"
#include "maxrpc/domains.hpp"
#include "maxrpc/generators.hpp"
#include "maxrpc/heuristics.hpp"
#include "maxrpc/instance.hpp"
#include "maxrpc/io.hpp"
#include "maxrpc/native_format.hpp"
#include "maxrpc/network.hpp"
#include "maxrpc/oracle.hpp"
#include "maxrpc/propagator.hpp"
#include "maxrpc/relation.hpp"
#include "maxrpc/search.hpp"
#include "maxrpc/session.hpp"
#include "maxrpc/stats.hpp"
#include "maxrpc/supports.hpp"
#include "maxrpc/trail.hpp"
#include "maxrpc/xcsp.hpp"

#endif  // MAXRPC_MAXRPC_HPP_
