// Copyright 2026 The tribox Authors
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

#ifndef TRIBOX_TRIBOX_HPP
#define TRIBOX_TRIBOX_HPP

#include "tribox/error.hpp"
#include "tribox/box.hpp"
#include "tribox/measures.hpp"
#include "tribox/canonical.hpp"
#include "tribox/simplex.hpp"
#include "tribox/polytope.hpp"
#include "tribox/quantum.hpp"
#include "tribox/io.hpp"
#include "tribox/scenario.hpp"
#include "tribox/repro.hpp"

#endif
