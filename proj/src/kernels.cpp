// Copyright 2026 The arenasim Authors.
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

#include "arenasim/kernels.hpp"

#include <string>

#include "arenasim/common.hpp"

namespace arenasim::kernels {
namespace {

const Ops* g_active = nullptr;

const Ops* pick_default() {
  if (const Ops* avx2 = avx2_ops()) {
    return avx2;
  }
  return &scalar_ops();
}

}  // namespace

const Ops& active_ops() {
  if (g_active == nullptr) {
    g_active = pick_default();
  }
  return *g_active;
}

void force_backend(std::string_view name) {
  if (name == "scalar") {
    g_active = &scalar_ops();
    return;
  }
  if (name == "avx2") {
    if (const Ops* avx2 = avx2_ops()) {
      g_active = avx2;
      return;
    }
    throw ConfigError("kernel backend 'avx2' is not available on this CPU");
  }
  if (name == "auto") {
    g_active = pick_default();
    return;
  }
  throw ConfigError("unknown kernel backend '" + std::string(name) + "'");
}

}  // namespace arenasim::kernels
