// Copyright 2026 The thermorl Authors.
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

#include "thermorl/log.hpp"

#include <atomic>
#include <iostream>

namespace thermorl::log {
namespace {

std::atomic<Level> g_level{Level::warning};

void emit(Level at, std::string_view tag, std::string_view msg) {
  if (at < g_level.load(std::memory_order_relaxed)) return;
  std::clog << tag << ": " << msg << '\n';
}

}  // namespace

void set_level(Level level) { g_level.store(level, std::memory_order_relaxed); }
Level level() { return g_level.load(std::memory_order_relaxed); }

void debug(std::string_view msg) { emit(Level::debug, "debug", msg); }
void info(std::string_view msg) { emit(Level::info, "info", msg); }
void warning(std::string_view msg) { emit(Level::warning, "warning", msg); }

}  // namespace thermorl::log
