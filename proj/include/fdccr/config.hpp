// Copyright 2026 The fdccr Authors. All Rights Reserved.
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

#ifndef FDCCR_CONFIG_HPP_
#define FDCCR_CONFIG_HPP_

#include <string>

#include "fdccr/channel.hpp"
#include "fdccr/experiments.hpp"

namespace fdccr {

// INI document with [system] and [sweep] sections whose keys are the
// SystemConfig and SweepSpec field names. Lists are comma separated.
//
// Keys present in the file override the values already in `system` and
// `sweep`; both are validated afterwards. Throws ConfigError naming the
// offending key (or "config" with the path when the file is unreadable).
void load_config(const std::string& path, SystemConfig& system, SweepSpec& sweep);
void load_config_text(const std::string& text, SystemConfig& system, SweepSpec& sweep);

std::string format_config(const SystemConfig& system, const SweepSpec& sweep);

}  // namespace fdccr

#endif  // FDCCR_CONFIG_HPP_
