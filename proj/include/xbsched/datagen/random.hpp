// Copyright 2026 The xbsched Authors
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

#include <cstdint>
#include <random>
#include <string_view>

namespace xb {

using Rng = std::mt19937_64;

// Independent named stream: (root seed, purpose, day, index). Results never
// depend on the order in which streams are consumed.
Rng substream(std::uint64_t seed, std::string_view purpose, int day = 0, int index = 0);

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v);
std::uint64_t hash_string(std::string_view s);

}  // namespace xb
