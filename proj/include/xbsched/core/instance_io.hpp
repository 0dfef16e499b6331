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

#include <filesystem>
#include <string>

#include "json.hpp"
#include "xbsched/core/types.hpp"

namespace xb {

inline constexpr int kSchemaVersion = 1;

// Rationals are written as {"num": n, "den": d}; absence probabilities as
// integer millionths with the scale stored alongside.
nlohmann::json rational_to_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json instance_to_json(const Instance& instance);
// Throws xb::Error on a malformed or version-mismatched document.
Instance instance_from_json(const nlohmann::json& doc);

nlohmann::json first_stage_to_json(const FirstStageSolution& first_stage);
FirstStageSolution first_stage_from_json(const nlohmann::json& doc);

// Canonical text form: sorted keys, one-space indent, trailing newline.
std::string dump_canonical(const nlohmann::json& doc);

void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);
nlohmann::json read_json_file(const std::filesystem::path& path);

void save_instance(const std::filesystem::path& path, const Instance& instance);
Instance load_instance(const std::filesystem::path& path);

}  // namespace xb
