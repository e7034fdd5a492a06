// Copyright 2026 The wigpos Authors
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

// Wigner grid files: a JSON manifest
//
//   {"x_axis": {"min", "max", "count"}, "p_axis": {...}, "hbar": h,
//    "values_path": "grid.csv"}          (or "values": [[...], ...])
//
// with values stored row-major, one row per x index.

#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "wigpos/phase_space.hpp"

namespace wigpos {

nlohmann::json axis_to_json(const AxisGrid &axis);
AxisGrid axis_from_json(const nlohmann::json &j);

/// Manifest with inline values.
nlohmann::json grid_to_json(const WignerGrid &w);

/// Writes values to csv_path and a manifest referencing it (relative to the
/// manifest directory when possible).
void write_wigner_grid(const WignerGrid &w, const std::filesystem::path &manifest_path,
                       const std::filesystem::path &csv_path);

void write_grid_csv(const WignerGrid &w, std::ostream &out);

/// Throws std::runtime_error on missing files or malformed content.
WignerGrid read_wigner_grid(const std::filesystem::path &manifest_path);
WignerGrid grid_from_json(const nlohmann::json &manifest,
                          const std::filesystem::path &base_dir);

}  // namespace wigpos
