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


#include "wigpos/grid_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace wigpos {

namespace fs = std::filesystem;
using nlohmann::json;

json axis_to_json(const AxisGrid &axis) {
  return {{"min", axis.min()}, {"max", axis.max()}, {"count", axis.count()}};
}

AxisGrid axis_from_json(const json &j) {
  try {
    return AxisGrid(j.at("min").get<double>(), j.at("max").get<double>(),
                    j.at("count").get<int>());
  } catch (const json::exception &e) {
    throw std::runtime_error(std::string("grid manifest: bad axis: ") + e.what());
  }
}

json grid_to_json(const WignerGrid &w) {
  json rows = json::array();
  for (int i = 0; i < w.x_axis().count(); ++i) {
    json row = json::array();
    for (int j = 0; j < w.p_axis().count(); ++j) row.push_back(w.values()(i, j));
    rows.push_back(std::move(row));
  }
  return {{"x_axis", axis_to_json(w.x_axis())},
          {"p_axis", axis_to_json(w.p_axis())},
          {"hbar", w.ctx().hbar()},
          {"values", std::move(rows)}};
}

void write_grid_csv(const WignerGrid &w, std::ostream &out) {
  char buf[32];
  for (int i = 0; i < w.x_axis().count(); ++i) {
    for (int j = 0; j < w.p_axis().count(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", w.values()(i, j));
      if (j > 0) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

void write_wigner_grid(const WignerGrid &w, const fs::path &manifest_path,
                       const fs::path &csv_path) {
  {
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
    write_grid_csv(w, csv);
  }
  fs::path ref = csv_path;
  const fs::path dir = manifest_path.parent_path();
  if (fs::absolute(csv_path).parent_path() == fs::absolute(dir.empty() ? "." : dir)) {
    ref = csv_path.filename();
  }
  json manifest = {{"x_axis", axis_to_json(w.x_axis())},
                   {"p_axis", axis_to_json(w.p_axis())},
                   {"hbar", w.ctx().hbar()},
                   {"values_path", ref.string()}};
  std::ofstream out(manifest_path);
  if (!out) throw std::runtime_error("cannot write " + manifest_path.string());
  out << manifest.dump(2) << '\n';
}

namespace {

Matrix read_csv(const fs::path &path, int rows, int cols) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("grid values file not found: " + path.string());
  Matrix m(rows, cols);
  std::string line;
  int r = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (r >= rows) throw std::runtime_error("grid CSV: too many rows");
    std::stringstream ss(line);
    std::string cell;
    int c = 0;
    while (std::getline(ss, cell, ',')) {
      if (c >= cols) throw std::runtime_error("grid CSV: too many columns");
      try {
        m(r, c++) = std::stod(cell);
      } catch (const std::exception &) {
        throw std::runtime_error("grid CSV: bad number '" + cell + "'");
      }
    }
    if (c != cols) throw std::runtime_error("grid CSV: short row");
    ++r;
  }
  if (r != rows) throw std::runtime_error("grid CSV: row count does not match x_axis");
  return m;
}

}  // namespace

WignerGrid grid_from_json(const json &manifest, const fs::path &base_dir) {
  if (!manifest.is_object()) throw std::runtime_error("grid manifest: not an object");
  const AxisGrid xa = axis_from_json(manifest.at("x_axis"));
  const AxisGrid pa = axis_from_json(manifest.at("p_axis"));
  double hbar = 1.0;
  if (manifest.contains("hbar")) hbar = manifest.at("hbar").get<double>();
  Matrix values;
  if (manifest.contains("values")) {
    const json &rows = manifest.at("values");
    if (!rows.is_array() || static_cast<int>(rows.size()) != xa.count()) {
      throw std::runtime_error("grid manifest: values row count does not match x_axis");
    }
    values.resize(xa.count(), pa.count());
    for (int i = 0; i < xa.count(); ++i) {
      if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != pa.count()) {
        throw std::runtime_error("grid manifest: values column count does not match p_axis");
      }
      for (int j = 0; j < pa.count(); ++j) values(i, j) = rows[i][j].get<double>();
    }
  } else if (manifest.contains("values_path")) {
    fs::path p = manifest.at("values_path").get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    values = read_csv(p, xa.count(), pa.count());
  } else {
    throw std::runtime_error("grid manifest: needs 'values' or 'values_path'");
  }
  return WignerGrid(xa, pa, std::move(values), PhaseSpaceContext(1, hbar));
}

WignerGrid read_wigner_grid(const fs::path &manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw std::runtime_error("grid manifest not found: " + manifest_path.string());
  json manifest;
  try {
    in >> manifest;
  } catch (const json::exception &e) {
    throw std::runtime_error(std::string("grid manifest: ") + e.what());
  }
  return grid_from_json(manifest, manifest_path.parent_path());
}

}  // namespace wigpos
