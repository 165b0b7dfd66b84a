// Copyright 2026 The ucoalign Authors
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

#include "ucoalign/instance_io.h"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace ucoalign {

using nlohmann::json;

namespace {

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string facility_to_json(const FacilityProblem& problem) {
  if (problem.points().size() != problem.dimension()) {
    throw std::invalid_argument(
        "facility instance was not built from points; cannot serialize");
  }
  json doc;
  json pts = json::array();
  for (const Point& p : problem.points()) pts.push_back({p.x, p.y});
  doc["points"] = std::move(pts);
  doc["k"] = problem.budget();
  doc["beta"] = problem.beta();
  return doc.dump(2) + "\n";
}

FacilityProblem facility_from_json(std::string_view text) {
  const json doc = parse(text);
  try {
    std::vector<Point> points;
    for (const json& p : doc.at("points")) {
      if (!p.is_array() || p.size() != 2) {
        throw std::invalid_argument("each point must be [x, y]");
      }
      points.push_back(Point{p[0].get<double>(), p[1].get<double>()});
    }
    return FacilityProblem::FromPoints(std::move(points),
                                       doc.at("k").get<std::size_t>(),
                                       doc.at("beta").get<double>());
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad facility instance: ") +
                                e.what());
  }
}

std::string quadratic_to_json(const QuadraticProblem& problem) {
  const std::size_t n = problem.dimension();
  json rows = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j) row.push_back(problem.alpha(i, j));
    rows.push_back(std::move(row));
  }
  json doc;
  doc["alpha"] = std::move(rows);
  return doc.dump(2) + "\n";
}

QuadraticProblem quadratic_from_json(std::string_view text) {
  const json doc = parse(text);
  try {
    return QuadraticProblem::FromRows(
        doc.at("alpha").get<std::vector<std::vector<double>>>());
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad quadratic instance: ") +
                                e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace ucoalign
