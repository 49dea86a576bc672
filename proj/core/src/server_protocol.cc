/*
 * Copyright 2026 The coexplore Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "coexplore/server_protocol.h"

#include <fmt/format.h>

#include <charconv>
#include <cmath>

#include "coexplore/errors.h"

namespace coexplore {
namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) {
    line.remove_suffix(1);
  }
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos >= line.size()) break;
    const std::size_t end = line.find(' ', pos);
    const std::size_t stop = end == std::string_view::npos ? line.size() : end;
    fields.push_back(line.substr(pos, stop - pos));
    pos = stop;
  }
  return fields;
}

class FieldReader {
 public:
  explicit FieldReader(std::vector<std::string_view> fields)
      : fields_(std::move(fields)) {}

  std::string_view Word() {
    Require();
    return fields_[next_++];
  }
  int Int() {
    const std::string_view f = Word();
    int value = 0;
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
    if (ec != std::errc() || ptr != f.data() + f.size()) Fail("integer");
    return value;
  }
  double Double() {
    const std::string_view f = Word();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
    if (ec != std::errc() || ptr != f.data() + f.size() ||
        !std::isfinite(value)) {
      Fail("number");
    }
    return value;
  }
  void Finish() const {
    if (next_ != fields_.size()) {
      throw ParseError("unexpected trailing field", 1,
                       static_cast<int>(next_) + 1);
    }
  }

 private:
  void Require() const {
    if (next_ >= fields_.size()) {
      throw ParseError("missing field", 1, static_cast<int>(next_) + 1);
    }
  }
  [[noreturn]] void Fail(const char* what) const {
    throw ParseError(std::string("expected ") + what, 1,
                     static_cast<int>(next_));
  }

  std::vector<std::string_view> fields_;
  std::size_t next_ = 0;
};

}  // namespace

std::string EncodeRequest(const Request& request) {
  return std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, SubmitPointsRequest>) {
          std::string line =
              fmt::format("submit_points {} {}", r.robot_id, r.points.size());
          for (const Point2& p : r.points) {
            line += fmt::format(" {} {}", p.x, p.y);
          }
          return line;
        } else if constexpr (std::is_same_v<T, RequestGoalRequest>) {
          return fmt::format("request_goal {} {} {} {}", r.robot_id, r.tick,
                             r.position.x, r.position.y);
        } else {
          return fmt::format("report_reached {} {} {}", r.robot_id, r.tick,
                             r.reached ? "reached" : "abandoned");
        }
      },
      request);
}

std::string EncodeResponse(const Response& response) {
  return std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, GoalResponse>) {
          return fmt::format("goal {} {} {} {}", r.robot_id, r.goal.x, r.goal.y,
                             r.reward);
        } else {
          return fmt::format("none {}", r.robot_id);
        }
      },
      response);
}

Request DecodeRequest(std::string_view line) {
  FieldReader in(SplitFields(line));
  const std::string_view verb = in.Word();
  if (verb == "submit_points") {
    SubmitPointsRequest r;
    r.robot_id = in.Int();
    const int count = in.Int();
    if (count < 0) throw ParseError("negative point count", 1, 3);
    for (int i = 0; i < count; ++i) {
      const double x = in.Double();
      const double y = in.Double();
      r.points.push_back({x, y});
    }
    in.Finish();
    return r;
  }
  if (verb == "request_goal") {
    RequestGoalRequest r;
    r.robot_id = in.Int();
    r.tick = in.Int();
    r.position.x = in.Double();
    r.position.y = in.Double();
    in.Finish();
    return r;
  }
  if (verb == "report_reached") {
    ReportReachedRequest r;
    r.robot_id = in.Int();
    r.tick = in.Int();
    const std::string_view outcome = in.Word();
    if (outcome != "reached" && outcome != "abandoned") {
      throw ParseError("expected reached|abandoned", 1, 4);
    }
    r.reached = outcome == "reached";
    in.Finish();
    return r;
  }
  throw ParseError("unknown request verb '" + std::string(verb) + "'", 1, 1);
}

Response DecodeResponse(std::string_view line) {
  FieldReader in(SplitFields(line));
  const std::string_view verb = in.Word();
  if (verb == "goal") {
    GoalResponse r;
    r.robot_id = in.Int();
    r.goal.x = in.Double();
    r.goal.y = in.Double();
    r.reward = in.Double();
    in.Finish();
    return r;
  }
  if (verb == "none") {
    NoneResponse r;
    r.robot_id = in.Int();
    in.Finish();
    return r;
  }
  throw ParseError("unknown response verb '" + std::string(verb) + "'", 1, 1);
}

}  // namespace coexplore
