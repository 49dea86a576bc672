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

#ifndef COEXPLORE_SERVER_PROTOCOL_H_
#define COEXPLORE_SERVER_PROTOCOL_H_

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "coexplore/geometry.h"

namespace coexplore {

// Line-delimited text encoding of the server mailbox. One message per line,
// space-separated fields, doubles printed in shortest round-trip form:
//
//   submit_points <robot> <count> <x1> <y1> ... <xn> <yn>
//   request_goal <robot> <tick> <x> <y>
//   report_reached <robot> <tick> reached|abandoned
//   goal <robot> <x> <y> <reward>
//   none <robot>

struct SubmitPointsRequest {
  int robot_id = 0;
  std::vector<Point2> points;
  friend bool operator==(const SubmitPointsRequest&,
                         const SubmitPointsRequest&) = default;
};

struct RequestGoalRequest {
  int robot_id = 0;
  int tick = 0;
  Point2 position;
  friend bool operator==(const RequestGoalRequest&,
                         const RequestGoalRequest&) = default;
};

struct ReportReachedRequest {
  int robot_id = 0;
  int tick = 0;
  bool reached = true;  // false: goal abandoned
  friend bool operator==(const ReportReachedRequest&,
                         const ReportReachedRequest&) = default;
};

using Request =
    std::variant<SubmitPointsRequest, RequestGoalRequest, ReportReachedRequest>;

struct GoalResponse {
  int robot_id = 0;
  Point2 goal;
  double reward = 0.0;
  friend bool operator==(const GoalResponse&, const GoalResponse&) = default;
};

struct NoneResponse {
  int robot_id = 0;
  friend bool operator==(const NoneResponse&, const NoneResponse&) = default;
};

using Response = std::variant<GoalResponse, NoneResponse>;

std::string EncodeRequest(const Request& request);
std::string EncodeResponse(const Response& response);
// Throw ParseError (line 1, column = 1-based field number).
Request DecodeRequest(std::string_view line);
Response DecodeResponse(std::string_view line);

}  // namespace coexplore

#endif  // COEXPLORE_SERVER_PROTOCOL_H_
