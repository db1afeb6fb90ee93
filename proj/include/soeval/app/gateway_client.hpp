// Copyright 2026 The soeval Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "soeval/util/jsonl.hpp"

namespace soeval::app {

/// Transport failures and error responses from the model gateway.
class GatewayError : public std::runtime_error {
 public:
  GatewayError(const std::string& message, std::string code = {})
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }  // e.g. "context_overflow", "unreachable"

 private:
  std::string code_;
};

struct GenerateRequest {
  std::string prompt;
  std::uint32_t n = 1;
  double temperature = 0.2;
  double top_p = 0.95;
  std::uint32_t max_new_tokens = 300;
  std::vector<std::string> stop_sequences;
  std::optional<std::int64_t> seed;
};

util::OrderedJson request_to_json(const GenerateRequest& request);
GenerateRequest request_from_json(const util::Json& json);

struct GatewayHealth {
  std::string status;
  std::string model;
};

/// Client for POST /generate and GET /health.
class GatewayClient {
 public:
  /// `address` is "host:port" or "http://host:port".
  explicit GatewayClient(std::string address, double timeout_s = 300.0);

  GatewayHealth health() const;

  /// Returns exactly request.n texts or throws GatewayError.
  std::vector<std::string> generate(const GenerateRequest& request) const;

  const std::string& base_url() const { return base_url_; }

 private:
  std::string base_url_;
  double timeout_s_;
};

}  // namespace soeval::app
