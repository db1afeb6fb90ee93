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

#include "soeval/app/gateway_client.hpp"

#include <cmath>

#include "httplib.h"

namespace soeval::app {
namespace {

httplib::Client make_client(const std::string& base_url, double timeout_s) {
  httplib::Client client(base_url);
  const auto secs = static_cast<time_t>(timeout_s);
  const auto usecs = static_cast<time_t>((timeout_s - std::floor(timeout_s)) * 1e6);
  client.set_connection_timeout(secs > 5 ? 5 : secs, secs > 5 ? 0 : usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);
  return client;
}

std::string describe_transport(httplib::Error e) { return httplib::to_string(e); }

util::Json parse_body(const std::string& body, const char* what) {
  auto j = util::Json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw GatewayError(std::string(what) + ": response is not a JSON object", "bad_response");
  return j;
}

}  // namespace

util::OrderedJson request_to_json(const GenerateRequest& r) {
  util::OrderedJson j;
  j["prompt"] = r.prompt;
  j["n"] = r.n;
  j["temperature"] = r.temperature;
  j["top_p"] = r.top_p;
  j["max_new_tokens"] = r.max_new_tokens;
  j["stop_sequences"] = r.stop_sequences;
  if (r.seed) j["seed"] = *r.seed;
  return j;
}

GenerateRequest request_from_json(const util::Json& j) {
  GenerateRequest r;
  r.prompt = j.at("prompt").get<std::string>();
  r.n = j.value("n", 1u);
  r.temperature = j.value("temperature", 0.2);
  r.top_p = j.value("top_p", 0.95);
  r.max_new_tokens = j.value("max_new_tokens", 300u);
  r.stop_sequences = j.value("stop_sequences", std::vector<std::string>{});
  if (j.contains("seed") && !j["seed"].is_null()) r.seed = j["seed"].get<std::int64_t>();
  return r;
}

GatewayClient::GatewayClient(std::string address, double timeout_s) : timeout_s_(timeout_s) {
  if (address.find("://") == std::string::npos) address = "http://" + address;
  while (!address.empty() && address.back() == '/') address.pop_back();
  base_url_ = std::move(address);
}

GatewayHealth GatewayClient::health() const {
  auto client = make_client(base_url_, timeout_s_);
  auto res = client.Get("/health");
  if (!res) throw GatewayError("gateway " + base_url_ + " unreachable: " + describe_transport(res.error()), "unreachable");
  if (res->status != 200) throw GatewayError("gateway /health returned HTTP " + std::to_string(res->status), "unhealthy");
  const auto j = parse_body(res->body, "/health");
  GatewayHealth h{j.value("status", ""), j.value("model", "")};
  if (h.status != "ok") throw GatewayError("gateway reports status '" + h.status + "'", "unhealthy");
  return h;
}

std::vector<std::string> GatewayClient::generate(const GenerateRequest& request) const {
  auto client = make_client(base_url_, timeout_s_);
  auto res = client.Post("/generate", request_to_json(request).dump(), "application/json");
  if (!res) throw GatewayError("POST /generate failed: " + describe_transport(res.error()), "unreachable");
  if (res->status != 200) {
    std::string code;
    auto j = util::Json::parse(res->body, nullptr, false);
    if (j.is_object()) {
      if (j.contains("code") && j["code"].is_string()) code = j["code"];
      else if (j.contains("error") && j["error"].is_object()) code = j["error"].value("code", "");
    }
    throw GatewayError("POST /generate returned HTTP " + std::to_string(res->status) + (code.empty() ? "" : " (" + code + ")"), code);
  }
  const auto j = parse_body(res->body, "/generate");
  if (!j.contains("completions") || !j["completions"].is_array()) throw GatewayError("/generate: missing completions array", "bad_response");
  std::vector<std::string> texts;
  for (const auto& c : j["completions"]) {
    if (!c.is_object() || !c.contains("text") || !c["text"].is_string()) throw GatewayError("/generate: completion without text", "bad_response");
    texts.push_back(c["text"].get<std::string>());
  }
  if (texts.size() != request.n) {
    throw GatewayError("/generate returned " + std::to_string(texts.size()) + " completions, expected " + std::to_string(request.n), "bad_response");
  }
  return texts;
}

}  // namespace soeval::app
