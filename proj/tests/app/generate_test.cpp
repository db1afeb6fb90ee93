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

#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "soeval/app/commands.hpp"
#include "soeval/app/gateway_client.hpp"
#include "soeval/eval/completions.hpp"
#include "test_support.hpp"

namespace soeval::app {
namespace {

using soeval::testing::TempDir;

// Minimal stand-in for the model gateway. Each completion text encodes the request seed.
class FakeGateway {
 public:
  FakeGateway() {
    server_.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
      res.set_content(healthy_ ? R"({"status":"ok","model":"fake"})" : R"({"status":"loading","model":"fake"})",
                      "application/json");
    });
    server_.Post("/generate", [this](const httplib::Request& req, httplib::Response& res) {
      const auto body = util::Json::parse(req.body);
      {
        std::lock_guard lock(mu_);
        requests_.push_back(request_from_json(body));
      }
      if (fail_generate_) {
        res.status = 422;
        res.set_content(R"({"error":{"code":"context_overflow","message":"too long"}})", "application/json");
        return;
      }
      util::Json out;
      out["completions"] = util::Json::array();
      const auto n = body["n"].get<int>();
      for (int i = 0; i < n; ++i) out["completions"].push_back({{"text", "    return " + std::to_string(i) + "\n"}});
      res.set_content(out.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeGateway() {
    server_.stop();
    thread_.join();
  }
  std::string address() const { return "127.0.0.1:" + std::to_string(port_); }
  std::vector<GenerateRequest> requests() {
    std::lock_guard lock(mu_);
    return requests_;
  }
  void set_healthy(bool v) { healthy_ = v; }
  void set_fail_generate(bool v) { fail_generate_ = v; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::mutex mu_;
  std::vector<GenerateRequest> requests_;
  std::atomic<bool> healthy_{true};
  std::atomic<bool> fail_generate_{false};
};

struct Fixture : ::testing::Test {
  TempDir dir;
  FakeGateway gateway;
  std::ostringstream out, err;
  Console console{out, err};

  GenerateOptions options() {
    GenerateOptions o;
    o.suite_path = dir / "tasks.jsonl";
    o.gateway = gateway.address();
    o.temperatures = {0.2};
    o.n = 3;
    o.retries = 1;
    o.request_timeout_s = 5;
    o.output = dir / "completions.jsonl";
    return o;
  }

  void SetUp() override {
    // two tasks out of the mini suite
    std::istringstream all(soeval::testing::slurp(soeval::testing::fixture("mini_humaneval.jsonl")));
    std::string line, kept;
    for (int i = 0; i < 2 && std::getline(all, line); ++i) kept += line + "\n";
    soeval::testing::spit(dir / "tasks.jsonl", kept);
  }
};

TEST_F(Fixture, WritesEveryRecord) {
  const auto summary = cmd_generate(options(), console);
  EXPECT_EQ(summary.generated, 6u);
  EXPECT_EQ(summary.failed, 0u);
  const auto completions = eval::load_completions(dir / "completions.jsonl");
  ASSERT_EQ(completions.size(), 6u);
  for (const auto& c : completions) {
    EXPECT_FALSE(c.error);
    EXPECT_EQ(c.temperature, 0.2);
    EXPECT_LT(c.sample_index, 3u);
  }
  const auto reqs = gateway.requests();
  ASSERT_EQ(reqs.size(), 2u);
  EXPECT_EQ(reqs[0].n, 3u);
  EXPECT_DOUBLE_EQ(reqs[0].top_p, 0.95);
  EXPECT_EQ(reqs[0].max_new_tokens, 300u);
  EXPECT_FALSE(reqs[0].stop_sequences.empty());
  EXPECT_TRUE(std::filesystem::exists(dir / "completions.jsonl.manifest.json"));
}

TEST_F(Fixture, ResumeOnlyFetchesMissing) {
  auto o = options();
  o.samples_per_request = 1;
  cmd_generate(o, console);
  // keep 4 of 6 lines
  std::istringstream full(soeval::testing::slurp(o.output));
  std::string line, kept;
  for (int i = 0; i < 4 && std::getline(full, line); ++i) kept += line + "\n";
  soeval::testing::spit(o.output, kept);

  const auto before = gateway.requests().size();
  const auto summary = cmd_generate(o, console);
  EXPECT_EQ(summary.already_present, 4u);
  EXPECT_EQ(summary.generated, 2u);
  EXPECT_EQ(summary.requests, 2u);
  EXPECT_EQ(gateway.requests().size() - before, 2u);
  EXPECT_EQ(eval::load_completions(o.output).size(), 6u);
}

TEST_F(Fixture, TornLastLineIsDropped) {
  auto o = options();
  cmd_generate(o, console);
  auto text = soeval::testing::slurp(o.output);
  text.resize(text.size() - 10);  // cut into the last record
  soeval::testing::spit(o.output, text);
  const auto summary = cmd_generate(o, console);
  EXPECT_TRUE(summary.truncated_partial_line);
  EXPECT_EQ(summary.already_present, 5u);
  EXPECT_EQ(eval::load_completions(o.output).size(), 6u);
}

TEST_F(Fixture, UnhealthyGatewayWritesNothing) {
  gateway.set_healthy(false);
  EXPECT_THROW(cmd_generate(options(), console), GatewayError);
  EXPECT_FALSE(std::filesystem::exists(dir / "completions.jsonl"));
}

TEST_F(Fixture, UnreachableGatewayWritesNothing) {
  auto o = options();
  o.gateway = "127.0.0.1:1";
  EXPECT_THROW(cmd_generate(o, console), GatewayError);
  EXPECT_FALSE(std::filesystem::exists(o.output));
}

TEST_F(Fixture, ErrorResponsesBecomeErrorRecords) {
  gateway.set_fail_generate(true);
  auto o = options();
  o.retries = 2;
  const auto summary = cmd_generate(o, console);
  EXPECT_EQ(summary.failed, 6u);
  EXPECT_EQ(gateway.requests().size(), 6u);  // 2 tasks x (1 + 2 retries)
  const auto completions = eval::load_completions(o.output);
  ASSERT_EQ(completions.size(), 6u);
  for (const auto& c : completions) {
    EXPECT_TRUE(c.error);
    EXPECT_TRUE(c.text.empty());
  }
  EXPECT_NE(err.str().find("context_overflow"), std::string::npos) << err.str();
}

TEST_F(Fixture, SeedIsForwardedAndStable) {
  auto o = options();
  o.seed = 7;
  cmd_generate(o, console);
  const auto first = gateway.requests();
  std::filesystem::remove(o.output);
  cmd_generate(o, console);
  const auto all = gateway.requests();
  ASSERT_EQ(all.size(), 4u);
  ASSERT_TRUE(all[0].seed.has_value());
  EXPECT_EQ(all[0].seed, all[2].seed);
  EXPECT_NE(all[0].seed, all[1].seed);
}

TEST(GatewayWire, RequestRoundTrip) {
  GenerateRequest r;
  r.prompt = "def f():\n";
  r.n = 4;
  r.temperature = 0.6;
  r.stop_sequences = {"\ndef "};
  r.seed = 11;
  const auto j = request_to_json(r);
  EXPECT_EQ(j["prompt"], r.prompt);
  EXPECT_EQ(j["n"], 4);
  EXPECT_EQ(j["temperature"], 0.6);
  EXPECT_EQ(j["top_p"], 0.95);
  EXPECT_EQ(j["max_new_tokens"], 300);
  EXPECT_EQ(j["stop_sequences"][0], "\ndef ");
  const auto back = request_from_json(util::Json::parse(j.dump()));
  EXPECT_EQ(back.prompt, r.prompt);
  EXPECT_EQ(back.seed, r.seed);
  EXPECT_EQ(back.stop_sequences, r.stop_sequences);
}

TEST(GatewayWire, HealthAndShortResponse) {
  httplib::Server server;
  server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"status":"ok","model":"m"})", "application/json");
  });
  server.Post("/generate", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"completions":[{"text":"a"}]})", "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  GatewayClient client("http://127.0.0.1:" + std::to_string(port), 5);
  EXPECT_EQ(client.health().model, "m");
  GenerateRequest r;
  r.n = 2;
  try {
    client.generate(r);
    ADD_FAILURE();
  } catch (const GatewayError& e) {
    EXPECT_EQ(e.code(), "bad_response");
  }
  server.stop();
  t.join();
}

}  // namespace
}  // namespace soeval::app
