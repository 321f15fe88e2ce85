// Copyright 2026 The relgraph Authors.
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

#include <cstdlib>
#include <stdexcept>

#include "httplib.h"
#include "json.hpp"
#include "relgraph/augment.h"

namespace relgraph::augment {

ChatCompletionClient::ChatCompletionClient(ClientSettings settings)
    : settings_(std::move(settings)) {
  if (const char* key = std::getenv(settings_.api_key_env.c_str())) {
    api_key_ = key;
  }
}

std::string ChatCompletionClient::Complete(const std::string& prompt) {
  if (api_key_.empty()) {
    throw std::runtime_error("credential variable " + settings_.api_key_env +
                             " is not set");
  }
  nlohmann::json body;
  body["model"] = settings_.model;
  body["temperature"] = settings_.temperature;
  body["messages"] = nlohmann::json::array();
  if (!settings_.system_prompt.empty()) {
    body["messages"].push_back(
        {{"role", "system"}, {"content", settings_.system_prompt}});
  }
  body["messages"].push_back({{"role", "user"}, {"content", prompt}});

  httplib::Client client(settings_.base_url);
  client.set_connection_timeout(settings_.timeout_seconds, 0);
  client.set_read_timeout(settings_.timeout_seconds, 0);
  client.set_bearer_token_auth(api_key_);
  auto res = client.Post(settings_.endpoint, body.dump(), "application/json");
  if (!res) {
    throw std::runtime_error("request failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw std::runtime_error("HTTP " + std::to_string(res->status) + ": " +
                             res->body.substr(0, 200));
  }
  try {
    const auto reply = nlohmann::json::parse(res->body);
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("unexpected response: ") + e.what());
  }
}

}  // namespace relgraph::augment
