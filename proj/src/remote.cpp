// Copyright 2026 The PrecondForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "precondforge/remote.hpp"

#include <httplib.h>

#include <thread>

#include "precondforge/errors.hpp"

namespace precondforge {

nlohmann::json post_json(const ServiceEndpoint& endpoint,
                         const std::string& path, const nlohmann::json& body) {
  if (endpoint.base_url.empty()) {
    throw ConfigError("service URL not configured");
  }
  const std::string payload = body.dump();
  auto backoff = endpoint.retry.initial_backoff;
  std::string last_error;
  const int attempts = std::max(1, endpoint.retry.attempts);
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    httplib::Client client(endpoint.base_url);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(endpoint.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(
        endpoint.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    auto res = client.Post(path, payload, "application/json");
    if (!res) {
      last_error = "request to " + endpoint.base_url + path + " failed: " +
                   httplib::to_string(res.error());
    } else if (res->status >= 500) {
      last_error = endpoint.base_url + path + " answered " +
                   std::to_string(res->status);
    } else if (res->status != 200) {
      throw TransportError(endpoint.base_url + path + " rejected request (" +
                           std::to_string(res->status) + "): " + res->body);
    } else {
      try {
        return nlohmann::json::parse(res->body);
      } catch (const nlohmann::json::exception& e) {
        throw TransportError("malformed response from " + endpoint.base_url +
                             path + ": " + e.what());
      }
    }
    if (attempt < attempts) {
      std::this_thread::sleep_for(backoff);
      backoff = std::chrono::milliseconds(static_cast<long long>(
          static_cast<double>(backoff.count()) * endpoint.retry.multiplier));
    }
  }
  throw TransportError(last_error + " (after " + std::to_string(attempts) +
                       " attempts)");
}

nlohmann::json fill_request_json(const MaskQuery& query) {
  return nlohmann::json{{"text", query.text_with_placeholder},
                        {"top_k", query.top_k},
                        {"placeholder", query.placeholder},
                        {"source", query.pivot.surface}};
}

std::vector<FillCandidate> parse_fill_response(const nlohmann::json& body,
                                               std::size_t top_k) {
  std::vector<FillCandidate> out;
  try {
    for (const auto& c : body.at("candidates")) {
      FillCandidate fc;
      fc.token = c.at("token").get<std::string>();
      fc.score = c.at("score").get<double>();
      fc.pos = parse_pos(c.at("pos").get<std::string>());
      out.push_back(std::move(fc));
    }
  } catch (const nlohmann::json::exception& e) {
    throw TransportError(std::string("malformed fill response: ") + e.what());
  } catch (const ContractError& e) {
    throw TransportError(std::string("malformed fill response: ") + e.what());
  }
  if (out.size() > top_k) {
    throw TransportError("malformed fill response: more than top_k candidates");
  }
  return out;
}

std::vector<TaggedToken> parse_tag_response(const nlohmann::json& body,
                                            std::string_view text) {
  const nlohmann::json& items =
      body.is_object() && body.contains("tokens") ? body["tokens"] : body;
  if (!items.is_array()) {
    throw TransportError("malformed tag response: expected a token list");
  }
  std::vector<TaggedToken> out;
  std::size_t cursor = 0;
  try {
    for (const auto& item : items) {
      TaggedToken t;
      t.surface = item.at("surface").get<std::string>();
      t.pos = parse_pos(item.at("pos").get<std::string>());
      const std::size_t at = text.find(t.surface, cursor);
      if (t.surface.empty() || at == std::string_view::npos) {
        throw TransportError("malformed tag response: token '" + t.surface +
                             "' not found in text");
      }
      t.span = {at, at + t.surface.size()};
      t.index = out.size();
      cursor = t.span.end;
      out.push_back(std::move(t));
    }
  } catch (const nlohmann::json::exception& e) {
    throw TransportError(std::string("malformed tag response: ") + e.what());
  } catch (const ContractError& e) {
    throw TransportError(std::string("malformed tag response: ") + e.what());
  }
  return out;
}

std::vector<TaggedToken> RemoteTagger::tag(std::string_view text) const {
  if (text::trim(text).empty()) throw ContractError("tag_tokens: empty text");
  const auto body = post_json(endpoint_, "/tag", {{"text", std::string(text)}});
  return parse_tag_response(body, text);
}

std::vector<FillCandidate> RemoteFiller::fill(const MaskQuery& query) const {
  validate(query);
  const auto body = post_json(endpoint_, "/fill", fill_request_json(query));
  return parse_fill_response(body, query.top_k);
}

}  // namespace precondforge
