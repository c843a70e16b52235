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

#pragma once

#include <chrono>
#include <string>

#include <json.hpp>

#include "precondforge/augment.hpp"
#include "precondforge/corpus.hpp"

namespace precondforge {

// Retries cover connection failures and 5xx answers; 4xx answers fail at once.
struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{100};
  double multiplier = 2.0;
};

struct ServiceEndpoint {
  std::string base_url;  // e.g. http://127.0.0.1:8080
  std::chrono::milliseconds timeout{5000};
  RetryPolicy retry;
};

// POSTs a JSON body and returns the parsed JSON answer.
nlohmann::json post_json(const ServiceEndpoint& endpoint,
                         const std::string& path, const nlohmann::json& body);

// Client of the fill-mask service's POST /tag.
//   request:  {"text": "..."}
//   response: [{"surface": "...", "pos": "NOUN"}, ...]  (or {"tokens": [...]})
class RemoteTagger final : public Tagger {
 public:
  explicit RemoteTagger(ServiceEndpoint endpoint)
      : endpoint_(std::move(endpoint)) {}
  std::vector<TaggedToken> tag(std::string_view text) const override;
  std::string version() const override { return "remote:" + endpoint_.base_url; }

 private:
  ServiceEndpoint endpoint_;
};

// Client of POST /fill.
//   request:  {"text", "top_k", "placeholder", "source"}; "source" is the
//             masked pivot, which the service's lexicon mode needs
//   response: {"candidates": [{"token", "score", "pos"}], "model_id", "mode"}
class RemoteFiller final : public MaskFiller {
 public:
  explicit RemoteFiller(ServiceEndpoint endpoint)
      : endpoint_(std::move(endpoint)) {}
  std::vector<FillCandidate> fill(const MaskQuery& query) const override;
  std::string id() const override { return "remote:" + endpoint_.base_url; }

 private:
  ServiceEndpoint endpoint_;
};

// Request/response codecs, shared with tests that stand in for the service.
nlohmann::json fill_request_json(const MaskQuery& query);
std::vector<FillCandidate> parse_fill_response(const nlohmann::json& body,
                                               std::size_t top_k);
std::vector<TaggedToken> parse_tag_response(const nlohmann::json& body,
                                            std::string_view text);

}  // namespace precondforge
