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

// Line-delimited JSON encodings of every record type, plus an output writer
// that only exposes a file under its final name once it is complete.

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "precondforge/augment.hpp"
#include "precondforge/corpus.hpp"
#include "precondforge/extraction.hpp"
#include "precondforge/maskprep.hpp"
#include "precondforge/nliconvert.hpp"
#include "precondforge/pabi.hpp"
#include "precondforge/patterns.hpp"

namespace precondforge {

using ojson = nlohmann::ordered_json;

// Calls `fn` on each non-blank line's parsed value. Errors name the file and
// 1-based line number.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const nlohmann::json&)>& fn);
std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& path);

// Writes to "<path>.partial" and renames on commit(). An uncommitted writer
// removes its partial file.
class AtomicWriter {
 public:
  explicit AtomicWriter(std::filesystem::path path);
  ~AtomicWriter();
  AtomicWriter(const AtomicWriter&) = delete;
  AtomicWriter& operator=(const AtomicWriter&) = delete;

  std::ostream& stream() { return out_; }
  void write_line(const ojson& value);
  void commit();
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::filesystem::path partial_;
  std::ofstream out_;
  bool committed_ = false;
};

void write_text_file(const std::filesystem::path& path, std::string_view text);

ojson to_json(const ExtractionRecord& r);
ojson to_json(const AugmentationRecord& r);
ojson to_json(const MaskedTrainingRecord& r);
ojson to_json(const NliRecord& r);
ojson to_json(const Statement& s);

ExtractionRecord extraction_from_json(const nlohmann::json& j);
AugmentationRecord augmentation_from_json(const nlohmann::json& j);
MaskedTrainingRecord masked_from_json(const nlohmann::json& j);
NliRecord nli_from_json(const nlohmann::json& j);

DeltaNliRow delta_nli_from_json(const nlohmann::json& j);
AtomicRow atomic_from_json(const nlohmann::json& j);
WinoventiRow winoventi_from_json(const nlohmann::json& j);
AnionRow anion_from_json(const nlohmann::json& j);
PacoRow paco_from_json(const nlohmann::json& j);

template <typename T, typename Parse>
std::vector<T> read_records(const std::filesystem::path& path, Parse parse) {
  std::vector<T> out;
  for_each_jsonl(path, [&](const nlohmann::json& j) { out.push_back(parse(j)); });
  return out;
}

// Rows of {record_id, label}.
LabelSequence read_label_file(const std::filesystem::path& path);

// Header line {"columns": [...]} followed by {"row": id, "labels": [..]}
// with labels as integers 0/1/2.
void write_label_matrix(const LabelMatrix& m, std::ostream& out);
LabelMatrix read_label_matrix(const std::filesystem::path& path);

}  // namespace precondforge
