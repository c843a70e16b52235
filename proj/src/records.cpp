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

#include "precondforge/records.hpp"

#include <system_error>

#include "precondforge/errors.hpp"

namespace precondforge {

namespace fs = std::filesystem;

void for_each_jsonl(const fs::path& path,
                    const std::function<void(const nlohmann::json&)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(lineno);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ContractError(where + ": malformed record: " + e.what());
    }
    try {
      fn(j);
    } catch (const nlohmann::json::exception& e) {
      throw ContractError(where + ": " + e.what());
    } catch (const ContractError& e) {
      throw ContractError(where + ": " + e.what());
    }
  }
  if (in.bad()) throw IoError("read failed on " + path.string());
}

std::vector<nlohmann::json> read_jsonl(const fs::path& path) {
  std::vector<nlohmann::json> out;
  for_each_jsonl(path, [&](const nlohmann::json& j) { out.push_back(j); });
  return out;
}

AtomicWriter::AtomicWriter(fs::path path)
    : path_(std::move(path)), partial_(path_.string() + ".partial") {
  if (path_.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path_.parent_path(), ec);
  }
  out_.open(partial_, std::ios::binary | std::ios::trunc);
  if (!out_) throw IoError("cannot write " + partial_.string());
}

AtomicWriter::~AtomicWriter() {
  if (!committed_) {
    out_.close();
    std::error_code ec;
    fs::remove(partial_, ec);
  }
}

void AtomicWriter::write_line(const ojson& value) {
  out_ << value.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict)
       << '\n';
}

void AtomicWriter::commit() {
  out_.flush();
  if (!out_) throw IoError("write failed on " + partial_.string());
  out_.close();
  std::error_code ec;
  fs::rename(partial_, path_, ec);
  if (ec) {
    throw IoError("cannot rename " + partial_.string() + ": " + ec.message());
  }
  committed_ = true;
}

void write_text_file(const fs::path& path, std::string_view text) {
  AtomicWriter w(path);
  w.stream() << text;
  w.commit();
}

namespace {

std::string str(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) {
    throw ContractError(std::string("missing field '") + key + "'");
  }
  return j.at(key).get<std::string>();
}

std::string str_or(const nlohmann::json& j, const char* key,
                   std::string fallback = {}) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return it->get<std::string>();
}

Label weak_label(const nlohmann::json& j) {
  const Label l = parse_label(str(j, "label"));
  if (l == Label::kAbstain) throw ContractError("record label is ABSTAIN");
  return l;
}

}  // namespace

ojson to_json(const ExtractionRecord& r) {
  ojson j;
  j["stmt_id"] = r.stmt_id;
  j["action"] = r.action;
  j["precondition"] = r.precondition;
  j["label"] = to_string(r.label);
  j["lf_id"] = r.lf_id;
  j["precision"] = r.precision ? ojson(*r.precision) : ojson(nullptr);
  j["source"] = r.source;
  j["text"] = r.text;
  return j;
}

ExtractionRecord extraction_from_json(const nlohmann::json& j) {
  ExtractionRecord r;
  r.stmt_id = str(j, "stmt_id");
  r.action = str(j, "action");
  r.precondition = str(j, "precondition");
  r.label = weak_label(j);
  r.lf_id = str_or(j, "lf_id");
  if (j.contains("precision") && !j["precision"].is_null()) {
    r.precision = j["precision"].get<double>();
  }
  r.source = str_or(j, "source");
  r.text = str_or(j, "text");
  return r;
}

ojson to_json(const AugmentationRecord& r) {
  ojson j;
  j["parent_stmt_id"] = r.parent_stmt_id;
  j["augmented_text"] = r.augmented_text;
  j["pivot"] = r.pivot;
  j["replacement"] = r.replacement;
  j["rank"] = r.rank;
  j["label"] = to_string(r.label);
  j["action"] = r.action;
  j["precondition"] = r.precondition;
  return j;
}

AugmentationRecord augmentation_from_json(const nlohmann::json& j) {
  AugmentationRecord r;
  r.parent_stmt_id = str(j, "parent_stmt_id");
  r.augmented_text = str(j, "augmented_text");
  r.pivot = str(j, "pivot");
  r.replacement = str(j, "replacement");
  r.rank = j.value("rank", std::size_t{1});
  r.label = weak_label(j);
  r.action = str(j, "action");
  r.precondition = str(j, "precondition");
  return r;
}

ojson to_json(const MaskedTrainingRecord& r) {
  ojson j;
  j["stmt_id"] = r.stmt_id;
  j["masked_text"] = r.masked_text;
  j["target"] = r.target;
  j["polarity"] = to_string(r.polarity);
  return j;
}

MaskedTrainingRecord masked_from_json(const nlohmann::json& j) {
  MaskedTrainingRecord r;
  r.stmt_id = str(j, "stmt_id");
  r.masked_text = str(j, "masked_text");
  r.target = str(j, "target");
  r.polarity = parse_polarity(str(j, "polarity"));
  return r;
}

ojson to_json(const NliRecord& r) {
  ojson j;
  j["record_id"] = r.record_id;
  j["hypothesis"] = r.hypothesis;
  j["premise"] = r.premise;
  j["label"] = to_string(r.label);
  j["source_task"] = r.source_task;
  j["split"] = r.split ? ojson(to_string(*r.split)) : ojson(nullptr);
  return j;
}

NliRecord nli_from_json(const nlohmann::json& j) {
  NliRecord r;
  r.record_id = str(j, "record_id");
  r.hypothesis = str(j, "hypothesis");
  r.premise = str(j, "premise");
  r.label = parse_nli_label(str(j, "label"));
  r.source_task = str_or(j, "source_task");
  const std::string s = str_or(j, "split");
  if (!s.empty()) r.split = parse_split(s);
  return r;
}

ojson to_json(const Statement& s) {
  ojson j;
  j["stmt_id"] = s.stmt_id;
  j["doc_id"] = s.doc_id;
  j["source"] = s.source;
  j["index"] = s.index;
  j["text"] = s.text;
  return j;
}

DeltaNliRow delta_nli_from_json(const nlohmann::json& j) {
  return {str(j, "hypothesis"), str_or(j, "premise"), str(j, "update"),
          str(j, "label")};
}

AtomicRow atomic_from_json(const nlohmann::json& j) {
  return {str(j, "head"), str(j, "relation"), str(j, "tail")};
}

WinoventiRow winoventi_from_json(const nlohmann::json& j) {
  return {str(j, "masked_prompt"), str(j, "target"), str(j, "incorrect")};
}

AnionRow anion_from_json(const nlohmann::json& j) {
  return {str(j, "orig_head"), str(j, "neg_head"), str(j, "relation"),
          str(j, "tail")};
}

PacoRow paco_from_json(const nlohmann::json& j) {
  return {str(j, "statement"), str(j, "precondition"), str(j, "label")};
}

LabelSequence read_label_file(const fs::path& path) {
  LabelSequence seq;
  for_each_jsonl(path, [&](const nlohmann::json& j) {
    seq.push_back(str(j, "record_id"), str(j, "label"));
  });
  return seq;
}

void write_label_matrix(const LabelMatrix& m, std::ostream& out) {
  ojson header;
  header["columns"] = m.lf_ids();
  out << header.dump() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ojson row;
    row["row"] = m.row_ids()[i];
    auto labels = ojson::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      labels.push_back(static_cast<int>(m.at(i, c)));
    }
    row["labels"] = std::move(labels);
    out << row.dump() << '\n';
  }
}

LabelMatrix read_label_matrix(const fs::path& path) {
  std::vector<std::string> columns;
  std::vector<std::string> ids;
  std::vector<std::vector<Label>> rows;
  bool have_header = false;
  for_each_jsonl(path, [&](const nlohmann::json& j) {
    if (!have_header) {
      columns = j.at("columns").get<std::vector<std::string>>();
      have_header = true;
      return;
    }
    ids.push_back(str(j, "row"));
    std::vector<Label> labels;
    for (const auto& v : j.at("labels")) {
      const int x = v.get<int>();
      if (x < 0 || x > 2) {
        throw ContractError("label value " + std::to_string(x) +
                            " outside {0,1,2}");
      }
      labels.push_back(static_cast<Label>(x));
    }
    if (labels.size() != columns.size()) {
      throw ContractError("row '" + ids.back() + "' has " +
                          std::to_string(labels.size()) + " labels, expected " +
                          std::to_string(columns.size()));
    }
    rows.push_back(std::move(labels));
  });
  if (!have_header) throw ContractError(path.string() + ": empty matrix file");
  LabelMatrix m(std::move(ids), std::move(columns));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < rows[i].size(); ++c) m.set(i, c, rows[i][c]);
  }
  return m;
}

}  // namespace precondforge
