//
// Copyright 2026 The eopert Authors
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
//

#include "eopert/records.h"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "eopert/errors.h"
#include "eopert/text.h"

namespace eopert {
namespace {

enum Column { kY, kA, kAc, kScore, kYhat, kNumColumns };
constexpr std::array<std::string_view, kNumColumns> kColumnNames = {
    "y", "a", "a_c", "score", "yhat"};

[[noreturn]] void Fail(std::size_t line, const std::string& what) {
  throw DataError("record csv line " + std::to_string(line) + ": " + what);
}

int ParseLabel(std::string_view field, std::size_t line, const char* name) {
  const auto v = ParseInt(field);
  if (!v || (*v != 1 && *v != -1)) {
    Fail(line, std::string(name) + " must be -1 or 1, got '" +
                   std::string(field) + "'");
  }
  return static_cast<int>(*v);
}

int ParseGroup(std::string_view field, std::size_t line, const char* name) {
  const auto v = ParseInt(field);
  if (!v || (*v != 0 && *v != 1)) {
    Fail(line, std::string(name) + " must be 0 or 1, got '" +
                   std::string(field) + "'");
  }
  return static_cast<int>(*v);
}

}  // namespace

void RecordSet::Validate() const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Record& r = rows[i];
    const std::string where = "record " + std::to_string(i) + ": ";
    if (r.y != 1 && r.y != -1) throw DataError(where + "y must be +-1");
    if (r.a != 0 && r.a != 1) throw DataError(where + "a must be 0 or 1");
    if (r.a_c.has_value() != has_a_c || r.score.has_value() != has_score ||
        r.yhat.has_value() != has_yhat) {
      throw DataError(where + "column presence differs from the rest");
    }
    if (r.a_c && *r.a_c != 0 && *r.a_c != 1) {
      throw DataError(where + "a_c must be 0 or 1");
    }
    if (r.yhat && *r.yhat != 1 && *r.yhat != -1) {
      throw DataError(where + "yhat must be +-1");
    }
    if (r.score && !(*r.score >= 0.0 && *r.score <= 1.0)) {
      throw DataError(where + "score outside [0,1]");
    }
    if (r.score && r.yhat && ((*r.score > 0.5) != (*r.yhat == 1))) {
      throw DataError(where + "yhat disagrees with score (threshold 0.5)");
    }
  }
}

void RecordSet::Require(bool a_c, bool score, bool yhat) const {
  if (a_c && !has_a_c) throw MissingColumnError("records lack column a_c");
  if (score && !has_score) throw MissingColumnError("records lack column score");
  if (yhat && !has_yhat) throw MissingColumnError("records lack column yhat");
}

RecordSet ReadRecordCsv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw DataError("record csv is empty");
  std::array<int, kNumColumns> position;
  position.fill(-1);
  const auto header = SplitOn(Trim(line), ',');
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string_view name = Trim(header[i]);
    bool known = false;
    for (int c = 0; c < kNumColumns; ++c) {
      if (name == kColumnNames[c]) {
        if (position[c] >= 0) Fail(line_no, "duplicate column " + std::string(name));
        position[c] = static_cast<int>(i);
        known = true;
      }
    }
    if (!known) Fail(line_no, "unknown column '" + std::string(name) + "'");
  }
  if (position[kY] < 0 || position[kA] < 0) {
    Fail(line_no, "header must contain y and a");
  }

  RecordSet records;
  std::array<std::size_t, kNumColumns> filled = {};
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto fields = SplitOn(Trim(line), ',');
    if (fields.size() != header.size()) {
      Fail(line_no, "expected " + std::to_string(header.size()) +
                        " fields, got " + std::to_string(fields.size()));
    }
    auto field = [&](Column c) -> std::string_view {
      return position[c] < 0 ? std::string_view() : Trim(fields[position[c]]);
    };
    Record r;
    r.y = ParseLabel(field(kY), line_no, "y");
    r.a = ParseGroup(field(kA), line_no, "a");
    if (!field(kAc).empty()) r.a_c = ParseGroup(field(kAc), line_no, "a_c");
    if (!field(kYhat).empty()) r.yhat = ParseLabel(field(kYhat), line_no, "yhat");
    if (!field(kScore).empty()) {
      const auto s = ParseDouble(field(kScore));
      if (!s) Fail(line_no, "bad score '" + std::string(field(kScore)) + "'");
      r.score = *s;
    }
    filled[kAc] += r.a_c.has_value();
    filled[kScore] += r.score.has_value();
    filled[kYhat] += r.yhat.has_value();
    records.rows.push_back(r);
  }
  const std::size_t n = records.rows.size();
  auto presence = [&](Column c) {
    if (filled[c] != 0 && filled[c] != n) {
      throw DataError("column " + std::string(kColumnNames[c]) +
                      " is filled in only some rows");
    }
    return n > 0 && filled[c] == n;
  };
  records.has_a_c = presence(kAc);
  records.has_score = presence(kScore);
  records.has_yhat = presence(kYhat);
  if (records.has_score && !records.has_yhat) {
    for (Record& r : records.rows) r.yhat = *r.score > 0.5 ? 1 : -1;
    records.has_yhat = true;
  }
  records.Validate();
  return records;
}

RecordSet ReadRecordCsvFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open record file " + path);
  return ReadRecordCsv(in);
}

void WriteRecordCsv(std::ostream& out, const RecordSet& records) {
  out << "y,a,a_c,score,yhat\n";
  for (const Record& r : records.rows) {
    out << r.y << ',' << r.a << ',';
    if (r.a_c) out << *r.a_c;
    out << ',';
    if (r.score) out << FormatDouble(*r.score);
    out << ',';
    if (r.yhat) out << *r.yhat;
    out << '\n';
  }
}

}  // namespace eopert
