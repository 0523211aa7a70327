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

#ifndef EOPERT_RECORDS_H_
#define EOPERT_RECORDS_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace eopert {

// One labelled data point. y and yhat are in {-1, +1}, a and a_c in {0, 1},
// score in [0, 1].
struct Record {
  int y = 1;
  int a = 0;
  std::optional<int> a_c;
  std::optional<double> score;
  std::optional<int> yhat;
};

// Finite sample with uniform column presence: an optional column is either
// filled in every row or in none.
struct RecordSet {
  std::vector<Record> rows;
  bool has_a_c = false;
  bool has_score = false;
  bool has_yhat = false;

  std::size_t size() const { return rows.size(); }

  // Throws DataError on mixed column presence, out-of-range values, or a
  // prediction that disagrees with its score (yhat = +1 iff score > 0.5).
  void Validate() const;
  // Throws MissingColumnError naming the first absent column.
  void Require(bool a_c, bool score, bool yhat) const;
};

// Record CSV: header `y,a,a_c,score,yhat`; optional fields may be empty.
// When only scores are present, yhat is filled in from them. Throws
// DataError on malformed input.
RecordSet ReadRecordCsv(std::istream& in);
RecordSet ReadRecordCsvFile(const std::string& path);
void WriteRecordCsv(std::ostream& out, const RecordSet& records);

}  // namespace eopert

#endif  // EOPERT_RECORDS_H_
