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

#ifndef EOPERT_TEXT_H_
#define EOPERT_TEXT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eopert {

// 12 significant digits, '.' separator, independent of the global locale.
std::string FormatDouble(double value);

// Locale-independent parse of the whole string; nullopt on any junk.
std::optional<double> ParseDouble(std::string_view text);
std::optional<long long> ParseInt(std::string_view text);

std::string_view Trim(std::string_view text);
std::vector<std::string_view> SplitOn(std::string_view text, char sep);

}  // namespace eopert

#endif  // EOPERT_TEXT_H_
