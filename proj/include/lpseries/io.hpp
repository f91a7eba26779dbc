// Copyright 2026 The lpseries Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LPSERIES_IO_HPP
#define LPSERIES_IO_HPP

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>

namespace lpseries {

// Locale-independent, 17 significant digits; "inf"/"-inf"/"nan" for
// non-finite values.
std::string format_double(double value);

// Writes one CSV row; fields are emitted verbatim.
void write_csv_row(std::ostream& out,
                   std::initializer_list<std::string_view> fields);

// Opens `path` for writing.  Refuses to overwrite an existing file and
// reports failures with the path in the message.
std::ofstream open_output_file(const std::filesystem::path& path);

}  // namespace lpseries

#endif  // LPSERIES_IO_HPP
