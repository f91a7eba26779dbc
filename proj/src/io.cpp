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

#include "lpseries/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace lpseries {

std::string format_double(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buffer{};
    auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(),
                                   value, std::chars_format::general, 17);
    if (ec != std::errc{})
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buffer.data(), end);
}

void write_csv_row(std::ostream& out,
                   std::initializer_list<std::string_view> fields)
{
    bool first = true;
    for (auto field : fields) {
        if (!first)
            out << ',';
        out << field;
        first = false;
    }
    out << '\n';
}

std::ofstream open_output_file(const std::filesystem::path& path)
{
    if (std::filesystem::exists(path))
        throw std::runtime_error("refusing to overwrite existing output '" +
                                 path.string() + "'");
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() +
                                 "' for writing");
    return out;
}

}  // namespace lpseries
