// Copyright 2026 The statewalk Authors
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace statewalk {

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double x);

/// Small in-memory CSV table; cells are stored as text.
class CsvTable
{
  public:
    explicit CsvTable(std::vector<std::string> header);

    CsvTable& row(std::initializer_list<double> values);
    CsvTable& row(const std::vector<double>& values);
    CsvTable& row_text(std::vector<std::string> cells);

    const std::vector<std::string>& header() const { return header_; }
    std::size_t rows() const { return rows_.size(); }
    std::string text() const;

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

struct OutputRecord
{
    std::string path;  // relative to the output directory
    std::string sha256;
    std::uintmax_t bytes = 0;
};

/// Writes files under one directory and remembers their checksums, in
/// write order.
class OutputSet
{
  public:
    explicit OutputSet(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }
    void write(const std::string& relative, std::string_view content);
    void write_json(const std::string& relative, const nlohmann::json& value);
    void write_csv(const std::string& relative, const CsvTable& table);
    const std::vector<OutputRecord>& records() const { return records_; }

  private:
    std::filesystem::path root_;
    std::vector<OutputRecord> records_;
};

/// Pretty JSON text with a trailing newline.
std::string json_text(const nlohmann::json& value);

}  // namespace statewalk
