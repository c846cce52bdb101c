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

#include "statewalk/output.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace statewalk {

std::string sha256_hex(std::string_view data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < length; ++i)
    {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 15]);
    }
    return out;
}

std::string format_number(double x)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row(std::initializer_list<double> values)
{
    return row(std::vector<double>(values));
}

CsvTable& CsvTable::row(const std::vector<double>& values)
{
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values)
        cells.push_back(format_number(v));
    return row_text(std::move(cells));
}

CsvTable& CsvTable::row_text(std::vector<std::string> cells)
{
    if (cells.size() != header_.size())
        throw std::logic_error("csv row width differs from header");
    rows_.push_back(std::move(cells));
    return *this;
}

std::string CsvTable::text() const
{
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
        {
            if (i)
                out.push_back(',');
            out += cells[i];
        }
        out.push_back('\n');
    };
    line(header_);
    for (const auto& r : rows_)
        line(r);
    return out;
}

OutputSet::OutputSet(std::filesystem::path root) : root_(std::move(root))
{
    std::filesystem::create_directories(root_);
}

void OutputSet::write(const std::string& relative, std::string_view content)
{
    std::filesystem::path path = root_ / relative;
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    records_.push_back({relative, sha256_hex(content), content.size()});
}

void OutputSet::write_json(const std::string& relative, const nlohmann::json& value)
{
    write(relative, json_text(value));
}

void OutputSet::write_csv(const std::string& relative, const CsvTable& table)
{
    write(relative, table.text());
}

std::string json_text(const nlohmann::json& value) { return value.dump(2) + "\n"; }

}  // namespace statewalk
