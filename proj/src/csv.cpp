// SPDX-License-Identifier: Apache-2.0
//
// chanlsp — urban radio channel measurement-to-model toolkit
// Copyright (C) 2026 chanlsp contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "chanlsp/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chanlsp
{

std::string format_double(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void CsvWriter::comment(const std::string &line)
{
    buf_ += "# ";
    buf_ += line;
    buf_ += '\n';
}

void CsvWriter::header(const std::vector<std::string> &cols) { row(cols); }

void CsvWriter::row(const std::vector<std::string> &cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        if (i)
            buf_ += ',';
        buf_ += cells[i];
    }
    buf_ += '\n';
}

int CsvTable::column_index(const std::string &name) const
{
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name)
            return int(i);
    return -1;
}

CsvTable parse_csv(const std::string &text)
{
    CsvTable t;
    std::istringstream is(text);
    std::string line;
    bool have_header = false;
    while (std::getline(is, line))
    {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (true)
        {
            std::size_t c = line.find(',', pos);
            if (c == std::string::npos)
            {
                cells.push_back(line.substr(pos));
                break;
            }
            cells.push_back(line.substr(pos, c - pos));
            pos = c + 1;
        }
        for (std::string &s : cells)
        {
            std::size_t a = s.find_first_not_of(" \t");
            std::size_t b = s.find_last_not_of(" \t");
            s = a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        }
        if (!have_header)
        {
            t.columns = cells;
            have_header = true;
        }
        else
            t.rows.push_back(cells);
    }
    return t;
}

std::string read_text_file(const std::string &path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_text_file(const std::string &path, const std::string &content)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("cannot write file: " + path);
    f.write(content.data(), std::streamsize(content.size()));
    if (!f)
        throw std::runtime_error("write failed: " + path);
}

} // namespace chanlsp
