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

#ifndef chanlsp_csv_H
#define chanlsp_csv_H

#include <string>
#include <vector>

namespace chanlsp
{

// Shortest round-trip decimal for a double (std::to_chars), so artifacts are
// byte-stable across runs.
std::string format_double(double v);

// Minimal CSV assembly: '\n' line endings, no quoting (writers emit only
// [A-Za-z0-9_.+-] tokens). Comment lines start with '#'.
class CsvWriter
{
  public:
    void comment(const std::string &line);
    void header(const std::vector<std::string> &cols);
    void row(const std::vector<std::string> &cells);
    const std::string &str() const { return buf_; }

  private:
    std::string buf_;
};

struct CsvTable
{
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    int column_index(const std::string &name) const; // -1 when absent
};

// Parses comments ('#') and blank lines away; simple comma split, no quoting.
CsvTable parse_csv(const std::string &text);

std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &content);

} // namespace chanlsp

#endif
