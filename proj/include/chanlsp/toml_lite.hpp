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

#ifndef chanlsp_toml_lite_H
#define chanlsp_toml_lite_H

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chanlsp
{

// Reader for the TOML subset the pipeline configs use: [table] headers,
// key = value with strings, numbers, booleans and flat arrays, '#' comments.
// Keys are addressed as "table.key" ("" table for top-level keys).
class TomlLite
{
  public:
    static TomlLite parse(const std::string &text);
    static TomlLite parse_file(const std::string &path);

    bool has(const std::string &key) const;
    std::optional<std::string> get_string(const std::string &key) const;
    std::optional<double> get_number(const std::string &key) const;
    std::optional<bool> get_bool(const std::string &key) const;
    std::optional<std::vector<double>> get_number_array(const std::string &key) const;

    double number_or(const std::string &key, double fallback) const;
    std::string string_or(const std::string &key, const std::string &fallback) const;
    bool bool_or(const std::string &key, bool fallback) const;

    // canonical serialization used for config hashing
    std::string canonical() const;

  private:
    struct Value
    {
        enum class Kind
        {
            String,
            Number,
            Bool,
            NumberArray
        } kind = Kind::String;
        std::string s;
        double num = 0.0;
        bool b = false;
        std::vector<double> arr;
    };
    std::map<std::string, Value> values_;
};

} // namespace chanlsp

#endif
