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

#include "chanlsp/toml_lite.hpp"

#include "chanlsp/csv.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace chanlsp
{

namespace
{

std::string trim(const std::string &s)
{
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos)
        return {};
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

// strip a trailing comment that is not inside a quoted string
std::string strip_comment(const std::string &s)
{
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        if (s[i] == '"')
            in_str = !in_str;
        else if (s[i] == '#' && !in_str)
            return s.substr(0, i);
    }
    return s;
}

double parse_number(const std::string &tok, const std::string &key)
{
    std::string t = tok;
    // to_chars/from_chars does not accept a leading '+'
    if (!t.empty() && t[0] == '+')
        t.erase(0, 1);
    double v = 0.0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw std::invalid_argument("config: bad number for key '" + key + "': " + tok);
    return v;
}

} // namespace

TomlLite TomlLite::parse(const std::string &text)
{
    TomlLite out;
    std::istringstream is(text);
    std::string line, table;
    int lineno = 0;
    while (std::getline(is, line))
    {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        line = trim(strip_comment(line));
        if (line.empty())
            continue;
        if (line.front() == '[')
        {
            if (line.back() != ']')
                throw std::invalid_argument("config: malformed table header at line " +
                                            std::to_string(lineno));
            table = trim(line.substr(1, line.size() - 2));
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value at line " +
                                        std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw std::invalid_argument("config: empty key or value at line " +
                                        std::to_string(lineno));
        std::string full = table.empty() ? key : table + "." + key;

        Value v;
        if (val.front() == '"')
        {
            if (val.size() < 2 || val.back() != '"')
                throw std::invalid_argument("config: unterminated string at line " +
                                            std::to_string(lineno));
            v.kind = Value::Kind::String;
            v.s = val.substr(1, val.size() - 2);
        }
        else if (val == "true" || val == "false")
        {
            v.kind = Value::Kind::Bool;
            v.b = val == "true";
        }
        else if (val.front() == '[')
        {
            if (val.back() != ']')
                throw std::invalid_argument("config: unterminated array at line " +
                                            std::to_string(lineno));
            v.kind = Value::Kind::NumberArray;
            std::string inner = val.substr(1, val.size() - 2);
            std::size_t pos = 0;
            while (pos < inner.size())
            {
                std::size_t c = inner.find(',', pos);
                std::string tok = trim(c == std::string::npos ? inner.substr(pos)
                                                              : inner.substr(pos, c - pos));
                if (!tok.empty())
                    v.arr.push_back(parse_number(tok, full));
                if (c == std::string::npos)
                    break;
                pos = c + 1;
            }
        }
        else
        {
            v.kind = Value::Kind::Number;
            v.num = parse_number(val, full);
        }
        out.values_[full] = std::move(v);
    }
    return out;
}

TomlLite TomlLite::parse_file(const std::string &path) { return parse(read_text_file(path)); }

bool TomlLite::has(const std::string &key) const { return values_.count(key) != 0; }

std::optional<std::string> TomlLite::get_string(const std::string &key) const
{
    auto it = values_.find(key);
    if (it == values_.end() || it->second.kind != Value::Kind::String)
        return std::nullopt;
    return it->second.s;
}

std::optional<double> TomlLite::get_number(const std::string &key) const
{
    auto it = values_.find(key);
    if (it == values_.end() || it->second.kind != Value::Kind::Number)
        return std::nullopt;
    return it->second.num;
}

std::optional<bool> TomlLite::get_bool(const std::string &key) const
{
    auto it = values_.find(key);
    if (it == values_.end() || it->second.kind != Value::Kind::Bool)
        return std::nullopt;
    return it->second.b;
}

std::optional<std::vector<double>> TomlLite::get_number_array(const std::string &key) const
{
    auto it = values_.find(key);
    if (it == values_.end() || it->second.kind != Value::Kind::NumberArray)
        return std::nullopt;
    return it->second.arr;
}

double TomlLite::number_or(const std::string &key, double fallback) const
{
    auto v = get_number(key);
    return v ? *v : fallback;
}

std::string TomlLite::string_or(const std::string &key, const std::string &fallback) const
{
    auto v = get_string(key);
    return v ? *v : fallback;
}

bool TomlLite::bool_or(const std::string &key, bool fallback) const
{
    auto v = get_bool(key);
    return v ? *v : fallback;
}

std::string TomlLite::canonical() const
{
    std::string out;
    for (const auto &[k, v] : values_)
    {
        out += k;
        out += '=';
        switch (v.kind)
        {
        case Value::Kind::String:
            out += '"' + v.s + '"';
            break;
        case Value::Kind::Number:
            out += format_double(v.num);
            break;
        case Value::Kind::Bool:
            out += v.b ? "true" : "false";
            break;
        case Value::Kind::NumberArray:
            out += '[';
            for (std::size_t i = 0; i < v.arr.size(); ++i)
            {
                if (i)
                    out += ',';
                out += format_double(v.arr[i]);
            }
            out += ']';
            break;
        }
        out += '\n';
    }
    return out;
}

} // namespace chanlsp
