// Copyright 2026 The sbpipe Authors
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

#include "csv.hpp"

#include <cmath>
#include <cstdio>

#include "error.hpp"

namespace sb::csv {

std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == delim) {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string quote_field(const std::string& field, char delim) {
    bool needs_quote = false;
    for (char c : field) {
        if (c == delim || c == '"' || c == '\n' || c == '\r') {
            needs_quote = true;
            break;
        }
    }
    if (!needs_quote) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string join_row(const std::vector<std::string>& fields, char delim) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out += delim;
        out += quote_field(fields[i], delim);
    }
    return out;
}

Reader::Reader(const std::string& path, char delim)
    : in_(path), delim_(delim) {
    if (!in_) {
        throw Error(ErrorKind::Io, "cannot open input file: " + path);
    }
    std::string line;
    if (!std::getline(in_, line)) {
        throw Error(ErrorKind::Parse, "missing header row: " + path);
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    header_ = split_line(line, delim_);
}

bool Reader::next(std::vector<std::string>& row) {
    std::string line;
    while (std::getline(in_, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        row = split_line(line, delim_);
        ++row_number_;
        return true;
    }
    return false;
}

Writer::Writer(const std::string& path, char delim)
    : out_(path, std::ios::binary), delim_(delim) {
    if (!out_) {
        throw Error(ErrorKind::Io, "cannot open output file: " + path);
    }
}

void Writer::write_row(const std::vector<std::string>& fields) {
    out_ << join_row(fields, delim_) << '\n';
}

std::string format_real(double value, int decimals) {
    // normalize -0 so output never carries a negative zero
    if (value == 0.0) value = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

}  // namespace sb::csv
