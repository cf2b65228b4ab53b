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

#ifndef SBPIPE_CSV_HPP
#define SBPIPE_CSV_HPP

#include <fstream>
#include <string>
#include <vector>

namespace sb::csv {

/// Splits one delimited line. Fields may be double-quoted; "" inside a
/// quoted field is an escaped quote.
std::vector<std::string> split_line(const std::string& line, char delim);

/// Quotes a field when it contains the delimiter, a quote, or a newline.
std::string quote_field(const std::string& field, char delim);

std::string join_row(const std::vector<std::string>& fields, char delim);

/// Line-oriented reader over a delimited text file with a mandatory header
/// row. Rows are numbered from 1 (the first data row after the header).
class Reader {
  public:
    Reader(const std::string& path, char delim);

    const std::vector<std::string>& header() const { return header_; }

    /// Reads the next data row; returns false at end of file. Blank lines
    /// are skipped and do not advance the row number.
    bool next(std::vector<std::string>& row);

    /// 1-based number of the row most recently returned by next().
    long row_number() const { return row_number_; }

  private:
    std::ifstream in_;
    char delim_;
    std::vector<std::string> header_;
    long row_number_ = 0;
};

/// Writer with deterministic output: '\n' line endings, fields quoted only
/// when necessary.
class Writer {
  public:
    Writer(const std::string& path, char delim);

    void write_row(const std::vector<std::string>& fields);

  private:
    std::ofstream out_;
    char delim_;
};

/// Fixed-notation formatting, e.g. format_real(0.2333333, 5) == "0.23333".
std::string format_real(double value, int decimals);

}  // namespace sb::csv

#endif  // SBPIPE_CSV_HPP
