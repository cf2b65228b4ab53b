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

#ifndef SBPIPE_INGEST_HPP
#define SBPIPE_INGEST_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "records.hpp"

namespace sb {

/// True iff the id is empty, whitespace-only, or made solely of masking
/// characters. eBay partial masks like "a***e" contain alphanumerics and
/// remain usable identities.
bool is_masked_id(const std::string& bidder_id);

/// Parses an auction bid file. Malformed rows are skipped and recorded in
/// the report; input order is preserved. A missing mandatory column or an
/// unreadable file is fatal.
std::pair<std::vector<RawBidRecord>, ParseReport> parse_auction_file(
    const std::string& path,
    const std::map<std::string, std::string>& schema, char delim);

std::pair<std::vector<RawHistoryRecord>, ParseReport> parse_history_file(
    const std::string& path,
    const std::map<std::string, std::string>& schema, char delim);

/// Serializes accepted bid records back to the canonical column order
/// (typed columns first, then extra fields by name). Re-parsing the result
/// yields an equal record list.
void write_auction_records(const std::string& path,
                           const std::vector<RawBidRecord>& records,
                           const std::map<std::string, std::string>& schema,
                           char delim);

void write_history_records(const std::string& path,
                           const std::vector<RawHistoryRecord>& records,
                           const std::map<std::string, std::string>& schema,
                           char delim);

/// Defect report as delimited text: row_number,field,reason.
void write_defects(const std::string& path, const ParseReport& report,
                   char delim);

}  // namespace sb

#endif  // SBPIPE_INGEST_HPP
