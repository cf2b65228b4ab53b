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

#include "ingest.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include "csv.hpp"
#include "error.hpp"
#include "time_util.hpp"

namespace sb {

namespace {

const std::set<std::string> kKnownCurrencies = {"USD", "CAD", "GBP", "EUR"};

bool parse_double_strict(const std::string& text, double& out) {
    const char* b = text.data();
    const char* e = b + text.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e && std::isfinite(out);
}

bool parse_long_strict(const std::string& text, long& out) {
    const char* b = text.data();
    const char* e = b + text.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

std::string shortest_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

// Maps schema field -> column index; throws on a missing mandatory column.
std::map<std::string, size_t> resolve_columns(
    const std::vector<std::string>& header,
    const std::map<std::string, std::string>& schema,
    const std::string& path) {
    std::map<std::string, size_t> idx;
    for (const auto& [field, column] : schema) {
        bool found = false;
        for (size_t i = 0; i < header.size(); ++i) {
            if (header[i] == column) {
                idx[field] = i;
                found = true;
                break;
            }
        }
        if (!found) {
            throw Error(ErrorKind::Parse, "missing mandatory column '" +
                                              column + "' in " + path);
        }
    }
    return idx;
}

}  // namespace

bool is_masked_id(const std::string& bidder_id) {
    bool saw_mask = false;
    for (char c : bidder_id) {
        if (std::isalnum(static_cast<unsigned char>(c))) return false;
        if (!std::isspace(static_cast<unsigned char>(c))) saw_mask = true;
    }
    (void)saw_mask;
    return true;  // empty, whitespace-only, or masking characters only
}

std::pair<std::vector<RawBidRecord>, ParseReport> parse_auction_file(
    const std::string& path,
    const std::map<std::string, std::string>& schema, char delim) {
    csv::Reader reader(path, delim);
    const auto idx = resolve_columns(reader.header(), schema, path);
    std::set<size_t> typed_cols;
    for (const auto& [field, i] : idx) typed_cols.insert(i);

    std::vector<RawBidRecord> records;
    ParseReport report;
    std::vector<std::string> row;
    while (reader.next(row)) {
        ++report.rows_read;
        const long row_no = reader.row_number();
        auto field = [&](const char* name) -> const std::string& {
            static const std::string empty;
            size_t i = idx.at(name);
            return i < row.size() ? row[i] : empty;
        };
        auto defect = [&](const char* f, const std::string& reason) {
            report.defects.push_back({row_no, f, reason});
        };

        if (row.size() < reader.header().size()) {
            defect("", "row has fewer fields than header");
            continue;
        }

        RawBidRecord r;
        r.product_url = field("product_url");
        r.seller_id = field("seller_id");
        r.bidder_id = field("bidder_id");
        r.bid_currency = field("bid_currency");
        r.duration_text = field("duration");

        if (!parse_double_strict(field("bid_amount"), r.bid_amount) ||
            r.bid_amount < 0) {
            defect("bid_amount",
                   "not a finite non-negative number: '" +
                       field("bid_amount") + "'");
            continue;
        }
        if (!kKnownCurrencies.count(r.bid_currency)) {
            defect("bid_currency",
                   "unknown currency code: '" + r.bid_currency + "'");
            continue;
        }
        if (!parse_double_strict(field("opening_price"), r.opening_price) ||
            r.opening_price < 0) {
            defect("opening_price",
                   "not a finite non-negative number: '" +
                       field("opening_price") + "'");
            continue;
        }
        if (!parse_double_strict(field("winning_price"),
                                 r.declared_winning_price)) {
            defect("winning_price",
                   "not a number: '" + field("winning_price") + "'");
            continue;
        }
        if (!parse_long_strict(field("n_bids"), r.declared_n_bids)) {
            defect("n_bids", "not an integer: '" + field("n_bids") + "'");
            continue;
        }

        bool date_ok = true;
        const char* date_fields[] = {"bid_date", "auction_start_date"};
        const char* time_fields[] = {"bid_time", "auction_start_time"};
        for (const char* f : date_fields) {
            try {
                parse_date_days(field(f));
            } catch (const Error& e) {
                defect(f, e.what());
                date_ok = false;
                break;
            }
        }
        if (!date_ok) continue;
        for (const char* f : time_fields) {
            try {
                parse_time_seconds(field(f));
            } catch (const Error& e) {
                defect(f, e.what());
                date_ok = false;
                break;
            }
        }
        if (!date_ok) continue;

        r.bid_date = field("bid_date");
        r.bid_time = field("bid_time");
        r.auction_start_date = field("auction_start_date");
        r.auction_start_time = field("auction_start_time");

        for (size_t i = 0; i < reader.header().size(); ++i) {
            if (!typed_cols.count(i)) {
                r.extra_fields[reader.header()[i]] =
                    i < row.size() ? row[i] : "";
            }
        }

        records.push_back(std::move(r));
        ++report.rows_accepted;
    }
    return {std::move(records), std::move(report)};
}

std::pair<std::vector<RawHistoryRecord>, ParseReport> parse_history_file(
    const std::string& path,
    const std::map<std::string, std::string>& schema, char delim) {
    csv::Reader reader(path, delim);
    const auto idx = resolve_columns(reader.header(), schema, path);

    std::vector<RawHistoryRecord> records;
    ParseReport report;
    std::vector<std::string> row;
    while (reader.next(row)) {
        ++report.rows_read;
        const long row_no = reader.row_number();
        auto field = [&](const char* name) -> const std::string& {
            static const std::string empty;
            size_t i = idx.at(name);
            return i < row.size() ? row[i] : empty;
        };

        if (row.size() < reader.header().size()) {
            report.defects.push_back(
                {row_no, "", "row has fewer fields than header"});
            continue;
        }

        RawHistoryRecord r;
        r.bidder_id = field("bidder_id");
        r.activity_with_seller_raw = field("activity_with_seller");

        struct Counter {
            const char* field;
            long RawHistoryRecord::* member;
        };
        const Counter counters[] = {
            {"buyer_rating", &RawHistoryRecord::buyer_rating},
            {"items_bid_on_30d", &RawHistoryRecord::items_bid_on_30d},
            {"n_bid_retractions_30d",
             &RawHistoryRecord::n_bid_retractions_30d},
        };
        bool ok = true;
        for (const auto& c : counters) {
            long v = 0;
            if (!parse_long_strict(field(c.field), v) || v < 0) {
                report.defects.push_back(
                    {row_no, c.field,
                     "not a non-negative integer: '" + field(c.field) + "'"});
                ok = false;
                break;
            }
            r.*c.member = v;
        }
        if (!ok) continue;

        records.push_back(std::move(r));
        ++report.rows_accepted;
    }
    return {std::move(records), std::move(report)};
}

void write_auction_records(const std::string& path,
                           const std::vector<RawBidRecord>& records,
                           const std::map<std::string, std::string>& schema,
                           char delim) {
    // canonical order: typed columns in a fixed order, then extra fields
    // sorted by name (union over all records)
    const char* typed_order[] = {
        "product_url",  "seller_id",          "bidder_id",
        "bid_amount",   "bid_currency",       "bid_date",
        "bid_time",     "auction_start_date", "auction_start_time",
        "duration",     "opening_price",      "winning_price",
        "n_bids"};
    std::set<std::string> extra;
    for (const auto& r : records) {
        for (const auto& [k, v] : r.extra_fields) extra.insert(k);
    }

    csv::Writer writer(path, delim);
    std::vector<std::string> header;
    for (const char* f : typed_order) header.push_back(schema.at(f));
    for (const auto& k : extra) header.push_back(k);
    writer.write_row(header);

    for (const auto& r : records) {
        std::vector<std::string> row = {
            r.product_url,
            r.seller_id,
            r.bidder_id,
            shortest_double(r.bid_amount),
            r.bid_currency,
            r.bid_date,
            r.bid_time,
            r.auction_start_date,
            r.auction_start_time,
            r.duration_text,
            shortest_double(r.opening_price),
            shortest_double(r.declared_winning_price),
            std::to_string(r.declared_n_bids)};
        for (const auto& k : extra) {
            auto it = r.extra_fields.find(k);
            row.push_back(it == r.extra_fields.end() ? "" : it->second);
        }
        writer.write_row(row);
    }
}

void write_history_records(const std::string& path,
                           const std::vector<RawHistoryRecord>& records,
                           const std::map<std::string, std::string>& schema,
                           char delim) {
    csv::Writer writer(path, delim);
    writer.write_row({schema.at("bidder_id"), schema.at("buyer_rating"),
                      schema.at("items_bid_on_30d"),
                      schema.at("n_bid_retractions_30d"),
                      schema.at("activity_with_seller")});
    for (const auto& r : records) {
        writer.write_row({r.bidder_id, std::to_string(r.buyer_rating),
                          std::to_string(r.items_bid_on_30d),
                          std::to_string(r.n_bid_retractions_30d),
                          r.activity_with_seller_raw});
    }
}

void write_defects(const std::string& path, const ParseReport& report,
                   char delim) {
    csv::Writer writer(path, delim);
    writer.write_row({"row_number", "field", "reason"});
    for (const auto& d : report.defects) {
        writer.write_row({std::to_string(d.row_number), d.field, d.reason});
    }
}

}  // namespace sb
