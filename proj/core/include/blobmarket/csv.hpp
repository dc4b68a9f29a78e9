// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace blobmarket::csv {

/// RFC-4180 record reader: quoted fields, doubled quotes, embedded newlines,
/// CRLF or LF line endings.
class Reader
{
public:
    explicit Reader(std::istream& in) : in_{in} {}

    /// Reads the next record. Returns false at end of input. `line` is the
    /// 1-based physical line the record starts on.
    bool next(std::vector<std::string>& fields, std::size_t& line);

    /// Set when the last record had an unterminated quote.
    bool last_record_malformed() const { return malformed_; }

private:
    std::istream& in_;
    std::size_t line_ = 1;
    bool malformed_ = false;
};

/// Header lookup for a CSV file with a header row.
class Header
{
public:
    Header() = default;
    explicit Header(const std::vector<std::string>& names);

    std::optional<std::size_t> find(std::string_view name) const;
    /// Throws std::runtime_error naming the missing columns.
    void require(std::initializer_list<std::string_view> names) const;
    std::size_t size() const { return names_.size(); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Row accessor bound to a header; typed getters throw std::invalid_argument
/// with the column name on malformed values.
class Row
{
public:
    Row(const Header& header, const std::vector<std::string>& fields)
        : header_{header}, fields_{fields}
    {}

    std::string_view text(std::string_view column) const;
    std::uint64_t u64(std::string_view column) const;
    std::int64_t i64(std::string_view column) const;
    bool boolean(std::string_view column) const;
    bool empty(std::string_view column) const { return text(column).empty(); }

private:
    const Header& header_;
    const std::vector<std::string>& fields_;
};

std::string escape(std::string_view field);

/// Writes one record, quoting fields that need it, terminated by '\n'.
void write_row(std::ostream& out, std::initializer_list<std::string_view> fields);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

std::uint64_t parse_u64(std::string_view text);
std::int64_t parse_i64(std::string_view text);

}  // namespace blobmarket::csv
