// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#include <blobmarket/csv.hpp>

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace blobmarket::csv {

bool Reader::next(std::vector<std::string>& fields, std::size_t& line)
{
    fields.clear();
    malformed_ = false;
    line = line_;

    int c = in_.get();
    if (c == std::char_traits<char>::eof())
        return false;

    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    for (;; c = in_.get())
    {
        if (c == std::char_traits<char>::eof())
        {
            if (in_quotes)
                malformed_ = true;
            fields.push_back(std::move(field));
            return true;
        }
        const char ch = static_cast<char>(c);
        if (in_quotes)
        {
            if (ch == '"')
            {
                if (in_.peek() == '"')
                {
                    field.push_back('"');
                    in_.get();
                }
                else
                {
                    in_quotes = false;
                }
            }
            else
            {
                if (ch == '\n')
                    ++line_;
                field.push_back(ch);
            }
            continue;
        }
        switch (ch)
        {
        case '"':
            if (field.empty() && !field_was_quoted)
            {
                in_quotes = true;
                field_was_quoted = true;
            }
            else
            {
                malformed_ = true;
                field.push_back(ch);
            }
            break;
        case ',':
            fields.push_back(std::move(field));
            field.clear();
            field_was_quoted = false;
            break;
        case '\r':
            if (in_.peek() == '\n')
                break;
            field.push_back(ch);
            break;
        case '\n':
            ++line_;
            fields.push_back(std::move(field));
            return true;
        default:
            field.push_back(ch);
        }
    }
}

Header::Header(const std::vector<std::string>& names) : names_{names}
{
    for (std::size_t i = 0; i < names_.size(); ++i)
    {
        std::string name = names_[i];
        // Tolerate a UTF-8 byte order mark on the first column.
        if (i == 0 && name.starts_with("\xEF\xBB\xBF"))
            name.erase(0, 3);
        index_.emplace(std::move(name), i);
    }
}

std::optional<std::size_t> Header::find(std::string_view name) const
{
    if (auto it = index_.find(std::string{name}); it != index_.end())
        return it->second;
    return std::nullopt;
}

void Header::require(std::initializer_list<std::string_view> names) const
{
    std::string missing;
    for (const auto name : names)
    {
        if (!find(name))
        {
            if (!missing.empty())
                missing += ", ";
            missing += name;
        }
    }
    if (!missing.empty())
        throw std::runtime_error{"missing CSV columns: " + missing};
}

std::string_view Row::text(std::string_view column) const
{
    const auto idx = header_.find(column);
    if (!idx || *idx >= fields_.size())
        return {};
    return fields_[*idx];
}

std::uint64_t Row::u64(std::string_view column) const
{
    try
    {
        return parse_u64(text(column));
    }
    catch (const std::invalid_argument&)
    {
        throw std::invalid_argument{"bad value in column '" + std::string{column} + "': '" +
                                    std::string{text(column)} + "'"};
    }
}

std::int64_t Row::i64(std::string_view column) const
{
    try
    {
        return parse_i64(text(column));
    }
    catch (const std::invalid_argument&)
    {
        throw std::invalid_argument{"bad value in column '" + std::string{column} + "': '" +
                                    std::string{text(column)} + "'"};
    }
}

bool Row::boolean(std::string_view column) const
{
    const auto v = text(column);
    if (v.empty() || v == "0" || v == "false" || v == "False" || v == "FALSE")
        return false;
    if (v == "1" || v == "true" || v == "True" || v == "TRUE")
        return true;
    throw std::invalid_argument{
        "bad boolean in column '" + std::string{column} + "': '" + std::string{v} + "'"};
}

std::string escape(std::string_view field)
{
    if (field.find_first_of(",\"\r\n") == std::string_view::npos)
        return std::string{field};
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (const char c : field)
    {
        if (c == '"')
            out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, std::initializer_list<std::string_view> fields)
{
    bool first = true;
    for (const auto f : fields)
    {
        if (!first)
            out << ',';
        out << escape(f);
        first = false;
    }
    out << '\n';
}

void write_row(std::ostream& out, const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i)
    {
        if (i)
            out << ',';
        out << escape(fields[i]);
    }
    out << '\n';
}

namespace {
template <typename T>
T parse_integer(std::string_view text)
{
    T v{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc{} || ptr != end)
        throw std::invalid_argument{"not an integer: '" + std::string{text} + "'"};
    return v;
}
}  // namespace

std::uint64_t parse_u64(std::string_view text)
{
    return parse_integer<std::uint64_t>(text);
}

std::int64_t parse_i64(std::string_view text)
{
    return parse_integer<std::int64_t>(text);
}

}  // namespace blobmarket::csv
