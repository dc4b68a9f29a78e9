// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace blobmarket {

using BigInt = boost::multiprecision::cpp_int;
using Ratio = boost::multiprecision::cpp_rational;

/// Non-negative, arbitrary-precision amount of wei.
///
/// All consensus-relevant fee arithmetic goes through this type. Subtraction
/// that would go below zero throws std::underflow_error instead of wrapping.
class Wei
{
public:
    Wei() = default;
    Wei(std::uint64_t v) : value_{v} {}  // NOLINT: implicit from literals is intended
    explicit Wei(BigInt v);

    /// Parses a base-10 integer string. Throws std::invalid_argument.
    static Wei parse(std::string_view text);

    static Wei gwei(std::uint64_t g) { return Wei{g} * 1'000'000'000u; }

    const BigInt& value() const noexcept { return value_; }
    bool is_zero() const noexcept { return value_.is_zero(); }
    std::string str() const { return value_.str(); }

    /// Lossy conversion for logging and plotting only.
    double to_double() const { return value_.convert_to<double>(); }

    Wei& operator+=(const Wei& rhs)
    {
        value_ += rhs.value_;
        return *this;
    }
    Wei& operator-=(const Wei& rhs);
    Wei& operator*=(std::uint64_t rhs)
    {
        value_ *= rhs;
        return *this;
    }

    friend Wei operator+(Wei lhs, const Wei& rhs) { return lhs += rhs; }
    friend Wei operator-(Wei lhs, const Wei& rhs) { return lhs -= rhs; }
    friend Wei operator*(Wei lhs, std::uint64_t rhs) { return lhs *= rhs; }
    friend Wei operator*(std::uint64_t lhs, Wei rhs) { return rhs *= lhs; }
    friend Wei operator*(const Wei& lhs, const Wei& rhs) { return Wei{lhs.value_ * rhs.value_}; }
    friend Wei operator/(const Wei& lhs, std::uint64_t rhs) { return Wei{lhs.value_ / rhs}; }

    friend bool operator==(const Wei& a, const Wei& b) noexcept { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Wei& a, const Wei& b) noexcept
    {
        const int c = a.value_.compare(b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    BigInt value_{0};
};

/// Blob gas quantity; carried state for the blob fee market.
struct BlobGas
{
    std::uint64_t value = 0;

    friend auto operator<=>(const BlobGas&, const BlobGas&) = default;
};

/// Renders a non-negative ratio as a fixed-point decimal with `digits`
/// fractional digits, rounded half up.
std::string format_ratio(const Ratio& r, int digits = 6);

double to_double(const Ratio& r);

}  // namespace blobmarket
