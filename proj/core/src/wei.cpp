// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#include <blobmarket/wei.hpp>

#include <stdexcept>

namespace blobmarket {

Wei::Wei(BigInt v) : value_{std::move(v)}
{
    if (value_.sign() < 0)
        throw std::invalid_argument{"Wei must be non-negative"};
}

Wei Wei::parse(std::string_view text)
{
    if (text.empty() || text.size() > 200)
        throw std::invalid_argument{"invalid wei amount: '" + std::string{text} + "'"};
    for (const char c : text)
    {
        if (c < '0' || c > '9')
            throw std::invalid_argument{"invalid wei amount: '" + std::string{text} + "'"};
    }
    return Wei{BigInt{std::string{text}}};
}

Wei& Wei::operator-=(const Wei& rhs)
{
    if (value_ < rhs.value_)
        throw std::underflow_error{"Wei subtraction underflow"};
    value_ -= rhs.value_;
    return *this;
}

std::string format_ratio(const Ratio& r, int digits)
{
    if (r < 0)
        throw std::invalid_argument{"format_ratio expects a non-negative ratio"};
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i)
        scale *= 10;
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    const BigInt scaled = (2 * num * scale + den) / (2 * den);

    const BigInt whole = scaled / scale;
    std::string frac = BigInt{scaled % scale}.str();
    if (digits == 0)
        return whole.str();
    frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
    return whole.str() + "." + frac;
}

double to_double(const Ratio& r)
{
    return r.convert_to<double>();
}

}  // namespace blobmarket
