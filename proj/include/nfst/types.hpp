#pragma once

#include "nfst/keccak.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nfst {

using BigUint = boost::multiprecision::cpp_int;
using Timestamp = std::uint64_t;
using TokenId = std::uint64_t;

/// 20-byte account identifier. The all-zero value is the "no user / no
/// bidder" sentinel and never a valid caller.
class Address
{
public:
    using Bytes = std::array<std::uint8_t, 20>;

    constexpr Address() = default;
    constexpr explicit Address(const Bytes& bytes) : bytes_(bytes) {}

    static Address zero() { return Address{}; }

    /// Accepts 0x-prefixed 40-digit hex in any letter case. Mixed-case input
    /// is not required to carry a valid checksum.
    static Address from_hex(std::string_view text)
    {
        if (text.size() != 42 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X'))
            throw std::invalid_argument("address must be 0x followed by 40 hex digits: " +
                                        std::string(text));
        Bytes bytes{};
        for (std::size_t i = 0; i < 20; ++i) {
            int hi = hex_value(text[2 + 2 * i]);
            int lo = hex_value(text[3 + 2 * i]);
            if (hi < 0 || lo < 0)
                throw std::invalid_argument("invalid hex digit in address: " +
                                            std::string(text));
            bytes[i] = static_cast<std::uint8_t>(hi * 16 + lo);
        }
        return Address(bytes);
    }

    const Bytes& bytes() const noexcept { return bytes_; }
    bool is_zero() const noexcept
    {
        return std::all_of(bytes_.begin(), bytes_.end(), [](auto b) { return b == 0; });
    }

    /// Canonical lowercase rendering.
    std::string to_string() const { return to_hex(bytes_); }

    /// EIP-55 mixed-case checksum rendering, as printed in Remix logs.
    std::string to_checksum() const
    {
        std::string lower = to_hex(bytes_, false);
        Hash256 h = keccak256(lower);
        std::string out = "0x";
        for (std::size_t i = 0; i < lower.size(); ++i) {
            char c = lower[i];
            std::uint8_t nibble = (i % 2 == 0) ? (h[i / 2] >> 4) : (h[i / 2] & 0x0f);
            out.push_back(std::isalpha(static_cast<unsigned char>(c)) && nibble >= 8
                              ? static_cast<char>(std::toupper(c))
                              : c);
        }
        return out;
    }

    friend auto operator<=>(const Address&, const Address&) = default;

private:
    static int hex_value(char c) noexcept
    {
        if (c >= '0' && c <= '9')
            return c - '0';
        if (c >= 'a' && c <= 'f')
            return c - 'a' + 10;
        if (c >= 'A' && c <= 'F')
            return c - 'A' + 10;
        return -1;
    }

    Bytes bytes_{};
};

inline std::ostream& operator<<(std::ostream& os, const Address& a)
{
    return os << a.to_checksum();
}

/// Non-negative exact currency amount in wei.
class Wei
{
public:
    Wei() = default;
    Wei(std::uint64_t amount) : amount_(amount) {} // NOLINT(google-explicit-constructor)
    explicit Wei(BigUint amount) : amount_(std::move(amount))
    {
        if (amount_ < 0)
            throw std::domain_error("wei amount cannot be negative");
    }

    static Wei ether(std::uint64_t whole)
    {
        return Wei(BigUint(whole) * BigUint("1000000000000000000"));
    }

    /// Decimal digits only; no sign, no exponent, no unit suffix.
    static Wei parse(std::string_view text)
    {
        if (text.empty() || !std::all_of(text.begin(), text.end(),
                                         [](char c) { return c >= '0' && c <= '9'; }))
            throw std::invalid_argument("wei amount must be a decimal string: \"" +
                                        std::string(text) + "\"");
        return Wei(BigUint(std::string(text)));
    }

    const BigUint& value() const noexcept { return amount_; }
    bool is_zero() const noexcept { return amount_.is_zero(); }
    std::string to_string() const { return amount_.str(); }

    Wei& operator+=(const Wei& rhs)
    {
        amount_ += rhs.amount_;
        return *this;
    }
    Wei& operator-=(const Wei& rhs)
    {
        if (rhs.amount_ > amount_)
            throw std::underflow_error("wei subtraction below zero");
        amount_ -= rhs.amount_;
        return *this;
    }
    friend Wei operator+(Wei lhs, const Wei& rhs) { return lhs += rhs; }
    friend Wei operator-(Wei lhs, const Wei& rhs) { return lhs -= rhs; }

    friend bool operator==(const Wei& a, const Wei& b) { return a.amount_ == b.amount_; }
    friend std::strong_ordering operator<=>(const Wei& a, const Wei& b)
    {
        return a.amount_ < b.amount_   ? std::strong_ordering::less
               : a.amount_ > b.amount_ ? std::strong_ordering::greater
                                       : std::strong_ordering::equal;
    }

private:
    BigUint amount_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Wei& w) { return os << w.to_string(); }

/// Thrown by protocol operations; caught by the engine and turned into a
/// reverted receipt.
class Revert : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace nfst

template <>
struct std::hash<nfst::Address>
{
    std::size_t operator()(const nfst::Address& a) const noexcept
    {
        std::size_t h = 0;
        for (auto b : a.bytes())
            h = h * 131 + b;
        return h;
    }
};
