#pragma once

#include "nfst/types.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace nfst::sol {

/// A Solidity ABI value restricted to the shapes the protocol uses: unsigned
/// integers, addresses, strings, and dynamic arrays of uints or addresses.
struct Value
{
    using Data = std::variant<BigUint, Address, std::string, std::vector<BigUint>,
                              std::vector<Address>>;

    std::string type; // Solidity type name, e.g. "uint64[]"
    Data data;

    bool is_dynamic() const
    {
        return std::holds_alternative<std::string>(data) ||
               std::holds_alternative<std::vector<BigUint>>(data) ||
               std::holds_alternative<std::vector<Address>>(data);
    }

    friend bool operator==(const Value&, const Value&) = default;
};

inline Value uint(const BigUint& v, int bits = 256)
{
    return {"uint" + std::to_string(bits), v};
}
inline Value uint(std::uint64_t v, int bits = 256) { return uint(BigUint(v), bits); }
inline Value uint(const Wei& v) { return uint(v.value()); }
inline Value address(const Address& a) { return {"address", a}; }
inline Value string(std::string s) { return {"string", std::move(s)}; }
inline Value addresses(std::vector<Address> v) { return {"address[]", std::move(v)}; }

template <typename Int>
Value uints(const std::vector<Int>& v, int bits = 256)
{
    std::vector<BigUint> out(v.begin(), v.end());
    return {"uint" + std::to_string(bits) + "[]", std::move(out)};
}

using Bytes = std::vector<std::uint8_t>;

namespace detail {

inline void put_word(Bytes& out, const BigUint& v)
{
    std::array<std::uint8_t, 32> word{};
    BigUint x = v;
    for (int i = 31; i >= 0 && x != 0; --i) {
        word[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(x & 0xff);
        x >>= 8;
    }
    if (x != 0)
        throw std::overflow_error("value does not fit a 256-bit ABI word");
    out.insert(out.end(), word.begin(), word.end());
}

inline void put_word(Bytes& out, const Address& a)
{
    out.insert(out.end(), 12, 0);
    out.insert(out.end(), a.bytes().begin(), a.bytes().end());
}

inline void put_tail(Bytes& out, const Value& v)
{
    if (const auto* s = std::get_if<std::string>(&v.data)) {
        put_word(out, BigUint(s->size()));
        out.insert(out.end(), s->begin(), s->end());
        out.insert(out.end(), (32 - s->size() % 32) % 32, 0);
    } else if (const auto* xs = std::get_if<std::vector<BigUint>>(&v.data)) {
        put_word(out, BigUint(xs->size()));
        for (const auto& x : *xs)
            put_word(out, x);
    } else if (const auto* as = std::get_if<std::vector<Address>>(&v.data)) {
        put_word(out, BigUint(as->size()));
        for (const auto& a : *as)
            put_word(out, a);
    }
}

} // namespace detail

/// Standard head/tail tuple encoding.
inline Bytes encode(const std::vector<Value>& values)
{
    Bytes head;
    Bytes tail;
    const std::size_t head_size = 32 * values.size();
    for (const auto& v : values) {
        if (v.is_dynamic()) {
            detail::put_word(head, BigUint(head_size + tail.size()));
            detail::put_tail(tail, v);
        } else if (const auto* u = std::get_if<BigUint>(&v.data)) {
            detail::put_word(head, *u);
        } else {
            detail::put_word(head, std::get<Address>(v.data));
        }
    }
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
}

inline std::string signature(const std::string& name, const std::vector<Value>& values)
{
    std::string sig = name + "(";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0)
            sig += ",";
        sig += values[i].type;
    }
    return sig + ")";
}

inline std::array<std::uint8_t, 4> selector(const std::string& sig)
{
    Hash256 h = keccak256(sig);
    return {h[0], h[1], h[2], h[3]};
}

/// Selector followed by the encoded arguments.
inline Bytes encode_call(const std::string& function, const std::vector<Value>& args)
{
    auto sel = selector(signature(function, args));
    Bytes out(sel.begin(), sel.end());
    Bytes body = encode(args);
    out.insert(out.end(), body.begin(), body.end());
    return out;
}

} // namespace nfst::sol
