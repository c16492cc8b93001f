#pragma once

#include "nfst/abi.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace nfst {

/// A contract log record. Field order is significant: it is the order of the
/// Solidity event declaration, and it drives both the ABI data layout and the
/// positional "0", "1", ... keys of the JSON rendering.
struct Event
{
    std::string name;
    std::vector<std::pair<std::string, sol::Value>> fields;
    std::size_t indexed = 0; // leading fields that go to topics

    std::string signature() const
    {
        std::vector<sol::Value> values;
        for (const auto& [_, v] : fields)
            values.push_back(v);
        return sol::signature(name, values);
    }

    Hash256 topic() const { return keccak256(signature()); }

    std::size_t topic_count() const { return 1 + indexed; }

    /// Encoded non-indexed payload.
    sol::Bytes data() const
    {
        std::vector<sol::Value> values;
        for (std::size_t i = indexed; i < fields.size(); ++i)
            values.push_back(fields[i].second);
        return sol::encode(values);
    }

    const sol::Value& field(const std::string& key) const
    {
        for (const auto& [k, v] : fields)
            if (k == key)
                return v;
        throw std::out_of_range("event " + name + " has no field " + key);
    }

    friend bool operator==(const Event&, const Event&) = default;
};

/// Renders a value the way Remix prints log args: every scalar as a string,
/// addresses checksummed, arrays as lists of strings.
inline nlohmann::ordered_json render_value(const sol::Value& v)
{
    using nlohmann::ordered_json;
    return std::visit(
        [](const auto& x) -> ordered_json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, BigUint>) {
                return x.str();
            } else if constexpr (std::is_same_v<T, Address>) {
                return x.to_checksum();
            } else if constexpr (std::is_same_v<T, std::string>) {
                return x;
            } else if constexpr (std::is_same_v<T, std::vector<BigUint>>) {
                ordered_json arr = ordered_json::array();
                for (const auto& e : x)
                    arr.push_back(e.str());
                return arr;
            } else {
                ordered_json arr = ordered_json::array();
                for (const auto& e : x)
                    arr.push_back(e.to_checksum());
                return arr;
            }
        },
        v.data);
}

/// {"from", "topic", "event", "args": {"0": .., "1": .., name: ..}}
inline nlohmann::ordered_json to_log_json(const Event& e, const Address& emitter)
{
    nlohmann::ordered_json args = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < e.fields.size(); ++i)
        args[std::to_string(i)] = render_value(e.fields[i].second);
    for (const auto& [k, v] : e.fields)
        args[k] = render_value(v);

    nlohmann::ordered_json out;
    out["from"] = emitter.to_checksum();
    out["topic"] = to_hex(e.topic());
    out["event"] = e.name;
    out["args"] = std::move(args);
    return out;
}

} // namespace nfst
