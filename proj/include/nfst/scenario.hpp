#pragma once

#include "nfst/gas_model.hpp"
#include "nfst/types.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace nfst {

/// Parse or validation failure, anchored to a 1-based line of the source
/// text when one is known (0 otherwise).
class ScenarioError : public std::runtime_error
{
public:
    ScenarioError(int line, std::string message)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line), message_(std::move(message))
    {}
    int line() const noexcept { return line_; }
    /// The message without the line prefix.
    const std::string& message() const noexcept { return message_; }

private:
    int line_;
    std::string message_;
};

/// Label used in scenario files for the zero address.
inline constexpr const char* zero_label = "zero";

struct AccountSpec
{
    std::string label;
    Wei initial_balance;
    std::optional<Address> address; // pinned address, otherwise engine-assigned

    friend bool operator==(const AccountSpec&, const AccountSpec&) = default;
};

namespace step {

struct Mint
{
    std::string caller, start_freq, end_freq, location;
    friend bool operator==(const Mint&, const Mint&) = default;
};
struct SetIdle
{
    std::string caller;
    TokenId token = 0;
    std::vector<Timestamp> starts, ends;
    friend bool operator==(const SetIdle&, const SetIdle&) = default;
};
struct StartAuction
{
    std::string caller;
    TokenId token = 0;
    std::uint64_t duration = 0, slot_count = 0;
    Wei bottom_price;
    friend bool operator==(const StartAuction&, const StartAuction&) = default;
};
struct Bid
{
    std::string caller;
    TokenId token = 0;
    std::uint64_t slot = 0;
    Wei value;
    friend bool operator==(const Bid&, const Bid&) = default;
};
struct AdvanceTime
{
    std::uint64_t delta = 0;
    friend bool operator==(const AdvanceTime&, const AdvanceTime&) = default;
};
struct EndAuction
{
    std::string caller;
    TokenId token = 0;
    friend bool operator==(const EndAuction&, const EndAuction&) = default;
};
struct SetUser
{
    std::string caller;
    TokenId token = 0;
    std::string user;
    Timestamp expires = 0;
    friend bool operator==(const SetUser&, const SetUser&) = default;
};
struct BatchSetUser
{
    std::string caller;
    TokenId token = 0;
    std::vector<std::string> users;
    std::vector<Timestamp> starts, ends;
    friend bool operator==(const BatchSetUser&, const BatchSetUser&) = default;
};
struct Approve
{
    std::string caller;
    TokenId token = 0;
    std::string operator_label;
    friend bool operator==(const Approve&, const Approve&) = default;
};
struct QueryUser
{
    TokenId token = 0;
    Timestamp at = 0;
    friend bool operator==(const QueryUser&, const QueryUser&) = default;
};

} // namespace step

using StepAction = std::variant<step::Mint, step::SetIdle, step::StartAuction, step::Bid,
                                step::AdvanceTime, step::EndAuction, step::SetUser,
                                step::BatchSetUser, step::Approve, step::QueryUser>;

struct Step
{
    StepAction action;
    bool expect_revert = false;
    std::optional<nlohmann::json> expect_result;
    int line = 0; // source position, not part of identity

    friend bool operator==(const Step& a, const Step& b)
    {
        return a.action == b.action && a.expect_revert == b.expect_revert &&
               a.expect_result == b.expect_result;
    }
};

enum class ExpectKind { winner, balance_delta, event_field, user_at_time, tx_count, gas_total };

inline const std::map<std::string, ExpectKind>& expect_kinds()
{
    static const std::map<std::string, ExpectKind> kinds{
        {"winner", ExpectKind::winner},           {"balance_delta", ExpectKind::balance_delta},
        {"event_field", ExpectKind::event_field}, {"user_at_time", ExpectKind::user_at_time},
        {"tx_count", ExpectKind::tx_count},       {"gas_total", ExpectKind::gas_total}};
    return kinds;
}

inline std::string to_string(ExpectKind k)
{
    for (const auto& [name, kind] : expect_kinds())
        if (kind == k)
            return name;
    return "?";
}

/// A post-run check. Which optional fields are present depends on `kind`:
///   winner        token, slot, expected label
///   balance_delta account, expected signed decimal wei string
///   event_field   event, occurrence, field, expected JSON (as rendered in events.json;
///                 account labels inside are resolved to addresses)
///   user_at_time  token, at, expected label
///   tx_count      expected integer (successful transactions)
///   gas_total     expected integer (gas over all submitted transactions)
struct Expectation
{
    ExpectKind kind = ExpectKind::winner;
    std::optional<TokenId> token;
    std::optional<std::uint64_t> slot;
    std::optional<std::string> account;
    std::optional<std::string> event;
    std::optional<std::size_t> occurrence;
    std::optional<std::string> field;
    std::optional<Timestamp> at;
    nlohmann::json expected;
    int line = 0;

    friend bool operator==(const Expectation& a, const Expectation& b)
    {
        return a.kind == b.kind && a.token == b.token && a.slot == b.slot &&
               a.account == b.account && a.event == b.event && a.occurrence == b.occurrence &&
               a.field == b.field && a.at == b.at && a.expected == b.expected;
    }
};

struct Scenario
{
    std::string name;
    Timestamp start_time = 0;
    std::optional<Address> contract;
    std::vector<AccountSpec> accounts;
    nlohmann::json schedule_overrides = nlohmann::json::object();
    std::vector<Step> steps;
    std::vector<Expectation> expectations;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

// --------------------------------------------------------------------------
// Gas schedule overrides
// --------------------------------------------------------------------------

/// Applies a JSON fragment of schedule entries on top of `base`. Unknown keys
/// are rejected.
inline GasSchedule apply_schedule_overrides(GasSchedule base, const nlohmann::json& j)
{
    if (!j.is_object())
        throw std::invalid_argument("gas schedule overrides must be a JSON object");
    std::map<std::string, Gas*> gas_fields{
        {"tx_base", &base.tx_base},
        {"sstore_set", &base.sstore_set},
        {"sstore_update", &base.sstore_update},
        {"sstore_warm", &base.sstore_warm},
        {"log_base", &base.log_base},
        {"log_topic", &base.log_topic},
        {"log_data_byte", &base.log_data_byte},
        {"calldata_nonzero_byte", &base.calldata_nonzero_byte},
        {"calldata_zero_byte", &base.calldata_zero_byte},
        {"block_gas_limit", &base.block_gas_limit}};
    std::map<std::string, int*> width_fields{{"address_width", &base.address_width},
                                             {"timestamp_width", &base.timestamp_width}};
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number_integer())
            throw std::invalid_argument("gas schedule entry '" + key + "' must be an integer");
        if (auto it = gas_fields.find(key); it != gas_fields.end())
            *it->second = value.get<Gas>();
        else if (auto wt = width_fields.find(key); wt != width_fields.end())
            *wt->second = value.get<int>();
        else
            throw std::invalid_argument("unknown gas schedule entry '" + key + "'");
    }
    base.validate();
    return base;
}

inline nlohmann::ordered_json schedule_to_json(const GasSchedule& s)
{
    return {{"tx_base", s.tx_base},
            {"sstore_set", s.sstore_set},
            {"sstore_update", s.sstore_update},
            {"sstore_warm", s.sstore_warm},
            {"log_base", s.log_base},
            {"log_topic", s.log_topic},
            {"log_data_byte", s.log_data_byte},
            {"calldata_nonzero_byte", s.calldata_nonzero_byte},
            {"calldata_zero_byte", s.calldata_zero_byte},
            {"block_gas_limit", s.block_gas_limit},
            {"address_width", s.address_width},
            {"timestamp_width", s.timestamp_width}};
}

// --------------------------------------------------------------------------
// Parsing
// --------------------------------------------------------------------------

namespace detail {

/// Finds the starting line of every element of the top-level arrays in a
/// JSON document, keyed by member name. Assumes the text already parsed.
inline std::map<std::string, std::vector<int>> top_level_element_lines(const std::string& text)
{
    std::map<std::string, std::vector<int>> out;
    int line = 1;
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    std::string current_string;
    std::string last_key; // last string seen at depth 1
    std::string array_key; // key of the depth-1 array we are inside
    bool expect_element = false;

    for (char c : text) {
        if (c == '\n')
            ++line;
        if (in_string) {
            if (escaped)
                escaped = false;
            else if (c == '\\')
                escaped = true;
            else if (c == '"') {
                in_string = false;
                if (depth == 1)
                    last_key = current_string;
            } else
                current_string.push_back(c);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c)))
            continue;
        if (expect_element && c != ']') {
            out[array_key].push_back(line);
            expect_element = false;
        }
        switch (c) {
        case '"':
            in_string = true;
            current_string.clear();
            break;
        case '{':
            ++depth;
            break;
        case '[':
            ++depth;
            if (depth == 2) {
                array_key = last_key;
                out[array_key];
                expect_element = true;
            }
            break;
        case '}':
        case ']':
            --depth;
            break;
        case ',':
            if (depth == 2 && !array_key.empty())
                expect_element = true;
            break;
        default:
            break;
        }
        if (c == ']' && depth == 1)
            array_key.clear();
    }
    return out;
}

inline int line_of_offset(const std::string& text, std::size_t offset)
{
    int line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i)
        if (text[i] == '\n')
            ++line;
    return line;
}

class FieldReader
{
public:
    FieldReader(const nlohmann::json& j, int line, std::string where)
        : j_(j), line_(line), where_(std::move(where))
    {
        if (!j_.is_object())
            fail("expected an object");
    }

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ScenarioError(line_, where_ + ": " + msg);
    }

    bool has(const char* key) const { return j_.contains(key); }

    const nlohmann::json& raw(const char* key) const
    {
        if (!j_.contains(key))
            fail("missing field '" + std::string(key) + "'");
        return j_.at(key);
    }

    std::string str(const char* key) const
    {
        const auto& v = raw(key);
        if (!v.is_string())
            fail("field '" + std::string(key) + "' must be a string");
        return v.get<std::string>();
    }

    std::uint64_t u64(const char* key) const
    {
        const auto& v = raw(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
            fail("field '" + std::string(key) + "' must be a non-negative integer");
        return v.get<std::uint64_t>();
    }

    Wei wei(const char* key) const
    {
        const auto& v = raw(key);
        if (!v.is_string())
            fail("field '" + std::string(key) + "' must be a decimal string of wei");
        try {
            return Wei::parse(v.get<std::string>());
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }

    std::vector<Timestamp> times(const char* key) const
    {
        const auto& v = raw(key);
        if (!v.is_array())
            fail("field '" + std::string(key) + "' must be an array of timestamps");
        std::vector<Timestamp> out;
        for (const auto& e : v) {
            if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<std::int64_t>() >= 0))
                fail("field '" + std::string(key) + "' must hold non-negative integers");
            out.push_back(e.get<Timestamp>());
        }
        return out;
    }

    std::vector<std::string> strings(const char* key) const
    {
        const auto& v = raw(key);
        if (!v.is_array())
            fail("field '" + std::string(key) + "' must be an array of labels");
        std::vector<std::string> out;
        for (const auto& e : v) {
            if (!e.is_string())
                fail("field '" + std::string(key) + "' must hold strings");
            out.push_back(e.get<std::string>());
        }
        return out;
    }

    void only(std::initializer_list<const char*> allowed) const
    {
        for (const auto& [key, _] : j_.items()) {
            bool ok = false;
            for (const char* a : allowed)
                ok = ok || key == a;
            if (!ok)
                fail("unknown field '" + key + "'");
        }
    }

private:
    const nlohmann::json& j_;
    int line_;
    std::string where_;
};

inline StepAction parse_action(const FieldReader& r, const std::string& op)
{
    using namespace step;
    if (op == "mint") {
        r.only({"op", "caller", "start_freq", "end_freq", "location", "expect_revert",
                "expect_result"});
        return Mint{r.str("caller"), r.str("start_freq"), r.str("end_freq"), r.str("location")};
    }
    if (op == "set_idle") {
        r.only({"op", "caller", "token", "starts", "ends", "expect_revert", "expect_result"});
        return SetIdle{r.str("caller"), r.u64("token"), r.times("starts"), r.times("ends")};
    }
    if (op == "start_auction") {
        r.only({"op", "caller", "token", "duration", "slot_count", "bottom_price_wei",
                "expect_revert", "expect_result"});
        return StartAuction{r.str("caller"), r.u64("token"), r.u64("duration"),
                            r.u64("slot_count"), r.wei("bottom_price_wei")};
    }
    if (op == "bid") {
        r.only({"op", "caller", "token", "slot", "value_wei", "expect_revert", "expect_result"});
        return Bid{r.str("caller"), r.u64("token"), r.u64("slot"), r.wei("value_wei")};
    }
    if (op == "advance_time") {
        r.only({"op", "delta"});
        return AdvanceTime{r.u64("delta")};
    }
    if (op == "end_auction") {
        r.only({"op", "caller", "token", "expect_revert", "expect_result"});
        return EndAuction{r.str("caller"), r.u64("token")};
    }
    if (op == "set_user") {
        r.only({"op", "caller", "token", "user", "expires", "expect_revert", "expect_result"});
        return SetUser{r.str("caller"), r.u64("token"), r.str("user"), r.u64("expires")};
    }
    if (op == "batch_set_user") {
        r.only({"op", "caller", "token", "users", "starts", "ends", "expect_revert",
                "expect_result"});
        return BatchSetUser{r.str("caller"), r.u64("token"), r.strings("users"),
                            r.times("starts"), r.times("ends")};
    }
    if (op == "approve_operator") {
        r.only({"op", "caller", "token", "operator", "expect_revert", "expect_result"});
        return Approve{r.str("caller"), r.u64("token"), r.str("operator")};
    }
    if (op == "query_user") {
        r.only({"op", "token", "at", "expect_result"});
        return QueryUser{r.u64("token"), r.u64("at")};
    }
    r.fail("unknown op '" + op + "'");
}

/// Labels a step refers to, for validation.
inline std::vector<std::string> referenced_labels(const StepAction& a)
{
    return std::visit(
        [](const auto& x) -> std::vector<std::string> {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, step::AdvanceTime> ||
                          std::is_same_v<T, step::QueryUser>)
                return {};
            else if constexpr (std::is_same_v<T, step::SetUser>)
                return {x.caller, x.user};
            else if constexpr (std::is_same_v<T, step::Approve>)
                return {x.caller, x.operator_label};
            else if constexpr (std::is_same_v<T, step::BatchSetUser>) {
                std::vector<std::string> out{x.caller};
                out.insert(out.end(), x.users.begin(), x.users.end());
                return out;
            } else
                return {x.caller};
        },
        a);
}

/// Fields that may name the zero address instead of an account.
inline bool is_user_position(const StepAction& a, std::size_t index)
{
    return (std::holds_alternative<step::SetUser>(a) && index == 1) ||
           (std::holds_alternative<step::BatchSetUser>(a) && index >= 1);
}

} // namespace detail

/// Parses and validates a scenario document.
inline Scenario parse_scenario(const std::string& text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ScenarioError(detail::line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0),
                            std::string("malformed JSON: ") + e.what());
    }
    const auto lines = detail::top_level_element_lines(text);
    auto line_at = [&lines](const std::string& key, std::size_t i) {
        auto it = lines.find(key);
        return it != lines.end() && i < it->second.size() ? it->second[i] : 0;
    };

    detail::FieldReader top(doc, 1, "scenario");
    top.only({"name", "start_time", "contract", "accounts", "schedule_overrides", "steps",
              "expectations"});

    Scenario sc;
    sc.name = top.str("name");
    if (top.has("start_time"))
        sc.start_time = top.u64("start_time");
    if (top.has("contract")) {
        try {
            sc.contract = Address::from_hex(top.str("contract"));
        } catch (const std::invalid_argument& e) {
            top.fail(e.what());
        }
    }

    std::set<std::string> labels;
    const auto& accounts = top.raw("accounts");
    if (!accounts.is_array())
        top.fail("'accounts' must be an array");
    for (std::size_t i = 0; i < accounts.size(); ++i) {
        const int line = line_at("accounts", i);
        detail::FieldReader r(accounts[i], line, "accounts[" + std::to_string(i) + "]");
        r.only({"label", "balance_wei", "address"});
        AccountSpec a{r.str("label"), r.wei("balance_wei"), std::nullopt};
        if (a.label.empty() || a.label == zero_label)
            r.fail("label '" + a.label + "' is reserved");
        if (!labels.insert(a.label).second)
            r.fail("duplicate account label '" + a.label + "'");
        if (r.has("address")) {
            try {
                a.address = Address::from_hex(r.str("address"));
            } catch (const std::invalid_argument& e) {
                r.fail(e.what());
            }
            if (a.address->is_zero())
                r.fail("account address cannot be the zero address");
        }
        sc.accounts.push_back(std::move(a));
    }

    if (top.has("schedule_overrides")) {
        sc.schedule_overrides = top.raw("schedule_overrides");
        try {
            apply_schedule_overrides(GasSchedule{}, sc.schedule_overrides);
        } catch (const std::invalid_argument& e) {
            top.fail(e.what());
        }
    }

    const auto& steps = top.raw("steps");
    if (!steps.is_array())
        top.fail("'steps' must be an array");
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const int line = line_at("steps", i);
        detail::FieldReader r(steps[i], line, "steps[" + std::to_string(i) + "]");
        Step s;
        s.line = line;
        s.action = detail::parse_action(r, r.str("op"));
        if (r.has("expect_revert")) {
            if (!r.raw("expect_revert").is_boolean())
                r.fail("'expect_revert' must be a boolean");
            s.expect_revert = r.raw("expect_revert").get<bool>();
        }
        if (r.has("expect_result"))
            s.expect_result = r.raw("expect_result");
        const auto refs = detail::referenced_labels(s.action);
        for (std::size_t k = 0; k < refs.size(); ++k) {
            if (refs[k] == zero_label && detail::is_user_position(s.action, k))
                continue;
            if (!labels.contains(refs[k]))
                r.fail("unknown account label '" + refs[k] + "'");
        }
        sc.steps.push_back(std::move(s));
    }

    if (top.has("expectations")) {
        const auto& exps = top.raw("expectations");
        if (!exps.is_array())
            top.fail("'expectations' must be an array");
        for (std::size_t i = 0; i < exps.size(); ++i) {
            const int line = line_at("expectations", i);
            detail::FieldReader r(exps[i], line, "expectations[" + std::to_string(i) + "]");
            Expectation e;
            e.line = line;
            const auto kind = r.str("kind");
            auto it = expect_kinds().find(kind);
            if (it == expect_kinds().end())
                r.fail("unknown expectation kind '" + kind + "'");
            e.kind = it->second;
            e.expected = r.raw("expected");
            auto need_label = [&](const std::string& l, bool allow_zero) {
                if (!(allow_zero && l == zero_label) && !labels.contains(l))
                    r.fail("unknown account label '" + l + "'");
            };
            switch (e.kind) {
            case ExpectKind::winner:
                r.only({"kind", "token", "slot", "expected"});
                e.token = r.u64("token");
                e.slot = r.u64("slot");
                need_label(r.str("expected"), true);
                break;
            case ExpectKind::balance_delta: {
                r.only({"kind", "account", "expected"});
                e.account = r.str("account");
                need_label(*e.account, false);
                auto d = r.str("expected");
                std::string digits = !d.empty() && d[0] == '-' ? d.substr(1) : d;
                try {
                    Wei::parse(digits);
                } catch (const std::exception&) {
                    r.fail("balance_delta 'expected' must be a signed decimal wei string");
                }
                break;
            }
            case ExpectKind::event_field:
                r.only({"kind", "event", "occurrence", "field", "expected"});
                e.event = r.str("event");
                e.field = r.str("field");
                e.occurrence = r.has("occurrence") ? r.u64("occurrence") : 0;
                break;
            case ExpectKind::user_at_time:
                r.only({"kind", "token", "at", "expected"});
                e.token = r.u64("token");
                e.at = r.u64("at");
                need_label(r.str("expected"), true);
                break;
            case ExpectKind::tx_count:
            case ExpectKind::gas_total:
                r.only({"kind", "expected"});
                r.u64("expected");
                break;
            }
            sc.expectations.push_back(std::move(e));
        }
    }
    return sc;
}

// --------------------------------------------------------------------------
// Serialization
// --------------------------------------------------------------------------

inline nlohmann::ordered_json to_json(const Step& s)
{
    using nlohmann::ordered_json;
    ordered_json j = std::visit(
        [](const auto& x) -> ordered_json {
            using T = std::decay_t<decltype(x)>;
            using namespace step;
            if constexpr (std::is_same_v<T, Mint>)
                return {{"op", "mint"}, {"caller", x.caller}, {"start_freq", x.start_freq},
                        {"end_freq", x.end_freq}, {"location", x.location}};
            else if constexpr (std::is_same_v<T, SetIdle>)
                return {{"op", "set_idle"}, {"caller", x.caller}, {"token", x.token},
                        {"starts", x.starts}, {"ends", x.ends}};
            else if constexpr (std::is_same_v<T, StartAuction>)
                return {{"op", "start_auction"}, {"caller", x.caller}, {"token", x.token},
                        {"duration", x.duration}, {"slot_count", x.slot_count},
                        {"bottom_price_wei", x.bottom_price.to_string()}};
            else if constexpr (std::is_same_v<T, Bid>)
                return {{"op", "bid"}, {"caller", x.caller}, {"token", x.token},
                        {"slot", x.slot}, {"value_wei", x.value.to_string()}};
            else if constexpr (std::is_same_v<T, AdvanceTime>)
                return {{"op", "advance_time"}, {"delta", x.delta}};
            else if constexpr (std::is_same_v<T, EndAuction>)
                return {{"op", "end_auction"}, {"caller", x.caller}, {"token", x.token}};
            else if constexpr (std::is_same_v<T, SetUser>)
                return {{"op", "set_user"}, {"caller", x.caller}, {"token", x.token},
                        {"user", x.user}, {"expires", x.expires}};
            else if constexpr (std::is_same_v<T, BatchSetUser>)
                return {{"op", "batch_set_user"}, {"caller", x.caller}, {"token", x.token},
                        {"users", x.users}, {"starts", x.starts}, {"ends", x.ends}};
            else if constexpr (std::is_same_v<T, Approve>)
                return {{"op", "approve_operator"}, {"caller", x.caller}, {"token", x.token},
                        {"operator", x.operator_label}};
            else
                return {{"op", "query_user"}, {"token", x.token}, {"at", x.at}};
        },
        s.action);
    if (s.expect_revert)
        j["expect_revert"] = true;
    if (s.expect_result)
        j["expect_result"] = *s.expect_result;
    return j;
}

inline nlohmann::ordered_json to_json(const Expectation& e)
{
    nlohmann::ordered_json j;
    j["kind"] = to_string(e.kind);
    if (e.token)
        j["token"] = *e.token;
    if (e.slot)
        j["slot"] = *e.slot;
    if (e.account)
        j["account"] = *e.account;
    if (e.event)
        j["event"] = *e.event;
    if (e.occurrence)
        j["occurrence"] = *e.occurrence;
    if (e.field)
        j["field"] = *e.field;
    if (e.at)
        j["at"] = *e.at;
    j["expected"] = e.expected;
    return j;
}

inline nlohmann::ordered_json to_json(const Scenario& sc)
{
    nlohmann::ordered_json j;
    j["name"] = sc.name;
    j["start_time"] = sc.start_time;
    if (sc.contract)
        j["contract"] = sc.contract->to_checksum();
    j["accounts"] = nlohmann::ordered_json::array();
    for (const auto& a : sc.accounts) {
        nlohmann::ordered_json aj{{"label", a.label},
                                  {"balance_wei", a.initial_balance.to_string()}};
        if (a.address)
            aj["address"] = a.address->to_checksum();
        j["accounts"].push_back(std::move(aj));
    }
    if (!sc.schedule_overrides.empty())
        j["schedule_overrides"] = sc.schedule_overrides;
    j["steps"] = nlohmann::ordered_json::array();
    for (const auto& s : sc.steps)
        j["steps"].push_back(to_json(s));
    j["expectations"] = nlohmann::ordered_json::array();
    for (const auto& e : sc.expectations)
        j["expectations"].push_back(to_json(e));
    return j;
}

} // namespace nfst
