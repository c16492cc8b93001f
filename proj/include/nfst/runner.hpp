#pragma once

#include "nfst/engine.hpp"
#include "nfst/scenario.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace nfst {

struct ExpectationResult
{
    Expectation expectation;
    bool passed = false;
    std::string description; // what was checked
    std::string actual;
    std::string expected;
};

/// Everything produced by running one scenario.
struct RunResult
{
    Engine engine;
    std::map<std::string, Address> labels;
    std::map<Address, std::string> names;
    std::map<std::string, Wei> initial_balances;
    std::vector<TxReceipt> receipts;           // one per submitted transaction
    nlohmann::ordered_json receipt_log = nlohmann::ordered_json::array();
    std::vector<Event> events;                 // successful transactions only, in order
    std::map<TokenId, std::vector<Address>> winners;
    std::vector<ExpectationResult> checks;
    std::string failure;                        // unexpected step outcome, if any
    int exit_code = 0;

    std::string label_of(const Address& a) const
    {
        if (a.is_zero())
            return zero_label;
        auto it = names.find(a);
        return it == names.end() ? a.to_checksum() : it->second;
    }

    nlohmann::ordered_json events_json() const
    {
        auto out = nlohmann::ordered_json::array();
        for (const auto& e : events)
            out.push_back(to_log_json(e, engine.contract_address()));
        return out;
    }

    std::string report() const;
};

namespace detail {

inline Address resolve(const RunResult& r, const std::string& label)
{
    if (label == zero_label)
        return Address::zero();
    return r.labels.at(label);
}

inline nlohmann::json render_output(const RunResult& r, const CallOutput& out)
{
    return std::visit(
        [&r](const auto& x) -> nlohmann::json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>)
                return nullptr;
            else if constexpr (std::is_same_v<T, bool> || std::is_same_v<T, TokenId>)
                return x;
            else {
                auto arr = nlohmann::json::array();
                for (const auto& a : x)
                    arr.push_back(r.label_of(a));
                return arr;
            }
        },
        out);
}

/// Replaces account labels inside an expected JSON value with the
/// checksummed address they name.
inline nlohmann::ordered_json resolve_labels(const RunResult& r, const nlohmann::json& v)
{
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (r.labels.contains(s))
            return r.labels.at(s).to_checksum();
        if (s == zero_label)
            return Address::zero().to_checksum();
        return s;
    }
    if (v.is_array()) {
        auto out = nlohmann::ordered_json::array();
        for (const auto& e : v)
            out.push_back(resolve_labels(r, e));
        return out;
    }
    if (v.is_number_integer())
        return std::to_string(v.get<std::uint64_t>());
    return nlohmann::ordered_json(v);
}

inline Call to_call(const RunResult& r, const StepAction& a, Wei& value, Address& caller)
{
    using namespace step;
    return std::visit(
        [&](const auto& x) -> Call {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, AdvanceTime> || std::is_same_v<T, QueryUser>) {
                throw std::logic_error("not a transaction");
            } else {
                caller = resolve(r, x.caller);
                if constexpr (std::is_same_v<T, Mint>)
                    return call::Mint{x.start_freq, x.end_freq, x.location};
                else if constexpr (std::is_same_v<T, SetIdle>)
                    return call::SetIdleTime{x.token, x.starts, x.ends};
                else if constexpr (std::is_same_v<T, StartAuction>)
                    return call::StartAuction{x.token, x.duration, x.slot_count, x.bottom_price};
                else if constexpr (std::is_same_v<T, Bid>) {
                    value = x.value;
                    return call::Bid{x.token, x.slot};
                } else if constexpr (std::is_same_v<T, EndAuction>)
                    return call::EndAuction{x.token};
                else if constexpr (std::is_same_v<T, SetUser>)
                    return call::SetUser{x.token, resolve(r, x.user), x.expires};
                else if constexpr (std::is_same_v<T, BatchSetUser>) {
                    call::BatchSetUser b{x.token, {}, x.starts, x.ends};
                    for (const auto& u : x.users)
                        b.users.push_back(resolve(r, u));
                    return b;
                } else
                    return call::ApproveOperator{x.token, resolve(r, x.operator_label)};
            }
        },
        a);
}

inline std::string op_name(const StepAction& a)
{
    return to_json(Step{a}).at("op").get<std::string>();
}

inline ExpectationResult evaluate(const RunResult& r, const Expectation& e)
{
    ExpectationResult out{e};
    out.description = to_string(e.kind);
    switch (e.kind) {
    case ExpectKind::winner: {
        out.description += " token=" + std::to_string(*e.token) + " slot=" + std::to_string(*e.slot);
        out.expected = e.expected.get<std::string>();
        auto it = r.winners.find(*e.token);
        if (it == r.winners.end() || *e.slot >= it->second.size())
            out.actual = "<no finished auction>";
        else
            out.actual = r.label_of(it->second[*e.slot]);
        break;
    }
    case ExpectKind::balance_delta: {
        out.description += " account=" + *e.account;
        out.expected = e.expected.get<std::string>();
        const BigUint now = r.engine.get_balance(r.labels.at(*e.account)).value();
        const BigUint before = r.initial_balances.at(*e.account).value();
        out.actual = BigUint(now - before).str();
        break;
    }
    case ExpectKind::event_field: {
        out.description += " event=" + *e.event + "#" + std::to_string(e.occurrence.value_or(0)) +
                           " field=" + *e.field;
        out.expected = resolve_labels(r, e.expected).dump();
        std::size_t seen = 0;
        out.actual = "<no such event>";
        for (const auto& ev : r.events) {
            if (ev.name != *e.event)
                continue;
            if (seen++ != e.occurrence.value_or(0))
                continue;
            auto log = to_log_json(ev, r.engine.contract_address());
            out.actual = log["args"].contains(*e.field) ? log["args"][*e.field].dump()
                                                         : "<no such field>";
            break;
        }
        break;
    }
    case ExpectKind::user_at_time:
        out.description += " token=" + std::to_string(*e.token) + " at=" + std::to_string(*e.at);
        out.expected = e.expected.get<std::string>();
        try {
            out.actual = r.label_of(r.engine.user_of(*e.token, *e.at));
        } catch (const Revert& ex) {
            out.actual = std::string("<") + ex.what() + ">";
        }
        break;
    case ExpectKind::tx_count: {
        std::size_t n = 0;
        for (const auto& rc : r.receipts)
            n += rc.ok() ? 1 : 0;
        out.expected = std::to_string(e.expected.get<std::uint64_t>());
        out.actual = std::to_string(n);
        break;
    }
    case ExpectKind::gas_total: {
        Gas total = 0;
        for (const auto& rc : r.receipts)
            total += rc.gas_used;
        out.expected = std::to_string(e.expected.get<std::uint64_t>());
        out.actual = std::to_string(total);
        break;
    }
    }
    out.passed = out.actual == out.expected;
    return out;
}

} // namespace detail

/// Executes the scenario's steps in order and evaluates its expectations.
/// Exit code: 0 all expectations pass, 1 an expectation failed or a step
/// reverted unexpectedly (execution stops at that step).
inline RunResult run_scenario(const Scenario& sc)
{
    EngineConfig config;
    config.schedule = apply_schedule_overrides(GasSchedule{}, sc.schedule_overrides);
    config.start_time = sc.start_time;
    if (sc.contract)
        config.contract = *sc.contract;

    RunResult r{Engine(config)};
    for (const auto& a : sc.accounts) {
        Address addr = a.address ? r.engine.create_account_at(*a.address, a.initial_balance)
                                 : r.engine.create_account(a.initial_balance);
        r.labels[a.label] = addr;
        r.names[addr] = a.label;
        r.initial_balances[a.label] = a.initial_balance;
    }

    for (std::size_t i = 0; i < sc.steps.size(); ++i) {
        const auto& s = sc.steps[i];
        nlohmann::ordered_json entry;
        entry["step"] = i;
        entry["op"] = detail::op_name(s.action);
        if (s.line > 0)
            entry["line"] = s.line;

        if (const auto* adv = std::get_if<step::AdvanceTime>(&s.action)) {
            entry["time"] = r.engine.advance_time(adv->delta);
            r.receipt_log.push_back(std::move(entry));
            continue;
        }
        if (const auto* q = std::get_if<step::QueryUser>(&s.action)) {
            entry["time"] = r.engine.now();
            nlohmann::json result;
            try {
                result = r.label_of(r.engine.user_of(q->token, q->at));
            } catch (const Revert& ex) {
                result = std::string("<") + ex.what() + ">";
            }
            entry["result"] = result;
            r.receipt_log.push_back(std::move(entry));
            if (s.expect_result && *s.expect_result != result) {
                r.failure = "step " + std::to_string(i) + " (line " + std::to_string(s.line) +
                            "): query_user returned " + result.dump() + ", expected " +
                            s.expect_result->dump();
                r.exit_code = 1;
                break;
            }
            continue;
        }

        Wei value;
        Address caller;
        const Call c = detail::to_call(r, s.action, value, caller);
        TxReceipt rc = r.engine.execute_tx(caller, value, c);

        entry["time"] = r.engine.now();
        entry["status"] = rc.ok() ? "success" : "reverted";
        entry["gas_used"] = rc.gas_used;
        if (rc.revert_reason)
            entry["revert_reason"] = *rc.revert_reason;
        const nlohmann::json result = detail::render_output(r, rc.output);
        if (rc.ok())
            entry["result"] = result;
        entry["events"] = rc.events.size();
        r.receipt_log.push_back(std::move(entry));

        if (rc.ok()) {
            r.events.insert(r.events.end(), rc.events.begin(), rc.events.end());
            if (const auto* w = std::get_if<std::vector<Address>>(&rc.output))
                r.winners[std::get<call::EndAuction>(c).token] = *w;
        }

        std::string problem;
        if (rc.ok() && s.expect_revert)
            problem = "expected a revert but the transaction succeeded";
        else if (!rc.ok() && !s.expect_revert)
            problem = "reverted: " + rc.revert_reason.value_or("");
        else if (rc.ok() && s.expect_result && *s.expect_result != result)
            problem = "returned " + result.dump() + ", expected " + s.expect_result->dump();
        r.receipts.push_back(std::move(rc));
        if (!problem.empty()) {
            r.failure = "step " + std::to_string(i) + " " + detail::op_name(s.action) +
                        " (line " + std::to_string(s.line) + "): " + problem;
            r.exit_code = 1;
            break;
        }
    }

    if (r.failure.empty()) {
        for (const auto& e : sc.expectations) {
            r.checks.push_back(detail::evaluate(r, e));
            if (!r.checks.back().passed)
                r.exit_code = 1;
        }
    }
    return r;
}

inline std::string RunResult::report() const
{
    std::ostringstream os;
    if (!failure.empty())
        os << "FAIL " << failure << "\n";
    std::size_t passed = 0;
    for (const auto& c : checks) {
        passed += c.passed ? 1 : 0;
        os << (c.passed ? "PASS " : "FAIL ") << c.description << " expected=" << c.expected
           << " actual=" << c.actual << "\n";
    }
    os << passed << "/" << checks.size() << " expectations passed\n";
    return os.str();
}

} // namespace nfst
