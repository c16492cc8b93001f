#pragma once

#include "nfst/auction.hpp"
#include "nfst/balances.hpp"
#include "nfst/context.hpp"
#include "nfst/gas_model.hpp"
#include "nfst/ledger.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace nfst {

namespace call {

struct Mint
{
    std::string start_freq, end_freq, location;
};
struct SetIdleTime
{
    TokenId token = 0;
    std::vector<Timestamp> starts, ends;
};
struct SetUser
{
    TokenId token = 0;
    Address user;
    Timestamp expires = 0;
};
struct BatchSetUser
{
    TokenId token = 0;
    std::vector<Address> users;
    std::vector<Timestamp> starts, ends;
};
struct ApproveOperator
{
    TokenId token = 0;
    Address operator_address;
};
struct StartAuction
{
    TokenId token = 0;
    std::uint64_t duration = 0;
    std::uint64_t slot_count = 0;
    Wei bottom_price;
};
struct Bid
{
    TokenId token = 0;
    std::uint64_t slot = 0;
};
struct EndAuction
{
    TokenId token = 0;
};

} // namespace call

using Call = std::variant<call::Mint, call::SetIdleTime, call::SetUser, call::BatchSetUser,
                          call::ApproveOperator, call::StartAuction, call::Bid, call::EndAuction>;

/// Function name and ABI arguments, used to size calldata.
inline std::pair<std::string, std::vector<sol::Value>> abi_call(const Call& c)
{
    using namespace call;
    return std::visit(
        [](const auto& x) -> std::pair<std::string, std::vector<sol::Value>> {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Mint>)
                return {"mint", {sol::string(x.start_freq), sol::string(x.end_freq),
                                 sol::string(x.location)}};
            else if constexpr (std::is_same_v<T, SetIdleTime>)
                return {"setSpectrumIdleTime",
                        {sol::uint(x.token), sol::uints(x.starts, 64), sol::uints(x.ends, 64)}};
            else if constexpr (std::is_same_v<T, SetUser>)
                return {"setUser", set_user_args(x.token, x.user, x.expires)};
            else if constexpr (std::is_same_v<T, BatchSetUser>)
                return {"batchSetUser", batch_set_user_args(x.token, x.users, x.starts, x.ends)};
            else if constexpr (std::is_same_v<T, ApproveOperator>)
                return {"approveOperator",
                        {sol::uint(x.token), sol::address(x.operator_address)}};
            else if constexpr (std::is_same_v<T, StartAuction>)
                return {"startAuction", {sol::uint(x.token), sol::uint(x.duration),
                                         sol::uint(x.slot_count), sol::uint(x.bottom_price)}};
            else if constexpr (std::is_same_v<T, Bid>)
                return {"bid", {sol::uint(x.token), sol::uint(x.slot)}};
            else
                return {"endAuction", {sol::uint(x.token)}};
        },
        c);
}

inline std::string call_name(const Call& c) { return abi_call(c).first; }

enum class TxStatus { success, reverted };

/// Return value of a call: nothing, a boolean, a minted id, or auction winners.
using CallOutput = std::variant<std::monostate, bool, TokenId, std::vector<Address>>;

struct TxReceipt
{
    TxStatus status = TxStatus::success;
    Gas gas_used = 0;
    std::vector<Event> events;
    std::optional<std::string> revert_reason;
    CallOutput output;
    StorageFootprint footprint;
    Wei value; // attached value that stayed with the contract call

    bool ok() const { return status == TxStatus::success; }
};

struct EngineConfig
{
    GasSchedule schedule;
    Address contract = Address::from_hex("0xD1ee42fdA217994CF17F7D37E8909FA2c30Ca192");
    Timestamp start_time = 0;
};

/// Everything a transaction can change. Copied before each transaction and
/// restored on revert.
struct WorldState
{
    Balances balances;
    Timestamp clock = 0;
    NfstLedger ledger;
    AuctionBook auctions;
    std::uint64_t account_nonce = 0;

    friend bool operator==(const WorldState&, const WorldState&) = default;
};

/// Deterministic single-threaded execution environment. Not safe for
/// concurrent mutation; use one engine per thread.
class Engine
{
public:
    explicit Engine(EngineConfig config = {}) : config_(std::move(config))
    {
        config_.schedule.validate();
        state_.clock = config_.start_time;
        state_.balances.open(config_.contract, Wei{});
    }

    const EngineConfig& config() const { return config_; }
    const GasSchedule& schedule() const { return config_.schedule; }
    const Address& contract_address() const { return config_.contract; }
    const WorldState& state() const { return state_; }
    const NfstLedger& ledger() const { return state_.ledger; }
    const AuctionBook& auctions() const { return state_.auctions; }
    Timestamp now() const { return state_.clock; }

    /// Fresh account at a deterministic derived address.
    Address create_account(Wei initial_balance)
    {
        Address a;
        do {
            Hash256 h = keccak256("nfst-sim/account/" + std::to_string(state_.account_nonce++));
            Address::Bytes b{};
            std::copy(h.begin() + 12, h.end(), b.begin());
            a = Address(b);
        } while (a.is_zero() || state_.balances.contains(a));
        state_.balances.open(a, std::move(initial_balance));
        return a;
    }

    /// Account at a caller-chosen address, for pinned golden scenarios.
    Address create_account_at(const Address& a, Wei initial_balance)
    {
        state_.balances.open(a, std::move(initial_balance));
        return a;
    }

    Timestamp advance_time(std::uint64_t delta)
    {
        state_.clock += delta;
        return state_.clock;
    }

    const Wei& get_balance(const Address& a) const
    {
        if (a.is_zero())
            throw std::invalid_argument("the zero address is not an account");
        return state_.balances.balance(a);
    }

    bool has_account(const Address& a) const { return state_.balances.contains(a); }

    Address current_user_of(TokenId id) const { return state_.ledger.user_of(id, state_.clock); }
    Address user_of(TokenId id, Timestamp at) const { return state_.ledger.user_of(id, at); }

    /// Applies `call` atomically. Any revert restores the exact pre-state,
    /// including the attached value transfer.
    TxReceipt execute_tx(const Address& caller, const Wei& value, const Call& c)
    {
        if (caller.is_zero())
            throw std::invalid_argument("the zero address cannot send transactions");
        if (!state_.balances.contains(caller))
            throw std::invalid_argument("unknown caller " + caller.to_string());

        const Gas base = config_.schedule.tx_base;
        if (state_.balances.balance(caller) < value)
            return reverted(base, "insufficient balance for attached value");

        WorldState snapshot = state_;
        TxContext ctx{caller, value, state_.clock, &config_.schedule, {}, {}};
        try {
            if (!value.is_zero() && !std::holds_alternative<call::Bid>(c))
                throw Revert(call_name(c) + " is not payable");
            state_.balances.transfer(caller, config_.contract, value);

            CallOutput out = dispatch(ctx, c);

            auto [fn, args] = abi_call(c);
            ctx.footprint.add_calldata(sol::encode_call(fn, args));
            const Gas gas = attach_gas(true, ctx.footprint, config_.schedule);
            if (gas > config_.schedule.block_gas_limit)
                throw Revert("out of gas: needs " + std::to_string(gas) +
                             ", block gas limit is " +
                             std::to_string(config_.schedule.block_gas_limit));

            TxReceipt r;
            r.gas_used = gas;
            r.events = std::move(ctx.events);
            r.output = std::move(out);
            r.footprint = ctx.footprint;
            r.value = value;
            return r;
        } catch (const Revert& e) {
            state_ = std::move(snapshot);
            return reverted(base, e.what());
        }
    }

    /// Canonical JSON of the full world state; identical states serialize
    /// byte-identically.
    nlohmann::ordered_json serialize_state() const;

    std::string state_hash() const { return to_hex(keccak256(serialize_state().dump())); }

    /// Balances of every account plus nothing else: escrow sits in the
    /// contract account, so this is the conserved quantity.
    Wei total_currency() const { return state_.balances.total(); }

private:
    static TxReceipt reverted(Gas base, std::string reason)
    {
        TxReceipt r;
        r.status = TxStatus::reverted;
        r.gas_used = base;
        r.revert_reason = std::move(reason);
        return r;
    }

    CallOutput dispatch(TxContext& ctx, const Call& c)
    {
        auto& ledger = state_.ledger;
        auto& auctions = state_.auctions;
        return std::visit(
            [&](const auto& x) -> CallOutput {
                using T = std::decay_t<decltype(x)>;
                using namespace call;
                if constexpr (std::is_same_v<T, Mint>) {
                    return ledger.mint(ctx, x.start_freq, x.end_freq, x.location);
                } else if constexpr (std::is_same_v<T, SetIdleTime>) {
                    ledger.token(x.token);
                    if (auctions.is_live(x.token))
                        throw Revert("setSpectrumIdleTime: auction in progress");
                    return ledger.set_spectrum_idle_time(ctx, x.token, x.starts, x.ends);
                } else if constexpr (std::is_same_v<T, SetUser>) {
                    ledger.token(x.token);
                    if (auctions.is_live(x.token))
                        throw Revert("setUser: auction in progress");
                    ledger.set_user(ctx, x.token, x.user, x.expires);
                    return std::monostate{};
                } else if constexpr (std::is_same_v<T, BatchSetUser>) {
                    if (!ledger.is_authorized(x.token, ctx.caller))
                        throw Revert("batchSetUser: caller is not owner nor approved");
                    if (auctions.is_live(x.token))
                        throw Revert("batchSetUser: auction in progress");
                    ledger.batch_set_user(ctx, x.token, x.users, x.starts, x.ends);
                    return std::monostate{};
                } else if constexpr (std::is_same_v<T, ApproveOperator>) {
                    ledger.approve_operator(ctx, x.token, x.operator_address);
                    return std::monostate{};
                } else if constexpr (std::is_same_v<T, StartAuction>) {
                    return auctions.start_auction(ctx, ledger, x.token, x.duration, x.slot_count,
                                                  x.bottom_price);
                } else if constexpr (std::is_same_v<T, Bid>) {
                    return auctions.bid(ctx, ledger, x.token, x.slot);
                } else {
                    return auctions.end_auction(ctx, ledger, state_.balances, config_.contract,
                                                x.token);
                }
            },
            c);
    }

    EngineConfig config_;
    WorldState state_;
};

inline nlohmann::ordered_json Engine::serialize_state() const
{
    using nlohmann::ordered_json;
    auto times = [](const std::vector<Timestamp>& v) { return ordered_json(v); };

    ordered_json j;
    j["clock"] = state_.clock;
    j["account_nonce"] = state_.account_nonce;

    ordered_json balances = ordered_json::object();
    for (const auto& [a, w] : state_.balances.accounts())
        balances[a.to_string()] = w.to_string();
    j["balances"] = std::move(balances);

    ordered_json tokens = ordered_json::array();
    for (const auto& [id, t] : state_.ledger.tokens()) {
        ordered_json tj;
        tj["token_id"] = id;
        tj["owner"] = t.meta.owner.to_string();
        tj["start_freq"] = t.meta.start_freq;
        tj["end_freq"] = t.meta.end_freq;
        tj["location"] = t.meta.location;
        tj["idle_starts"] = times(t.meta.idle_start_timestamps);
        tj["idle_ends"] = times(t.meta.idle_end_timestamps);
        tj["idle_time_slot_num"] = t.meta.idle_time_slot_num;
        ordered_json slots = ordered_json::array();
        for (const auto& r : t.slot_users)
            slots.push_back({r.user.to_string(), r.start_time, r.end_time});
        tj["slot_users"] = std::move(slots);
        if (t.baseline)
            tj["baseline"] = {t.baseline->user.to_string(), t.baseline->start_time,
                              t.baseline->expires};
        ordered_json ops = ordered_json::array();
        for (const auto& op : t.operators)
            ops.push_back(op.to_string());
        tj["operators"] = std::move(ops);
        tokens.push_back(std::move(tj));
    }
    j["tokens"] = std::move(tokens);

    ordered_json auctions = ordered_json::array();
    for (const auto& [id, a] : state_.auctions.auctions()) {
        ordered_json aj;
        aj["token_id"] = id;
        aj["seller"] = a.seller.to_string();
        aj["end_time"] = a.auction_end_time;
        aj["slot_count"] = a.time_slot_count;
        aj["has_ended"] = a.has_ended;
        ordered_json slots = ordered_json::array();
        for (const auto& s : a.slots) {
            ordered_json bidders = ordered_json::array();
            for (const auto& b : s.bidders)
                bidders.push_back(b.to_string());
            slots.push_back({{"highest_bidder", s.highest_bidder.to_string()},
                             {"highest_bid", s.highest_bid.to_string()},
                             {"bottom_price", s.bottom_price.to_string()},
                             {"is_finalized", s.is_finalized},
                             {"bidders", std::move(bidders)}});
        }
        aj["slots"] = std::move(slots);
        ordered_json winners = ordered_json::array();
        for (const auto& w : a.winners)
            winners.push_back(w.to_string());
        aj["winners"] = std::move(winners);
        auctions.push_back(std::move(aj));
    }
    j["auctions"] = std::move(auctions);

    ordered_json refunds = ordered_json::array();
    for (const auto& [key, w] : state_.auctions.refunds()) {
        const auto& [bidder, token, slot] = key;
        refunds.push_back({bidder.to_string(), token, slot, w.to_string()});
    }
    j["refunds"] = std::move(refunds);
    return j;
}

} // namespace nfst
