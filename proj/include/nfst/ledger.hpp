#pragma once

#include "nfst/context.hpp"
#include "nfst/types.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace nfst {

struct NfstMetadata
{
    TokenId token_id = 0;
    Address owner;
    std::string start_freq;
    std::string end_freq;
    std::string location;
    std::vector<Timestamp> idle_start_timestamps;
    std::vector<Timestamp> idle_end_timestamps;
    std::uint64_t idle_time_slot_num = 0;

    friend bool operator==(const NfstMetadata&, const NfstMetadata&) = default;
};

/// Lease of one idle slot. A zero user means the slot is unassigned.
struct SlotUserRecord
{
    Address user;
    Timestamp start_time = 0;
    Timestamp end_time = 0;

    friend bool operator==(const SlotUserRecord&, const SlotUserRecord&) = default;
};

/// Single-user ERC4907 lease: [start_time, expires).
struct BaselineUserRecord
{
    Address user;
    Timestamp start_time = 0;
    Timestamp expires = 0;

    friend bool operator==(const BaselineUserRecord&, const BaselineUserRecord&) = default;
};

struct TokenState
{
    NfstMetadata meta;
    std::vector<SlotUserRecord> slot_users; // empty until the first batch authorization
    std::optional<BaselineUserRecord> baseline;
    std::set<Address> operators;

    friend bool operator==(const TokenState&, const TokenState&) = default;
};

namespace events {

inline Event spectrum_tokenization(const NfstMetadata& m)
{
    return Event{"SpectrumTokenization",
                 {{"tokenId", sol::uint(m.token_id)},
                  {"owner", sol::address(m.owner)},
                  {"startFreq", sol::string(m.start_freq)},
                  {"endFreq", sol::string(m.end_freq)},
                  {"location", sol::string(m.location)}}};
}

inline Event set_idle_time(const NfstMetadata& m)
{
    return Event{"SetNFSTIdleTime",
                 {{"tokenId", sol::uint(m.token_id)},
                  {"newSpectrumIdleStartTimes", sol::uints(m.idle_start_timestamps, 64)},
                  {"newSpectrumIdleEndTimes", sol::uints(m.idle_end_timestamps, 64)},
                  {"idleTimeSlot", sol::uint(m.idle_time_slot_num)}}};
}

inline Event operator_approved(TokenId token, const Address& owner, const Address& op)
{
    return Event{"OperatorApproved",
                 {{"operator", sol::address(op)},
                  {"owner", sol::address(owner)},
                  {"tokenId", sol::uint(token)}}};
}

} // namespace events

/// Storage slots used by a Solidity string: short strings live inline.
inline std::int64_t string_slots(const std::string& s)
{
    return s.size() < 32 ? 1 : 1 + static_cast<std::int64_t>((s.size() + 31) / 32);
}

/// Checks an idle schedule: equal nonzero lengths, start < end per slot,
/// slots ordered and non-overlapping.
inline void validate_idle_schedule(std::span<const Timestamp> starts,
                                   std::span<const Timestamp> ends)
{
    if (starts.empty() || starts.size() != ends.size())
        throw Revert("idle schedule: start and end lists must have equal nonzero length");
    for (std::size_t i = 0; i < starts.size(); ++i) {
        if (starts[i] >= ends[i])
            throw Revert("idle schedule: slot " + std::to_string(i) + " has start >= end");
        if (i + 1 < starts.size() && ends[i] > starts[i + 1])
            throw Revert("idle schedule: slot " + std::to_string(i) + " overlaps slot " +
                         std::to_string(i + 1));
    }
}

/// Registry of spectrum tokens and their usage rights.
class NfstLedger
{
public:
    bool exists(TokenId id) const { return tokens_.contains(id); }

    const TokenState& token(TokenId id) const
    {
        auto it = tokens_.find(id);
        if (it == tokens_.end())
            throw Revert("unknown token " + std::to_string(id));
        return it->second;
    }

    const NfstMetadata& metadata(TokenId id) const { return token(id).meta; }
    Address owner_of(TokenId id) const { return token(id).meta.owner; }
    std::size_t token_count() const { return tokens_.size(); }
    const std::map<TokenId, TokenState>& tokens() const { return tokens_; }

    bool is_authorized(TokenId id, const Address& who) const
    {
        const auto& t = token(id);
        return !who.is_zero() && (who == t.meta.owner || t.operators.contains(who));
    }

    TokenId mint(TxContext& ctx, std::string start_freq, std::string end_freq,
                 std::string location)
    {
        if (ctx.caller.is_zero())
            throw Revert("zero address cannot mint");
        const TokenId id = next_id_++;
        TokenState t;
        t.meta.token_id = id;
        t.meta.owner = ctx.caller;
        t.meta.start_freq = std::move(start_freq);
        t.meta.end_freq = std::move(end_freq);
        t.meta.location = std::move(location);

        ctx.footprint.touch(id > 1); // token counter
        ctx.footprint.touch(false);  // owner
        for (const auto* s : {&t.meta.start_freq, &t.meta.end_freq, &t.meta.location})
            for (std::int64_t k = 0; k < string_slots(*s); ++k)
                ctx.footprint.touch(false);

        ctx.emit(events::spectrum_tokenization(t.meta));
        tokens_.emplace(id, std::move(t));
        return id;
    }

    /// Replaces the idle schedule wholesale. Unauthorized callers get `false`
    /// and no state change; malformed schedules revert.
    bool set_spectrum_idle_time(TxContext& ctx, TokenId id, std::span<const Timestamp> starts,
                                std::span<const Timestamp> ends)
    {
        auto& t = mutable_token(id);
        validate_idle_schedule(starts, ends);
        if (!is_authorized(id, ctx.caller))
            return false;

        const auto& gas = ctx.gas();
        const auto old_n = static_cast<std::int64_t>(t.meta.idle_time_slot_num);
        const auto new_n = static_cast<std::int64_t>(starts.size());
        ctx.footprint += array_write_footprint(gas.timestamp_width, old_n, new_n);
        ctx.footprint += array_write_footprint(gas.timestamp_width, old_n, new_n);
        ctx.footprint.touch(old_n != 0);
        clear_slot_users(ctx, t);

        t.meta.idle_start_timestamps.assign(starts.begin(), starts.end());
        t.meta.idle_end_timestamps.assign(ends.begin(), ends.end());
        t.meta.idle_time_slot_num = starts.size();
        ctx.emit(events::set_idle_time(t.meta));
        return true;
    }

    /// ERC4907 single-user authorization for [now, expires).
    void set_user(TxContext& ctx, TokenId id, const Address& user, Timestamp expires)
    {
        auto& t = mutable_token(id);
        if (!is_authorized(id, ctx.caller))
            throw Revert("setUser: caller is not owner nor approved");
        if (expires <= ctx.now && !user.is_zero())
            throw Revert("setUser: expiry must be in the future");
        for (const auto& r : t.slot_users)
            if (!r.user.is_zero() && !user.is_zero() && r.start_time < expires &&
                ctx.now < r.end_time)
                throw Revert("setUser: lease overlaps an assigned time slot");

        ctx.footprint.touch(t.baseline.has_value());
        t.baseline = BaselineUserRecord{user, ctx.now, expires};
        ctx.emit(erc4907_update_user_event(id, user, expires));
    }

    /// Assigns every idle slot of the token in one operation. A zero address
    /// leaves that slot unassigned.
    void batch_set_user(TxContext& ctx, TokenId id, std::span<const Address> users,
                        std::span<const Timestamp> start_times,
                        std::span<const Timestamp> end_times)
    {
        auto& t = mutable_token(id);
        const auto n = t.meta.idle_time_slot_num;
        if (users.size() != n || start_times.size() != n || end_times.size() != n)
            throw Revert("batchSetUser: list lengths must equal the idle slot count " +
                         std::to_string(n));
        for (std::size_t i = 0; i < n; ++i)
            if (start_times[i] != t.meta.idle_start_timestamps[i] ||
                end_times[i] != t.meta.idle_end_timestamps[i])
                throw Revert("batchSetUser: interval " + std::to_string(i) +
                             " does not match the idle slot");
        if (t.baseline) {
            if (t.baseline->expires > ctx.now && !t.baseline->user.is_zero())
                throw Revert("batchSetUser: a single-user lease is still running");
            t.baseline.reset();
        }

        const auto& gas = ctx.gas();
        const auto old_n = static_cast<std::int64_t>(t.slot_users.size());
        const auto new_n = static_cast<std::int64_t>(n);
        ctx.footprint += array_write_footprint(gas.address_width, old_n, new_n);
        ctx.footprint += array_write_footprint(gas.timestamp_width, old_n, new_n);
        ctx.footprint += array_write_footprint(gas.timestamp_width, old_n, new_n);

        t.slot_users.clear();
        for (std::size_t i = 0; i < n; ++i)
            t.slot_users.push_back(users[i].is_zero()
                                       ? SlotUserRecord{}
                                       : SlotUserRecord{users[i], start_times[i], end_times[i]});

        ctx.emit(batch_update_user_event(id, {users.begin(), users.end()},
                                         {start_times.begin(), start_times.end()},
                                         {end_times.begin(), end_times.end()}));
    }

    /// The user whose lease window [start, end) contains `at`, else zero.
    /// Expiry needs no transaction: once a window has passed the lookup
    /// simply stops matching.
    Address user_of(TokenId id, Timestamp at) const
    {
        const auto& t = token(id);
        for (const auto& r : t.slot_users)
            if (!r.user.is_zero() && r.start_time <= at && at < r.end_time)
                return r.user;
        if (t.baseline && t.baseline->start_time <= at && at < t.baseline->expires)
            return t.baseline->user;
        return Address::zero();
    }

    void approve_operator(TxContext& ctx, TokenId id, const Address& op)
    {
        auto& t = mutable_token(id);
        if (ctx.caller != t.meta.owner)
            throw Revert("approve: caller is not the token owner");
        if (op.is_zero())
            throw Revert("approve: operator is the zero address");
        ctx.footprint.touch(t.operators.contains(op));
        t.operators.insert(op);
        ctx.emit(events::operator_approved(id, t.meta.owner, op));
    }

    friend bool operator==(const NfstLedger&, const NfstLedger&) = default;

private:
    TokenState& mutable_token(TokenId id)
    {
        auto it = tokens_.find(id);
        if (it == tokens_.end())
            throw Revert("unknown token " + std::to_string(id));
        return it->second;
    }

    static void clear_slot_users(TxContext& ctx, TokenState& t)
    {
        if (t.slot_users.empty())
            return;
        const auto& gas = ctx.gas();
        const auto n = static_cast<std::int64_t>(t.slot_users.size());
        ctx.footprint.updated_slots += 3 + packed_slots(gas.address_width, n) +
                                       2 * packed_slots(gas.timestamp_width, n);
        t.slot_users.clear();
    }

    std::map<TokenId, TokenState> tokens_;
    TokenId next_id_ = 1;
};

} // namespace nfst
