#pragma once

#include "nfst/balances.hpp"
#include "nfst/context.hpp"
#include "nfst/ledger.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace nfst {

struct TimeSlotAuction
{
    Address highest_bidder; // zero until the first accepted bid
    Wei highest_bid;
    Wei bottom_price;
    bool is_finalized = false;
    std::vector<Address> bidders; // every accepted bid, in order

    friend bool operator==(const TimeSlotAuction&, const TimeSlotAuction&) = default;
};

struct Auction
{
    TokenId token_id = 0;
    Address seller;
    Timestamp auction_end_time = 0;
    std::uint64_t time_slot_count = 0;
    bool has_ended = false;
    std::vector<TimeSlotAuction> slots;
    std::vector<Address> winners; // filled by end_auction

    friend bool operator==(const Auction&, const Auction&) = default;
};

/// Outbid escrow keyed by (bidder, token, slot).
using RefundKey = std::tuple<Address, TokenId, std::uint64_t>;
using RefundLedger = std::map<RefundKey, Wei>;

inline constexpr const char* auction_in_progress = "Auction in progress";

namespace events {

inline Event auction_start(TokenId token, std::uint64_t duration, std::uint64_t slots,
                           const Wei& bottom_price)
{
    return Event{"auctionStart",
                 {{"tokenId", sol::uint(token)},
                  {"auctionDuration", sol::uint(duration)},
                  {"timeSlotCount", sol::uint(slots)},
                  {"timeSlotBottomPrice", sol::uint(bottom_price)},
                  {"auctionStatus", sol::string(auction_in_progress)}}};
}

inline Event bid_placed(TokenId token, std::uint64_t slot, const Address& bidder,
                        const Wei& effective)
{
    return Event{"BidPlaced",
                 {{"amount", sol::uint(effective)},
                  {"bidder", sol::address(bidder)},
                  {"slot", sol::uint(slot)},
                  {"tokenId", sol::uint(token)}}};
}

inline Event payout(TokenId token, std::uint64_t slot, const Address& seller, const Wei& amount)
{
    return Event{"Payout",
                 {{"amount", sol::uint(amount)},
                  {"seller", sol::address(seller)},
                  {"slot", sol::uint(slot)},
                  {"tokenId", sol::uint(token)}}};
}

inline Event refund(TokenId token, std::uint64_t slot, const Address& bidder, const Wei& amount)
{
    return Event{"Refund",
                 {{"amount", sol::uint(amount)},
                  {"bidder", sol::address(bidder)},
                  {"slot", sol::uint(slot)},
                  {"tokenId", sol::uint(token)}}};
}

} // namespace events

/// Multi-slot synchronous English auctions, one live auction per token.
///
/// Bid value is escrowed in the contract account by the engine before
/// `bid` runs. Every rejection path reverts, so a failed bid never keeps
/// funds. An outbid bidder's standing bid moves to the refund ledger and is
/// stacked onto that bidder's next bid on the same slot.
class AuctionBook
{
public:
    bool has(TokenId id) const { return auctions_.contains(id); }

    const Auction& auction(TokenId id) const
    {
        auto it = auctions_.find(id);
        if (it == auctions_.end())
            throw Revert("no auction for token " + std::to_string(id));
        return it->second;
    }

    bool is_live(TokenId id) const
    {
        auto it = auctions_.find(id);
        return it != auctions_.end() && !it->second.has_ended;
    }

    Wei refund_of(const Address& bidder, TokenId id, std::uint64_t slot) const
    {
        auto it = refunds_.find({bidder, id, slot});
        return it == refunds_.end() ? Wei{} : it->second;
    }

    const RefundLedger& refunds() const { return refunds_; }
    const std::map<TokenId, Auction>& auctions() const { return auctions_; }

    /// Total value currently escrowed: refund entries plus standing bids.
    Wei escrowed() const
    {
        Wei sum;
        for (const auto& [_, w] : refunds_)
            sum += w;
        for (const auto& [_, a] : auctions_)
            for (const auto& s : a.slots)
                sum += s.highest_bid;
        return sum;
    }

    bool start_auction(TxContext& ctx, const NfstLedger& ledger, TokenId id,
                       std::uint64_t duration, std::uint64_t time_slot_count,
                       const Wei& bottom_price)
    {
        const auto& meta = ledger.metadata(id);
        if (is_live(id))
            throw Revert("startAuction: an auction is already running for this token");
        if (time_slot_count == 0 || time_slot_count != meta.idle_time_slot_num)
            throw Revert("startAuction: time slot count " + std::to_string(time_slot_count) +
                         " does not match the idle slot count " +
                         std::to_string(meta.idle_time_slot_num));
        if (!ledger.is_authorized(id, ctx.caller) || !ledger.user_of(id, ctx.now).is_zero())
            return false;

        Auction a;
        a.token_id = id;
        a.seller = meta.owner;
        a.auction_end_time = ctx.now + duration;
        a.time_slot_count = time_slot_count;
        a.slots.assign(time_slot_count, TimeSlotAuction{{}, {}, bottom_price, false, {}});

        const bool rerun = has(id);
        ctx.footprint.touch(rerun); // seller + hasEnded
        ctx.footprint.touch(rerun); // end time + slot count
        for (std::uint64_t i = 0; i < time_slot_count; ++i)
            ctx.footprint.touch(rerun); // bottom price

        auctions_[id] = std::move(a);
        ctx.emit(events::auction_start(id, duration, time_slot_count, bottom_price));
        return true;
    }

    /// `ctx.value` is the attached bid. Returns true or reverts.
    bool bid(TxContext& ctx, const NfstLedger& ledger, TokenId id, std::uint64_t slot_id)
    {
        auto& a = mutable_auction(id);
        if (a.has_ended)
            throw Revert("bid: auction has ended");
        if (slot_id >= a.time_slot_count)
            throw Revert("bid: unknown time slot " + std::to_string(slot_id));
        auto& slot = a.slots[slot_id];
        if (ledger.is_authorized(id, ctx.caller))
            throw Revert("bid: token owner and operators cannot bid");
        if (ctx.caller == slot.highest_bidder)
            throw Revert("bid: caller is already the highest bidder");
        if (ctx.now >= a.auction_end_time)
            throw Revert("bid: auction time is over");

        const RefundKey key{ctx.caller, id, slot_id};
        const Wei prior = refund_of(ctx.caller, id, slot_id);
        const Wei effective = ctx.value + prior;
        if (!(effective > slot.highest_bid))
            throw Revert("bid: " + effective.to_string() + " does not beat the highest bid " +
                         slot.highest_bid.to_string());
        if (effective < slot.bottom_price)
            throw Revert("bid: " + effective.to_string() + " is below the bottom price " +
                         slot.bottom_price.to_string());

        if (!slot.highest_bidder.is_zero()) {
            const RefundKey prev{slot.highest_bidder, id, slot_id};
            ctx.footprint.touch(!refund_of(slot.highest_bidder, id, slot_id).is_zero());
            refunds_[prev] += slot.highest_bid;
        }
        if (!prior.is_zero()) {
            ctx.footprint.touch(true);
            refunds_.erase(key);
        }
        ctx.footprint.touch(!slot.highest_bid.is_zero()); // highestBid
        ctx.footprint.touch(!slot.highest_bidder.is_zero()); // highestBidder
        ctx.footprint.touch(false); // bidders[] element
        ctx.footprint.touch(!slot.bidders.empty()); // bidders length

        slot.highest_bid = effective;
        slot.highest_bidder = ctx.caller;
        slot.bidders.push_back(ctx.caller);
        ctx.emit(events::bid_placed(id, slot_id, ctx.caller, effective));
        return true;
    }

    /// Pays each slot's highest bid to the seller, refunds every losing
    /// bidder, authorizes all winners in one batch, and closes the auction.
    std::vector<Address> end_auction(TxContext& ctx, NfstLedger& ledger, Balances& balances,
                                     const Address& escrow, TokenId id)
    {
        auto& a = mutable_auction(id);
        if (a.has_ended)
            throw Revert("endAuction: auction already ended");
        if (!ledger.is_authorized(id, ctx.caller))
            throw Revert("endAuction: caller is not owner nor approved");
        if (!(ctx.now > a.auction_end_time))
            throw Revert("endAuction: auction still running");

        std::vector<Address> winners;
        for (std::uint64_t i = 0; i < a.time_slot_count; ++i) {
            auto& slot = a.slots[i];
            winners.push_back(slot.highest_bidder);
            const Wei amount = slot.highest_bid;
            if (!amount.is_zero()) {
                balances.transfer(escrow, a.seller, amount);
                ctx.emit(events::payout(id, i, a.seller, amount));
                ctx.footprint.touch(true);
            }
            slot.highest_bid = Wei{};
            slot.is_finalized = true;
            ctx.footprint.touch(false);

            for (const auto& bidder : slot.bidders) {
                if (bidder == slot.highest_bidder)
                    continue;
                auto it = refunds_.find({bidder, id, i});
                if (it == refunds_.end() || it->second.is_zero())
                    continue;
                const Wei owed = it->second;
                refunds_.erase(it);
                ctx.footprint.touch(true);
                balances.transfer(escrow, bidder, owed);
                ctx.emit(events::refund(id, i, bidder, owed));
            }
        }

        const auto& meta = ledger.metadata(id);
        ledger.batch_set_user(ctx, id, winners, meta.idle_start_timestamps,
                              meta.idle_end_timestamps);
        a.has_ended = true;
        a.winners = winners;
        ctx.footprint.touch(true);
        return winners;
    }

    friend bool operator==(const AuctionBook&, const AuctionBook&) = default;

private:
    Auction& mutable_auction(TokenId id)
    {
        auto it = auctions_.find(id);
        if (it == auctions_.end())
            throw Revert("no auction for token " + std::to_string(id));
        return it->second;
    }

    std::map<TokenId, Auction> auctions_;
    RefundLedger refunds_;
};

} // namespace nfst
