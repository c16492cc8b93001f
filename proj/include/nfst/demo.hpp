#pragma once

#include "nfst/runner.hpp"
#include "nfst/scenario.hpp"

#include <sstream>
#include <string>

namespace nfst::demo {

/// Pinned participant addresses (Remix VM default accounts).
namespace addr {
inline const Address contract = Address::from_hex("0xD1ee42fdA217994CF17F7D37E8909FA2c30Ca192");
inline const Address pu = Address::from_hex("0xdD870fA1b7C4700F2BD7f44238821C26f7392148");
inline const Address su1 = Address::from_hex("0x5B38Da6a701c568545dCfcB03FcB875f56beddC4");
inline const Address su2 = Address::from_hex("0xAb8483F64d9C6d1EcF9b849Ae677dD3315835cb2");
inline const Address su3 = Address::from_hex("0x4B20993Bc481177ec7E8f571ceCaE8A9e22C02db");
inline const Address su4 = Address::from_hex("0x78731D3Ca6b7E34aC0F824c42a7cC18A495cabaB");
inline const Address su5 = Address::from_hex("0x617F2E2fD72FD9D5503197092aC168c91465E7f2");
inline const Address su6 = Address::from_hex("0x17F6AD8Ef982297579C203069C1DbfFE4348c372");
} // namespace addr

inline const std::vector<Timestamp> slot_starts{1749476800, 1749477000, 1749477200};
inline const std::vector<Timestamp> slot_ends{1749476900, 1749477100, 1749477300};
inline constexpr Timestamp start_time = 1749476500;
inline constexpr std::uint64_t auction_duration = 180;

inline std::string ether(std::uint64_t n) { return Wei::ether(n).to_string(); }

/// One primary user leases three idle slots of token 1 to six secondary
/// users through a 180 s auction with a 10 ETH floor.
inline Scenario paper_demo()
{
    using namespace step;
    Scenario sc;
    sc.name = "paper_demo";
    sc.start_time = start_time;
    sc.contract = addr::contract;
    const std::pair<const char*, Address> people[] = {
        {"PU", addr::pu},   {"SU1", addr::su1}, {"SU2", addr::su2}, {"SU3", addr::su3},
        {"SU4", addr::su4}, {"SU5", addr::su5}, {"SU6", addr::su6}};
    for (const auto& [label, a] : people)
        sc.accounts.push_back({label, Wei::ether(100), a});

    auto add = [&sc](StepAction a) { sc.steps.push_back(Step{std::move(a)}); };
    add(Mint{"PU", "600MHz", "800MHz", "CityA"});
    add(SetIdle{"PU", 1, slot_starts, slot_ends});
    add(StartAuction{"PU", 1, auction_duration, 3, Wei::ether(10)});
    // slot 0
    add(Bid{"SU1", 1, 0, Wei::ether(11)});
    add(Bid{"SU2", 1, 0, Wei::ether(12)});
    add(Bid{"SU3", 1, 0, Wei::ether(13)});
    add(Bid{"SU1", 1, 0, Wei::ether(5)});
    // slot 1
    add(Bid{"SU4", 1, 1, Wei::ether(11)});
    add(Bid{"SU5", 1, 1, Wei::ether(12)});
    add(Bid{"SU4", 1, 1, Wei::ether(3)});
    // slot 2
    add(Bid{"SU6", 1, 2, Wei::ether(11)});
    add(AdvanceTime{auction_duration + 1});
    add(EndAuction{"PU", 1});

    auto expect = [&sc](Expectation e) { sc.expectations.push_back(std::move(e)); };
    const char* winners[] = {"SU1", "SU4", "SU6"};
    for (std::uint64_t i = 0; i < 3; ++i) {
        Expectation e{ExpectKind::winner};
        e.token = 1;
        e.slot = i;
        e.expected = winners[i];
        expect(e);
    }
    const std::pair<const char*, std::string> deltas[] = {
        {"PU", ether(41)}, {"SU1", "-" + ether(16)}, {"SU2", "0"}, {"SU3", "0"},
        {"SU4", "-" + ether(14)}, {"SU5", "0"}, {"SU6", "-" + ether(11)}};
    for (const auto& [who, d] : deltas) {
        Expectation e{ExpectKind::balance_delta};
        e.account = who;
        e.expected = d;
        expect(e);
    }
    const std::pair<const char*, nlohmann::json> update_fields[] = {
        {"tokenId", "1"},
        {"users", {"SU1", "SU4", "SU6"}},
        {"startUseTimes", slot_starts},
        {"endUseTimes", slot_ends}};
    for (const auto& [field, value] : update_fields) {
        Expectation e{ExpectKind::event_field};
        e.event = "UpdateUser";
        e.occurrence = 0;
        e.field = field;
        e.expected = value;
        expect(e);
    }
    const std::pair<Timestamp, const char*> users_at[] = {
        {1749476799, "zero"}, {1749476850, "SU1"}, {1749476900, "zero"},
        {1749476950, "zero"}, {1749477050, "SU4"}, {1749477250, "SU6"},
        {1749477300, "zero"}};
    for (const auto& [t, who] : users_at) {
        Expectation e{ExpectKind::user_at_time};
        e.token = 1;
        e.at = t;
        e.expected = who;
        expect(e);
    }
    Expectation txs{ExpectKind::tx_count};
    txs.expected = 12;
    expect(txs);
    return sc;
}

struct Settlement
{
    std::vector<std::string> winners;
    Wei seller_payout;
    std::vector<std::pair<std::string, Wei>> refunds; // in event order
    Wei deposited;                                    // value of accepted bids
};

/// Payouts and refunds read back from the run's events.
inline Settlement settlement(const RunResult& r)
{
    Settlement s;
    for (const auto& w : r.winners.begin()->second)
        s.winners.push_back(r.label_of(w));
    for (const auto& e : r.events) {
        auto amount = [&e] { return Wei(std::get<BigUint>(e.field("amount").data)); };
        if (e.name == "Payout")
            s.seller_payout += amount();
        else if (e.name == "Refund")
            s.refunds.emplace_back(r.label_of(std::get<Address>(e.field("bidder").data)),
                                   amount());
    }
    for (const auto& rc : r.receipts)
        if (rc.ok())
            s.deposited += rc.value;
    return s;
}

inline std::string eth_string(const Wei& w)
{
    static const BigUint unit("1000000000000000000");
    BigUint whole = w.value() / unit;
    BigUint frac = w.value() % unit;
    std::string out = whole.str();
    if (!frac.is_zero()) {
        std::string f = frac.str();
        f.insert(0, 18 - f.size(), '0');
        while (!f.empty() && f.back() == '0')
            f.pop_back();
        out += "." + f;
    }
    return out + " ETH";
}

/// Human-readable summary for the `demo` command.
inline std::string summary(const RunResult& r)
{
    const Settlement s = settlement(r);
    std::ostringstream os;
    os << "winners:";
    for (std::size_t i = 0; i < s.winners.size(); ++i)
        os << " slot" << i << "=" << s.winners[i];
    os << "\nseller payout: " << eth_string(s.seller_payout) << "\nrefunds:";
    for (const auto& [who, w] : s.refunds)
        os << " " << who << "=" << eth_string(w);
    os << "\n";
    return os.str();
}

} // namespace nfst::demo
