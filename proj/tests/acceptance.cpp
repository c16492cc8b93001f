// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include "nfst/nfst.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

using namespace nfst;

namespace {

struct Check
{
    bool ok = true;
    std::ostringstream why;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            why << what;
        }
    }
};

std::uint64_t seed()
{
    const char* s = std::getenv("SPECTRUM_SIM_SEED");
    return s ? std::strtoull(s, nullptr, 10) : 20250609;
}

const std::vector<Address> ref_users{
    Address::from_hex("0x5B38Da6a701c568545dCfcB03FcB875f56beddC4"),
    Address::from_hex("0x78731D3Ca6b7E34aC0F824c42a7cC18A495cabaB"),
    Address::from_hex("0x17F6AD8Ef982297579C203069C1DbfFE4348c372")};
const std::vector<Timestamp> ref_starts{1749476800, 1749477000, 1749477200};
const std::vector<Timestamp> ref_ends{1749476900, 1749477100, 1749477300};

Check criterion_demo(const RunResult& r)
{
    Check c;
    c.require(r.exit_code == 0, "demo run failed: " + r.failure);
    auto it = r.winners.find(1);
    c.require(it != r.winners.end() && it->second == ref_users, "winners differ from SU1/SU4/SU6");

    int updates = 0;
    for (const auto& e : r.events_json()) {
        if (e["event"] != "UpdateUser")
            continue;
        ++updates;
        nlohmann::ordered_json users = nlohmann::ordered_json::array(), st = users, en = users;
        for (std::size_t i = 0; i < 3; ++i) {
            users.push_back(ref_users[i].to_checksum());
            st.push_back(std::to_string(ref_starts[i]));
            en.push_back(std::to_string(ref_ends[i]));
        }
        nlohmann::ordered_json args;
        args["0"] = "1";
        args["1"] = users;
        args["2"] = st;
        args["3"] = en;
        args["tokenId"] = "1";
        args["users"] = users;
        args["startUseTimes"] = st;
        args["endUseTimes"] = en;
        c.require(e["args"] == args, "UpdateUser args differ: " + e["args"].dump());
        c.require(e["from"] == "0xD1ee42fdA217994CF17F7D37E8909FA2c30Ca192", "emitter differs");
        c.require(e["topic"] ==
                      "0xfb4bad7df068762e64d9213a3b032bd620fb483d61b473f4cb2203fcd740e18e",
                  "topic differs");
    }
    c.require(updates == 1, "expected exactly one UpdateUser event");
    for (std::size_t i = 0; i < 3; ++i) {
        c.require(r.engine.user_of(1, ref_starts[i]) == ref_users[i], "window start not leased");
        c.require(r.engine.user_of(1, ref_ends[i] - 1) == ref_users[i], "window end-1 not leased");
        c.require(r.engine.user_of(1, ref_ends[i]).is_zero(), "window not half-open");
    }
    return c;
}

Check criterion_settlement(const RunResult& r)
{
    Check c;
    auto s = demo::settlement(r);
    c.require(s.seller_payout == Wei::ether(41), "payout " + s.seller_payout.to_string());
    std::map<std::string, Wei> refunds;
    Wei refund_sum;
    for (const auto& [who, w] : s.refunds) {
        refunds[who] += w;
        refund_sum += w;
    }
    c.require(refunds == std::map<std::string, Wei>{{"SU2", Wei::ether(12)},
                                                     {"SU3", Wei::ether(13)},
                                                     {"SU5", Wei::ether(12)}},
              "refunds differ");
    c.require(s.deposited == Wei::ether(78), "deposited " + s.deposited.to_string());
    c.require(s.deposited == s.seller_payout + refund_sum, "deposited != payout + refunds");
    return c;
}

Check criterion_tx_counts()
{
    Check c;
    auto sweep = gas_sweep(10, GasSchedule{});
    for (std::int64_t n = 1; n <= 10; ++n) {
        const auto& row = sweep.rows[static_cast<std::size_t>(n - 1)];
        c.require(row.slot_count == n && row.erc4907_tx == n && row.m_erc4907_tx == 1,
                  "row " + std::to_string(n));
    }
    return c;
}

Check criterion_gas_shape()
{
    Check c;
    GasSchedule s;
    const std::int64_t n = 10;
    auto e = gas_for_erc4907_flow(n, s);
    auto m = gas_for_m_erc4907_flow(n, s);
    for (std::int64_t k = 1; k <= n; ++k)
        c.require(e.per_point_gas[static_cast<std::size_t>(k - 1)] == k * e.per_point_gas[0],
                  "erc4907 not affine at k=" + std::to_string(k));
    for (std::int64_t k = 3; k <= n; ++k) {
        auto i = static_cast<std::size_t>(k - 2);
        c.require(m.marginal_gas[i] <= e.marginal_gas[i],
                  "m marginal above erc4907 at k=" + std::to_string(k));
    }
    c.require(m.per_point_gas[0] > e.per_point_gas[0], "single-slot m not above erc4907");

    // jumps: marginals that exceed the cheapest step by more than half a slot write
    const Gas floor = *std::min_element(m.marginal_gas.begin(), m.marginal_gas.end());
    std::vector<std::int64_t> jumps;
    for (std::size_t i = 0; i < m.marginal_gas.size(); ++i)
        if (m.marginal_gas[i] - floor > s.sstore_update / 2)
            jumps.push_back(static_cast<std::int64_t>(i) + 2);
    c.require(jumps == std::vector<std::int64_t>{5, 9}, "jump locations differ");
    return c;
}

Check criterion_calibration(std::string& detail)
{
    Check c;
    CalibrationTargets t;
    auto fit = calibrate(GasSchedule{}, t);
    const double em = fit.erc4907_marginal, mm = fit.m_marginal;
    c.require(std::abs(em - 26270) <= 0.05 * 26270, "erc4907 marginal " + std::to_string(em));
    c.require(std::abs(mm - 5409) <= 0.10 * 5409, "m marginal " + std::to_string(mm));
    const double gap = std::abs((26270.0 - 5409.0) - GasSchedule{}.tx_base) / GasSchedule{}.tx_base;
    c.require(gap < 0.01, "tx_base gap " + std::to_string(gap));
    std::ostringstream d;
    d << "erc4907=" << em << " m=" << mm << " tx_base gap=" << gap * 100 << "%";
    detail = d.str();
    return c;
}

Check criterion_properties()
{
    Check c;
    std::mt19937_64 rng(seed());
    auto range = [&rng](std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
    };
    const int cases = 1000;
    int conservation = 0, atomic = 0, monotone = 0, emptied = 0, functional = 0, batch = 0;

    for (int k = 0; k < cases && c.ok; ++k) {
        Engine e{EngineConfig{GasSchedule{}, demo::addr::contract, 1000}};
        auto owner = e.create_account(0);
        std::vector<Address> bidders;
        for (std::uint64_t i = range(1, 5); i > 0; --i)
            bidders.push_back(e.create_account(range(0, 100)));
        const auto slots = range(1, 3);
        std::vector<Timestamp> st, en;
        Timestamp t = 2000;
        for (std::uint64_t i = 0; i < slots; ++i) {
            t += range(0, 20);
            st.push_back(t);
            t += range(1, 50);
            en.push_back(t);
        }
        e.execute_tx(owner, {}, call::Mint{"a", "b", "c"});
        e.execute_tx(owner, {}, call::SetIdleTime{1, st, en});
        const auto dur = range(10, 200);
        e.execute_tx(owner, {}, call::StartAuction{1, dur, slots, Wei(range(0, 10))});
        const Wei total = e.total_currency();
        Wei accepted;
        std::vector<Wei> tops(slots);

        for (auto steps = range(0, 25); steps > 0; --steps) {
            if (range(0, 9) == 0)
                e.advance_time(range(0, 40));
            const auto& who = range(0, 9) == 0 ? owner : bidders[range(0, bidders.size() - 1)];
            const Wei v = range(0, 30);
            const auto slot = range(0, slots - 1);
            const auto before = e.state_hash();
            auto r = e.execute_tx(who, v, call::Bid{1, slot});
            if (r.ok())
                accepted += v;
            else
                c.require(e.state_hash() == before, "revert changed state");
            c.require(e.total_currency() == total, "currency not conserved");
            for (std::uint64_t i = 0; i < slots; ++i) {
                const auto& now_top = e.auctions().auction(1).slots[i].highest_bid;
                c.require(!(now_top < tops[i]), "highest bid decreased");
                tops[i] = now_top;
            }
        }
        ++atomic;
        ++monotone;
        if (e.now() <= 1000 + dur)
            e.advance_time(1000 + dur - e.now() + 1);
        auto end = e.execute_tx(owner, {}, call::EndAuction{1});
        c.require(end.ok(), "end_auction failed");
        Wei paid;
        for (const auto& ev : end.events)
            if (ev.name == "Payout" || ev.name == "Refund")
                paid += Wei(std::get<BigUint>(ev.field("amount").data));
        c.require(paid == accepted, "payouts + refunds != accepted deposits");
        c.require(e.get_balance(e.contract_address()).is_zero(), "escrow not drained");
        ++conservation;
        c.require(e.auctions().refunds().empty(), "refund ledger not empty");
        ++emptied;

        const auto winners = std::get<std::vector<Address>>(end.output);
        std::vector<SlotUserRecord> sequential(slots);
        for (std::uint64_t i = 0; i < slots; ++i)
            if (!winners[i].is_zero())
                sequential[i] = {winners[i], st[i], en[i]};
        c.require(e.ledger().token(1).slot_users == sequential, "batch != sequential assignment");
        ++batch;
        for (Timestamp q = 1990; q <= en.back() + 5; ++q) {
            int holders = 0;
            Address expect;
            for (std::uint64_t i = 0; i < slots; ++i)
                if (!winners[i].is_zero() && st[i] <= q && q < en[i]) {
                    ++holders;
                    expect = winners[i];
                }
            c.require(holders <= 1 && e.user_of(1, q) == expect, "user_of mismatch");
        }
        ++functional;
    }
    for (int n : {conservation, atomic, monotone, emptied, functional, batch})
        c.require(n >= cases, "fewer than 1000 cases ran");
    return c;
}

Check criterion_expiry(const RunResult& r)
{
    Check c;
    // walk the clock past every window on a copy, reading user_of "now"
    Engine e = r.engine;
    for (std::size_t i = 0; i < 3; ++i) {
        if (e.now() < ref_starts[i])
            e.advance_time(ref_starts[i] - e.now());
        for (Timestamp t = ref_starts[i]; t < ref_ends[i]; t += 7) {
            e.advance_time(t - e.now());
            c.require(e.current_user_of(1) == ref_users[i], "winner missing inside window");
        }
        e.advance_time(ref_ends[i] - e.now());
        c.require(e.current_user_of(1).is_zero(), "user still set at end_time");
        e.advance_time(1);
        c.require(e.current_user_of(1).is_zero(), "user still set after end_time");
    }
    e.advance_time(1'000'000);
    c.require(e.current_user_of(1).is_zero(), "user set long after the last window");
    return c;
}

} // namespace

int main()
{
    const RunResult demo_run = run_scenario(demo::paper_demo());
    std::string calib;
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
        {"1 demo reproduction", [&] { return criterion_demo(demo_run); }},
        {"2 settlement arithmetic", [&] { return criterion_settlement(demo_run); }},
        {"3 transaction counts", [] { return criterion_tx_counts(); }},
        {"4 gas-curve shape", [] { return criterion_gas_shape(); }},
        {"5 gas-magnitude calibration", [&] { return criterion_calibration(calib); }},
        {"6 property suites (seed " + std::to_string(seed()) + ")",
         [] { return criterion_properties(); }},
        {"7 expiry semantics", [&] { return criterion_expiry(demo_run); }}};

    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Check c;
        try {
            c = run();
        } catch (const std::exception& e) {
            c.ok = false;
            c.why << "exception: " << e.what();
        }
        std::cout << (c.ok ? "PASS " : "FAIL ") << name;
        if (!c.ok)
            std::cout << ": " << c.why.str();
        else if (name.starts_with("5") && !calib.empty())
            std::cout << " (" << calib << ")";
        std::cout << "\n";
        failures += c.ok ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
