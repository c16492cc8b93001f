#include "nfst/demo.hpp"
#include "nfst/ledger.hpp"

#include <gtest/gtest.h>

using namespace nfst;
namespace a = nfst::demo::addr;

namespace {

TxContext ctx_for(const Address& caller, Timestamp now = demo::start_time)
{
    return TxContext{caller, {}, now, nullptr, {}, {}};
}

struct LedgerTest : ::testing::Test
{
    NfstLedger ledger;

    TokenId mint_one(const Address& owner = a::pu)
    {
        auto ctx = ctx_for(owner);
        return ledger.mint(ctx, "600MHz", "800MHz", "CityA");
    }

    void schedule_demo_slots(TokenId id)
    {
        auto ctx = ctx_for(a::pu);
        ASSERT_TRUE(ledger.set_spectrum_idle_time(ctx, id, demo::slot_starts, demo::slot_ends));
    }
};

} // namespace

TEST_F(LedgerTest, MintAssignsSequentialIdsAndEmitsTokenization)
{
    auto ctx = ctx_for(a::pu);
    EXPECT_EQ(ledger.mint(ctx, "600MHz", "800MHz", "CityA"), 1u);
    ASSERT_EQ(ctx.events.size(), 1u);
    const auto& e = ctx.events[0];
    EXPECT_EQ(e.name, "SpectrumTokenization");
    EXPECT_EQ(render_value(e.field("tokenId")), "1");
    EXPECT_EQ(render_value(e.field("owner")), "0xdD870fA1b7C4700F2BD7f44238821C26f7392148");
    EXPECT_EQ(render_value(e.field("startFreq")), "600MHz");
    EXPECT_EQ(render_value(e.field("endFreq")), "800MHz");
    EXPECT_EQ(render_value(e.field("location")), "CityA");

    EXPECT_EQ(mint_one(a::su1), 2u);
    EXPECT_EQ(ledger.owner_of(1), a::pu);
    EXPECT_EQ(ledger.owner_of(2), a::su1);
    EXPECT_EQ(ledger.metadata(1).idle_time_slot_num, 0u);
}

TEST_F(LedgerTest, MintFootprintCountsMetadataSlots)
{
    auto ctx = ctx_for(a::pu);
    ledger.mint(ctx, "600MHz", "800MHz", "CityA");
    // counter, owner, three short strings stored inline
    EXPECT_EQ(ctx.footprint.new_slots, 5);
    EXPECT_EQ(ctx.footprint.updated_slots, 0);
    EXPECT_EQ(ctx.footprint.logs, 1);

    auto ctx2 = ctx_for(a::pu);
    ledger.mint(ctx2, std::string(40, 'x'), "a", "b");
    // counter now nonzero; 40-byte string: length slot plus two data slots
    EXPECT_EQ(ctx2.footprint.updated_slots, 1);
    EXPECT_EQ(ctx2.footprint.new_slots, 1 + 3 + 1 + 1);
}

TEST_F(LedgerTest, IdleScheduleReplacesAndEmits)
{
    auto id = mint_one();
    auto ctx = ctx_for(a::pu);
    ASSERT_TRUE(ledger.set_spectrum_idle_time(ctx, id, demo::slot_starts, demo::slot_ends));
    const auto& m = ledger.metadata(id);
    EXPECT_EQ(m.idle_time_slot_num, 3u);
    EXPECT_EQ(m.idle_start_timestamps, demo::slot_starts);
    EXPECT_EQ(m.idle_end_timestamps, demo::slot_ends);

    ASSERT_EQ(ctx.events.size(), 1u);
    const auto& e = ctx.events[0];
    EXPECT_EQ(e.name, "SetNFSTIdleTime");
    EXPECT_EQ(render_value(e.field("newSpectrumIdleStartTimes")).dump(),
              R"(["1749476800","1749477000","1749477200"])");
    EXPECT_EQ(render_value(e.field("newSpectrumIdleEndTimes")).dump(),
              R"(["1749476900","1749477100","1749477300"])");
    EXPECT_EQ(render_value(e.field("idleTimeSlot")), "3");
}

TEST_F(LedgerTest, IdleScheduleIsIdempotent)
{
    auto id = mint_one();
    schedule_demo_slots(id);
    auto once = ledger;
    schedule_demo_slots(id);
    EXPECT_EQ(ledger, once);
}

TEST_F(LedgerTest, UnauthorizedIdleScheduleReturnsFalse)
{
    auto id = mint_one();
    schedule_demo_slots(id);
    auto before = ledger;
    auto ctx = ctx_for(a::su1);
    std::vector<Timestamp> s{1}, e{2};
    EXPECT_FALSE(ledger.set_spectrum_idle_time(ctx, id, s, e));
    EXPECT_TRUE(ctx.events.empty());
    EXPECT_EQ(ledger, before);
}

TEST_F(LedgerTest, MalformedIdleSchedulesRevert)
{
    auto id = mint_one();
    auto ctx = ctx_for(a::pu);
    auto attempt = [&](std::vector<Timestamp> s, std::vector<Timestamp> e) {
        EXPECT_THROW(ledger.set_spectrum_idle_time(ctx, id, s, e), Revert);
    };
    attempt({100, 150}, {160, 200}); // overlap: 160 > 150
    attempt({100}, {100});           // empty window
    attempt({100, 200}, {150});      // length mismatch
    attempt({}, {});
    EXPECT_EQ(ledger.metadata(id).idle_time_slot_num, 0u);
    // touching windows are fine: [100,150) then [150,200)
    std::vector<Timestamp> s{100, 150}, e{150, 200};
    EXPECT_TRUE(ledger.set_spectrum_idle_time(ctx, id, s, e));
}

TEST_F(LedgerTest, NewIdleScheduleClearsSlotUsers)
{
    auto id = mint_one();
    schedule_demo_slots(id);
    auto ctx = ctx_for(a::pu);
    std::vector<Address> users{a::su1, a::su4, a::su6};
    ledger.batch_set_user(ctx, id, users, demo::slot_starts, demo::slot_ends);
    EXPECT_EQ(ledger.user_of(id, 1749476850), a::su1);
    schedule_demo_slots(id);
    EXPECT_TRUE(ledger.user_of(id, 1749476850).is_zero());
}

TEST_F(LedgerTest, SetUserLeaseLifecycle)
{
    auto id = mint_one();
    const Timestamp t = demo::start_time;
    auto ctx = ctx_for(a::pu, t);
    ledger.set_user(ctx, id, a::su1, t + 100);
    EXPECT_EQ(ledger.user_of(id, t + 50), a::su1);
    EXPECT_EQ(ledger.user_of(id, t + 99), a::su1);
    EXPECT_TRUE(ledger.user_of(id, t + 100).is_zero());
    EXPECT_TRUE(ledger.user_of(id, t + 101).is_zero());

    ASSERT_EQ(ctx.events.size(), 1u);
    EXPECT_EQ(ctx.events[0].name, "UpdateUser");
    EXPECT_EQ(ctx.events[0].topic_count(), 3u);
}

TEST_F(LedgerTest, SetUserGuards)
{
    auto id = mint_one();
    const Timestamp t = demo::start_time;
    auto stranger = ctx_for(a::su1, t);
    EXPECT_THROW(ledger.set_user(stranger, id, a::su1, t + 100), Revert);
    auto owner = ctx_for(a::pu, t);
    EXPECT_THROW(ledger.set_user(owner, id, a::su1, t), Revert);
    EXPECT_THROW(ledger.set_user(owner, 99, a::su1, t + 100), Revert);
}

TEST_F(LedgerTest, SetUserCannotOverlapAssignedSlots)
{
    auto id = mint_one();
    schedule_demo_slots(id);
    auto ctx = ctx_for(a::pu);
    std::vector<Address> users{a::su1, {}, {}};
    ledger.batch_set_user(ctx, id, users, demo::slot_starts, demo::slot_ends);
    EXPECT_THROW(ledger.set_user(ctx, id, a::su2, 1749476850), Revert);
    // a lease ending before slot 0 opens does not collide
    EXPECT_NO_THROW(ledger.set_user(ctx, id, a::su2, 1749476800));
}

TEST_F(LedgerTest, BatchSetUserMatchesUpdateUserPayload)
{
    auto id = mint_one();
    schedule_demo_slots(id);
    auto ctx = ctx_for(a::pu);
    std::vector<Address> users{a::su1, a::su4, a::su6};
    ledger.batch_set_user(ctx, id, users, demo::slot_starts, demo::slot_ends);
    ASSERT_EQ(ctx.events.size(), 1u);
    const auto& e = ctx.events[0];
    EXPECT_EQ(e.name, "UpdateUser");
    EXPECT_EQ(render_value(e.field("tokenId")), "1");
    EXPECT_EQ(render_value(e.field("users")).dump(),
              R"(["0x5B38Da6a701c568545dCfcB03FcB875f56beddC4",)"
              R"("0x78731D3Ca6b7E34aC0F824c42a7cC18A495cabaB",)"
              R"("0x17F6AD8Ef982297579C203069C1DbfFE4348c372"])");
    EXPECT_EQ(render_value(e.field("startUseTimes")).dump(),
              R"(["1749476800","1749477000","1749477200"])");
    EXPECT_EQ(render_value(e.field("endUseTimes")).dump(),
              R"(["1749476900","1749477100","1749477300"])");
}

TEST_F(LedgerTest, BatchSetUserZeroUserLeavesSlotOpen)
{
    auto id = mint_one();
    schedule_demo_slots(id);
    auto ctx = ctx_for(a::pu);
    std::vector<Address> users{a::su1, Address::zero(), a::su6};
    ledger.batch_set_user(ctx, id, users, demo::slot_starts, demo::slot_ends);
    EXPECT_TRUE(ledger.user_of(id, 1749477050).is_zero());
    EXPECT_EQ(ledger.user_of(id, 1749477250), a::su6);
}

TEST_F(LedgerTest, BatchSetUserRejectsBadLists)
{
    auto id = mint_one();
    schedule_demo_slots(id);
    auto ctx = ctx_for(a::pu);
    std::vector<Address> two{a::su1, a::su4};
    std::vector<Timestamp> s2(demo::slot_starts.begin(), demo::slot_starts.begin() + 2);
    std::vector<Timestamp> e2(demo::slot_ends.begin(), demo::slot_ends.begin() + 2);
    EXPECT_THROW(ledger.batch_set_user(ctx, id, two, s2, e2), Revert);

    std::vector<Address> three{a::su1, a::su4, a::su6};
    auto shifted = demo::slot_ends;
    shifted[1] += 1;
    EXPECT_THROW(ledger.batch_set_user(ctx, id, three, demo::slot_starts, shifted), Revert);
    EXPECT_TRUE(ledger.token(id).slot_users.empty());
}

TEST_F(LedgerTest, UserOfUsesHalfOpenWindows)
{
    auto id = mint_one();
    schedule_demo_slots(id);
    auto ctx = ctx_for(a::pu);
    std::vector<Address> users{a::su1, a::su4, a::su6};
    ledger.batch_set_user(ctx, id, users, demo::slot_starts, demo::slot_ends);

    EXPECT_EQ(ledger.user_of(id, 1749476800), a::su1);
    EXPECT_EQ(ledger.user_of(id, 1749476850), a::su1);
    EXPECT_TRUE(ledger.user_of(id, 1749476900).is_zero());
    EXPECT_TRUE(ledger.user_of(id, 1749476950).is_zero());
    EXPECT_EQ(ledger.user_of(id, 1749477099), a::su4);
    EXPECT_EQ(ledger.user_of(id, 1749477299), a::su6);
    EXPECT_TRUE(ledger.user_of(id, 1749477300).is_zero());
    EXPECT_TRUE(ledger.user_of(id, 0).is_zero());
    EXPECT_THROW(ledger.user_of(42, 0), Revert);
}

TEST_F(LedgerTest, OperatorApproval)
{
    auto id = mint_one();
    EXPECT_TRUE(ledger.is_authorized(id, a::pu));
    EXPECT_FALSE(ledger.is_authorized(id, a::su1));
    EXPECT_FALSE(ledger.is_authorized(id, Address::zero()));

    auto stranger = ctx_for(a::su2);
    EXPECT_THROW(ledger.approve_operator(stranger, id, a::su1), Revert);
    auto owner = ctx_for(a::pu);
    EXPECT_THROW(ledger.approve_operator(owner, id, Address::zero()), Revert);
    ledger.approve_operator(owner, id, a::su1);
    EXPECT_TRUE(ledger.is_authorized(id, a::su1));
    EXPECT_TRUE(ledger.is_authorized(id, a::pu));

    // operators can manage the schedule but cannot re-delegate
    auto op = ctx_for(a::su1);
    EXPECT_TRUE(ledger.set_spectrum_idle_time(op, id, demo::slot_starts, demo::slot_ends));
    EXPECT_THROW(ledger.approve_operator(op, id, a::su3), Revert);
}

TEST(IdleScheduleValidation, Examples)
{
    std::vector<Timestamp> s{1, 5, 9}, e{5, 9, 12};
    EXPECT_NO_THROW(validate_idle_schedule(s, e));
    std::vector<Timestamp> unsorted{5, 1}, ends{6, 2};
    EXPECT_THROW(validate_idle_schedule(unsorted, ends), Revert);
}
