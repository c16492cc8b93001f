#include "nfst/abi.hpp"
#include "nfst/demo.hpp"
#include "nfst/event.hpp"
#include "nfst/keccak.hpp"
#include "nfst/types.hpp"

#include <gtest/gtest.h>

using namespace nfst;

TEST(Keccak, KnownVectors)
{
    EXPECT_EQ(to_hex(keccak256("")),
              "0xc5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470");
    EXPECT_EQ(to_hex(keccak256("abc")),
              "0x4e03657aea45a94fc7d47ba826c8d667c0d1e6e33a64a036ec44f58fa12d6c45");
    // crosses the 136-byte rate boundary
    std::string long_input(200, 'a');
    EXPECT_EQ(to_hex(keccak256(long_input)).size(), 66u);
    EXPECT_NE(keccak256(std::string(135, 'a')), keccak256(std::string(136, 'a')));
}

TEST(Keccak, FunctionSelector)
{
    EXPECT_EQ(to_hex(sol::selector("transfer(address,uint256)")), "0xa9059cbb");
}

TEST(Address, Eip55Vectors)
{
    for (const char* s : {"0x5aAeb6053F3E94C9b9A09f33669435E7Ef1BeAed",
                          "0xfB6916095ca1df60bB79Ce92cE3Ea74c37c5d359",
                          "0xdbF03B407c01E7cD3CBea99509d93f8DDDC8C6FB",
                          "0xD1220A0cf47c7B9Be7A2E6BA89F429762e7b9aDb"})
        EXPECT_EQ(Address::from_hex(s).to_checksum(), s);
}

TEST(Address, PinnedParticipantsAreValidChecksums)
{
    using namespace demo::addr;
    EXPECT_EQ(contract.to_checksum(), "0xD1ee42fdA217994CF17F7D37E8909FA2c30Ca192");
    EXPECT_EQ(pu.to_checksum(), "0xdD870fA1b7C4700F2BD7f44238821C26f7392148");
    EXPECT_EQ(su1.to_checksum(), "0x5B38Da6a701c568545dCfcB03FcB875f56beddC4");
    EXPECT_EQ(su2.to_checksum(), "0xAb8483F64d9C6d1EcF9b849Ae677dD3315835cb2");
    EXPECT_EQ(su3.to_checksum(), "0x4B20993Bc481177ec7E8f571ceCaE8A9e22C02db");
    EXPECT_EQ(su4.to_checksum(), "0x78731D3Ca6b7E34aC0F824c42a7cC18A495cabaB");
    EXPECT_EQ(su5.to_checksum(), "0x617F2E2fD72FD9D5503197092aC168c91465E7f2");
    EXPECT_EQ(su6.to_checksum(), "0x17F6AD8Ef982297579C203069C1DbfFE4348c372");
}

TEST(Address, TruncatedFormsMatchPinnedAddresses)
{
    using namespace demo::addr;
    auto truncated = [](const Address& a) {
        auto s = a.to_checksum();
        return s.substr(0, 5) + "..." + s.substr(s.size() - 5);
    };
    EXPECT_EQ(truncated(su1), "0x5B3...eddC4");
    EXPECT_EQ(truncated(su2), "0xAb8...35cb2");
    EXPECT_EQ(truncated(su3), "0x4B2...C02db");
    EXPECT_EQ(truncated(su4), "0x787...cabaB");
    EXPECT_EQ(truncated(su5), "0x617...5E7f2");
    EXPECT_EQ(truncated(su6), "0x17F...8c372");
}

TEST(Address, ParsingAndZero)
{
    EXPECT_TRUE(Address::zero().is_zero());
    EXPECT_EQ(Address::zero().to_string(), "0x0000000000000000000000000000000000000000");
    EXPECT_THROW(Address::from_hex("0x1234"), std::invalid_argument);
    EXPECT_THROW(Address::from_hex("0xzz870fA1b7C4700F2BD7f44238821C26f7392148"),
                 std::invalid_argument);
    // 39 digits, one short
    EXPECT_THROW(Address::from_hex("0x78731D3Ca6b7E34aC0F824c42a7c18A495cabaB"),
                 std::invalid_argument);
    auto a = Address::from_hex("0xDD870FA1B7C4700F2BD7F44238821C26F7392148");
    EXPECT_EQ(a, demo::addr::pu);
    EXPECT_EQ(a.to_string(), "0xdd870fa1b7c4700f2bd7f44238821c26f7392148");
}

TEST(Wei, ExactArithmetic)
{
    EXPECT_EQ(Wei::ether(10).to_string(), "10000000000000000000");
    EXPECT_EQ(Wei::parse("10000000000000000000"), Wei::ether(10));
    EXPECT_EQ(Wei::ether(16) - Wei::ether(5), Wei::ether(11));
    EXPECT_THROW(Wei::ether(3) - Wei::ether(5), std::underflow_error);
    EXPECT_THROW(Wei::parse("-1"), std::invalid_argument);
    EXPECT_THROW(Wei::parse("1e18"), std::invalid_argument);
    EXPECT_THROW(Wei::parse(""), std::invalid_argument);
    Wei big = Wei::parse("115792089237316195423570985008687907853269984665640564039457584007913129639935");
    EXPECT_EQ((big + Wei(1)).to_string(),
              "115792089237316195423570985008687907853269984665640564039457584007913129639936");
    EXPECT_LT(Wei::ether(9), Wei::ether(10));
}

TEST(Abi, DynamicArrayLayout)
{
    auto bytes = sol::encode({sol::uint(1), sol::uints(std::vector<Timestamp>{7, 8}, 64)});
    // head: uint, offset; tail: length, 2 elements
    ASSERT_EQ(bytes.size(), 5u * 32);
    EXPECT_EQ(bytes[31], 1);
    EXPECT_EQ(bytes[63], 0x40); // offset 64
    EXPECT_EQ(bytes[95], 2);
    EXPECT_EQ(bytes[127], 7);
    EXPECT_EQ(bytes[159], 8);
}

TEST(Abi, StringPadding)
{
    auto bytes = sol::encode({sol::string("600MHz")});
    ASSERT_EQ(bytes.size(), 3u * 32);
    EXPECT_EQ(bytes[63], 6);
    EXPECT_EQ(bytes[64], '6');
    EXPECT_EQ(bytes[95], 0);
    EXPECT_EQ(sol::encode({sol::string(std::string(33, 'x'))}).size(), 4u * 32);
}

TEST(Abi, AddressWordIsLeftPadded)
{
    auto bytes = sol::encode({sol::address(demo::addr::su1)});
    ASSERT_EQ(bytes.size(), 32u);
    for (int i = 0; i < 12; ++i)
        EXPECT_EQ(bytes[static_cast<std::size_t>(i)], 0);
    EXPECT_EQ(bytes[12], 0x5b);
    EXPECT_EQ(bytes[31], 0xc4);
}

TEST(Event, TopicsMatchReferenceLogs)
{
    Event minted{"SpectrumTokenization",
                 {{"tokenId", sol::uint(1)},
                  {"owner", sol::address(demo::addr::pu)},
                  {"startFreq", sol::string("600MHz")},
                  {"endFreq", sol::string("800MHz")},
                  {"location", sol::string("CityA")}}};
    EXPECT_EQ(minted.signature(), "SpectrumTokenization(uint256,address,string,string,string)");
    EXPECT_EQ(to_hex(minted.topic()),
              "0xf4283a178641472779acc1a10cba34ef7277e3de9c3f0dc5d3461e17e24c2483");
    EXPECT_EQ(minted.topic_count(), 1u);
    EXPECT_EQ(minted.data().size(), 5u * 32 + 3u * 64);
}

TEST(Event, LogJsonHasPositionalThenNamedArgs)
{
    Event e{"X", {{"b", sol::uint(5)}, {"a", sol::addresses({demo::addr::su1})}}};
    auto j = to_log_json(e, demo::addr::contract);
    std::vector<std::string> keys;
    for (const auto& [k, _] : j["args"].items())
        keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"0", "1", "b", "a"}));
    EXPECT_EQ(j["args"]["0"], "5");
    EXPECT_EQ(j["args"]["a"][0], "0x5B38Da6a701c568545dCfcB03FcB875f56beddC4");
    EXPECT_EQ(j["from"], "0xD1ee42fdA217994CF17F7D37E8909FA2c30Ca192");
}
