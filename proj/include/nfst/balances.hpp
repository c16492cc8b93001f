#pragma once

#include "nfst/types.hpp"

#include <map>
#include <stdexcept>

namespace nfst {

/// Native-currency balances. The contract's own account holds escrow.
class Balances
{
public:
    bool contains(const Address& a) const { return accounts_.contains(a); }

    void open(const Address& a, Wei initial)
    {
        if (a.is_zero())
            throw std::invalid_argument("the zero address cannot hold an account");
        if (!accounts_.emplace(a, std::move(initial)).second)
            throw std::invalid_argument("account already exists: " + a.to_string());
    }

    const Wei& balance(const Address& a) const
    {
        auto it = accounts_.find(a);
        if (it == accounts_.end())
            throw std::out_of_range("unknown account " + a.to_string());
        return it->second;
    }

    void transfer(const Address& from, const Address& to, const Wei& amount)
    {
        auto src = accounts_.find(from);
        auto dst = accounts_.find(to);
        if (src == accounts_.end() || dst == accounts_.end())
            throw Revert("transfer between unknown accounts");
        if (src->second < amount)
            throw Revert("insufficient balance");
        src->second -= amount;
        dst->second += amount;
    }

    Wei total() const
    {
        Wei sum;
        for (const auto& [_, w] : accounts_)
            sum += w;
        return sum;
    }

    const std::map<Address, Wei>& accounts() const { return accounts_; }

    friend bool operator==(const Balances&, const Balances&) = default;

private:
    std::map<Address, Wei> accounts_;
};

} // namespace nfst
