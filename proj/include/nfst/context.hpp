#pragma once

#include "nfst/event.hpp"
#include "nfst/gas_model.hpp"
#include "nfst/types.hpp"

#include <vector>

namespace nfst {

/// Per-transaction execution context handed to protocol operations.
struct TxContext
{
    Address caller;
    Wei value;
    Timestamp now = 0;
    const GasSchedule* schedule = nullptr;
    std::vector<Event> events;
    StorageFootprint footprint;

    void emit(Event e)
    {
        footprint.add_event(e);
        events.push_back(std::move(e));
    }

    const GasSchedule& gas() const
    {
        static const GasSchedule defaults{};
        return schedule ? *schedule : defaults;
    }
};

} // namespace nfst
