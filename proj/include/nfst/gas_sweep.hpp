#pragma once

#include "nfst/gas_model.hpp"

#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace nfst {

struct SweepRow
{
    std::int64_t slot_count = 0;
    Gas erc4907_gas = 0;
    Gas m_erc4907_gas = 0;
    std::int64_t erc4907_tx = 0;
    std::int64_t m_erc4907_tx = 0;
};

struct SweepResult
{
    std::vector<SweepRow> rows;
    GasReport erc4907;
    GasReport m_erc4907;
    std::optional<std::int64_t> crossover; // first n where the batch flow is cheaper
};

/// Evaluates both authorization flows for 1..max_slots.
inline SweepResult gas_sweep(std::int64_t max_slots, const GasSchedule& s,
                             StorageState state = StorageState::populated)
{
    if (max_slots < 1)
        throw std::invalid_argument("max_slots must be at least 1");
    SweepResult out;
    out.erc4907 = gas_for_erc4907_flow(max_slots, s, state);
    out.m_erc4907 = gas_for_m_erc4907_flow(max_slots, s, state);
    for (std::int64_t k = 1; k <= max_slots; ++k) {
        const auto i = static_cast<std::size_t>(k - 1);
        SweepRow row{k, out.erc4907.per_point_gas[i], out.m_erc4907.per_point_gas[i], k, 1};
        if (!out.crossover && row.m_erc4907_gas < row.erc4907_gas)
            out.crossover = k;
        out.rows.push_back(row);
    }
    return out;
}

/// RFC 4180 CSV with a header row and CRLF line endings.
inline void write_csv(std::ostream& os, const SweepResult& r)
{
    os << "slot_count,erc4907_gas,m_erc4907_gas,erc4907_tx,m_erc4907_tx\r\n";
    for (const auto& row : r.rows)
        os << row.slot_count << ',' << row.erc4907_gas << ',' << row.m_erc4907_gas << ','
           << row.erc4907_tx << ',' << row.m_erc4907_tx << "\r\n";
}

inline std::string sweep_summary(const SweepResult& r)
{
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(1);
    os << "erc4907 marginal gas per slot: " << r.erc4907.average_marginal() << "\n";
    os << "m-erc4907 average marginal gas per slot: " << r.m_erc4907.average_marginal() << "\n";
    os << "crossover slot count: ";
    if (r.crossover)
        os << *r.crossover;
    else
        os << "none";
    os << "\n";
    return os.str();
}

} // namespace nfst
