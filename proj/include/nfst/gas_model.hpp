#pragma once

#include "nfst/abi.hpp"
#include "nfst/event.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nfst {

using Gas = std::int64_t;

/// Gas unit prices. Defaults follow the London schedule; every entry can be
/// overridden from scenario configuration.
struct GasSchedule
{
    Gas tx_base = 21000;
    Gas sstore_set = 22100;    // zero -> nonzero, 20000 + 2100 cold
    Gas sstore_update = 5000;  // nonzero -> nonzero, 2900 + 2100 cold
    Gas sstore_warm = 100;     // rewrite of a slot already touched in this tx
    Gas log_base = 375;
    Gas log_topic = 375;
    Gas log_data_byte = 8;
    Gas calldata_nonzero_byte = 16;
    Gas calldata_zero_byte = 4;
    Gas block_gas_limit = 30'000'000;
    int address_width = 20;   // bytes per address array element
    int timestamp_width = 8;  // bytes per timestamp array element

    void validate() const
    {
        for (Gas g : {tx_base, sstore_set, sstore_update, sstore_warm, log_base, log_topic,
                      log_data_byte, calldata_nonzero_byte, calldata_zero_byte, block_gas_limit})
            if (g < 0)
                throw std::invalid_argument("gas schedule entries must be non-negative");
        for (int w : {address_width, timestamp_width})
            if (w < 1 || w > 32)
                throw std::invalid_argument("element widths must be in 1..32 bytes");
    }

    friend bool operator==(const GasSchedule&, const GasSchedule&) = default;
};

/// Thrown when a single transaction would not fit the block gas limit.
class GasLimitExceeded : public std::runtime_error
{
public:
    GasLimitExceeded(Gas needed, Gas limit)
        : std::runtime_error("transaction needs " + std::to_string(needed) +
                             " gas, block gas limit is " + std::to_string(limit)),
          needed_(needed)
    {}
    Gas needed() const noexcept { return needed_; }

private:
    Gas needed_;
};

/// Counted resource usage of one transaction.
struct StorageFootprint
{
    std::int64_t new_slots = 0;      // zero -> nonzero first touch
    std::int64_t updated_slots = 0;  // nonzero -> nonzero first touch
    std::int64_t warm_writes = 0;    // later writes to a slot touched earlier in the tx
    std::int64_t logs = 0;
    std::int64_t event_topics = 0;
    std::int64_t event_data_bytes = 0;
    std::int64_t calldata_zero = 0;
    std::int64_t calldata_nonzero = 0;

    StorageFootprint& operator+=(const StorageFootprint& o)
    {
        new_slots += o.new_slots;
        updated_slots += o.updated_slots;
        warm_writes += o.warm_writes;
        logs += o.logs;
        event_topics += o.event_topics;
        event_data_bytes += o.event_data_bytes;
        calldata_zero += o.calldata_zero;
        calldata_nonzero += o.calldata_nonzero;
        return *this;
    }

    /// First write of a slot in this transaction.
    void touch(bool was_nonzero) { ++(was_nonzero ? updated_slots : new_slots); }

    void add_event(const Event& e)
    {
        ++logs;
        event_topics += static_cast<std::int64_t>(e.topic_count());
        event_data_bytes += static_cast<std::int64_t>(e.data().size());
    }

    void add_calldata(const sol::Bytes& bytes)
    {
        for (auto b : bytes)
            ++(b == 0 ? calldata_zero : calldata_nonzero);
    }

    friend bool operator==(const StorageFootprint&, const StorageFootprint&) = default;
};

/// Number of 32-byte slots holding `element_count` tightly packed elements.
inline std::int64_t packed_slots(int element_width_bytes, std::int64_t element_count)
{
    if (element_width_bytes < 1 || element_width_bytes > 32)
        throw std::invalid_argument("element width must be in 1..32 bytes");
    if (element_count < 0)
        throw std::invalid_argument("element count must be non-negative");
    const std::int64_t per_slot = 32 / element_width_bytes;
    return (element_count + per_slot - 1) / per_slot;
}

/// Footprint of replacing a dynamic storage array of `old_count` elements
/// with one of `new_count` elements, writing element by element. Element
/// slots that existed before are nonzero; later elements in an already
/// touched slot are warm rewrites.
inline StorageFootprint array_write_footprint(int element_width_bytes, std::int64_t old_count,
                                              std::int64_t new_count)
{
    StorageFootprint fp;
    if (old_count == 0 && new_count == 0)
        return fp;
    fp.touch(old_count != 0); // length slot
    const std::int64_t old_slots = packed_slots(element_width_bytes, old_count);
    const std::int64_t new_slots = packed_slots(element_width_bytes, new_count);
    for (std::int64_t s = 0; s < new_slots; ++s)
        fp.touch(s < old_slots);
    fp.warm_writes += new_count - new_slots;
    return fp;
}

inline Gas price(const StorageFootprint& fp, const GasSchedule& s)
{
    return fp.new_slots * s.sstore_set + fp.updated_slots * s.sstore_update +
           fp.warm_writes * s.sstore_warm + fp.logs * s.log_base +
           fp.event_topics * s.log_topic + fp.event_data_bytes * s.log_data_byte +
           fp.calldata_zero * s.calldata_zero_byte +
           fp.calldata_nonzero * s.calldata_nonzero_byte;
}

/// Gas for one transaction. Reverted transactions are charged tx_base only.
inline Gas attach_gas(bool success, const StorageFootprint& fp, const GasSchedule& s)
{
    return success ? s.tx_base + price(fp, s) : s.tx_base;
}

// --------------------------------------------------------------------------
// Authorization flow comparison
// --------------------------------------------------------------------------

enum class AuthMethod { erc4907_sequential, m_erc4907_batch };

inline std::string to_string(AuthMethod m)
{
    return m == AuthMethod::erc4907_sequential ? "erc4907_sequential" : "m_erc4907_batch";
}

/// Whether the per-slot user storage already holds data when authorization
/// runs. `populated` models repeated re-authorization of the same token, which
/// is how per-slot averages are usually measured; `fresh` models the first
/// authorization ever.
enum class StorageState { populated, fresh };

struct GasReport
{
    AuthMethod method{};
    std::int64_t slot_count = 0;
    std::int64_t tx_count = 0;
    Gas total_gas = 0;
    std::vector<Gas> per_point_gas; // index k-1 holds the total for k slots
    std::vector<Gas> marginal_gas;  // first differences, index k-2 holds total(k) - total(k-1)

    double average_marginal() const
    {
        if (marginal_gas.empty())
            return 0.0;
        double sum = 0;
        for (Gas g : marginal_gas)
            sum += static_cast<double>(g);
        return sum / static_cast<double>(marginal_gas.size());
    }
};

/// Representative argument values used to size calldata. The same values are
/// used for every slot so that byte counts depend only on the slot count.
struct FlowSample
{
    TokenId token_id = 1;
    Address user = Address::from_hex("0x5B38Da6a701c568545dCfcB03FcB875f56beddC4");
    Timestamp start = 1749476800;
    Timestamp end = 1749476900;
};

/// ERC4907 `UpdateUser(uint256 indexed tokenId, address indexed user, uint64 expires)`.
inline Event erc4907_update_user_event(TokenId token, const Address& user, Timestamp expires)
{
    return Event{"UpdateUser",
                 {{"tokenId", sol::uint(token)},
                  {"user", sol::address(user)},
                  {"expires", sol::uint(expires, 64)}},
                 2};
}

inline std::vector<sol::Value> set_user_args(TokenId token, const Address& user,
                                             Timestamp expires)
{
    return {sol::uint(token), sol::address(user), sol::uint(expires, 64)};
}

inline Event batch_update_user_event(TokenId token, const std::vector<Address>& users,
                                     const std::vector<Timestamp>& starts,
                                     const std::vector<Timestamp>& ends)
{
    return Event{"UpdateUser",
                 {{"tokenId", sol::uint(token)},
                  {"users", sol::addresses(users)},
                  {"startUseTimes", sol::uints(starts, 64)},
                  {"endUseTimes", sol::uints(ends, 64)}}};
}

inline std::vector<sol::Value> batch_set_user_args(TokenId token,
                                                   const std::vector<Address>& users,
                                                   const std::vector<Timestamp>& starts,
                                                   const std::vector<Timestamp>& ends)
{
    return {sol::uint(token), sol::addresses(users), sol::uints(starts, 64),
            sol::uints(ends, 64)};
}

/// One ERC4907 setUser transaction: one packed UserInfo slot
/// (address + uint64 expires), one log, calldata.
inline StorageFootprint erc4907_tx_footprint(StorageState state, const FlowSample& sample = {})
{
    StorageFootprint fp;
    fp.touch(state == StorageState::populated);
    fp.add_event(erc4907_update_user_event(sample.token_id, sample.user, sample.end));
    fp.add_calldata(
        sol::encode_call("setUser", set_user_args(sample.token_id, sample.user, sample.end)));
    return fp;
}

/// One batchSetUser transaction over `n` slots: three dynamic arrays, one
/// log whose data grows with n, calldata growing with n.
inline StorageFootprint m_erc4907_tx_footprint(std::int64_t n, const GasSchedule& s,
                                               StorageState state, const FlowSample& sample = {})
{
    const std::int64_t old = state == StorageState::populated ? n : 0;
    StorageFootprint fp;
    fp += array_write_footprint(s.address_width, old, n);
    fp += array_write_footprint(s.timestamp_width, old, n);
    fp += array_write_footprint(s.timestamp_width, old, n);

    std::vector<Address> users(static_cast<std::size_t>(n), sample.user);
    std::vector<Timestamp> starts(static_cast<std::size_t>(n), sample.start);
    std::vector<Timestamp> ends(static_cast<std::size_t>(n), sample.end);
    fp.add_event(batch_update_user_event(sample.token_id, users, starts, ends));
    fp.add_calldata(sol::encode_call(
        "batchSetUser", batch_set_user_args(sample.token_id, users, starts, ends)));
    return fp;
}

namespace detail {

inline void fill_marginals(GasReport& r)
{
    r.total_gas = r.per_point_gas.back();
    for (std::size_t k = 1; k < r.per_point_gas.size(); ++k)
        r.marginal_gas.push_back(r.per_point_gas[k] - r.per_point_gas[k - 1]);
}

} // namespace detail

/// Sequential flow: one setUser transaction per slot.
inline GasReport gas_for_erc4907_flow(std::int64_t n, const GasSchedule& s,
                                      StorageState state = StorageState::populated)
{
    if (n < 1)
        throw std::invalid_argument("slot count must be at least 1");
    s.validate();
    const Gas per_tx = attach_gas(true, erc4907_tx_footprint(state), s);
    if (per_tx > s.block_gas_limit)
        throw GasLimitExceeded(per_tx, s.block_gas_limit);
    GasReport r{AuthMethod::erc4907_sequential, n, n};
    for (std::int64_t k = 1; k <= n; ++k)
        r.per_point_gas.push_back(per_tx * k);
    detail::fill_marginals(r);
    return r;
}

/// Batch flow: a single batchSetUser transaction regardless of n. A batch
/// that does not fit the block gas limit is an error; it is never split.
inline GasReport gas_for_m_erc4907_flow(std::int64_t n, const GasSchedule& s,
                                        StorageState state = StorageState::populated)
{
    if (n < 1)
        throw std::invalid_argument("slot count must be at least 1");
    s.validate();
    GasReport r{AuthMethod::m_erc4907_batch, n, 1};
    for (std::int64_t k = 1; k <= n; ++k) {
        const Gas g = attach_gas(true, m_erc4907_tx_footprint(k, s, state), s);
        if (g > s.block_gas_limit)
            throw GasLimitExceeded(g, s.block_gas_limit);
        r.per_point_gas.push_back(g);
    }
    detail::fill_marginals(r);
    return r;
}

/// Smallest slot count at which the batch flow total is below the sequential
/// total, searching 1..max_slots.
inline std::optional<std::int64_t> crossover_slot_count(std::int64_t max_slots,
                                                        const GasSchedule& s,
                                                        StorageState state = StorageState::populated)
{
    auto e = gas_for_erc4907_flow(max_slots, s, state);
    auto m = gas_for_m_erc4907_flow(max_slots, s, state);
    for (std::int64_t k = 1; k <= max_slots; ++k)
        if (m.per_point_gas[static_cast<std::size_t>(k - 1)] <
            e.per_point_gas[static_cast<std::size_t>(k - 1)])
            return k;
    return std::nullopt;
}

// --------------------------------------------------------------------------
// Calibration
// --------------------------------------------------------------------------

struct CalibrationTargets
{
    double erc4907_marginal = 26270;
    double m_marginal = 5409;     // average marginal over 1..horizon slots
    std::int64_t horizon = 10;
};

struct CalibrationResult
{
    GasSchedule schedule;
    Gas delta_tx = 0;     // added to tx_base
    Gas delta_write = 0;  // added to sstore_set and sstore_update
    double erc4907_marginal = 0;
    double m_marginal = 0;
    double erc4907_residual = 0; // (model - target) / target
    double m_residual = 0;
    Gas single_slot_extra = 0;   // m-erc4907(1) - erc4907(1); must stay positive
};

struct ModelMarginals
{
    double erc4907 = 0;
    double m_erc4907 = 0;
};

inline ModelMarginals model_marginals(const GasSchedule& s, std::int64_t horizon,
                                      StorageState state = StorageState::populated)
{
    return {gas_for_erc4907_flow(2, s, state).average_marginal(),
            gas_for_m_erc4907_flow(horizon, s, state).average_marginal()};
}

/// Fits a per-transaction delta and a per-slot-write delta so the model's
/// marginals match the targets in the least-squares sense. The model is
/// linear in both parameters, so the Jacobian is taken from unit steps.
inline CalibrationResult calibrate(const GasSchedule& base, const CalibrationTargets& targets,
                                   StorageState state = StorageState::populated)
{
    if (!(targets.erc4907_marginal > 0) || !(targets.m_marginal > 0) || targets.horizon < 2)
        throw std::invalid_argument("calibration targets must be positive with horizon >= 2");

    auto apply = [&base](Gas d_tx, Gas d_write) {
        GasSchedule s = base;
        s.tx_base += d_tx;
        s.sstore_set += d_write;
        s.sstore_update += d_write;
        return s;
    };
    auto eval = [&](const GasSchedule& s) { return model_marginals(s, targets.horizon, state); };

    const ModelMarginals f0 = eval(base);
    const ModelMarginals f_tx = eval(apply(1, 0));
    const ModelMarginals f_w = eval(apply(0, 1));

    // rows: targets, columns: (d_tx, d_write)
    const double j[2][2] = {{f_tx.erc4907 - f0.erc4907, f_w.erc4907 - f0.erc4907},
                            {f_tx.m_erc4907 - f0.m_erc4907, f_w.m_erc4907 - f0.m_erc4907}};
    const double r[2] = {targets.erc4907_marginal - f0.erc4907,
                         targets.m_marginal - f0.m_erc4907};

    // normal equations (J^T J) d = J^T r
    const double a = j[0][0] * j[0][0] + j[1][0] * j[1][0];
    const double b = j[0][0] * j[0][1] + j[1][0] * j[1][1];
    const double d = j[0][1] * j[0][1] + j[1][1] * j[1][1];
    const double g0 = j[0][0] * r[0] + j[1][0] * r[1];
    const double g1 = j[0][1] * r[0] + j[1][1] * r[1];
    const double det = a * d - b * b;
    if (std::abs(det) < 1e-9 * std::max(1.0, a * d))
        throw std::invalid_argument("calibration is degenerate: parameters are not identifiable");

    CalibrationResult out;
    out.delta_tx = static_cast<Gas>(std::llround((d * g0 - b * g1) / det));
    out.delta_write = static_cast<Gas>(std::llround((a * g1 - b * g0) / det));
    out.schedule = apply(out.delta_tx, out.delta_write);
    out.schedule.validate();

    const ModelMarginals fit = eval(out.schedule);
    out.erc4907_marginal = fit.erc4907;
    out.m_marginal = fit.m_erc4907;
    out.erc4907_residual = (fit.erc4907 - targets.erc4907_marginal) / targets.erc4907_marginal;
    out.m_residual = (fit.m_erc4907 - targets.m_marginal) / targets.m_marginal;
    out.single_slot_extra = gas_for_m_erc4907_flow(1, out.schedule, state).total_gas -
                            gas_for_erc4907_flow(1, out.schedule, state).total_gas;
    if (out.single_slot_extra <= 0)
        throw std::domain_error("calibrated schedule loses the single-slot batch overhead");
    return out;
}

/// Relative gap between (sequential marginal - batch marginal) and tx_base.
/// Removing one transaction per slot should save roughly one tx_base.
inline double tx_base_gap(const CalibrationTargets& targets, const GasSchedule& s)
{
    const double gap = targets.erc4907_marginal - targets.m_marginal;
    return std::abs(gap - static_cast<double>(s.tx_base)) / static_cast<double>(s.tx_base);
}

} // namespace nfst
