#include "tdsim/timing.hpp"

#include <numeric>

namespace tdsim {

Cycles CopyTimeModel::cycles_for(std::uint64_t bytes) const {
    for (const auto& [size, cycles] : anchor_points) {
        if (size == bytes) return cycles;
    }
    const Cycles transfer = ceil_div(bytes * per_byte_num, per_byte_den);
    return sync_overhead + transfer;
}

CopyTimeModel CopyTimeModel::calibrated(std::uint64_t anchor_bytes, Cycles anchor_cycles,
                                        double sync_fraction) {
    CopyTimeModel m;
    const double sync = static_cast<double>(anchor_cycles) * sync_fraction;
    m.sync_overhead = static_cast<Cycles>(sync) + (sync > static_cast<Cycles>(sync) ? 1 : 0);
    std::uint64_t num = anchor_cycles > m.sync_overhead ? anchor_cycles - m.sync_overhead : 0;
    std::uint64_t den = anchor_bytes;
    const std::uint64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    m.per_byte_num = num;
    m.per_byte_den = den == 0 ? 1 : den;
    m.anchor_points = {{anchor_bytes, anchor_cycles}};
    return m;
}

Cycles laxity(const TaskDef& task) {
    return task.deadline > task.wcet ? task.deadline - task.wcet : 0;
}

SwitchTime switch_time(Cycles arrival, const TaskDef& task, Cycles o_switch) {
    const Cycles margin = laxity(task);
    SwitchTime st;
    st.feasible = o_switch < margin;
    st.at = st.feasible ? arrival + margin - o_switch : arrival;
    return st;
}

SwitchOverhead switch_overhead(const TimingParams& params, std::uint64_t max_buffer_bytes,
                               const TaskDef* worst_low_task) {
    SwitchOverhead o;
    if (params.o_switch_override) {
        o.cycles = *params.o_switch_override;
        o.total_mc = o.cycles * 1000;
        o.ms = cycles_to_ms(o.cycles, params.clock_ghz);
        o.override_used = true;
        return o;
    }
    Millicycles total = 2 * params.loop_wc_mc + params.stream_msg_mc + params.tile_start_mc;
    total += static_cast<Millicycles>(params.copy.cycles_for(max_buffer_bytes)) * 1000;
    if (worst_low_task != nullptr) total += static_cast<Millicycles>(worst_low_task->wcet) * 1000;
    o.total_mc = total;
    o.cycles = millicycles_ceil_to_cycles(total);
    o.ms = millicycles_to_ms(total, params.clock_ghz);
    return o;
}

Cycles copy_time(const CopyTimeModel& model, std::uint64_t bytes) {
    return model.cycles_for(bytes);
}

} // namespace tdsim
