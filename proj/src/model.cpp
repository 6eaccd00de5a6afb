#include "tdsim/model.hpp"

#include <set>
#include <sstream>

namespace tdsim {

bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

namespace {

void check_task(const TaskDef& t, std::vector<std::string>& out) {
    auto fail = [&](const std::string& what) {
        std::ostringstream os;
        os << "task '" << t.name << "': " << what;
        out.push_back(os.str());
    };
    if (t.eet == 0) fail("t_eet must be positive");
    if (t.eet > t.wcet) fail("t_eet > t_wcet");
    if (t.deadline != t.period) fail("deadline != period (implicit deadlines required)");
    if (t.wcet > t.deadline) fail("unschedulable in isolation (t_wcet > deadline)");
    if (!is_power_of_two(t.input_buffer_bytes))
        fail("input buffer size is not a power of two");
    if (!is_power_of_two(t.output_buffer_bytes))
        fail("output buffer size is not a power of two");
}

} // namespace

std::vector<std::string> validate_taskset(const std::vector<TaskDef>& tasks,
                                          const std::vector<Tile>& tiles) {
    std::vector<std::string> out;
    if (tasks.empty()) out.emplace_back("task set is empty");
    if (tiles.empty()) out.emplace_back("tile pool is empty");

    std::set<TaskId> ids;
    for (const auto& t : tasks) {
        check_task(t, out);
        if (!ids.insert(t.id).second)
            out.push_back("task '" + t.name + "': duplicate task id");
    }

    std::set<TileId> tile_ids;
    for (const auto& tile : tiles) {
        if (!tile_ids.insert(tile.id).second)
            out.push_back("duplicate tile id " + std::to_string(tile.id));
        if (tile.allowed_low_mode.empty() && tile.allowed_high_mode.empty())
            out.push_back("tile " + std::to_string(tile.id) + " has no capability in any mode");
    }

    for (const auto& t : tasks) {
        if (t.criticality != Criticality::high) continue;
        bool low_mode_ok = false;
        bool high_mode_ok = false;
        for (const auto& tile : tiles) {
            low_mode_ok |= tile.allowed_low_mode.allows(Criticality::high);
            high_mode_ok |= tile.allowed_high_mode.allows(Criticality::high);
        }
        if (!low_mode_ok)
            out.push_back("task '" + t.name + "': no tile accepts high criticality in low mode");
        if (!high_mode_ok)
            out.push_back("task '" + t.name + "': no tile accepts high criticality in high mode");
    }

    bool any_low = false;
    for (const auto& t : tasks) any_low |= t.criticality == Criticality::low;
    if (any_low) {
        bool low_served = false;
        for (const auto& tile : tiles) low_served |= tile.allowed_low_mode.allows(Criticality::low);
        if (!low_served) out.emplace_back("no tile accepts low criticality in low mode");
    }

    return out;
}

} // namespace tdsim
