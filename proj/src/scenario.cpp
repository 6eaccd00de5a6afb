#include "tdsim/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tdsim {

namespace {

using nlohmann::json;

Criticality parse_criticality(const json& j, const std::string& where) {
    const std::string s = j.get<std::string>();
    if (s == "high") return Criticality::high;
    if (s == "low") return Criticality::low;
    throw ValidationError(where + ": criticality must be \"low\" or \"high\"");
}

CapabilitySet parse_capability(const json& j, const std::string& where) {
    CapabilitySet set;
    for (const auto& item : j) set.add(parse_criticality(item, where));
    return set;
}

double require_ms(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw ValidationError(where + ": missing field '" + key + "'");
    if (!j[key].is_number()) throw ValidationError(where + ": '" + key + "' must be a number");
    return j[key].get<double>();
}

ExecTimeModel parse_exec_model(const json& j, double ghz, const std::string& where,
                               const std::filesystem::path& base_dir) {
    ExecTimeModel m;
    const std::string kind = j.value("kind", "constant");
    if (kind == "constant") {
        m.kind = ExecTimeModel::Kind::constant;
        m.constant_value = ms_to_cycles(require_ms(j, "value_ms", where), ghz);
    } else if (kind == "bimodal") {
        m.kind = ExecTimeModel::Kind::bimodal;
        m.p_exceed = j.value("p_exceed", 0.0);
        if (m.p_exceed < 0.0 || m.p_exceed > 1.0)
            throw ValidationError(where + ": p_exceed must be within [0, 1]");
        const auto& lo = j.at("low_range_ms");
        const auto& hi = j.at("high_range_ms");
        if (!lo.is_array() || lo.size() != 2 || !hi.is_array() || hi.size() != 2)
            throw ValidationError(where + ": ranges must be [min_ms, max_ms] pairs");
        m.low_min = ms_to_cycles(lo[0].get<double>(), ghz);
        m.low_max = ms_to_cycles(lo[1].get<double>(), ghz);
        m.high_min = ms_to_cycles(hi[0].get<double>(), ghz);
        m.high_max = ms_to_cycles(hi[1].get<double>(), ghz);
    } else if (kind == "empirical") {
        m.kind = ExecTimeModel::Kind::empirical;
        if (j.contains("samples_ms")) {
            for (const auto& s : j.at("samples_ms"))
                m.samples.push_back(ms_to_cycles(s.get<double>(), ghz));
        }
        if (j.contains("samples_file")) {
            // One millisecond value per line, for replaying measured runs.
            std::filesystem::path file = j["samples_file"].get<std::string>();
            if (file.is_relative() && !base_dir.empty()) file = base_dir / file;
            std::ifstream in(file);
            if (!in)
                throw ValidationError(where + ": cannot open samples_file '" + file.string() +
                                      "'");
            double v = 0.0;
            while (in >> v) m.samples.push_back(ms_to_cycles(v, ghz));
        }
        if (m.samples.empty()) throw ValidationError(where + ": empirical samples are empty");
    } else {
        throw ValidationError(where + ": unknown execution-time model '" + kind + "'");
    }
    return m;
}

} // namespace

ScenarioRuntime parse_scenario(const std::string& json_text, const std::string& origin,
                               const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }

    ScenarioRuntime sc;
    try {
        sc.name = doc.value("name", "scenario");
        sc.clock_ghz = doc.value("clock_ghz", kDefaultClockGhz);
        if (sc.clock_ghz <= 0.0) throw ValidationError(origin + ": clock_ghz must be positive");
        if (!doc.contains("horizon_ms"))
            throw ValidationError(origin + ": missing field 'horizon_ms'");
        sc.horizon = ms_to_cycles(doc["horizon_ms"].get<double>(), sc.clock_ghz);
        sc.n_param = doc.value("n_param", 1u);
        if (sc.n_param == 0) throw ValidationError(origin + ": n_param must be positive");

        if (doc.contains("timing")) {
            const auto& t = doc["timing"];
            sc.timing.clock_ghz = sc.clock_ghz;
            if (t.contains("t_loop_wc_ms"))
                sc.timing.loop_wc_mc = ms_to_millicycles(t["t_loop_wc_ms"].get<double>(), sc.clock_ghz);
            if (t.contains("t_str_ms"))
                sc.timing.stream_msg_mc = ms_to_millicycles(t["t_str_ms"].get<double>(), sc.clock_ghz);
            if (t.contains("t_start_wc_ms"))
                sc.timing.tile_start_mc =
                    ms_to_millicycles(t["t_start_wc_ms"].get<double>(), sc.clock_ghz);
            if (t.contains("o_switch_override_ms") && !t["o_switch_override_ms"].is_null())
                sc.timing.o_switch_override =
                    ms_to_cycles(t["o_switch_override_ms"].get<double>(), sc.clock_ghz);
            if (t.contains("dispatch_margin_ms"))
                sc.timing.dispatch_margin =
                    ms_to_cycles(t["dispatch_margin_ms"].get<double>(), sc.clock_ghz);
            if (t.contains("copy")) {
                const auto& c = t["copy"];
                const auto anchor_bytes = c.value("anchor_bytes", std::uint64_t{16384});
                const Cycles anchor =
                    ms_to_cycles(c.value("anchor_ms", 30.28e-4), sc.clock_ghz);
                const double sync_fraction = c.value("sync_fraction", 0.1);
                if (sync_fraction < 0.0 || sync_fraction >= 1.0)
                    throw ValidationError(origin + ": copy.sync_fraction must be within [0, 1)");
                sc.timing.copy = CopyTimeModel::calibrated(anchor_bytes, anchor, sync_fraction);
                if (c.contains("extra_anchors")) {
                    for (const auto& a : c["extra_anchors"]) {
                        sc.timing.copy.anchor_points.emplace_back(
                            a.at("bytes").get<std::uint64_t>(),
                            ms_to_cycles(a.at("ms").get<double>(), sc.clock_ghz));
                    }
                }
            }
            if (t.contains("loop_model")) {
                const auto& lm = t["loop_model"];
                const std::string kind = lm.value("kind", "constant");
                if (kind == "uniform") {
                    sc.loop_uniform = true;
                    sc.loop_min = ms_to_cycles(lm.value("min_ms", 0.0), sc.clock_ghz);
                    if (sc.loop_min > sc.timing.loop_wc_cycles())
                        throw ValidationError(origin + ": loop_model.min_ms exceeds the worst case");
                } else if (kind != "constant") {
                    throw ValidationError(origin + ": unknown loop model '" + kind + "'");
                }
            }
        } else {
            sc.timing.clock_ghz = sc.clock_ghz;
        }

        if (doc.contains("queues")) {
            sc.queue_capacity = doc["queues"].value("capacity", std::size_t{16});
            sc.metadata_bytes = doc["queues"].value("metadata_bytes", std::uint64_t{32});
        }
        if (doc.contains("channels")) {
            sc.hop_latency = doc["channels"].value("hop_cycles", std::uint64_t{8});
            sc.channel_capacity = doc["channels"].value("capacity", std::size_t{64});
        }
        sc.banks_per_tile = doc.value("banks_per_tile", 8);

        if (!doc.contains("tiles") || !doc["tiles"].is_array() || doc["tiles"].empty())
            throw ParseError(origin + ": missing or empty 'tiles' section");
        for (const auto& jt : doc["tiles"]) {
            Tile tile;
            tile.id = jt.at("id").get<TileId>();
            const std::string where = origin + ": tile " + std::to_string(tile.id);
            if (tile.id == kDispatcherTile)
                throw ValidationError(where + ": id 0 is reserved for the dispatcher");
            tile.allowed_low_mode = parse_capability(jt.at("low_mode"), where);
            tile.allowed_high_mode = parse_capability(jt.at("high_mode"), where);
            sc.tiles.push_back(tile);
        }
        std::sort(sc.tiles.begin(), sc.tiles.end(),
                  [](const Tile& a, const Tile& b) { return a.id < b.id; });

        if (!doc.contains("tasks") || !doc["tasks"].is_array() || doc["tasks"].empty())
            throw ParseError(origin + ": missing or empty 'tasks' section");
        for (const auto& jt : doc["tasks"]) {
            TaskSpec spec;
            spec.def.id = static_cast<TaskId>(sc.tasks.size());
            spec.def.name = jt.value("name", "task" + std::to_string(spec.def.id));
            const std::string where = origin + ": task '" + spec.def.name + "'";
            spec.def.criticality = parse_criticality(jt.at("criticality"), where);
            spec.def.eet = ms_to_cycles(require_ms(jt, "t_eet_ms", where), sc.clock_ghz);
            spec.def.wcet = ms_to_cycles(require_ms(jt, "t_wcet_ms", where), sc.clock_ghz);
            spec.def.period = ms_to_cycles(require_ms(jt, "period_ms", where), sc.clock_ghz);
            spec.def.deadline = jt.contains("deadline_ms")
                                    ? ms_to_cycles(jt["deadline_ms"].get<double>(), sc.clock_ghz)
                                    : spec.def.period;
            spec.def.input_buffer_bytes = jt.value("input_bytes", std::uint64_t{0});
            spec.def.output_buffer_bytes = jt.value("output_bytes", std::uint64_t{0});
            spec.def.source_offset =
                ms_to_cycles(jt.value("offset_ms", 0.0), sc.clock_ghz);
            if (!jt.contains("exec_model"))
                throw ValidationError(where + ": missing field 'exec_model'");
            spec.exec = parse_exec_model(jt["exec_model"], sc.clock_ghz, where, base_dir);
            sc.tasks.push_back(std::move(spec));
        }

        if (doc.contains("static_assignment") && !doc["static_assignment"].is_null()) {
            StaticAssignment assign;
            assign.tile_of_task.assign(sc.tasks.size(), kNoTile);
            for (const auto& [task_name, tile_json] : doc["static_assignment"].items()) {
                const auto it = std::find_if(sc.tasks.begin(), sc.tasks.end(),
                                             [&](const TaskSpec& t) {
                                                 return t.def.name == task_name;
                                             });
                if (it == sc.tasks.end())
                    throw ValidationError(origin + ": static_assignment names unknown task '" +
                                          task_name + "'");
                assign.tile_of_task[it->def.id] = tile_json.get<TileId>();
            }
            for (const auto& t : sc.tasks) {
                if (assign.tile_of_task[t.def.id] == kNoTile)
                    throw ValidationError(origin + ": static_assignment misses task '" +
                                          t.def.name + "'");
            }
            sc.static_assignment = std::move(assign);
        }
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }

    const auto problems = sc.validate();
    if (!problems.empty()) throw ValidationError(origin + ": " + problems.front());
    return sc;
}

ScenarioRuntime load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.filename().string(), path.parent_path());
}

} // namespace tdsim
