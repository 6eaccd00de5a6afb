#include <doctest.h>

#include "helpers.hpp"
#include "tdsim/dispatcher.hpp"

using namespace tdsim;
using namespace tdsim::testing;

namespace {

JobMeta high_meta(TaskId task = 0, std::uint32_t seq = 0) {
    JobMeta m;
    m.task = task;
    m.seq = seq;
    m.criticality = Criticality::high;
    return m;
}

JobMeta low_meta(TaskId task = 2, std::uint32_t seq = 0) {
    JobMeta m;
    m.task = task;
    m.seq = seq;
    m.criticality = Criticality::low;
    return m;
}

} // namespace

TEST_CASE("in low mode a high job lands on the high-only tile") {
    const auto tiles = three_tile_pool();
    Dispatcher d(1, tiles.size(), 0);
    const auto idx = d.try_dispatch(high_meta(), tiles);
    REQUIRE(idx);
    CHECK(tiles[*idx].id == 1);
}

TEST_CASE("in low mode a high job cannot use the shared tile") {
    const auto tiles = three_tile_pool();
    Dispatcher d(1, tiles.size(), 0);
    d.mark_tile_busy(0); // tile 1 occupied
    CHECK_FALSE(d.try_dispatch(high_meta(), tiles).has_value());
}

TEST_CASE("in high mode the shared tile is closed to low jobs") {
    const auto tiles = three_tile_pool();
    Dispatcher d(1, tiles.size(), 0);
    d.register_pending(high_meta(), 100);
    REQUIRE(d.check_context_switch(100).has_value());
    REQUIRE(d.level() == Criticality::high);

    d.mark_tile_busy(2); // tile 3, the only low tile left in high mode
    CHECK_FALSE(d.try_dispatch(low_meta(), tiles).has_value());

    // The shared tile accepts the high job instead.
    const auto idx = d.try_dispatch(high_meta(), tiles);
    REQUIRE(idx);
    CHECK(tiles[*idx].id == 1); // first fit: tile 1 before tile 2
    d.mark_tile_busy(0);
    const auto idx2 = d.try_dispatch(high_meta(1), tiles);
    REQUIRE(idx2);
    CHECK(tiles[*idx2].id == 2);
}

TEST_CASE("no idle tile means no dispatch") {
    const auto tiles = three_tile_pool();
    Dispatcher d(1, tiles.size(), 0);
    for (std::size_t i = 0; i < tiles.size(); ++i) d.mark_tile_busy(i);
    CHECK_FALSE(d.try_dispatch(high_meta(), tiles).has_value());
    CHECK_FALSE(d.try_dispatch(low_meta(), tiles).has_value());
}

TEST_CASE("the context switch fires within the margin window before the due time") {
    Dispatcher d(1, 3, 100);
    d.register_pending(high_meta(), 1000);
    CHECK_FALSE(d.check_context_switch(899).has_value());
    const auto change = d.check_context_switch(900); // 900 + 100 >= 1000
    REQUIRE(change);
    CHECK(*change == Criticality::high);
    CHECK(d.mode().high_mode_jobs_remaining == 1);
    // Already in high mode: no further switch.
    CHECK_FALSE(d.check_context_switch(2000).has_value());
}

TEST_CASE("a dispatched job no longer triggers a switch") {
    Dispatcher d(1, 3, 0);
    const auto meta = high_meta(0, 7);
    d.register_pending(meta, 500);
    d.remove_pending(meta.task, meta.seq);
    CHECK_FALSE(d.check_context_switch(10'000).has_value());
}

TEST_CASE("the earliest pending job governs the switch") {
    Dispatcher d(1, 3, 0);
    d.register_pending(high_meta(0, 0), 900);
    d.register_pending(high_meta(1, 0), 400);
    CHECK_FALSE(d.check_context_switch(399).has_value());
    CHECK(d.check_context_switch(400).has_value());
}

TEST_CASE("completion countdown returns the system to low mode") {
    const Cycles eet = ms_to_cycles(15.0);

    SUBCASE("n = 1: one exceedance, then one completion within the bound") {
        Dispatcher d(1, 3, 0);
        d.register_pending(high_meta(), 10);
        REQUIRE(d.check_context_switch(10).has_value());

        // Exceeding job resets the countdown; mode stays high.
        auto e = d.on_completion(0, true, Criticality::high, eet + 1, eet);
        CHECK_FALSE(e.mode_changed_to_low);
        CHECK(d.level() == Criticality::high);

        // Next job stays within the bound: back to low.
        e = d.on_completion(0, true, Criticality::high, eet, eet);
        CHECK(e.mode_changed_to_low);
        CHECK(d.level() == Criticality::low);
        CHECK(d.mode().consistent());
    }
    SUBCASE("n = 2 needs two consecutive in-bound completions") {
        Dispatcher d(2, 3, 0);
        d.register_pending(high_meta(), 10);
        REQUIRE(d.check_context_switch(10).has_value());
        CHECK_FALSE(d.on_completion(0, true, Criticality::high, eet - 5, eet).mode_changed_to_low);
        CHECK(d.level() == Criticality::high);
        CHECK(d.on_completion(1, true, Criticality::high, eet - 5, eet).mode_changed_to_low);
        CHECK(d.level() == Criticality::low);
    }
    SUBCASE("an exceedance mid-countdown starts over") {
        Dispatcher d(2, 3, 0);
        d.register_pending(high_meta(), 10);
        REQUIRE(d.check_context_switch(10).has_value());
        CHECK_FALSE(d.on_completion(0, true, Criticality::high, eet - 5, eet).mode_changed_to_low);
        CHECK_FALSE(d.on_completion(0, true, Criticality::high, eet + 9, eet).mode_changed_to_low);
        CHECK(d.mode().high_mode_jobs_remaining == 2);
        CHECK_FALSE(d.on_completion(0, true, Criticality::high, eet, eet).mode_changed_to_low);
        CHECK(d.on_completion(0, true, Criticality::high, eet, eet).mode_changed_to_low);
    }
    SUBCASE("low-criticality completions do not touch the countdown") {
        Dispatcher d(1, 3, 0);
        d.register_pending(high_meta(), 10);
        REQUIRE(d.check_context_switch(10).has_value());
        CHECK_FALSE(d.on_completion(2, true, Criticality::low, 100, 200).mode_changed_to_low);
        CHECK(d.level() == Criticality::high);
    }
}

TEST_CASE("an unknown completion is reported and otherwise ignored") {
    Dispatcher d(1, 3, 0);
    d.mark_tile_busy(1);
    const auto e = d.on_completion(1, false, Criticality::low, 0, 0);
    CHECK_FALSE(e.known_job);
    CHECK(d.tile_busy_in_view(1)); // view untouched
}
