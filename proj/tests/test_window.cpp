#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "ampdusim/channel.hpp"
#include "ampdusim/window.hpp"

using namespace ampdusim;

namespace {

void mark(WindowState& w, std::initializer_list<std::uint64_t> seqs) {
    const std::vector<std::uint64_t> v(seqs);
    w.apply_back(v);
}

}  // namespace

TEST_CASE("selection picks the smallest undelivered sequence numbers", "[window]") {
    WindowState w(1, 10);
    mark(w, {2, 4, 5, 6, 7, 8});
    CHECK(w.base_seq() == 1);
    CHECK(w.delivered_count() == 6);
    CHECK(w.select_xmin(9) == std::vector<std::uint64_t>{1, 3, 9, 10});
}

TEST_CASE("a delivered base slides the window past the contiguous prefix", "[window]") {
    WindowState w(1, 10);
    mark(w, {2, 4, 5, 6, 7, 8});
    std::vector<std::uint64_t> back{1};
    CHECK(w.apply_back(back) == 1);
    CHECK(w.base_seq() == 3);
    CHECK(w.contains(3));
    CHECK(w.contains(12));
    CHECK_FALSE(w.contains(13));
    CHECK(w.select_xmin(10) == std::vector<std::uint64_t>{3, 9, 10, 11, 12});
}

TEST_CASE("a fresh window selects the first k sequence numbers", "[window]") {
    WindowState w(0, 64);
    std::vector<std::uint64_t> expect;
    for (std::uint64_t s = 0; s < 32; ++s) expect.push_back(s);
    CHECK(w.select_xmin(32) == expect);
}

TEST_CASE("selection is capped by the undelivered count", "[window]") {
    WindowState w(7, 4);
    mark(w, {8, 9});
    CHECK(w.select_xmin(4) == std::vector<std::uint64_t>{7, 10});
}

TEST_CASE("empty feedback changes nothing", "[window]") {
    WindowState w(5, 8);
    mark(w, {6, 7});
    const std::vector<std::uint64_t> none;
    CHECK(w.apply_back(none) == 0);
    CHECK(w.base_seq() == 5);
    CHECK(w.delivered_count() == 2);
}

TEST_CASE("delivering the whole window slides it fully", "[window]") {
    WindowState w(0, 3);
    std::vector<std::uint64_t> all{0, 1, 2};
    CHECK(w.apply_back(all) == 3);
    CHECK(w.base_seq() == 3);
    CHECK(w.delivered_count() == 0);
}

TEST_CASE("a full 64-wide window slides 64 positions", "[window]") {
    WindowState w(0, 64);
    std::vector<std::uint64_t> all;
    for (std::uint64_t s = 0; s < 64; ++s) all.push_back(s);
    CHECK(w.apply_back(all) == 64);
    CHECK(w.base_seq() == 64);
    CHECK(w.delivered_count() == 0);
    CHECK(w.select_xmin(1) == std::vector<std::uint64_t>{64});
}

TEST_CASE("feedback outside the window is a contract violation", "[window]") {
    WindowState w(10, 4);
    std::vector<std::uint64_t> low{9};
    std::vector<std::uint64_t> high{14};
    CHECK_THROWS_AS(w.apply_back(low), std::out_of_range);
    CHECK_THROWS_AS(w.apply_back(high), std::out_of_range);
}

TEST_CASE("marking is idempotent", "[window]") {
    WindowState w(0, 8);
    std::vector<std::uint64_t> some{3, 5};
    CHECK(w.apply_back(some) == 2);
    CHECK(w.apply_back(some) == 0);
    CHECK(w.delivered_count() == 2);
}

TEST_CASE("the base is never marked delivered", "[window]") {
    WindowState w(0, 8);
    mark(w, {1, 2, 3});
    CHECK_FALSE(w.is_delivered(w.base_seq()));
    mark(w, {0});
    CHECK(w.base_seq() == 4);
    CHECK_FALSE(w.is_delivered(w.base_seq()));
}

TEST_CASE("window width is bounded by the feedback bitmap", "[window]") {
    CHECK_THROWS_AS(WindowState(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(WindowState(0, 65), std::invalid_argument);
    CHECK_NOTHROW(WindowState(0, 64));
}

TEST_CASE("selection validates k against the width", "[window]") {
    WindowState w(0, 8);
    CHECK_THROWS_AS(w.select_xmin(0), std::invalid_argument);
    CHECK_THROWS_AS(w.select_xmin(9), std::invalid_argument);
}

TEST_CASE("randomized runs preserve the window invariants", "[window]") {
    RandomSource rng(7);
    WindowState w(0, 16);
    long long total_newly = 0;
    std::vector<std::uint64_t> xmin;
    std::vector<std::uint64_t> delivered;
    for (int step = 0; step < 5000; ++step) {
        const std::uint64_t before = w.base_seq();
        const int k = 1 + static_cast<int>(rng.next_u64() % 16);
        w.select_xmin(k, xmin);

        // selection invariants: sorted, unique, in-window, correct size
        REQUIRE(static_cast<int>(xmin.size()) ==
                std::min(k, w.width() - w.delivered_count()));
        REQUIRE(xmin.front() == w.base_seq());
        for (std::size_t i = 0; i < xmin.size(); ++i) {
            REQUIRE(w.contains(xmin[i]));
            REQUIRE_FALSE(w.is_delivered(xmin[i]));
            if (i > 0) REQUIRE(xmin[i] > xmin[i - 1]);
        }

        delivered.clear();
        for (const std::uint64_t seq : xmin)
            if (rng.next_unit() < 0.5) delivered.push_back(seq);
        total_newly += w.apply_back(delivered);

        REQUIRE(w.base_seq() >= before);
        REQUIRE_FALSE(w.is_delivered(w.base_seq()));
    }
    // conservation: every newly-delivered flag either slid past or is held
    CHECK(total_newly ==
          static_cast<long long>(w.base_seq()) + w.delivered_count());
}
