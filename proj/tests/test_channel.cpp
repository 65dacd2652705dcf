#include <doflab/channel.hpp>
#include <doflab/serialize.hpp>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace doflab;

namespace {

Matrix slot_block(const ChannelRealization& real, int t) {
    Matrix block(real.k(), real.m());
    for (int j = 0; j < real.k(); ++j)
        for (int c = 0; c < real.m(); ++c) block(j, c) = real.row(j, t)(0, c);
    return block;
}

}  // namespace

TEST_CASE("csit config parsing and derived sets") {
    const CsitConfig c = CsitConfig::parse("PDN");
    CHECK(c.k() == 3);
    CHECK(c.instantaneous() == std::vector<int>{0});
    CHECK(c.delayed() == std::vector<int>{1});
    CHECK(c.none() == std::vector<int>{2});
    CHECK(c.str() == "PDN");
    CHECK(CsitConfig::parse("DPN").class_string() == "PDN");
    CHECK(CsitConfig::parse("NDD").class_string() == "DDN");
    CHECK_THROWS_AS(CsitConfig::parse("PXZ"), std::invalid_argument);
    CHECK_THROWS_AS(CsitConfig::parse(""), std::invalid_argument);

    // the three sets partition the receivers
    for (const char* s : {"PPP", "PDN", "NND", "DDDP"}) {
        const CsitConfig cfg = CsitConfig::parse(s);
        std::vector<bool> seen(cfg.k(), false);
        for (const auto& set : {cfg.instantaneous(), cfg.delayed(), cfg.none()})
            for (int j : set) {
                CHECK_FALSE(seen[j]);
                seen[j] = true;
            }
        for (bool b : seen) CHECK(b);
    }
}

TEST_CASE("channel sampling is generic and deterministic") {
    const ChannelRealization real = sample_channel(3, 3, 4, 7);
    // 12 row vectors, every slot block has a nonzero determinant
    for (int t = 1; t <= 4; ++t) {
        CHECK(oracles::laplace_det(slot_block(real, t)) != 0);
        for (int j = 0; j < 3; ++j) CHECK(real.row(j, t).cols() == 3);
    }

    const ChannelRealization again = sample_channel(3, 3, 4, 7);
    for (int t = 1; t <= 4; ++t)
        for (int j = 0; j < 3; ++j) CHECK(real.row(j, t) == again.row(j, t));

    const ChannelRealization different = sample_channel(3, 3, 4, 8);
    bool same = true;
    for (int t = 1; t <= 4; ++t)
        for (int j = 0; j < 3; ++j) same = same && (real.row(j, t) == different.row(j, t));
    CHECK_FALSE(same);
}

TEST_CASE("genericity excludes zero even at range 1") {
    const ChannelRealization real = sample_channel(1, 1, 1, 0, 1);
    CHECK(real.row(0, 1)(0, 0) != 0);
}

TEST_CASE("wider antenna arrays check every column minor") {
    const ChannelRealization real = sample_channel(2, 4, 3, 11, 3);
    for (int t = 1; t <= 3; ++t) {
        const Matrix block = slot_block(real, t);
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = a + 1; b < 4; ++b)
                CHECK(oracles::laplace_det(block.columns({a, b})) != 0);
    }
}

TEST_CASE("sampling preconditions") {
    CHECK_THROWS_AS(sample_channel(3, 2, 4, 1), std::invalid_argument);  // m < k
    CHECK_THROWS_AS(sample_channel(0, 1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_channel(1, 1, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_channel(1, 1, 1, 1, 0), std::invalid_argument);
}

TEST_CASE("block diagonal layout") {
    const ChannelRealization real = sample_channel(2, 2, 2, 3);
    SECTION("single slot block is the row itself") {
        const ChannelRealization one = sample_channel(2, 3, 1, 5);
        const Matrix g = block_diagonal(one, 1);
        REQUIRE(g.rows() == 1);
        REQUIRE(g.cols() == 3);
        CHECK(g.row(0) == one.row(1, 1));
    }
    SECTION("two-slot placement, entry by entry") {
        const Matrix g = block_diagonal(real, 0);
        REQUIRE(g.rows() == 2);
        REQUIRE(g.cols() == 4);
        for (int c = 0; c < 2; ++c) {
            CHECK(g(0, c) == real.row(0, 1)(0, c));
            CHECK(g(1, 2 + c) == real.row(0, 2)(0, c));
            CHECK(g(0, 2 + c) == 0);
            CHECK(g(1, c) == 0);
        }
    }
    SECTION("rows occupy disjoint columns, so the rank is n") {
        CHECK(rank_of(block_diagonal(real, 0)) == 2);
        CHECK(rank_of(block_diagonal(real, 1)) == 2);
    }
    CHECK_THROWS_AS(block_diagonal(real, 2), std::invalid_argument);
}

TEST_CASE("csit views expose exactly the permitted history") {
    const ChannelRealization real = sample_channel(3, 3, 4, 9);

    SECTION("no CSIT sees nothing") {
        const CsitConfig nnn = CsitConfig::parse("NNN");
        for (int t = 1; t <= 4; ++t) {
            const CsitView view = csit_view(nnn, real, t);
            for (int j = 0; j < 3; ++j) {
                CHECK(view.visible_slots(j).empty());
                CHECK_THROWS_AS(view.row(j, 1), std::logic_error);
            }
        }
    }
    SECTION("delayed history is empty at the first slot") {
        const CsitView view = csit_view(CsitConfig::parse("PDD"), real, 1);
        CHECK(view.visible_slots(0) == std::vector<int>{1});
        CHECK(view.visible_slots(1).empty());
        CHECK(view.visible_slots(2).empty());
        CHECK(view.row(0, 1) == real.row(0, 1));
    }
    SECTION("mixed states at an interior slot") {
        const CsitView view = csit_view(CsitConfig::parse("PDN"), real, 3);
        CHECK(view.visible_slots(0) == std::vector<int>{1, 2, 3});
        CHECK(view.visible_slots(1) == std::vector<int>{1, 2});
        CHECK(view.visible_slots(2).empty());
        CHECK_THROWS_AS(view.row(0, 4), std::logic_error);
        CHECK_THROWS_AS(view.row(1, 3), std::logic_error);
    }
    SECTION("views grow monotonically with the slot") {
        for (const char* s : {"PPP", "PDD", "PDN", "NNN", "DDN"}) {
            const CsitConfig cfg = CsitConfig::parse(s);
            for (int t = 1; t < 4; ++t) {
                const CsitView now = csit_view(cfg, real, t);
                const CsitView later = csit_view(cfg, real, t + 1);
                for (int j = 0; j < 3; ++j)
                    for (int slot : now.visible_slots(j)) CHECK(later.visible(j, slot));
            }
        }
    }
    CHECK_THROWS_AS(csit_view(CsitConfig::parse("PPP"), real, 0), std::invalid_argument);
    CHECK_THROWS_AS(csit_view(CsitConfig::parse("PPP"), real, 5), std::invalid_argument);
}

TEST_CASE("channel JSON round-trip") {
    const ChannelRealization real = sample_channel(2, 2, 3, 42);
    const Json j = to_json(real);
    const ChannelRealization back = channel_from_json(j);
    CHECK(back.k() == real.k());
    CHECK(back.m() == real.m());
    CHECK(back.n() == real.n());
    CHECK(back.seed() == real.seed());
    for (int t = 1; t <= 3; ++t)
        for (int rec = 0; rec < 2; ++rec) CHECK(back.row(rec, t) == real.row(rec, t));
    CHECK(to_json(back).dump() == j.dump());
}

TEST_CASE("perturbation keeps visible entries and changes hidden ones") {
    const ChannelRealization real = sample_channel(3, 3, 4, 13);
    const CsitConfig cfg = CsitConfig::parse("PDN");
    const int t = 2;
    const ChannelRealization perturbed = perturb_invisible(cfg, real, t, 777);
    const CsitView view = csit_view(cfg, real, t);
    bool changed_something = false;
    for (int j = 0; j < 3; ++j)
        for (int s = 1; s <= 4; ++s) {
            if (view.visible(j, s)) {
                CHECK(perturbed.row(j, s) == real.row(j, s));
            } else if (!(perturbed.row(j, s) == real.row(j, s))) {
                changed_something = true;
            }
        }
    CHECK(changed_something);
    for (int s = 1; s <= 4; ++s)
        CHECK(oracles::laplace_det(slot_block(perturbed, s)) != 0);
}
