#include <doflab/region.hpp>
#include <doflab/schemes.hpp>

#include <catch_amalgamated.hpp>

using namespace doflab;

namespace {

std::vector<Rational> dof_of(const std::vector<int>& symbols, int n) {
    std::vector<Rational> d;
    for (int m : symbols) d.push_back(make_rational(m, n));
    return d;
}

}  // namespace

TEST_CASE("achieved dof is the exact per-receiver ratio") {
    const CsitConfig cfg = CsitConfig::parse("PDD");
    LinearStrategy s = make_empty_strategy(cfg, 3, 4, {3, 2, 2}, "ratio");
    CHECK(achieved_dof(s) == dof_of({3, 2, 2}, 4));

    LinearStrategy zeros = make_empty_strategy(cfg, 3, 4, {0, 0, 0}, "zeros");
    CHECK(achieved_dof(zeros) == dof_of({0, 0, 0}, 4));

    const SchemeSpec spec = kuser_d1_scheme_spec(4);
    CHECK(spec.target_dof == dof_of({8, 8, 8, 1}, 8));
    for (std::size_t j = 0; j < spec.target_dof.size(); ++j)
        CHECK(spec.target_dof[j] == make_rational(spec.target_symbols[j], spec.block_length));

    s.n = 0;
    CHECK_THROWS_AS(achieved_dof(s), std::invalid_argument);
}

TEST_CASE("zero-forcing scheme across configurations") {
    SECTION("PPN over three slots") {
        const ChannelRealization real = sample_channel(3, 3, 3, 21);
        const LinearStrategy s = zero_forcing_scheme(CsitConfig::parse("PPN"), real, 3);
        CHECK(s.symbol_counts == std::vector<int>{3, 3, 0});
        CHECK(achieved_dof(s) == dof_of({1, 1, 0}, 1));
        CHECK(all_achieved(check_decodability(assemble(s, real))));
    }
    SECTION("PNN degenerates to a single active receiver") {
        const ChannelRealization real = sample_channel(3, 3, 2, 22);
        const LinearStrategy s = zero_forcing_scheme(CsitConfig::parse("PNN"), real, 2);
        CHECK(s.symbol_counts == std::vector<int>{2, 0, 0});
        CHECK(all_achieved(check_decodability(assemble(s, real))));
    }
    SECTION("PPP in one slot reaches sum three") {
        const ChannelRealization real = sample_channel(3, 3, 1, 23);
        const LinearStrategy s = zero_forcing_scheme(CsitConfig::parse("PPP"), real, 1);
        CHECK(s.symbol_counts == std::vector<int>{1, 1, 1});
        CHECK(all_achieved(check_decodability(assemble(s, real))));
        Rational sum(0);
        for (const auto& d : achieved_dof(s)) sum += d;
        CHECK(sum == 3);
    }
    SECTION("needs an instantaneous receiver") {
        const ChannelRealization real = sample_channel(3, 3, 2, 24);
        CHECK_THROWS_AS(zero_forcing_scheme(CsitConfig::parse("DDN"), real, 2),
                        std::invalid_argument);
    }
    SECTION("decodable across twenty seeds and CSIT-compliant") {
        const CsitConfig cfg = CsitConfig::parse("PPD");
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const ChannelRealization real = sample_channel(3, 3, 3, seed);
            INFO("seed " << seed);
            CHECK(all_achieved(check_decodability(assemble(zero_forcing_scheme(cfg, real, 3), real))));
        }
        const ChannelRealization real = sample_channel(3, 3, 3, 25);
        const auto gen = [](const CsitConfig& c, const ChannelRealization& r, std::uint64_t) {
            return zero_forcing_scheme(c, r, r.n());
        };
        CHECK(validate_csit_compliance(gen, cfg, real, 0, 2));
        CHECK(validate_csit_compliance(gen, CsitConfig::parse("PDN"), real, 0, 2));
    }
}

TEST_CASE("four-slot PDD scheme") {
    const ChannelRealization real = sample_channel(3, 3, 4, 7);
    const LinearStrategy s = pdd_scheme(real);
    const Transcript tr = assemble(s, real);

    SECTION("stacked shapes") {
        CHECK(tr.stacked_precoder(0).rows() == 12);
        CHECK(tr.stacked_precoder(0).cols() == 3);
        CHECK(tr.stacked_precoder(1).cols() == 2);
        CHECK(tr.stacked_precoder(2).cols() == 2);
    }
    SECTION("decodable with (3,2,2) over n=4") {
        const auto records = check_decodability(tr);
        REQUIRE(all_achieved(records));
        CHECK(achieved_dof(s) == dof_of({3, 2, 2}, 4));
    }
    SECTION("slot-2 fresh symbols are invisible at the instantaneous receiver") {
        const Matrix leak = real.row(0, 2) * s.precoder(1, 2);
        CHECK(is_zero(leak));
        const Matrix leak3 = real.row(0, 3) * s.precoder(2, 3);
        CHECK(is_zero(leak3));
    }
    SECTION("target point lies on the region boundary with three tight members") {
        const DofRegion region = build_region(CsitConfig::parse("PDD"));
        const auto d = achieved_dof(s);
        CHECK(region.contains(d));
        const std::vector<std::vector<long>> tight = {
            {2, 4, 1}, {2, 1, 4}, {3, 2, 1}};  // denominators of d1,d2,d3 weights
        for (const auto& w : tight) {
            const Rational v = d[0] / w[0] + d[1] / w[1] + d[2] / w[2];
            CHECK(v == 1);
        }
    }
    SECTION("decodable across twenty seeds") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const ChannelRealization r = sample_channel(3, 3, 4, seed);
            INFO("seed " << seed);
            CHECK(all_achieved(check_decodability(assemble(pdd_scheme(r), r))));
        }
    }
    SECTION("construction is a function of the slot views only") {
        const auto gen = [](const CsitConfig&, const ChannelRealization& rr, std::uint64_t) {
            return pdd_scheme(rr);
        };
        CHECK(validate_csit_compliance(gen, CsitConfig::parse("PDD"), real, 0, 2));
    }
    SECTION("dimension preconditions") {
        const ChannelRealization bad = sample_channel(3, 3, 5, 7);
        CHECK_THROWS_AS(pdd_scheme(bad), std::invalid_argument);
    }
}

TEST_CASE("k-user single-delayed scheme") {
    SECTION("K=2 recovers the two-user corner") {
        const ChannelRealization real = sample_channel(2, 2, 2, 31);
        const LinearStrategy s = kuser_d1_scheme(2, real);
        CHECK(s.symbol_counts == std::vector<int>{2, 1});
        CHECK(achieved_dof(s) == dof_of({2, 1}, 2));
        CHECK(all_achieved(check_decodability(assemble(s, real))));
    }
    SECTION("K=3 delivers (4,4,1) over four slots") {
        const ChannelRealization real = sample_channel(3, 3, 4, 32);
        const LinearStrategy s = kuser_d1_scheme(3, real);
        CHECK(s.symbol_counts == std::vector<int>{4, 4, 1});
        CHECK(achieved_dof(s) == dof_of({4, 4, 1}, 4));
        CHECK(all_achieved(check_decodability(assemble(s, real))));
    }
    SECTION("K=4 reaches sum 25/8") {
        const ChannelRealization real = sample_channel(4, 4, 8, 33);
        const LinearStrategy s = kuser_d1_scheme(4, real);
        CHECK(s.symbol_counts == std::vector<int>{8, 8, 8, 1});
        Rational sum(0);
        for (const auto& d : achieved_dof(s)) sum += d;
        CHECK(sum == make_rational(25, 8));
        CHECK(all_achieved(check_decodability(assemble(s, real))));
    }
    SECTION("every instantaneous receiver is served in every slot") {
        const ChannelRealization real = sample_channel(3, 3, 4, 34);
        const LinearStrategy s = kuser_d1_scheme(3, real);
        int rank2_slots = 0, rank1_slots = 0;
        for (int r = 0; r < 2; ++r)
            for (int t = 1; t <= 4; ++t) {
                const std::size_t rk = rank_of(s.precoder(r, t));
                CHECK(rk >= 1);
                rank2_slots += (rk == 2);
                rank1_slots += (rk == 1);
            }
        // per receiver: 2^{K-2} fresh (rank-2) and 2^{K-2} repetition slots
        CHECK(rank2_slots == 2 * 2);
        CHECK(rank1_slots == 2 * 2);
    }
    SECTION("delayed-CSIT compliance of the whole construction") {
        const ChannelRealization real = sample_channel(3, 3, 4, 35);
        const auto gen = [](const CsitConfig&, const ChannelRealization& rr, std::uint64_t) {
            return kuser_d1_scheme(3, rr);
        };
        CHECK(validate_csit_compliance(gen, kuser_d1_scheme_spec(3).config, real, 0, 2));
    }
    SECTION("preconditions") {
        const ChannelRealization real = sample_channel(3, 3, 4, 36);
        CHECK_THROWS_AS(kuser_d1_scheme(1, real), std::invalid_argument);
        CHECK_THROWS_AS(kuser_d1_scheme(4, real), std::invalid_argument);
    }
}
