#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "hdev/fitting.hpp"
#include "hdev/indices.hpp"
#include "hdev/synth.hpp"

TEST(Xoshiro, ReferenceOutput) {
    // SplitMix64 reference: first output for state 0
    std::uint64_t s = 0;
    EXPECT_EQ(hdev::splitmix64(s), 0xE220A8397B1DCDAFULL);
    hdev::Xoshiro256 a(42), b(42), c(43);
    for (int i = 0; i < 100; ++i) {
        const auto x = a();
        ASSERT_EQ(x, b());
        (void)c();
    }
    EXPECT_NE(hdev::Xoshiro256(42)(), hdev::Xoshiro256(43)());
}

TEST(Xoshiro, UniformRanges) {
    hdev::Xoshiro256 rng(5);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        const double v = rng.uniform_open_low();
        ASSERT_GT(v, 0.0);
        ASSERT_LE(v, 1.0);
        const auto k = rng.uniform_int(-3, 3);
        ASSERT_GE(k, -3);
        ASSERT_LE(k, 3);
        sum += u;
    }
    EXPECT_NEAR(sum / 100000, 0.5, 0.01);
    EXPECT_THROW(rng.uniform_int(2, 1), hdev::DomainError);
}

TEST(Xoshiro, GaussianMoments) {
    hdev::Xoshiro256 rng(9);
    double s1 = 0.0, s2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = rng.gaussian();
        s1 += z;
        s2 += z * z;
    }
    EXPECT_NEAR(s1 / n, 0.0, 0.01);
    EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

TEST(Lotkaian, DrawMatchesPowerLawTail) {
    // Kolmogorov distance between the empirical and exact Pr(c >= k) = 1/k (theta = 2)
    hdev::Xoshiro256 rng(2024);
    const int n = 100000;
    const std::int64_t cap = 100000;
    std::vector<std::int64_t> draws;
    draws.reserve(n);
    for (int i = 0; i < n; ++i) draws.push_back(hdev::draw_lotkaian(rng, 2.0, cap));
    std::sort(draws.begin(), draws.end());
    ASSERT_GE(draws.front(), 1);
    ASSERT_LE(draws.back(), cap);
    double ks = 0.0;
    for (std::int64_t k = 1; k <= 2000; ++k) {
        const auto at_least = draws.end() - std::lower_bound(draws.begin(), draws.end(), k);
        const double emp = static_cast<double>(at_least) / n;
        ks = std::max(ks, std::abs(emp - 1.0 / static_cast<double>(k)));
    }
    EXPECT_LT(ks, 0.05);
    EXPECT_LT(ks, 0.01);
}

TEST(Lotkaian, CapIsRespected) {
    hdev::Xoshiro256 rng(1);
    for (int i = 0; i < 10000; ++i) ASSERT_LE(hdev::draw_lotkaian(rng, 1.1, 50), 50);
}

TEST(Generate, DeterministicPerSeed) {
    hdev::GeneratorConfig cfg;
    cfg.seed = 77;
    cfg.n_researchers = 40;
    const auto a = hdev::generate(cfg);
    const auto b = hdev::generate(cfg);
    EXPECT_EQ(a.profiles, b.profiles);
    EXPECT_EQ(a.provenance, "synthetic seed=77");
    cfg.seed = 78;
    EXPECT_NE(hdev::generate(cfg).profiles, a.profiles);
}

TEST(Generate, SubstreamsIndependentOfPopulationSize) {
    hdev::GeneratorConfig small, large;
    small.seed = large.seed = 5;
    small.n_researchers = 10;
    large.n_researchers = 50;
    const auto a = hdev::generate(small);
    const auto b = hdev::generate(large);
    for (std::size_t i = 0; i < a.profiles.size(); ++i) ASSERT_EQ(a.profiles[i], b.profiles[i]);
}

TEST(Generate, IdentifiersAndFields) {
    hdev::GeneratorConfig cfg;
    cfg.n_researchers = 12;
    cfg.model = hdev::Lotkaian{.papers_min = 3, .papers_max = 9, .authors_min = 1, .authors_max = 4};
    const auto corpus = hdev::generate(cfg);
    ASSERT_EQ(corpus.profiles.size(), 12u);
    EXPECT_EQ(corpus.profiles[0].researcher_id, "SYN-000001");
    EXPECT_EQ(corpus.profiles[11].researcher_id, "SYN-000012");
    EXPECT_EQ(corpus.profiles[0].papers[0].paper_id, "SYN-000001-P00001");
    std::set<std::string> ids;
    for (const auto& prof : corpus.profiles) {
        ASSERT_GE(prof.paper_count(), 3u);
        ASSERT_LE(prof.paper_count(), 9u);
        for (const auto& p : prof.papers) {
            ASSERT_TRUE(ids.insert(p.paper_id).second);
            ASSERT_FALSE(hdev::check_paper(p).has_value());
            ASSERT_GE(p.n_authors, 1);
            ASSERT_LE(p.n_authors, 4);
        }
    }
}

TEST(Generate, HirschConstantRateObeysSquareBound) {
    hdev::GeneratorConfig cfg;
    cfg.seed = 3;
    cfg.n_researchers = 200;
    cfg.model = hdev::HirschConstantRate{};
    const auto corpus = hdev::generate(cfg);
    for (const auto& prof : corpus.profiles) {
        const auto s = hdev::index_set(prof);
        ASSERT_LE(static_cast<double>(s.h) * s.h, static_cast<double>(s.C)) << prof.researcher_id;
        ASSERT_GE(s.P, 25u);
        ASSERT_LE(s.P, 200u);
    }
}

TEST(Generate, HirschConstantRateAnalytic) {
    // with n papers per year and c citations per paper-year, after t years
    // h is about c*t/(1 + c/n) and C about n*c*t^2/2
    hdev::GeneratorConfig cfg;
    cfg.n_researchers = 1;
    cfg.model = hdev::HirschConstantRate{.papers_per_year = 4, .citations_per_paper_year = 3,
                                         .career_min = 30, .career_max = 30};
    const auto s = hdev::index_set(hdev::generate(cfg).profiles[0]);
    EXPECT_EQ(s.P, 120u);
    EXPECT_NEAR(static_cast<double>(s.h), 3.0 * 30 / (1 + 3.0 / 4), 4.0);
    EXPECT_NEAR(static_cast<double>(s.C), 4.0 * 3 * 30 * 30 / 2, 4.0 * 3 * 30);
}

TEST(Generate, LotkaianExponentRecovered) {
    hdev::GeneratorConfig cfg;
    cfg.seed = 11;
    cfg.n_researchers = 300;
    const auto corpus = hdev::generate(cfg);
    std::vector<hdev::FitPoint> pts;
    for (const auto& prof : corpus.profiles) {
        const auto s = hdev::index_set(prof);
        pts.push_back({static_cast<double>(s.P), static_cast<double>(s.C), static_cast<double>(s.h)});
    }
    const auto fit = hdev::fit(pts, hdev::ModelFamily::EggheRousseau);
    EXPECT_NEAR(fit.exponent, 2.0, 0.15);
}

TEST(Generate, ValidationErrors) {
    auto bad = [](auto model) {
        hdev::GeneratorConfig cfg;
        cfg.model = model;
        return cfg;
    };
    EXPECT_THROW(hdev::generate(bad(hdev::Lotkaian{.theta = 1.0})), hdev::DomainError);
    EXPECT_THROW(hdev::generate(bad(hdev::Lotkaian{.papers_min = 10, .papers_max = 5})), hdev::DomainError);
    EXPECT_THROW(hdev::generate(bad(hdev::Lotkaian{.papers_min = 0})), hdev::DomainError);
    EXPECT_THROW(hdev::generate(bad(hdev::Lotkaian{.citation_cap = 0})), hdev::DomainError);
    EXPECT_THROW(hdev::generate(bad(hdev::Lotkaian{.authors_min = 0})), hdev::DomainError);
    EXPECT_THROW(hdev::generate(bad(hdev::Lotkaian{.first_year = 1700})), hdev::DomainError);
    EXPECT_THROW(hdev::generate(bad(hdev::HirschConstantRate{.papers_per_year = 0})), hdev::DomainError);
    EXPECT_THROW(hdev::generate(bad(hdev::HirschConstantRate{.career_min = 10, .career_max = 2})),
                 hdev::DomainError);
    EXPECT_NO_THROW(hdev::validate(hdev::GeneratorConfig{}));
}
