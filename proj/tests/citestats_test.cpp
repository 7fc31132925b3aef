#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "hdev/citestats.hpp"
#include "hdev/synth.hpp"

namespace {

hdev::CitationCorpus corpus_of(const std::vector<std::int64_t>& counts, int year = 1990) {
    std::vector<hdev::PaperRecord> items;
    for (std::size_t i = 0; i < counts.size(); ++i)
        items.push_back({"p" + std::to_string(i), year, counts[i], 1, std::nullopt});
    return hdev::make_citation_corpus(std::move(items));
}

hdev::CitationCorpus random_corpus(std::uint64_t seed) {
    hdev::Xoshiro256 rng(seed);
    const auto n = rng.uniform_int(1, 500);
    std::vector<std::int64_t> counts;
    for (std::int64_t i = 0; i < n; ++i) counts.push_back(hdev::draw_lotkaian(rng, 1.5 + rng.uniform(), 5000) - 1);
    counts[0] += 1;  // at least one citation overall
    return corpus_of(counts);
}

// Direct count of items with at least c citations.
double brute_p(const std::vector<std::int64_t>& counts, std::int64_t c) {
    return static_cast<double>(std::count_if(counts.begin(), counts.end(), [c](auto v) { return v >= c; })) /
           static_cast<double>(counts.size());
}

}  // namespace

TEST(Ccdf, SmallExample) {
    const auto d = hdev::ccdf(corpus_of({0, 0, 5}));
    EXPECT_DOUBLE_EQ(d.p(0), 1.0);
    EXPECT_DOUBLE_EQ(d.p(1), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(d.p(5), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(d.p(6), 0.0);
    EXPECT_EQ(d.n_items(), 3);
    EXPECT_EQ(d.max_citations(), 5);
    const auto cp = d.change_points();
    ASSERT_EQ(cp.size(), 3u);
    EXPECT_EQ(cp[1], (std::pair<std::int64_t, double>{1, 1.0 / 3.0}));
    EXPECT_EQ(cp[2], (std::pair<std::int64_t, double>{6, 0.0}));
}

TEST(Ccdf, AllCited) {
    const auto d = hdev::ccdf(corpus_of({1, 3, 9}));
    EXPECT_DOUBLE_EQ(d.p(1), 1.0);
}

TEST(Ccdf, EmptyCorpusThrows) { EXPECT_THROW(hdev::ccdf(hdev::CitationCorpus{}), hdev::DomainError); }

TEST(Ccdf, PropertiesAgainstDirectCounting) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto corpus = random_corpus(seed);
        std::vector<std::int64_t> counts;
        for (const auto& p : corpus.items) counts.push_back(p.citations);
        const auto d = hdev::ccdf(corpus);
        const auto dense = d.dense();
        ASSERT_EQ(dense.size(), static_cast<std::size_t>(d.max_citations() + 2));
        ASSERT_DOUBLE_EQ(dense.front(), 1.0);
        ASSERT_DOUBLE_EQ(dense.back(), 0.0);
        double mass = 0.0;
        for (std::size_t c = 0; c + 1 < dense.size(); ++c) {
            ASSERT_GE(dense[c] - dense[c + 1], 0.0);
            mass += (dense[c] - dense[c + 1]) * static_cast<double>(d.n_items());
        }
        ASSERT_NEAR(mass, static_cast<double>(d.n_items()), 1e-6);
        for (std::int64_t c : {0L, 1L, 2L, 7L, 50L, d.max_citations(), d.max_citations() + 1})
            ASSERT_DOUBLE_EQ(d.p(c), brute_p(counts, c));
    }
}

TEST(Lorenz, SmallExample) {
    const auto curve = hdev::lorenz(corpus_of({4, 1, 2, 1}));
    ASSERT_EQ(curve.size(), 5u);
    EXPECT_DOUBLE_EQ(curve[0].paper_share, 0.0);
    EXPECT_DOUBLE_EQ(curve[0].citation_share, 0.0);
    const double xs[] = {0.25, 0.5, 0.75, 1.0}, ys[] = {0.125, 0.25, 0.5, 1.0};
    for (int i = 0; i < 4; ++i) {
        EXPECT_DOUBLE_EQ(curve[i + 1].paper_share, xs[i]);
        EXPECT_DOUBLE_EQ(curve[i + 1].citation_share, ys[i]);
    }
    EXPECT_DOUBLE_EQ(hdev::lorenz_at(curve, 0.625), 0.375);
}

TEST(Lorenz, EqualCitationsGiveDiagonal) {
    const auto curve = hdev::lorenz(corpus_of({3, 3, 3, 3, 3}));
    for (const auto& p : curve) EXPECT_NEAR(p.paper_share, p.citation_share, 1e-15);
    EXPECT_NEAR(hdev::gini(curve), 0.0, 1e-15);
}

TEST(Lorenz, Errors) {
    EXPECT_THROW(hdev::lorenz(corpus_of({0, 0})), hdev::DomainError);
    EXPECT_THROW(hdev::lorenz(hdev::CitationCorpus{}), hdev::DomainError);
}

TEST(Lorenz, ShapeProperties) {
    for (std::uint64_t seed = 100; seed < 150; ++seed) {
        const auto curve = hdev::lorenz(random_corpus(seed));
        ASSERT_DOUBLE_EQ(curve.front().paper_share, 0.0);
        ASSERT_DOUBLE_EQ(curve.back().paper_share, 1.0);
        ASSERT_DOUBLE_EQ(curve.back().citation_share, 1.0);
        for (std::size_t i = 1; i < curve.size(); ++i) {
            ASSERT_GE(curve[i].paper_share, curve[i - 1].paper_share);
            ASSERT_GE(curve[i].citation_share, curve[i - 1].citation_share);
            ASSERT_LE(curve[i].citation_share, curve[i].paper_share + 1e-12);
        }
        ASSERT_GE(hdev::gini(curve), -1e-12);
    }
}

TEST(AgeProfile, Buckets) {
    std::vector<hdev::PaperRecord> items{
        {"a", 1990, 3, 1, std::vector<hdev::YearCount>{{1991, 2}, {1993, 1}}},
    };
    const auto prof = hdev::age_profile(hdev::make_citation_corpus(items));
    ASSERT_EQ(prof.size(), 2u);
    EXPECT_EQ(prof[0].age, 1);
    EXPECT_EQ(prof[0].citations, 2);
    EXPECT_EQ(prof[1].age, 3);
    EXPECT_EQ(prof[1].citations, 1);

    items.push_back({"b", 1990, 4, 1, std::vector<hdev::YearCount>{{1990, 1}, {1991, 3}}});
    const auto both = hdev::age_profile(hdev::make_citation_corpus(items));
    ASSERT_EQ(both.size(), 3u);
    EXPECT_EQ(both[0].age, 0);
    EXPECT_EQ(both[0].citations, 1);
    EXPECT_EQ(both[1].citations, 5);

    const auto dropped = hdev::age_profile(hdev::make_citation_corpus(items), true);
    ASSERT_EQ(dropped.size(), 2u);
    EXPECT_EQ(dropped.back().age, 1);
}

TEST(AgeProfile, NoCitationsIsEmpty) {
    std::vector<hdev::PaperRecord> items{{"a", 1990, 0, 1, std::vector<hdev::YearCount>{}}};
    EXPECT_TRUE(hdev::age_profile(hdev::make_citation_corpus(items)).empty());
}

TEST(AgeProfile, Errors) {
    EXPECT_THROW(hdev::age_profile(corpus_of({1, 2})), hdev::DomainError);  // no yearly data
    std::vector<hdev::PaperRecord> mixed{{"a", 1990, 0, 1, std::vector<hdev::YearCount>{}},
                                         {"b", 1991, 0, 1, std::vector<hdev::YearCount>{}}};
    EXPECT_THROW(hdev::age_profile(hdev::make_citation_corpus(mixed)), hdev::DomainError);
}

TEST(AgeProfile, TotalsMatchCitations) {
    hdev::Xoshiro256 rng(8);
    std::vector<hdev::PaperRecord> items;
    std::int64_t total = 0;
    for (int i = 0; i < 200; ++i) {
        hdev::PaperRecord p{"p" + std::to_string(i), 2000, 0, 1, std::vector<hdev::YearCount>{}};
        for (int y = 2000; y <= 2018; ++y) {
            const auto c = rng.uniform_int(0, 4);
            if (c == 0) continue;
            p.yearly_citations->push_back({y, c});
            p.citations += c;
        }
        total += p.citations;
        items.push_back(std::move(p));
    }
    std::int64_t sum = 0;
    for (const auto& a : hdev::age_profile(hdev::make_citation_corpus(items))) sum += a.citations;
    EXPECT_EQ(sum, total);
}

TEST(RequiredPapers, Examples) {
    // 10 items: 4 reach 10 citations, so p(10) = 0.4
    const auto d = hdev::ccdf(corpus_of({0, 1, 2, 3, 5, 8, 10, 12, 20, 40}));
    ASSERT_DOUBLE_EQ(d.p(10), 0.4);
    EXPECT_DOUBLE_EQ(hdev::required_papers(10, d), 25.0);
    const auto all = hdev::ccdf(corpus_of({7, 7, 9}));
    EXPECT_DOUBLE_EQ(hdev::required_papers(7, all), 7.0);
    EXPECT_THROW(hdev::required_papers(41, d), hdev::UnreachableH);
    EXPECT_THROW(hdev::required_papers(0, d), hdev::DomainError);
}

TEST(RequiredPapers, NeverBelowH) {
    const auto d = hdev::ccdf(random_corpus(3));
    for (std::int64_t h = 1; h <= d.max_citations(); ++h) ASSERT_GE(hdev::required_papers(h, d), h);
}

TEST(ExpectedHCurve, ExactInversion) {
    // every item has exactly 5 citations: p(c) = 1 for c <= 5
    const auto d = hdev::ccdf(corpus_of({5, 5, 5, 5}));
    const auto curve = hdev::expected_h_curve(d, 12);
    ASSERT_EQ(curve.size(), 12u);
    for (const auto& pt : curve) EXPECT_EQ(pt.h, std::min<std::int64_t>(pt.P, 5));
    const auto single = hdev::expected_h_curve(d, 1);
    ASSERT_EQ(single.size(), 1u);
    EXPECT_EQ(single[0].P, 1);
    EXPECT_EQ(single[0].h, 1);
    EXPECT_THROW(hdev::expected_h_curve(d, 0), hdev::DomainError);
}

TEST(ExpectedHCurve, AgreesWithRequiredPapers) {
    for (std::uint64_t seed = 200; seed < 230; ++seed) {
        const auto d = hdev::ccdf(random_corpus(seed));
        const auto curve = hdev::expected_h_curve(d, 800);
        std::int64_t prev = 0;
        for (const auto& pt : curve) {
            ASSERT_GE(pt.h, prev);
            ASSERT_LE(pt.h, pt.P);
            // pt.h is reachable with P papers and pt.h + 1 is not
            if (pt.h > 0) {
                ASSERT_LE(hdev::required_papers(pt.h, d), static_cast<double>(pt.P) * (1 + 1e-12));
            }
            if (pt.h < d.max_citations()) {
                ASSERT_GT(hdev::required_papers(pt.h + 1, d), static_cast<double>(pt.P) * (1 - 1e-12));
            }
            prev = pt.h;
        }
    }
}
