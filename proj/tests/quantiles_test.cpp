#include <cmath>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <gtest/gtest.h>

#include "hdev/quantiles.hpp"

// Boost serves as an independent reference implementation.

TEST(NormalQuantile, MatchesReference) {
    boost::math::normal_distribution<> nd;
    for (double p : {1e-10, 1e-6, 0.001, 0.02, 0.025, 0.1, 0.3, 0.5, 0.7, 0.9, 0.975, 0.98, 0.999, 1 - 1e-9}) {
        EXPECT_NEAR(hdev::normal_quantile(p), boost::math::quantile(nd, p), 1e-9) << "p=" << p;
    }
    EXPECT_NEAR(hdev::normal_quantile(0.975), 1.959963984540054, 1e-12);
}

TEST(NormalQuantile, RejectsOutOfRange) {
    EXPECT_THROW(hdev::normal_quantile(0.0), hdev::DomainError);
    EXPECT_THROW(hdev::normal_quantile(1.0), hdev::DomainError);
}

TEST(TQuantile, MatchesReferenceWithin1e4) {
    double worst = 0.0;
    for (double df : {1.0, 2.0, 3.0, 4.0, 5.0, 7.0, 10.0, 15.0, 28.0, 30.0, 60.0, 120.0, 298.0, 1000.0, 1e5}) {
        boost::math::students_t_distribution<> td(df);
        for (double p : {0.0005, 0.005, 0.025, 0.05, 0.1, 0.25, 0.4, 0.6, 0.75, 0.9, 0.95, 0.975, 0.995, 0.9995}) {
            const double err = std::abs(hdev::t_quantile(p, df) - boost::math::quantile(td, p));
            worst = std::max(worst, err);
            EXPECT_LT(err, 1e-4) << "df=" << df << " p=" << p;
        }
    }
    RecordProperty("worst_abs_error", std::to_string(worst));
}

TEST(TQuantile, KnownValues) {
    EXPECT_DOUBLE_EQ(hdev::t_quantile(0.5, 10.0), 0.0);
    EXPECT_NEAR(hdev::t_quantile(0.975, 1.0), 12.706204736174698, 1e-9);
    EXPECT_NEAR(hdev::t_quantile(0.975, 2.0), 4.302652729749464, 1e-9);
    EXPECT_NEAR(hdev::t_quantile(0.025, 10.0), -hdev::t_quantile(0.975, 10.0), 1e-12);
}

TEST(TQuantile, RejectsBadArguments) {
    EXPECT_THROW(hdev::t_quantile(0.975, 0.5), hdev::DomainError);
    EXPECT_THROW(hdev::t_quantile(1.5, 10.0), hdev::DomainError);
}
