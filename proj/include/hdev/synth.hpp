#pragma once

// Seeded synthetic researcher populations following the generative assumptions of
// the Hirsch and Egghe-Rousseau models.
//
// Random numbers come from xoshiro256** (Blackman & Vigna, 2018). Each researcher
// draws from its own stream, seeded by passing (seed, researcher index) through
// SplitMix64, so output does not depend on generation order.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hdev/error.hpp"
#include "hdev/records.hpp"

namespace hdev {

inline constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& s : s_) s = splitmix64(sm);
    }

    /// Independent stream for item `index` under a master seed.
    static Xoshiro256 substream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t sm = seed;
        const std::uint64_t a = splitmix64(sm);
        std::uint64_t mix = a ^ (index * 0xD1B54A32D192ED03ULL);
        return Xoshiro256(splitmix64(mix));
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_open_low() { return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53; }

    /// Uniform integer on [lo, hi] by rejection (no modulo bias).
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (hi < lo) throw DomainError("uniform_int: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>((*this)());
        const std::uint64_t limit = max() - max() % span;
        std::uint64_t r;
        do {
            r = (*this)();
        } while (r >= limit);
        return lo + static_cast<std::int64_t>(r % span);
    }

    /// Standard normal via Box-Muller (one deviate per call).
    double gaussian() {
        const double u1 = uniform_open_low();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> s_{};
};

/// Constant publication and citation rates over a career of uniform random length.
struct HirschConstantRate {
    double papers_per_year = 5.0;
    double citations_per_paper_year = 2.0;
    int career_min = 5;
    int career_max = 40;
    int final_year = 2018;
};

/// Per-paper citations i.i.d. with Pr(c >= k) = k^(1 - theta), capped.
struct Lotkaian {
    int papers_min = 20;
    int papers_max = 1000;
    double theta = 2.0;
    std::int64_t citation_cap = 100000;
    int authors_min = 1;
    int authors_max = 1;
    int first_year = 1990;
    int final_year = 2018;
};

struct GeneratorConfig {
    std::uint64_t seed = 1;
    std::size_t n_researchers = 300;
    std::variant<HirschConstantRate, Lotkaian> model = Lotkaian{};
};

inline void validate(const GeneratorConfig& cfg) {
    if (const auto* h = std::get_if<HirschConstantRate>(&cfg.model)) {
        if (!(h->papers_per_year > 0.0) || !(h->citations_per_paper_year > 0.0))
            throw DomainError("generator: rates must be positive");
        if (h->career_min < 1 || h->career_max < h->career_min)
            throw DomainError("generator: career length range is empty");
        if (h->final_year > kMaxYear || h->final_year - h->career_max + 1 < kMinYear)
            throw DomainError("generator: career years fall outside [1800, 2100]");
    } else {
        const auto& l = std::get<Lotkaian>(cfg.model);
        if (!(l.theta > 1.0)) throw DomainError("generator: theta must exceed 1");
        if (l.papers_min < 1 || l.papers_max < l.papers_min) throw DomainError("generator: paper range is empty");
        if (l.citation_cap < 1) throw DomainError("generator: citation cap must be positive");
        if (l.authors_min < 1 || l.authors_max < l.authors_min)
            throw DomainError("generator: author range is empty");
        if (l.first_year < kMinYear || l.final_year > kMaxYear || l.final_year < l.first_year)
            throw DomainError("generator: year range is empty or outside [1800, 2100]");
    }
}

/// Exact inverse-transform draw from Pr(c >= k) = k^(1 - theta), k >= 1, clipped at `cap`.
inline std::int64_t draw_lotkaian(Xoshiro256& rng, double theta, std::int64_t cap) {
    const double u = rng.uniform_open_low();
    // c >= k  <=>  u <= k^(1-theta)  <=>  k <= u^(-1/(theta-1))
    const double x = std::floor(std::pow(u, -1.0 / (theta - 1.0)));
    if (!(x < static_cast<double>(cap))) return cap;
    return static_cast<std::int64_t>(x);
}

namespace detail {

inline std::string researcher_label(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "SYN-%06zu", i + 1);
    return buf;
}

inline std::string paper_label(const std::string& rid, std::size_t j) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "-P%05zu", j + 1);
    return rid + buf;
}

inline ResearcherProfile generate_one(const HirschConstantRate& m, Xoshiro256& rng, std::string rid) {
    ResearcherProfile prof{std::move(rid), std::nullopt, {}};
    const int years = static_cast<int>(rng.uniform_int(m.career_min, m.career_max));
    const int start = m.final_year - years + 1;
    std::size_t j = 0;
    for (int t = 1; t <= years; ++t) {
        const auto before = std::llround(m.papers_per_year * (t - 1));
        const auto after = std::llround(m.papers_per_year * t);
        const auto cites = std::llround(m.citations_per_paper_year * (years - t));
        for (auto k = before; k < after; ++k, ++j)
            prof.papers.push_back({paper_label(prof.researcher_id, j), start + t - 1, cites, 1, std::nullopt});
    }
    return prof;
}

inline ResearcherProfile generate_one(const Lotkaian& m, Xoshiro256& rng, std::string rid) {
    ResearcherProfile prof{std::move(rid), std::nullopt, {}};
    const auto n = static_cast<std::size_t>(rng.uniform_int(m.papers_min, m.papers_max));
    prof.papers.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        PaperRecord p;
        p.paper_id = paper_label(prof.researcher_id, j);
        p.year = static_cast<int>(rng.uniform_int(m.first_year, m.final_year));
        p.citations = draw_lotkaian(rng, m.theta, m.citation_cap);
        p.n_authors = static_cast<int>(rng.uniform_int(m.authors_min, m.authors_max));
        prof.papers.push_back(std::move(p));
    }
    return prof;
}

}  // namespace detail

inline Corpus generate(const GeneratorConfig& cfg) {
    validate(cfg);
    Corpus corpus;
    corpus.provenance = "synthetic seed=" + std::to_string(cfg.seed);
    corpus.profiles.reserve(cfg.n_researchers);
    for (std::size_t i = 0; i < cfg.n_researchers; ++i) {
        auto rng = Xoshiro256::substream(cfg.seed, i);
        corpus.profiles.push_back(
            std::visit([&](const auto& m) { return detail::generate_one(m, rng, detail::researcher_label(i)); },
                       cfg.model));
    }
    return corpus;
}

}  // namespace hdev
