#include "abundancy/abundancy.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace abundancy;

namespace {

std::vector<std::uint64_t> values(const std::vector<SuperabundantRecord>& rs)
{
    std::vector<std::uint64_t> out;
    for (const auto& r : rs) out.push_back(to_u64(r.n));
    return out;
}

const std::vector<std::uint64_t> kToMillion{1,     2,      4,      6,      12,     24,     36,     48,     60,     120,    180,
                                            240,   360,    720,    840,    1260,   1680,   2520,   5040,   10080,  15120,  25200,
                                            27720, 55440,  110880, 166320, 277200, 332640, 554400, 665280, 720720};

std::filesystem::path temp_file(const std::string& name)
{
    auto p = std::filesystem::temp_directory_path() / ("abundancy_test_" + name);
    std::filesystem::remove(p);
    return p;
}

} // namespace

TEST(Superabundant, FirstFew)
{
    const std::vector<std::uint64_t> expect{1, 2, 4, 6, 12, 24, 36, 48, 60, 120, 180};
    EXPECT_EQ(values(superabundant_bruteforce(200)), expect);
    EXPECT_EQ(values(superabundant_structured(200)), expect);
    EXPECT_EQ(values(superabundant_bruteforce(1)), std::vector<std::uint64_t>{1});
    EXPECT_EQ(values(superabundant_structured(1)), std::vector<std::uint64_t>{1});
    EXPECT_EQ(values(superabundant_bruteforce(5)), (std::vector<std::uint64_t>{1, 2, 4}));
}

TEST(Superabundant, OracleEquivalence)
{
    for (std::uint64_t limit : {1000ULL, 10000ULL, 100000ULL, 1000000ULL}) {
        const auto brute = superabundant_bruteforce(limit);
        EXPECT_EQ(brute, superabundant_structured(to_mpz(limit))) << limit;
        if (limit == 1000000) {
            EXPECT_EQ(values(brute), kToMillion);
        }
    }
}

TEST(Superabundant, ListProperties)
{
    const auto rs = superabundant_structured(mpz_class("1000000000000000000000000"));
    ASSERT_GT(rs.size(), 100u);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        EXPECT_EQ(rs[i].index, abundancy_index(rs[i].factorization));
        EXPECT_EQ(rs[i].factorization.value(), rs[i].n);
        if (i + 1 < rs.size()) {
            EXPECT_LT(rs[i].n, rs[i + 1].n);
            EXPECT_LT(rs[i].index, rs[i + 1].index);
            EXPECT_LE(rs[i + 1].n, 2 * rs[i].n);
        }
    }
}

TEST(Superabundant, BruteForceShape)
{
    const auto primes = first_primes(20);
    for (const auto& r : superabundant_bruteforce(1000000)) {
        const auto& pairs = r.factorization.pairs();
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            EXPECT_EQ(pairs[i].prime, primes[i]) << r.n;
            if (i) {
                EXPECT_LE(pairs[i].exponent, pairs[i - 1].exponent) << r.n;
            }
        }
    }
}

TEST(Superabundant, Count)
{
    auto c = count_superabundant(180);
    EXPECT_EQ(c.count, 11u);
    EXPECT_TRUE(c.log_lower_bound_holds);
    c = count_superabundant(1);
    EXPECT_EQ(c.count, 1u);
    EXPECT_TRUE(c.log_lower_bound_holds);
    const std::pair<long, std::size_t> frozen[] = {{100, 9}, {1000, 15}, {10000, 19}, {100000, 24}, {1000000, 31}};
    for (auto [x, n] : frozen) {
        c = count_superabundant(x);
        EXPECT_EQ(c.count, n) << x;
        EXPECT_TRUE(c.log_lower_bound_holds) << x;
    }
    EXPECT_THROW(count_superabundant(0), std::invalid_argument);
}

TEST(Superabundant, ResumeMatchesFreshRun)
{
    const auto fresh = superabundant_structured(1000000);
    const std::vector<SuperabundantRecord> prefix(fresh.begin(), fresh.begin() + 12);
    SweepOptions opts;
    opts.resume_from = &prefix;
    std::vector<SuperabundantRecord> streamed;
    opts.on_record = [&](const SuperabundantRecord& r) { streamed.push_back(r); };
    EXPECT_EQ(superabundant_structured(1000000, opts), fresh);
    EXPECT_EQ(streamed, std::vector<SuperabundantRecord>(fresh.begin() + 12, fresh.end()));
    streamed.clear();
    EXPECT_EQ(superabundant_bruteforce(1000000, opts), fresh);
    EXPECT_EQ(streamed.size(), fresh.size() - 12);
}

TEST(Cache, LineRoundTrip)
{
    const auto r = make_record(factorize(5040));
    EXPECT_EQ(format_cache_line(r), "5040 2^4*3^2*5^1*7^1 403/105");
    EXPECT_EQ(parse_cache_line(format_cache_line(r)), r);
    EXPECT_THROW(parse_cache_line("5040 2^4*3^2*5^1*7^1 404/105"), ParseError);
    EXPECT_THROW(parse_cache_line("5041 2^4*3^2*5^1*7^1 403/105"), ParseError);
    EXPECT_THROW(parse_cache_line("5040"), ParseError);
}

TEST(Cache, WriteLoadResume)
{
    const auto path = temp_file("cache");
    EXPECT_TRUE(load_cache(path).empty());
    const auto fresh = superabundant_structured(100000);
    {
        CacheWriter w(path, false, 3);
        for (std::size_t i = 0; i < 10; ++i) w.write(fresh[i]);
    }
    auto loaded = load_cache(path);
    ASSERT_EQ(loaded.size(), 10u);
    {
        CacheWriter w(path, true);
        SweepOptions opts;
        opts.resume_from = &loaded;
        opts.on_record = [&](const SuperabundantRecord& r) { w.write(r); };
        EXPECT_EQ(superabundant_structured(100000, opts), fresh);
    }
    EXPECT_EQ(load_cache(path), fresh);
    std::filesystem::remove(path);
}

TEST(Cache, RejectsOutOfOrder)
{
    const auto path = temp_file("bad_cache");
    {
        std::ofstream out(path);
        out << format_cache_line(make_record(factorize(12))) << "\n" << format_cache_line(make_record(factorize(6))) << "\n";
    }
    EXPECT_THROW(load_cache(path), ParseError);
    std::filesystem::remove(path);
}
