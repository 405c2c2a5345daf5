#include "abundancy/abundancy.hpp"

#include <gtest/gtest.h>

using namespace abundancy;

namespace {

// Oracle values: 60+ digits from an independent arbitrary-precision evaluation.
const char* const kGamma = "0.5772156649015328606065120900824024310421593359399235988057672348848677";
const char* const kExpGamma = "1.78107241799019798523650410310717954916964521430343020535767";

mpq_class decimal(const std::string& s)
{
    const auto dot = s.find('.');
    const std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpq_class q(mpz_class(s.substr(0, dot) + frac, 10), scale);
    q.canonicalize();
    return q;
}

// Checks the enclosure against an oracle decimal accurate to `oracle_digits` places.
::testing::AssertionResult near(const BoundInterval& b, const std::string& oracle, int oracle_digits = 55)
{
    mpq_class eps(1, 1);
    for (int i = 0; i < oracle_digits; ++i) eps /= 10;
    const mpq_class v = decimal(oracle);
    const mpq_class lo = v - eps, hi = v + eps;
    if (mpfr_cmp_q(b.lo().get(), hi.get_mpq_t()) > 0 || mpfr_cmp_q(b.hi().get(), lo.get_mpq_t()) < 0) {
        return ::testing::AssertionFailure() << "[" << b.lo_decimal() << ", " << b.hi_decimal() << "] misses " << oracle;
    }
    if (!b.width_within_tolerance()) return ::testing::AssertionFailure() << "too wide";
    return ::testing::AssertionSuccess();
}

BigFloat mpfr_gamma(mpfr_prec_t bits, mpfr_rnd_t rnd)
{
    BigFloat g(bits);
    mpfr_const_euler(g.get(), rnd);
    return g;
}

} // namespace

TEST(Gamma, MatchesOracle)
{
    EXPECT_TRUE(near(euler_gamma(10), kGamma));
    EXPECT_TRUE(near(euler_gamma(50), kGamma));
    EXPECT_TRUE(near(euler_gamma(60), kGamma, 65));
    EXPECT_EQ(euler_gamma(10).midpoint_decimal(10).substr(0, 7), "0.57721");
    EXPECT_THROW(euler_gamma(9), std::invalid_argument);
    EXPECT_THROW(euler_gamma(1001), std::invalid_argument);
}

TEST(Gamma, AgainstMpfrConstEuler)
{
    for (int d : {10, 20, 50, 100, 300, 1000}) {
        const auto g = euler_gamma(d);
        const mpfr_prec_t bits = grid_bits(d) + 80;
        EXPECT_LE(mpfr_cmp(g.lo().get(), mpfr_gamma(bits, MPFR_RNDD).get()), 0) << d;
        EXPECT_GE(mpfr_cmp(g.hi().get(), mpfr_gamma(bits, MPFR_RNDU).get()), 0) << d;
        EXPECT_TRUE(g.width_within_tolerance()) << d;
    }
}

TEST(Enclosure, Nesting)
{
    const int ps[] = {20, 40, 80};
    for (std::uint64_t n : {3ULL, 16ULL, 5040ULL, 5041ULL, 123456789ULL}) {
        for (int i = 0; i < 2; ++i) {
            EXPECT_TRUE(robin_bound(to_mpz(n), ps[i]).contains(robin_bound(to_mpz(n), ps[i + 1]))) << n;
            EXPECT_TRUE(gronwall_ratio(n, ps[i]).contains(gronwall_ratio(n, ps[i + 1]))) << n;
            EXPECT_TRUE(harmonic(n % 100000, ps[i]).enclosure.contains(harmonic(n % 100000, ps[i + 1]).enclosure)) << n;
        }
    }
    for (int i = 0; i < 2; ++i) {
        EXPECT_TRUE(euler_gamma(ps[i]).contains(euler_gamma(ps[i + 1])));
        EXPECT_TRUE(lagarias_check(6, ps[i]).bound.contains(lagarias_check(6, ps[i + 1]).bound));
    }
    EXPECT_TRUE(euler_gamma(10).intersects(euler_gamma(1000)));
}

TEST(RobinBound, Oracle)
{
    EXPECT_TRUE(near(robin_bound(5040, 50), "3.81687728802851148187310628315079939734770873645411834398925"));
    EXPECT_TRUE(near(robin_bound(3, 50), "0.167505991739999435721069157498784660704185110100003655917278"));
    EXPECT_TRUE(near(robin_bound(16, 50), "1.81630459612094601027093303600823012758706011526103190890093"));
    EXPECT_TRUE(near(robin_bound(16, 20), "1.81630459612094601027093303600823012758706011526103190890093"));
    EXPECT_TRUE(near(robin_bound(5041, 50), "3.81691873571547845193897281539203375506230559966662031342587"));
    EXPECT_THROW(robin_bound(2, 50), std::invalid_argument);
    EXPECT_THROW(robin_bound(5040, 5), std::invalid_argument);
    EXPECT_TRUE(near(certify(50, [](mpfr_prec_t bits) { return exp_gamma_raw(bits); }), kExpGamma));
}

TEST(Robin, Examples)
{
    auto r = robin_check(5040);
    EXPECT_EQ(r.verdict, Verdict::Violates);
    EXPECT_EQ(r.sigma, 19344);
    EXPECT_EQ(r.index, ExactRatio(mpz_class(19344), mpz_class(5040)));
    r = robin_check(5041);
    EXPECT_EQ(r.verdict, Verdict::Holds);
    EXPECT_EQ(r.sigma, 1 + 71 + 5041);
    EXPECT_EQ(robin_check(10080).verdict, Verdict::Holds);
    EXPECT_TRUE(near(robin_check(10080).bound, "3.95610303217674423115614285815238607923784210639751504968314"));
    EXPECT_THROW(robin_check(2), std::invalid_argument);
    EXPECT_THROW(robin_check(1), std::invalid_argument);
}

TEST(Robin, Unconditional)
{
    auto r = robin_unconditional_check(3);
    EXPECT_EQ(r.verdict, Verdict::Holds);
    EXPECT_TRUE(near(r.bound, "7.06080716018600671269896262973", 28));
    r = robin_unconditional_check(5040);
    EXPECT_EQ(r.verdict, Verdict::Holds);
    EXPECT_TRUE(near(r.bound, "4.11939402132895605028413523548", 28));
    EXPECT_EQ(robin_unconditional_check(4).verdict, Verdict::Holds);
    EXPECT_TRUE(near(robin_unconditional_check(16).bound, "2.4520290506254684540520742125", 27));
    EXPECT_TRUE(near(robin_unconditional_check(5041).bound, "4.11943218400522924228577180512", 28));
}

TEST(Robin, UnconditionalScanToTenThousand)
{
    const auto s = robin_unconditional_scan(3, 10000);
    EXPECT_EQ(s.checked, 9998u);
    EXPECT_TRUE(s.violations.empty());
    EXPECT_TRUE(s.undecided.empty());
}

TEST(Robin, ExceptionsBelowThreshold)
{
    const std::vector<std::uint64_t> expect{3,  4,  5,  6,  8,   9,   10,  12,  16,  18,  20,  24,   30,
                                            36, 48, 60, 72, 84, 120, 180, 240, 360, 720, 840, 2520, 5040};
    EXPECT_EQ(exceptions_below(5041), expect);
    EXPECT_TRUE(exceptions_below(3).empty());
    EXPECT_EQ(exceptions_below(10), (std::vector<std::uint64_t>{3, 4, 5, 6, 8, 9}));
    EXPECT_EQ(exceptions_below(5041, 50, {4}), expect);
    EXPECT_THROW(exceptions_below(1000001), std::invalid_argument);
}

TEST(Robin, VerdictStability)
{
    for (std::uint64_t n = 3; n <= 3000; n += 7) {
        const auto v10 = robin_check(n, 10).verdict;
        for (int d : {20, 40, 80}) {
            const auto v = robin_check(n, d).verdict;
            if (v10 != Verdict::Undecided) {
                EXPECT_EQ(v, v10) << n << " at " << d;
            }
        }
    }
}

TEST(Robin, ScanMatchesPointChecks)
{
    const auto s = robin_scan(3, 3000);
    std::vector<std::uint64_t> point;
    for (std::uint64_t n = 3; n <= 3000; ++n) {
        if (robin_check(n).verdict == Verdict::Violates) point.push_back(n);
    }
    EXPECT_EQ(s.violations, point);
}

TEST(Gronwall, Oracle)
{
    EXPECT_TRUE(near(gronwall_ratio(5040), "1.00555898145672010364247076778", 28));
    EXPECT_TRUE(near(gronwall_ratio(5041), "0.265733422849713951834438815545", 29));
    EXPECT_THROW(gronwall_ratio(2), std::invalid_argument);
}

TEST(Akbary, Examples)
{
    const auto to_million = akbary_scan(1000000);
    ASSERT_FALSE(to_million.empty());
    EXPECT_EQ(to_million.front().report.n, 10080);
    for (const auto& e : to_million) {
        EXPECT_EQ(e.report.verdict, Verdict::Holds);
        EXPECT_FALSE(e.rh_counterexample_candidate);
    }
    EXPECT_EQ(to_million.size(), 12u);
    EXPECT_TRUE(akbary_scan(5041).empty());
    EXPECT_THROW(akbary_scan(5040), std::invalid_argument);
}

TEST(Akbary, FullScanAgrees)
{
    const auto full = robin_scan(5041, 100000);
    EXPECT_TRUE(full.violations.empty());
    EXPECT_TRUE(full.undecided.empty());
    for (const auto& e : akbary_scan(100000)) EXPECT_EQ(e.report.verdict, Verdict::Holds);
}

TEST(Harmonic, Values)
{
    auto h = harmonic(1, 50);
    ASSERT_TRUE(h.exact);
    EXPECT_EQ(*h.exact, ExactRatio(1));
    EXPECT_TRUE(h.enclosure.contains(ExactRatio(1)));
    h = harmonic(6, 50);
    EXPECT_EQ(*h.exact, ExactRatio(mpz_class(49), mpz_class(20)));
    EXPECT_TRUE(h.enclosure.contains(*h.exact));
    h = harmonic(10, 50);
    EXPECT_EQ(*h.exact, ExactRatio(mpz_class(7381), mpz_class(2520)));
    EXPECT_TRUE(harmonic(10000, 50).exact);
    EXPECT_FALSE(harmonic(10001, 50).exact);
}

TEST(Harmonic, AsymptoticMatchesExact)
{
    for (std::uint64_t n : {10001ULL, 12345ULL, 20000ULL}) {
        for (int d : {20, 50, 200}) {
            const RawEnclosure em = detail::harmonic_euler_maclaurin(n, grid_bits(d) + 64);
            const ExactRatio exact = harmonic_number(n);
            EXPECT_LE(mpfr_cmp_q(em.lo.get(), exact.mpq().get_mpq_t()), 0) << n;
            EXPECT_GE(mpfr_cmp_q(em.hi.get(), exact.mpq().get_mpq_t()), 0) << n;
        }
    }
    EXPECT_TRUE(harmonic(1000000000ULL, 30).enclosure.width_within_tolerance());
}

TEST(Lagarias, Examples)
{
    const auto one = lagarias_check(1);
    EXPECT_EQ(one.verdict, Verdict::Holds);
    EXPECT_EQ(mpfr_cmp_ui(one.bound.lo().get(), 1), 0);
    EXPECT_EQ(mpfr_cmp_ui(one.bound.hi().get(), 1), 0);
    auto r = lagarias_check(6);
    EXPECT_EQ(r.verdict, Verdict::Holds);
    EXPECT_TRUE(near(r.bound, "12.83417871950625604538338176336151966876", 38));
    EXPECT_TRUE(near(lagarias_check(10).bound, "23.03386680698735390690351044743826670979", 38));
    r = lagarias_check(5040);
    EXPECT_EQ(r.verdict, Verdict::Holds);
    EXPECT_TRUE(near(r.bound, "19836.31873108944797731162531990490078987", 35));
    EXPECT_THROW(lagarias_check(0), std::invalid_argument);
}

TEST(Lagarias, ScanMatchesPointChecks)
{
    const auto s = lagarias_scan(1, 20000);
    EXPECT_EQ(s.checked, 20000u);
    EXPECT_TRUE(s.violations.empty());
    EXPECT_TRUE(s.undecided.empty());
    for (std::uint64_t n = 1; n <= 2000; n += 37) EXPECT_EQ(lagarias_check(n).verdict, Verdict::Holds);
}

TEST(Scan, DeterministicAcrossThreadCounts)
{
    const auto a = robin_scan(3, 50000, 30, {1});
    const auto b = robin_scan(3, 50000, 30, {3});
    EXPECT_EQ(a.violations, b.violations);
    EXPECT_EQ(a.undecided, b.undecided);
}
