#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "weakgibbs/thermo.hpp"

using namespace weakgibbs;

namespace {

const LanguageTable& table() {
    static LanguageTable t = LanguageTable::build(64, 24);
    return t;
}

}  // namespace

TEST_CASE("completed point letter layout") {
    CompletedPoint o = CompletedPoint::all_beta();
    CHECK(o.letter_at(-1000) == Letter::Beta);
    CHECK(o.letter_at(1000) == Letter::Beta);

    CompletedPoint z = CompletedPoint::word_with_marker(Word::from_string("ab"));
    CHECK(z.letter_at(0) == Letter::Alpha);
    CHECK(z.letter_at(1) == Letter::Beta);
    CHECK(z.letter_at(2) == Letter::Alpha);   // gap before the marker
    CHECK(z.letter_at(3) == Letter::Beta);    // marker beta at len+1
    CHECK(z.letter_at(4) == Letter::Alpha);
    CHECK(z.letter_at(-5) == Letter::Alpha);
    CHECK(z.letter_at(100) == Letter::Alpha);

    CompletedPoint w = CompletedPoint::from_window(
        {Letter::Beta, Letter::Alpha, Letter::Beta}, -1);
    CHECK(w.letter_at(-1) == Letter::Beta);
    CHECK(w.letter_at(0) == Letter::Alpha);
    CHECK_THROWS_AS(w.letter_at(2), std::out_of_range);
}

TEST_CASE("psi at the fixed point is exactly the beta weight") {
    RealInterval p = psi_at(CompletedPoint::all_beta(), 0, table());
    CHECK(p.lo == -2.0);
    CHECK(p.hi == -2.0);
}

TEST_CASE("psi brackets on marker completions") {
    CompletedPoint z = CompletedPoint::word_with_marker(Word::all_beta(5));
    // deep in the alpha sea: psi0 = 0 and the cusp term is mildly negative
    RealInterval far = psi_at(z, 100, table());
    CHECK(far.hi <= 1e-300);
    CHECK(far.lo >= -12.0 / std::sqrt(1.0) - 1e-9);
    // at the marker beta the window is pinned off the subshift: radius small
    RealInterval marker = psi_at(z, 6, table());
    CHECK(marker.hi <= -2.0);
    CHECK(marker.lo >= -2.0 - 12.0 - 1e-9);
    // psi stays nonpositive up to outward rounding slack
    for (long pos = -10; pos <= 20; ++pos) {
        RealInterval p = psi_at(z, pos, table());
        CHECK(p.hi <= 1e-300);
        CHECK(p.lo >= -15.0);
    }
}

TEST_CASE("birkhoff sums add per-site enclosures") {
    Word w = Word::from_string("bbbbb");
    RealInterval sum = birkhoff_psi(w, table());
    RealInterval manual = RealInterval::point(0.0);
    CompletedPoint z = CompletedPoint::word_with_marker(w);
    for (int i = 0; i < w.len; ++i) manual += psi_at(z, i, table());
    CHECK(sum.lo == doctest::Approx(manual.lo).epsilon(1e-12));
    CHECK(sum.hi == doctest::Approx(manual.hi).epsilon(1e-12));
    CHECK(sum.hi <= -2.0 * w.len);  // each beta site contributes at most -2
}

TEST_CASE("partition sum Q_1 matches a hand computation") {
    RealInterval q1 = partition_sum_Qn(1, table());
    RealInterval manual = RealInterval::point(0.0);
    for (std::uint64_t bits : {0ull, 1ull}) {
        Word w(1, bits);
        manual += outward_exp(birkhoff_psi(w, table()));
    }
    CHECK(q1.lo <= manual.hi);
    CHECK(q1.hi >= manual.lo);
}

TEST_CASE("partition sum global bounds") {
    for (int n = 1; n <= 10; ++n) {
        RealInterval q = partition_sum_Qn(n, table());
        CHECK(q.lo > 0.0);
        CHECK(q.hi <= std::ldexp(1.0, n));  // psi <= 0 termwise
        // psi >= -(2 + 12) per site gives a crude floor
        CHECK(q.hi >= 0.9 * std::ldexp(1.0, n) * std::exp(-14.0 * n));
    }
    CHECK_THROWS_AS(partition_sum_Qn(17, table()), range_exceeded);
}

TEST_CASE("composition sum with unit segments") {
    // l = n forces n segments of length one, so Q_n^n = A(1)^n with
    // A(1) = e^{-12} + e^{-14}
    double a1 = std::exp(-12.0) + std::exp(-14.0);
    for (int n = 1; n <= 6; ++n) {
        RealInterval q = partition_sum_Qnl(n, n, table());
        double expect = std::pow(a1, n);
        CHECK(q.lo <= expect * (1 + 1e-9));
        CHECK(q.hi >= expect * (1 - 1e-9));
    }
    CHECK_THROWS_AS(partition_sum_Qnl(5, 6, table()), range_exceeded);
}

TEST_CASE("pressure equals minus two times the beta-cylinder mass") {
    DyadicInterval p = pressure_dyadic(40);
    DyadicInterval nuA = nu_A_series(40);
    CHECK(p.lo == nuA.hi * Dyadic(-2));
    CHECK(p.hi == nuA.lo * Dyadic(-2));
    CHECK(Dyadic::scaled(-12, -5) <= p.lo);
    CHECK(p.hi <= Dyadic::scaled(-10, -5));
    RealInterval pr = pressure(40);
    // numerically just under -6/32 = -0.375
    CHECK(pr.lo >= -0.37500001);
    CHECK(pr.hi <= -0.37499);
}

TEST_CASE("gibbs ratio at the fixed point") {
    GibbsReport g = gibbs_ratio_at_o(5);
    CHECK(g.converged);
    CHECK(g.satisfied);
    CHECK(g.mu_lo_exceeds_pow2);
    CHECK(g.ratio.lo > g.threshold.hi);
    double e2_5 = std::pow(std::exp(1.0) / 2.0, 5);
    CHECK(g.threshold.lo <= e2_5);
    CHECK(g.threshold.hi >= e2_5);
    CHECK(g.mu.lo > Dyadic::pow2(-5));
    CHECK(g.mu.hi <= Dyadic::scaled(6, -5));  // [beta^5] is contained in [beta]

    // an inflated threshold forces the comparison to fail
    GibbsReport forced = gibbs_ratio_at_o(5, 40, 1e9);
    CHECK(!forced.satisfied);
    CHECK_THROWS_AS(gibbs_ratio_at_o(4), std::invalid_argument);
}

TEST_CASE("very weak scan rows are deterministic and well formed") {
    std::vector<int> ns{8, 16};
    auto rows1 = very_weak_scan(3, ns, 2024);
    auto rows2 = very_weak_scan(3, ns, 2024);
    REQUIRE(rows1.size() == 6);
    REQUIRE(rows2.size() == 6);
    for (std::size_t i = 0; i < rows1.size(); ++i) {
        CHECK(rows1[i].sample == rows2[i].sample);
        CHECK(rows1[i].n == rows2[i].n);
        CHECK(rows1[i].log_ratio_over_n_mid == rows2[i].log_ratio_over_n_mid);
        if (!rows1[i].discarded) {
            CHECK(rows1[i].beta_count >= 0);
            CHECK(rows1[i].beta_count <= rows1[i].n);
            if (rows1[i].converged) {
                CHECK(rows1[i].log_ratio_over_n_lo <= rows1[i].log_ratio_over_n_hi);
                CHECK(rows1[i].log_ratio_over_n_mid <= rows1[i].log_ratio_over_n_hi);
            }
        }
    }
    CHECK_THROWS_AS(very_weak_scan(0, ns, 1), std::invalid_argument);
    CHECK_THROWS_AS(very_weak_scan(1, {}, 1), std::invalid_argument);
}

TEST_CASE("orbit structure invariants") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        OrbitReport rep = orbit_structure(sample_point(seed), 5);
        if (!rep.normalized) continue;
        REQUIRE(rep.n_p.size() == rep.s_p.size());
        CHECK(rep.n_p.front() == 0);
        for (std::size_t i = 0; i + 1 < rep.n_p.size(); ++i) {
            // each block spans 2^{s_p} steps
            CHECK(rep.n_p[i + 1] == rep.n_p[i] + (1l << rep.s_p[i]));
        }
        CHECK(rep.s_increasing);
        CHECK(rep.blocks_clean);
        CHECK(rep.freq_bounded);
        REQUIRE(rep.cum_Ek.size() == rep.block_Ek.size());
        long run = 0;
        for (std::size_t i = 0; i < rep.block_Ek.size(); ++i) {
            run += rep.block_Ek[i];
            CHECK(rep.cum_Ek[i] == run);
        }
    }
    CHECK_THROWS_AS(orbit_structure(sample_point(1), 4), std::invalid_argument);
}

TEST_CASE("lemma report passes across the board") {
    auto rows = lemma_report(table(), {}, 10);
    REQUIRE(rows.size() == 6);
    const char* ids[] = {"calc",    "exist1",   "beta_count",
                         "exist2",  "exists3",  "exist_qn"};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].id == ids[i]);
        CHECK(rows[i].pass);
        CHECK(rows[i].instances > 0);
    }
}
