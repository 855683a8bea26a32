#include "weakgibbs/thermo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

namespace weakgibbs {

CompletedPoint CompletedPoint::word_with_marker(const Word& w) {
    CompletedPoint z;
    z.kind_ = Kind::WordMarker;
    z.wbits_ = w.bits;
    z.wlen_ = w.len;
    return z;
}

CompletedPoint CompletedPoint::all_beta() {
    CompletedPoint z;
    z.kind_ = Kind::AllBeta;
    return z;
}

CompletedPoint CompletedPoint::from_window(std::vector<Letter> letters,
                                           long first) {
    CompletedPoint z;
    z.kind_ = Kind::Window;
    z.win_ = std::move(letters);
    z.first_ = first;
    return z;
}

Letter CompletedPoint::letter_at(long i) const {
    switch (kind_) {
        case Kind::AllBeta:
            return Letter::Beta;
        case Kind::WordMarker:
            if (i >= 0 && i < wlen_)
                return (wbits_ >> i) & 1 ? Letter::Beta : Letter::Alpha;
            return i == wlen_ + 1 ? Letter::Beta : Letter::Alpha;
        case Kind::Window: {
            long j = i - first_;
            if (j < 0 || j >= static_cast<long>(win_.size()))
                throw std::out_of_range("CompletedPoint: outside window");
            return win_[static_cast<std::size_t>(j)];
        }
    }
    throw std::logic_error("CompletedPoint: bad kind");
}

namespace {

RealInterval psi_from_letters(const std::vector<Letter>& win,
                              const LanguageTable& table,
                              const PotentialParams& params) {
    int r = static_cast<int>(win.size()) / 2;
    if (2 * r + 1 < 2 * params.min_run + 1)
        throw insufficient_depth("psi: window shorter than 2*min_run+1");
    double psi0 =
        win[static_cast<std::size_t>(r)] == Letter::Beta ? -params.beta_weight : 0.0;
    TwoSidedRadius tsr = table.two_sided_radius(win);
    int rl = std::max(1, tsr.r_lower);
    RealInterval lo_part = RealInterval::point(-params.cusp_coeff) /
                           outward_sqrt(RealInterval::point(rl));
    double hi1 = 0.0;
    if (tsr.bounded) {
        int ru = std::max(1, tsr.r_upper);
        RealInterval hi_part = RealInterval::point(-params.cusp_coeff) /
                               outward_sqrt(RealInterval::point(ru));
        hi1 = hi_part.hi;
    }
    RealInterval psi1(std::min(lo_part.lo, hi1), hi1);
    return RealInterval::point(psi0) + psi1;
}

}  // namespace

RealInterval psi_at(const CompletedPoint& z, long pos, const LanguageTable& table,
                    const PotentialParams& params, int radius) {
    if (z.is_all_beta())
        return RealInterval::point(-static_cast<double>(params.beta_weight));
    std::vector<Letter> win;
    win.reserve(static_cast<std::size_t>(2 * radius + 1));
    for (long i = pos - radius; i <= pos + radius; ++i)
        win.push_back(z.letter_at(i));
    return psi_from_letters(win, table, params);
}

RealInterval birkhoff_psi(const Word& w, const LanguageTable& table,
                          const PotentialParams& params, int radius) {
    CompletedPoint z = CompletedPoint::word_with_marker(w);
    RealInterval sum = RealInterval::point(0.0);
    for (int i = 0; i < w.len; ++i) sum += psi_at(z, i, table, params, radius);
    return sum;
}

RealInterval partition_sum_Qn(int n, const LanguageTable& table,
                              const PotentialParams& params, int n_max) {
    if (n < 1 || n > n_max) throw range_exceeded("partition_sum_Qn: n > n_max");
    const int radius = 31;
    const std::uint64_t mask63 = (1ull << 63) - 1;
    std::unordered_map<std::uint64_t, RealInterval> memo;
    memo.reserve(1u << 16);
    std::vector<Letter> win(63);
    auto psi_of_window = [&](std::uint64_t bits) {
        auto it = memo.find(bits);
        if (it != memo.end()) return it->second;
        for (int j = 0; j < 63; ++j)
            win[static_cast<std::size_t>(j)] =
                (bits >> j) & 1 ? Letter::Beta : Letter::Alpha;
        RealInterval v = psi_from_letters(win, table, params);
        memo.emplace(bits, v);
        return v;
    };
    RealInterval total = RealInterval::point(0.0);
    for (std::uint64_t w = 0; w < (1ull << n); ++w) {
        u128 ext = (u128(w) << radius) | (u128(1) << (radius + n + 1));
        RealInterval sum = RealInterval::point(0.0);
        for (int i = 0; i < n; ++i)
            sum += psi_of_window(static_cast<std::uint64_t>(ext >> i) & mask63);
        total += outward_exp(sum);
    }
    return total;
}

RealInterval partition_sum_Qnl(int n, int l, const LanguageTable& table,
                               const PotentialParams& params, int n_max) {
    if (n < 1 || n > n_max || l < 1 || l > n)
        throw range_exceeded("partition_sum_Qnl: bad (n, l)");
    int mmax = n - l + 1;
    std::vector<RealInterval> A(static_cast<std::size_t>(mmax) + 1,
                                RealInterval::point(0.0));
    for (int m = 1; m <= mmax; ++m) {
        std::vector<long> hist(static_cast<std::size_t>(m) + 1, 0);
        for (std::uint64_t bits : table.under_words(m))
            ++hist[static_cast<std::size_t>(std::popcount(bits))];
        RealInterval am = RealInterval::point(0.0);
        RealInterval root = outward_sqrt(RealInterval::point(m));
        for (int c = 0; c <= m; ++c) {
            if (!hist[static_cast<std::size_t>(c)]) continue;
            RealInterval expo =
                RealInterval::point(-params.beta_weight * static_cast<double>(c)) -
                RealInterval::point(params.cusp_coeff) * root;
            am += RealInterval::point(
                      static_cast<double>(hist[static_cast<std::size_t>(c)])) *
                  outward_exp(expo);
        }
        A[static_cast<std::size_t>(m)] = am;
    }
    std::vector<std::vector<RealInterval>> C(
        static_cast<std::size_t>(l) + 1,
        std::vector<RealInterval>(static_cast<std::size_t>(n) + 1,
                                  RealInterval::point(0.0)));
    C[0][0] = RealInterval::point(1.0);
    for (int j = 1; j <= l; ++j)
        for (int t = j; t <= n; ++t) {
            RealInterval acc = RealInterval::point(0.0);
            for (int m = 1; m <= std::min(mmax, t - j + 1); ++m)
                acc += A[static_cast<std::size_t>(m)] *
                       C[static_cast<std::size_t>(j - 1)]
                        [static_cast<std::size_t>(t - m)];
            C[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] = acc;
        }
    return C[static_cast<std::size_t>(l)][static_cast<std::size_t>(n)];
}

DyadicInterval pressure_dyadic(int series_terms) {
    return nu_A_series(series_terms).scale(-2);
}

RealInterval pressure(int series_terms) {
    return RealInterval::from_dyadic(pressure_dyadic(series_terms));
}

GibbsReport gibbs_ratio_at_o(int n, int series_terms, double threshold_scale) {
    if (n < 5)
        throw std::invalid_argument("gibbs_ratio_at_o: theorem scope is n >= 5");
    MeasureResult mu =
        event_measure(WindowEvent::from_word(Word::all_beta(n)),
                      Dyadic::pow2(-(n + 20)), n + 36, Dyadic::pow2(-12));
    DyadicInterval nuA = nu_A_series(series_terms);
    // -nP + S_n psi(o) = -2 n (1 - nu(A)); S_n psi(o) = -2n since o is in Y
    RealInterval expo = (RealInterval::from_dyadic(nuA) - RealInterval::point(1.0)) *
                        RealInterval::point(2.0 * n);
    RealInterval denom = outward_exp(expo);
    RealInterval ratio = RealInterval::from_dyadic(mu.interval) / denom;
    RealInterval threshold =
        pow_int(outward_exp(RealInterval::point(1.0)) * RealInterval::point(0.5),
                n) *
        RealInterval::point(threshold_scale);
    GibbsReport rep;
    rep.n = n;
    rep.ratio = ratio;
    rep.threshold = threshold;
    rep.satisfied = ratio.lo > threshold.hi;
    rep.mu_lo_exceeds_pow2 = Dyadic::pow2(-n) < mu.interval.lo;
    rep.converged = mu.converged;
    rep.mu = mu.interval;
    return rep;
}

std::vector<VwRow> very_weak_scan(long samples, const std::vector<int>& ns,
                                  std::uint64_t seed, const Dyadic& tolerance,
                                  int depth_cap) {
    if (samples < 1) throw std::invalid_argument("very_weak_scan: samples < 1");
    if (ns.empty()) throw std::invalid_argument("very_weak_scan: no window sizes");
    int max_n = *std::max_element(ns.begin(), ns.end());
    DyadicInterval nuA = nu_A_series(40);
    std::vector<VwRow> rows;
    std::uint64_t state = seed;
    for (long s = 0; s < samples; ++s) {
        OdometerPoint p = sample_point(splitmix64(state));
        std::vector<Letter> letters;
        bool ok = true;
        for (int j = 0; j < max_n && ok; ++j) {
            auto l = resolved_letter(p, j);
            if (!l)
                ok = false;
            else
                letters.push_back(*l);
        }
        for (int n : ns) {
            VwRow row{};
            row.sample = s;
            row.n = n;
            if (!ok) {
                row.discarded = true;
                rows.push_back(row);
                continue;
            }
            Word w = Word::from_letters(
                {letters.begin(), letters.begin() + n});
            row.beta_count = word_stats(w).beta_count;
            MeasureResult mu = event_measure(WindowEvent::from_word(w), tolerance,
                                             depth_cap, Dyadic::pow2(-8));
            row.converged = mu.converged && mu.interval.lo.sign() > 0;
            if (row.converged) {
                // R_n = mu(cyl) * exp(2 betacount - 2 n nu(A)); psi_1 vanishes
                // along the coded orbit because Phi(x) lies in Y
                RealInterval expo =
                    RealInterval::point(2.0 * row.beta_count) -
                    RealInterval::from_dyadic(nuA) * RealInterval::point(2.0 * n);
                RealInterval R =
                    RealInterval::from_dyadic(mu.interval) * outward_exp(expo);
                RealInterval lr = outward_log(R) / RealInterval::point(n);
                row.log_ratio_over_n_lo = lr.lo;
                row.log_ratio_over_n_hi = lr.hi;
                row.log_ratio_over_n_mid = lr.mid();
            }
            rows.push_back(row);
        }
    }
    return rows;
}

namespace {

// exact low 120 bits of an mpz as u128
u128 low120(const mpz_class& v) {
    mpz_class low;
    mpz_fdiv_r_2exp(low.get_mpz_t(), v.get_mpz_t(), 120);
    u128 out = 0;
    for (int w = 0; w < 2; ++w) {
        std::uint64_t part = 0;
        for (int b = 0; b < 64; ++b)
            if (mpz_tstbit(low.get_mpz_t(), 64 * w + b)) part |= 1ull << b;
        out |= u128(part) << (64 * w);
    }
    return out;
}

}  // namespace

OrbitReport orbit_structure(const OdometerPoint& x, int k, long horizon) {
    if (k < 5) throw std::invalid_argument("orbit_structure: k < 5");
    if (horizon < 64) throw std::invalid_argument("orbit_structure: horizon too small");
    OrbitReport rep;
    rep.k = k;
    const int bits = 8192;
    mpz_class v0 = x.value_at_depth(bits);

    auto letter = [&](long t) { return letter_from_value(v0 + t, bits, x.tail()); };

    long t0 = -1;
    for (long t = 1; t < horizon; ++t) {
        auto a = letter(t - 1), b = letter(t);
        if (a && b && *a == Letter::Alpha && *b == Letter::Beta) {
            t0 = t;
            break;
        }
    }
    if (t0 < 0) return rep;  // no transition found; point flagged unnormalized
    rep.normalized = true;
    rep.shift = t0;
    mpz_class v = v0 + t0;
    if (v == 0) {
        rep.normalized = false;
        return rep;
    }

    // E_k indicator along the orbit, via the materialized value
    u128 base = low120(v);
    auto in_Ek = [&](long t) {
        u128 vt = base + u128(t);  // carries past bit 120 are astronomically rare
        return fires_in_range(vt, k + 1, 120);
    };
    bool carry_safe = base < pow2_u128(120) - pow2_u128(40);

    std::vector<char> ek(static_cast<std::size_t>(horizon), 0);
    for (long t = 0; t < horizon; ++t)
        ek[static_cast<std::size_t>(t)] =
            carry_safe ? in_Ek(t) : fires_in_range(low120(v + t), k + 1, 120);

    long np = 0;
    int sp = static_cast<int>(mpz_scan1(v.get_mpz_t(), 0));
    rep.n_p.push_back(np);
    rep.s_p.push_back(sp);
    long cum = 0;
    while (sp <= 40) {
        long next = np + (1l << sp);
        if (next > horizon) break;
        long cnt = 0;
        for (long t = np; t < next; ++t) cnt += ek[static_cast<std::size_t>(t)];
        rep.block_Ek.push_back(cnt);
        if (sp <= k && cnt != 0) rep.blocks_clean = false;
        cum += cnt;
        np = next;
        mpz_class vn = v + np;
        sp = static_cast<int>(mpz_scan1(vn.get_mpz_t(), 0));
        if (sp <= rep.s_p.back()) rep.s_increasing = false;
        rep.n_p.push_back(np);
        rep.s_p.push_back(sp);
        rep.cum_Ek.push_back(cum);
        // frequency check: cum / n_p <= (k+2) / 2^k in exact integers
        if (k <= 40 && cum * (1l << k) > (k + 2) * np) rep.freq_bounded = false;
    }
    return rep;
}

std::vector<ReportRow> lemma_report(const LanguageTable& table,
                                    const PotentialParams& params, int n_max,
                                    int series_terms) {
    std::vector<ReportRow> rows;
    DyadicInterval nuA = nu_A_series(series_terms);
    double mub_lo = RealInterval::from_dyadic(nuA.lo).lo;
    double mub_hi = RealInterval::from_dyadic(nuA.hi).hi;

    {  // nu(A) enclosure inside [5/32, 6/32], cross-checked by residue counting
        ReportRow r;
        r.id = "calc";
        r.instances = 2;
        MeasureResult em = event_measure(WindowEvent::single(SetQuery::whole_A()),
                                         Dyadic::pow2(-22), 48);
        DyadicInterval target(Dyadic::scaled(5, -5), Dyadic::scaled(6, -5));
        bool inside = target.contains(nuA) && target.contains(em.interval);
        bool overlap = nuA.overlaps(em.interval);
        r.pass = inside && overlap && em.converged;
        r.worst_margin =
            RealInterval::from_dyadic(target.hi - nuA.hi).lo;
        r.extra.push_back({"series_width", nuA.width().str()});
        r.extra.push_back({"event_width", em.interval.width().str()});
        rows.push_back(r);
    }
    {  // word-count bound 2(d+1)^3
        ReportRow r;
        r.id = "exist1";
        r.pass = true;
        r.worst_margin = 1e300;
        for (int d = 1; d <= table.max_len(); ++d) {
            double bound = 2.0 * std::pow(d + 1.0, 3);
            double margin = bound - static_cast<double>(table.under_size(d));
            r.worst_margin = std::min(r.worst_margin, margin);
            if (margin < 0) r.pass = false;
            ++r.instances;
        }
        rows.push_back(r);
    }
    {  // beta count >= l-1 in words of length 2^l; the claim needs level-l
       // firing to exist, so it is asserted for l >= min_run only. Short
       // alpha-only windows (up to 27 letters) do occur, so l = 3, 4 are
       // reported as diagnostics instead.
        ReportRow r;
        r.id = "beta_count";
        r.pass = true;
        r.worst_margin = 1e300;
        for (int l = params.min_run; l <= 6 && (1 << l) <= table.max_len(); ++l) {
            for (std::uint64_t bits : table.under_words(1 << l)) {
                int c = std::popcount(bits);
                double margin = c - (l - 1.0);
                r.worst_margin = std::min(r.worst_margin, margin);
                if (margin < 0) r.pass = false;
                ++r.instances;
            }
        }
        for (int l = 3; l <= 4 && (1 << l) <= table.max_len(); ++l) {
            long short_words = 0;
            for (std::uint64_t bits : table.under_words(1 << l))
                if (std::popcount(bits) < l - 1) ++short_words;
            r.extra.push_back({"short_beta_len" + std::to_string(1 << l),
                               std::to_string(short_words)});
        }
        rows.push_back(r);
    }
    {  // -2 betacount <= -2 mu_beta d + 6 + 2 log2 d on certified words
        ReportRow r;
        r.id = "exist2";
        r.pass = true;
        r.worst_margin = 1e300;
        long strict4_violations = 0;
        for (int d = 1; d <= table.max_len(); ++d) {
            double l2d = std::log2(static_cast<double>(d));
            for (std::uint64_t bits : table.under_words(d)) {
                double lhs = -2.0 * std::popcount(bits);
                double rhs = -2.0 * mub_hi * d + 6.0 + 2.0 * l2d;
                double margin = rhs - lhs;
                r.worst_margin = std::min(r.worst_margin, margin);
                if (margin < 0) r.pass = false;
                if (lhs > rhs - 2.0) ++strict4_violations;  // the +4 variant
                ++r.instances;
            }
        }
        r.extra.push_back({"plus4_violations", std::to_string(strict4_violations)});
        rows.push_back(r);
    }
    {  // Q_n^l <= (1/2)^l exp(-2 mu_beta n)
        ReportRow r;
        r.id = "exists3";
        r.pass = true;
        r.worst_margin = 1e300;
        for (int n = 1; n <= n_max; ++n)
            for (int l = 1; l <= n; ++l) {
                RealInterval q = partition_sum_Qnl(n, l, table, params, n_max);
                RealInterval rhs =
                    pow_int(RealInterval::point(0.5), l) *
                    outward_exp(RealInterval::point(-2.0 * mub_lo * n));
                double margin = rhs.lo - q.hi;
                r.worst_margin = std::min(r.worst_margin, margin);
                if (margin < 0) r.pass = false;
                ++r.instances;
            }
        rows.push_back(r);
    }
    {  // Q_n <= 2 e^36 exp(-2 mu_beta n), plus the (1/n) log Q_n trend
        ReportRow r;
        r.id = "exist_qn";
        r.pass = true;
        r.worst_margin = 1e300;
        std::vector<double> lognq(static_cast<std::size_t>(n_max) + 1, 0.0);
        for (int n = 1; n <= n_max; ++n) {
            RealInterval q = partition_sum_Qn(n, table, params, n_max);
            RealInterval rhs =
                RealInterval::point(2.0) *
                outward_exp(RealInterval::point(36.0 - 2.0 * mub_lo * n));
            double margin = rhs.lo - q.hi;
            r.worst_margin = std::min(r.worst_margin, margin);
            if (margin < 0) r.pass = false;
            lognq[static_cast<std::size_t>(n)] = std::log(q.hi) / n;
            ++r.instances;
        }
        // the marker representative adds an n-independent cusp penalty to
        // every S_n psi, so Q_n approaches e^{nP} from below and the
        // normalized log sequence climbs toward the pressure
        bool trend = true;
        for (int n = 9; n <= n_max; ++n)
            if (lognq[static_cast<std::size_t>(n)] <
                lognq[static_cast<std::size_t>(n - 1)] - 0.05)
                trend = false;
        double p_hi = RealInterval::from_dyadic(pressure_dyadic(series_terms)).hi;
        if (lognq[static_cast<std::size_t>(n_max)] > p_hi + 36.0 / n_max + 0.05)
            trend = false;
        if (!trend) r.pass = false;
        r.extra.push_back({"trend_ok", trend ? "true" : "false"});
        r.extra.push_back(
            {"log_qn_over_n_last",
             std::to_string(lognq[static_cast<std::size_t>(n_max)])});
        rows.push_back(r);
    }
    return rows;
}

}  // namespace weakgibbs
