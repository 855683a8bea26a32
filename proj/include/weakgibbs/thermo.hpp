#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "weakgibbs/measure.hpp"
#include "weakgibbs/real_interval.hpp"

namespace weakgibbs {

struct PotentialParams {
    int beta_weight = 2;  // depth of the potential on the beta cylinder
    int cusp_coeff = 12;  // -cusp_coeff / sqrt(n) off the subshift
    int min_run = 5;
};

/// A two-sided symbol sequence with a deterministic completion rule.
/// word_with_marker places the word at 0..n-1 followed by the alpha beta
/// alpha block at n..n+2 (which pins the representative off the subshift)
/// and alpha everywhere else.
class CompletedPoint {
public:
    static CompletedPoint word_with_marker(const Word& w);
    static CompletedPoint all_beta();
    static CompletedPoint from_window(std::vector<Letter> letters, long first);

    Letter letter_at(long i) const;
    bool is_all_beta() const { return kind_ == Kind::AllBeta; }
    int word_len() const { return wlen_; }

private:
    enum class Kind { WordMarker, AllBeta, Window } kind_ = Kind::AllBeta;
    std::uint64_t wbits_ = 0;
    int wlen_ = 0;
    std::vector<Letter> win_;
    long first_ = 0;
};

/// Enclosure of psi at position pos of the completed point, using letters
/// within the given radius.
RealInterval psi_at(const CompletedPoint& z, long pos, const LanguageTable& table,
                    const PotentialParams& params = {}, int radius = 31);

/// Birkhoff sum over positions 0..|w|-1 of the marker completion of w.
RealInterval birkhoff_psi(const Word& w, const LanguageTable& table,
                          const PotentialParams& params = {}, int radius = 31);

/// Q_n: sum over all 2^n words of exp(S_n psi at the marker representative).
RealInterval partition_sum_Qn(int n, const LanguageTable& table,
                              const PotentialParams& params = {},
                              int n_max = 16);

/// Q_n^l: composition sum over l certified-language segments, with the
/// segment weight exp(-2 betacount - cusp_coeff sqrt(m)).
RealInterval partition_sum_Qnl(int n, int l, const LanguageTable& table,
                               const PotentialParams& params = {},
                               int n_max = 16);

DyadicInterval pressure_dyadic(int series_terms = 40);
RealInterval pressure(int series_terms = 40);

struct GibbsReport {
    int n;
    RealInterval ratio;
    RealInterval threshold;  // (e/2)^n
    bool satisfied;          // ratio.lo > threshold.hi
    bool mu_lo_exceeds_pow2;  // mu([beta^n]).lo > 2^{-n}, exact
    bool converged;
    DyadicInterval mu;
};
GibbsReport gibbs_ratio_at_o(int n, int series_terms = 40,
                             double threshold_scale = 1.0);

struct VwRow {
    long sample;
    int n;
    int beta_count;
    bool discarded;
    bool converged;
    double log_ratio_over_n_lo;
    double log_ratio_over_n_hi;
    double log_ratio_over_n_mid;
};
std::vector<VwRow> very_weak_scan(long samples, const std::vector<int>& ns,
                                  std::uint64_t seed,
                                  const Dyadic& tolerance = Dyadic::pow2(-34),
                                  int depth_cap = 48);

struct OrbitReport {
    bool normalized = false;
    long shift = 0;  // orbit offset of the alpha->beta transition used
    int k = 0;
    std::vector<long> n_p;
    std::vector<int> s_p;
    std::vector<long> block_Ek;   // |O_p inside E_k| per block
    std::vector<long> cum_Ek;     // visits to E_k among times < n_p
    bool s_increasing = true;     // s_{p+1} >= s_p + 1 throughout
    bool blocks_clean = true;     // block count 0 whenever s_p <= k
    bool freq_bounded = true;     // cum/n_p <= (k+2)/2^k at every n_p
};
OrbitReport orbit_structure(const OdometerPoint& x, int k, long horizon = 1 << 16);

struct ReportRow {
    std::string id;
    long instances = 0;
    double worst_margin = 0.0;
    bool pass = false;
    std::vector<std::pair<std::string, std::string>> extra;
};
std::vector<ReportRow> lemma_report(const LanguageTable& table,
                                    const PotentialParams& params = {},
                                    int n_max = 16, int series_terms = 40);

}  // namespace weakgibbs
