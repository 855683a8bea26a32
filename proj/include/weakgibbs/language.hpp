#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "weakgibbs/coding.hpp"

namespace weakgibbs {

/// Length <= 64 word over {alpha, beta}; bit j set means beta at position j.
struct Word {
    int len = 0;
    std::uint64_t bits = 0;

    Word() = default;
    Word(int n, std::uint64_t b);

    Letter at(int j) const { return (bits >> j) & 1 ? Letter::Beta : Letter::Alpha; }
    Word sub(int from, int n) const;  // positions from..from+n-1

    static Word all_beta(int n);
    static Word all_alpha(int n) { return Word(n, 0); }
    static Word from_string(const std::string& s);  // 'a'/'b' per letter
    static Word from_letters(const std::vector<Letter>& ls);
    std::string str() const;

    bool operator==(const Word&) const = default;
};

struct WordStats {
    int beta_count;
    int longest_beta_run;
};
WordStats word_stats(const Word& w);

enum class ContainStatus : unsigned char { CertainIn, CertainOut, Unknown };

struct TwoSidedRadius {
    int r_lower;   // true radius is >= this
    int r_upper;   // true radius is <= this when bounded
    bool bounded;  // a centered subword was certainly outside the language
};

struct Decomposition {
    std::vector<Word> segments;
    std::vector<int> lengths() const;
};

/// Under/over approximation of the subshift language. The under side
/// collects words realized by explicit odometer points; the over side
/// is closed under prepending/appending beta runs to cyclic-window
/// cores, which covers every way levels above the build depth can
/// overwrite a window (they only force beta on a prefix and a suffix
/// as long as the window is at most depth+2 long).
class LanguageTable {
public:
    static LanguageTable build(int max_len = 64, int depth = 24);

    int max_len() const { return max_len_; }
    int build_depth() const { return depth_; }
    int over_max_len() const { return over_len_; }  // lengths with a usable over side

    ContainStatus contains(const Word& w) const;
    bool in_under(const Word& w) const;

    std::size_t under_size(int n) const;
    /// Materialized count of the over-approximated language at length n;
    /// nullopt when n exceeds over_max_len.
    std::optional<std::size_t> over_size(int n) const;

    const std::vector<std::uint64_t>& under_words(int n) const;

    /// window has odd length 2r+1 and is centered at index r.
    TwoSidedRadius two_sided_radius(const std::vector<Letter>& window) const;

    Decomposition maximal_decompose(const Word& w) const;

    void save(std::ostream& os) const;

private:
    LanguageTable() = default;
    int max_len_ = 0, depth_ = 0, over_len_ = 0;
    std::vector<std::unordered_set<std::uint64_t>> under_;  // by length
    std::vector<std::vector<std::uint64_t>> under_sorted_;
    std::vector<std::unordered_set<std::uint64_t>> core_;  // cyclic windows
    mutable std::vector<std::optional<std::size_t>> over_count_;
};

}  // namespace weakgibbs
