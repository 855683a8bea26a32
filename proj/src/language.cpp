#include "weakgibbs/language.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <stdexcept>

namespace weakgibbs {

namespace {
inline std::uint64_t lmask(int n) {
    return n >= 64 ? ~0ull : (1ull << n) - 1;
}
}  // namespace

Word::Word(int n, std::uint64_t b) : len(n), bits(b & lmask(n)) {
    if (n < 0 || n > 64) throw std::invalid_argument("Word: bad length");
}

Word Word::sub(int from, int n) const {
    if (from < 0 || n < 0 || from + n > len)
        throw std::out_of_range("Word::sub");
    return Word(n, bits >> from);
}

Word Word::all_beta(int n) { return Word(n, ~0ull); }

Word Word::from_string(const std::string& s) {
    Word w(static_cast<int>(s.size()), 0);
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (s[j] == 'b')
            w.bits |= 1ull << j;
        else if (s[j] != 'a')
            throw std::invalid_argument("Word: letters must be 'a' or 'b'");
    }
    return w;
}

Word Word::from_letters(const std::vector<Letter>& ls) {
    Word w(static_cast<int>(ls.size()), 0);
    for (std::size_t j = 0; j < ls.size(); ++j)
        if (ls[j] == Letter::Beta) w.bits |= 1ull << j;
    return w;
}

std::string Word::str() const {
    std::string s(static_cast<std::size_t>(len), 'a');
    for (int j = 0; j < len; ++j)
        if ((bits >> j) & 1) s[static_cast<std::size_t>(j)] = 'b';
    return s;
}

WordStats word_stats(const Word& w) {
    WordStats st{std::popcount(w.bits), 0};
    int run = 0;
    for (int j = 0; j < w.len; ++j) {
        run = (w.bits >> j) & 1 ? run + 1 : 0;
        st.longest_beta_run = std::max(st.longest_beta_run, run);
    }
    return st;
}

LanguageTable LanguageTable::build(int max_len, int depth) {
    if (max_len < 1 || max_len > 64)
        throw std::invalid_argument("build: max_len out of [1,64]");
    if (depth < 16 || depth > 26)
        throw std::invalid_argument("build: depth out of [16,26]");

    LanguageTable t;
    t.max_len_ = max_len;
    t.depth_ = depth;
    t.over_len_ = std::min(max_len, depth + 2);
    t.under_.resize(static_cast<std::size_t>(max_len) + 1);
    t.core_.resize(static_cast<std::size_t>(t.over_len_) + 1);
    t.over_count_.resize(static_cast<std::size_t>(t.over_len_) + 1);

    const std::uint64_t N = 1ull << depth;
    // firing bitmap plus 63 cyclically wrapped extension bits
    std::vector<std::uint64_t> bm(static_cast<std::size_t>((N + 63) / 64) + 1, 0);
    for (std::uint64_t u = 0; u < N; ++u)
        if (fires_in_range(u, 5, depth)) bm[u >> 6] |= 1ull << (u & 63);
    for (std::uint64_t u = N; u < N + 63; ++u)
        if ((bm[(u - N) >> 6] >> ((u - N) & 63)) & 1)
            bm[u >> 6] |= 1ull << (u & 63);

    auto window64 = [&](std::uint64_t u) -> std::uint64_t {
        std::size_t i = u >> 6;
        int sh = static_cast<int>(u & 63);
        std::uint64_t w = bm[i] >> sh;
        if (sh) w |= bm[i + 1] << (64 - sh);
        return w;
    };

    // distinct 64-bit windows that do not wrap past the modulus
    std::unordered_set<std::uint64_t> s64;
    s64.reserve(1u << 21);
    for (std::uint64_t u = 0; u + 64 <= N; ++u) s64.insert(window64(u));

    std::vector<std::uint64_t> wrap64;  // the 63 cyclic windows that do wrap
    for (std::uint64_t u = N - 63; u < N; ++u) wrap64.push_back(window64(u));

    for (int n = 1; n <= max_len; ++n) {
        std::uint64_t m = lmask(n);
        auto& set = t.under_[static_cast<std::size_t>(n)];
        for (std::uint64_t w : s64) set.insert(w & m);
        // non-wrapping starts in the last 63 positions
        for (std::uint64_t u = N - 63; u + static_cast<std::uint64_t>(n) <= N; ++u)
            set.insert(window64(u) & m);
        // windows of the all-beta fixed point
        set.insert(m);
    }
    for (int n = 1; n <= t.over_len_; ++n) {
        std::uint64_t m = lmask(n);
        auto& set = t.core_[static_cast<std::size_t>(n)];
        for (std::uint64_t w : s64) set.insert(w & m);
        for (std::uint64_t w : wrap64) set.insert(w & m);
    }

    t.under_sorted_.resize(static_cast<std::size_t>(max_len) + 1);
    for (int n = 1; n <= max_len; ++n) {
        auto& v = t.under_sorted_[static_cast<std::size_t>(n)];
        v.assign(t.under_[static_cast<std::size_t>(n)].begin(),
                 t.under_[static_cast<std::size_t>(n)].end());
        std::sort(v.begin(), v.end());
    }
    return t;
}

bool LanguageTable::in_under(const Word& w) const {
    if (w.len < 1 || w.len > max_len_)
        throw std::out_of_range("in_under: length exceeds table");
    return under_[static_cast<std::size_t>(w.len)].count(w.bits) != 0;
}

ContainStatus LanguageTable::contains(const Word& w) const {
    if (in_under(w)) return ContainStatus::CertainIn;
    if (w.len > over_len_) return ContainStatus::Unknown;
    // try every split beta-prefix ++ cyclic core ++ beta-suffix
    int amax = 0;
    while (amax < w.len && ((w.bits >> amax) & 1)) ++amax;
    if (amax == w.len) return ContainStatus::Unknown;  // all-beta, always over
    int bmax = 0;
    while (bmax < w.len && ((w.bits >> (w.len - 1 - bmax)) & 1)) ++bmax;
    for (int a = 0; a <= amax; ++a) {
        for (int b = 0; b <= bmax; ++b) {
            int mlen = w.len - a - b;
            if (mlen <= 0) return ContainStatus::Unknown;
            std::uint64_t mid = (w.bits >> a) & lmask(mlen);
            if (core_[static_cast<std::size_t>(mlen)].count(mid))
                return ContainStatus::Unknown;
        }
    }
    return ContainStatus::CertainOut;
}

std::size_t LanguageTable::under_size(int n) const {
    if (n < 1 || n > max_len_) throw std::out_of_range("under_size");
    return under_[static_cast<std::size_t>(n)].size();
}

std::optional<std::size_t> LanguageTable::over_size(int n) const {
    if (n < 1 || n > max_len_) throw std::out_of_range("over_size");
    if (n > over_len_) return std::nullopt;
    auto& memo = over_count_[static_cast<std::size_t>(n)];
    if (memo) return memo;
    std::unordered_set<std::uint64_t> all;
    all.insert(lmask(n));  // all-beta
    for (int m = 1; m <= n; ++m)
        for (std::uint64_t c : core_[static_cast<std::size_t>(m)])
            for (int a = 0; a + m <= n; ++a) {
                int b = n - m - a;
                std::uint64_t w = (c << a) | lmask(a);
                if (b > 0) w |= lmask(b) << (a + m);
                all.insert(w & lmask(n));
            }
    memo = all.size();
    return memo;
}

const std::vector<std::uint64_t>& LanguageTable::under_words(int n) const {
    if (n < 1 || n > max_len_) throw std::out_of_range("under_words");
    return under_sorted_[static_cast<std::size_t>(n)];
}

TwoSidedRadius LanguageTable::two_sided_radius(
    const std::vector<Letter>& window) const {
    if (window.empty() || window.size() % 2 == 0)
        throw std::invalid_argument("two_sided_radius: window must be odd length");
    int r = static_cast<int>(window.size()) / 2;
    Word full = Word::from_letters(window);
    TwoSidedRadius out{0, r, false};
    bool under_ok = true;
    for (int rho = 1; rho <= r; ++rho) {
        int n = 2 * rho - 1;
        if (n > max_len_) break;
        Word c = full.sub(r - (rho - 1), n);
        ContainStatus st = contains(c);
        if (under_ok && st == ContainStatus::CertainIn)
            out.r_lower = rho;
        else
            under_ok = false;
        if (st == ContainStatus::CertainOut) {
            out.r_upper = rho - 1;
            out.bounded = true;
            break;
        }
    }
    return out;
}

Decomposition LanguageTable::maximal_decompose(const Word& w) const {
    Decomposition d;
    int p = 0;
    while (p < w.len) {
        int best = 1;
        for (int j = 1; p + j <= w.len && j <= max_len_; ++j) {
            if (contains(w.sub(p, j)) == ContainStatus::CertainOut) break;
            best = j;
        }
        d.segments.push_back(w.sub(p, best));
        p += best;
    }
    return d;
}

std::vector<int> Decomposition::lengths() const {
    std::vector<int> ls;
    ls.reserve(segments.size());
    for (const Word& s : segments) ls.push_back(s.len);
    return ls;
}

void LanguageTable::save(std::ostream& os) const {
    os << "# language-table build_depth=" << depth_ << " max_len=" << max_len_
       << " over_len=" << over_len_ << "\n";
    os << "# side under\n";
    for (int n = 1; n <= max_len_; ++n)
        for (std::uint64_t b : under_sorted_[static_cast<std::size_t>(n)])
            os << n << ' ' << Word(n, b).str() << '\n';
    os << "# side over-core\n";
    for (int n = 1; n <= over_len_; ++n) {
        std::vector<std::uint64_t> v(core_[static_cast<std::size_t>(n)].begin(),
                                     core_[static_cast<std::size_t>(n)].end());
        std::sort(v.begin(), v.end());
        for (std::uint64_t b : v) os << n << ' ' << Word(n, b).str() << '\n';
    }
}

}  // namespace weakgibbs
