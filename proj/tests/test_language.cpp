#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "weakgibbs/language.hpp"

using namespace weakgibbs;

namespace {

const LanguageTable& table() {
    static LanguageTable t = LanguageTable::build(64, 24);
    return t;
}

std::vector<Letter> letters_of(const std::string& s) {
    std::vector<Letter> out;
    for (char c : s) out.push_back(c == 'b' ? Letter::Beta : Letter::Alpha);
    return out;
}

}  // namespace

TEST_CASE("word basics") {
    Word w = Word::from_string("abba");
    CHECK(w.len == 4);
    CHECK(w.at(0) == Letter::Alpha);
    CHECK(w.at(1) == Letter::Beta);
    CHECK(w.str() == "abba");
    CHECK(w.sub(1, 2) == Word::from_string("bb"));
    CHECK(Word::all_beta(3) == Word::from_string("bbb"));
    CHECK(Word::all_alpha(3) == Word::from_string("aaa"));
    CHECK(Word::from_letters(letters_of("abba")) == w);
    CHECK_THROWS_AS(Word(65, 0), std::invalid_argument);
    CHECK_THROWS_AS(Word::from_string("abc"), std::invalid_argument);

    WordStats s = word_stats(Word::from_string("abbbab"));
    CHECK(s.beta_count == 4);
    CHECK(s.longest_beta_run == 3);
    CHECK(word_stats(Word::all_alpha(5)).longest_beta_run == 0);
}

TEST_CASE("build parameters are validated") {
    CHECK_THROWS_AS(LanguageTable::build(64, 10), std::invalid_argument);
    CHECK_THROWS_AS(LanguageTable::build(64, 30), std::invalid_argument);
    CHECK_THROWS_AS(LanguageTable::build(0, 24), std::invalid_argument);
}

TEST_CASE("under words are realized and closed under subwords") {
    const LanguageTable& t = table();
    std::mt19937_64 rng(41);
    for (int n : {1, 2, 5, 12, 26, 40, 64}) {
        const auto& words = t.under_words(n);
        CHECK(words.size() == t.under_size(n));
        CHECK(!words.empty());
        for (int it = 0; it < 50 && it < static_cast<int>(words.size()); ++it) {
            Word w(n, words[rng() % words.size()]);
            CHECK(t.in_under(w));
            // every subword of an under word is again an under word
            if (n > 1) {
                int m = 1 + static_cast<int>(rng() % (n - 1));
                int from = static_cast<int>(rng() % (n - m + 1));
                CHECK(t.in_under(w.sub(from, m)));
            }
            // and the over side never rejects it
            CHECK(t.contains(w) != ContainStatus::CertainOut);
        }
    }
}

TEST_CASE("known members and non-members") {
    const LanguageTable& t = table();
    // the fixed point contributes all-beta words of every length
    for (int n : {1, 5, 20, 64}) CHECK(t.in_under(Word::all_beta(n)));
    CHECK(t.contains(Word::all_beta(30)) == ContainStatus::CertainIn);
    // a short beta run flanked by alphas cannot occur: runs have length >= 5
    CHECK(t.contains(Word::from_string("aba")) == ContainStatus::CertainOut);
    CHECK(t.contains(Word::from_string("abba")) == ContainStatus::CertainOut);
    CHECK(t.contains(Word::from_string("abbbba")) == ContainStatus::CertainOut);
    CHECK(t.contains(Word::from_string("abbbbba")) != ContainStatus::CertainOut);
    CHECK(t.in_under(Word::from_string("abbbbba")));
    // alpha runs exist up to length 27 and no further
    CHECK(t.in_under(Word::all_alpha(27)));
    CHECK(!t.in_under(Word::all_alpha(28)));
    CHECK(t.contains(Word::all_alpha(28)) != ContainStatus::CertainIn);
    for (int n = 28; n <= 64; ++n) CHECK(!t.in_under(Word::all_alpha(n)));
}

TEST_CASE("beta runs inside words are at least the minimum run") {
    const LanguageTable& t = table();
    std::mt19937_64 rng(42);
    for (int n : {8, 16, 32}) {
        const auto& words = t.under_words(n);
        for (std::uint64_t bits : words) {
            Word w(n, bits);
            // interior runs (alpha on both sides) must have length >= 5
            int run = 0;
            bool left_alpha = false;
            for (int j = 0; j <= n; ++j) {
                bool beta = j < n && w.at(j) == Letter::Beta;
                if (beta) {
                    ++run;
                } else {
                    if (run > 0 && left_alpha && j < n) CHECK(run >= 5);
                    left_alpha = j < n;
                    run = 0;
                }
            }
        }
        (void)rng;
    }
}

TEST_CASE("under is sandwiched by the over approximation") {
    const LanguageTable& t = table();
    for (int n = 1; n <= t.over_max_len(); ++n) {
        auto over = t.over_size(n);
        REQUIRE(over.has_value());
        CHECK(t.under_size(n) <= *over);
    }
    CHECK(!t.over_size(t.over_max_len() + 1).has_value());
}

TEST_CASE("two sided radius") {
    const LanguageTable& t = table();
    // all-beta window: no centered subword is ever rejected
    TwoSidedRadius r = t.two_sided_radius(letters_of("bbbbbbbbbbbbbbbbbbbbb"));
    CHECK(!r.bounded);
    CHECK(r.r_lower == 10);
    // centered aba is rejected immediately: radius 1
    TwoSidedRadius s = t.two_sided_radius(letters_of("bbbbbbbbbbababbbbbbbbbb"));
    CHECK(s.bounded);
    CHECK(s.r_upper <= 2);
    CHECK(s.r_lower <= s.r_upper);
    CHECK_THROWS_AS(t.two_sided_radius(letters_of("bb")), std::invalid_argument);
}

TEST_CASE("maximal decomposition") {
    const LanguageTable& t = table();
    Word w = Word::from_string("abbbbbaaaab");
    Decomposition d = t.maximal_decompose(w);
    // segments concatenate back to the word
    std::string cat;
    for (const Word& seg : d.segments) cat += seg.str();
    CHECK(cat == w.str());
    for (const Word& seg : d.segments)
        CHECK(t.contains(seg) != ContainStatus::CertainOut);
    // a word already in the language stays one segment
    Decomposition one = t.maximal_decompose(Word::from_string("bbbbbb"));
    CHECK(one.segments.size() == 1);
    CHECK(one.lengths() == std::vector<int>{6});
}

TEST_CASE("word count bound holds on the under side") {
    const LanguageTable& t = table();
    for (int d = 1; d <= 64; ++d) {
        long bound = 2l * (d + 1) * (d + 1) * (d + 1);
        CHECK(static_cast<long>(t.under_size(d)) <= bound);
    }
}

TEST_CASE("serialization round trips through text") {
    const LanguageTable& t = table();
    std::ostringstream os;
    t.save(os);
    std::string text = os.str();
    CHECK(text.find("# language-table") != std::string::npos);
    CHECK(text.find("# side under") != std::string::npos);
    CHECK(text.find("# side over-core") != std::string::npos);
    // every listed under word parses and is accepted by the table
    std::istringstream is(text);
    std::string line;
    bool in_under = false;
    long checked = 0;
    while (std::getline(is, line)) {
        if (line.rfind("# side", 0) == 0) {
            in_under = line == "# side under";
            continue;
        }
        if (!in_under || line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int n;
        std::string ws;
        ls >> n >> ws;
        if (checked % 97 == 0) {
            Word w = Word::from_string(ws);
            CHECK(w.len == n);
            CHECK(table().in_under(w));
        }
        ++checked;
    }
    CHECK(checked > 1000);
}
