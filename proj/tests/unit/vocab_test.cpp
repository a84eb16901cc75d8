// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#include <algorithm>
#include <set>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "satd/error.hpp"
#include "satd/preprocess.hpp"
#include "satd/random.hpp"
#include "satd/vocab.hpp"
#include "synthetic.hpp"

using namespace satd;
using satd::fixtures::TempDir;

namespace {

std::vector<std::string> specials() {
    return {std::string(kPadToken), std::string(kUnkToken), std::string(kClsToken),
            std::string(kSepToken)};
}

Vocabulary toy(std::vector<std::string> extra) {
    auto tokens = specials();
    tokens.insert(tokens.end(), extra.begin(), extra.end());
    return Vocabulary(std::move(tokens));
}

TokenSequence tok(const Vocabulary& v, std::string_view text, std::size_t max_len = kDefaultMaxSeqLen) {
    return tokenize(v, split_identifiers(text), max_len);
}

std::vector<std::string> pieces(const Vocabulary& v, const TokenSequence& seq) {
    std::vector<std::string> out;
    for (auto id : seq.ids) out.push_back(v.token(id));
    return out;
}

std::size_t unk_count(const Vocabulary& v, const TokenSequence& seq) {
    return static_cast<std::size_t>(std::count(seq.ids.begin(), seq.ids.end(), v.unk()));
}

// Collection where word "w<i>" appears in the first `spread[i]` projects.
CorpusCollection spread_collection(std::size_t n_projects, const std::vector<std::size_t>& spread) {
    CorpusCollection c;
    for (std::size_t p = 0; p < n_projects; ++p) {
        std::vector<Comment> comments;
        std::string text = "//";
        for (std::size_t w = 0; w < spread.size(); ++w) {
            if (p < spread[w]) text += fmt::format(" w{}", w);
        }
        comments.push_back({0, fmt::format("P{}", p), text, Label::NonSatd, "WITHOUT_CLASSIFICATION", {}});
        c.projects.push_back(ProjectDataset::from_comments(fmt::format("P{}", p), std::move(comments)));
    }
    return c;
}

}  // namespace

TEST(Vocabulary, ToyFileOfTenLines) {
    TempDir dir("satd-vocab");
    auto path = dir.write("vocab.txt", "[PAD]\n[UNK]\n[CLS]\n[SEP]\nthe\nfix\n##me\nhack\n##s\n;\n");
    auto v = load_base_vocabulary(path);
    EXPECT_EQ(v.size(), 10u);
    EXPECT_EQ(v.find("fix"), TokenId{5});
    EXPECT_EQ(v.unk(), TokenId{1});
    EXPECT_TRUE(v.is_special(v.cls()));
    EXPECT_FALSE(v.is_special(*v.find("the")));
    EXPECT_EQ(parse_vocabulary(v.serialize()), v);
}

TEST(Vocabulary, Rejections) {
    EXPECT_THROW(parse_vocabulary("[PAD]\n[UNK]\n[CLS]\n[SEP]\nfix\nfix\n"), DataError);
    EXPECT_THROW(parse_vocabulary("[PAD]\n[UNK]\n[CLS]\nfix\n"), DataError);
    EXPECT_THROW(toy({"two words"}), DataError);
    EXPECT_THROW(load_base_vocabulary("/nonexistent/vocab.txt"), DataError);
}

TEST(Tokenize, GreedyLongestMatch) {
    auto v = toy({"fix", "##me", "f", "##i"});
    EXPECT_EQ(pieces(v, tok(v, "fixme")), (std::vector<std::string>{"[CLS]", "fix", "##me", "[SEP]"}));
    EXPECT_EQ(pieces(v, tok(v, "zzz")), (std::vector<std::string>{"[CLS]", "[UNK]", "[SEP]"}));
    // "fixmex": "fix" + "##me" leaves "x" unmatched, so the whole word is UNK.
    EXPECT_EQ(pieces(v, tok(v, "fixmex fix")),
              (std::vector<std::string>{"[CLS]", "[UNK]", "fix", "[SEP]"}));
    EXPECT_EQ(pieces(v, tok(v, "")), (std::vector<std::string>{"[CLS]", "[SEP]"}));
}

TEST(Tokenize, LongWordIsUnk) {
    auto v = builtin_char_vocabulary();
    std::string word(200, 'a');
    auto seq = tok(v, word);
    ASSERT_EQ(seq.ids.size(), 3u);
    EXPECT_EQ(seq.ids[1], v.unk());
    EXPECT_EQ(tok(v, std::string(100, 'a')).ids.size(), 102u);
    EXPECT_EQ(tokenize_word(v, std::string(101, 'a')), std::vector<TokenId>{v.unk()});
}

TEST(Tokenize, TruncationKeepsSep) {
    auto v = toy({"a"});
    auto seq = tokenize(v, split_identifiers("a a a a a"), 4, 17);
    EXPECT_TRUE(seq.truncated);
    EXPECT_EQ(seq.source_id, 17);
    EXPECT_EQ(pieces(v, seq), (std::vector<std::string>{"[CLS]", "a", "a", "[SEP]"}));
    auto fits = tokenize(v, split_identifiers("a a"), 4);
    EXPECT_FALSE(fits.truncated);
    EXPECT_EQ(fits.ids.size(), 4u);
    EXPECT_EQ(tokenize(v, split_identifiers("a"), 2).ids.size(), 2u);
    EXPECT_THROW(tokenize(v, split_identifiers("a"), 1), ConfigError);
}

TEST(Tokenize, DetokenizationAndDeterminism) {
    auto base = builtin_char_vocabulary();
    auto v = augment_vocabulary(base, std::vector<CandidateToken>{{"getValue", 3, 0.3}, {"TODO", 5, 0.5}});
    Rng rng(5);
    const std::string alphabet = "abTODOgetValue;()/*xyz";
    for (int trial = 0; trial < 2000; ++trial) {
        std::string word(1 + rng.index(20), 'a');
        for (auto& c : word) c = alphabet[rng.index(alphabet.size())];
        auto ids = tokenize_word(v, word);
        ASSERT_EQ(std::count(ids.begin(), ids.end(), v.unk()), 0) << word;
        std::string rebuilt;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            std::string piece = v.token(ids[i]);
            if (i > 0) {
                ASSERT_TRUE(piece.starts_with(kContinuationPrefix)) << word;
                piece.erase(0, kContinuationPrefix.size());
            }
            rebuilt += piece;
        }
        ASSERT_EQ(rebuilt, word);
        ASSERT_EQ(tokenize_word(v, word), ids);
    }
}

TEST(Tokenize, AugmentationNeverAddsUnk) {
    auto base = builtin_char_vocabulary();
    Rng rng(11);
    const std::string alphabet = "abcXY:;/*()[]\xC3\xA9 ";
    auto random_string = [&](std::size_t max_len) {
        std::string s(1 + rng.index(max_len), 'a');
        for (auto& c : s) c = alphabet[rng.index(alphabet.size())];
        return s;
    };
    for (int round = 0; round < 50; ++round) {
        std::vector<CandidateToken> finals;
        std::set<std::string> seen;
        for (int i = 0; i < 20; ++i) {
            for (const auto& w : segment_words(random_string(8))) {
                if (!base.contains(w) && seen.insert(w).second) finals.push_back({w, 1, 1.0});
            }
        }
        auto augmented = augment_vocabulary(base, finals);
        for (int i = 0; i < 40; ++i) {
            auto text = split_identifiers(random_string(60));
            ASSERT_LE(unk_count(augmented, tokenize(augmented, text)), unk_count(base, tokenize(base, text)))
                << text.text;
        }
    }
}

TEST(Tokenize, SequenceInvariants) {
    auto v = builtin_char_vocabulary();
    Rng rng(1);
    for (int trial = 0; trial < 500; ++trial) {
        std::string text(rng.index(300), 'q');
        for (auto& c : text) c = static_cast<char>(' ' + rng.index(95));
        std::size_t max_len = 2 + rng.index(64);
        auto seq = tokenize(v, split_identifiers(text), max_len);
        ASSERT_LE(seq.ids.size(), max_len);
        ASSERT_EQ(seq.ids.front(), v.cls());
        ASSERT_EQ(seq.ids.back(), v.sep());
        for (auto id : seq.ids) ASSERT_LT(id, v.size());
    }
}

TEST(Discovery, StrictThresholdOverTwentyProjects) {
    auto c = spread_collection(20, {6, 5, 20});
    auto base = toy({"w2"});
    auto found = discover_candidate_tokens(c, base);
    // "//" appears in all 20 and is not a base token; w2 is in the base.
    ASSERT_EQ(found.size(), 2u);
    EXPECT_EQ(found[0], (CandidateToken{"//", 20, 1.0}));
    EXPECT_EQ(found[1].token, "w0");
    EXPECT_EQ(found[1].project_count, 6u);
    EXPECT_DOUBLE_EQ(found[1].project_fraction, 0.30);
}

TEST(Discovery, SortAndTies) {
    auto c = spread_collection(4, {2, 4, 2, 1});
    auto found = discover_candidate_tokens(c, toy({}));
    std::vector<std::string> tokens;
    for (const auto& f : found) tokens.push_back(f.token);
    EXPECT_EQ(tokens, (std::vector<std::string>{"//", "w1", "w0", "w2"}));
    EXPECT_THROW(discover_candidate_tokens(CorpusCollection{}, toy({})), DataError);
    EXPECT_THROW(discover_candidate_tokens(c, toy({}), 1.0), ConfigError);
}

TEST(Discovery, OrderIndependent) {
    auto collection = fixtures::make_planted_corpus({.projects = 6, .comments_per_project = 120, .seed = 3});
    auto base = builtin_char_vocabulary();
    auto reference = discover_candidate_tokens(collection, base);
    ASSERT_FALSE(reference.empty());
    Rng rng(8);
    for (int trial = 0; trial < 5; ++trial) {
        auto shuffled = collection;
        rng.shuffle(shuffled.projects);
        for (auto& p : shuffled.projects) rng.shuffle(p.comments);
        EXPECT_EQ(discover_candidate_tokens(shuffled, base), reference);
    }
}

TEST(Denylist, Filtering) {
    std::vector<CandidateToken> c = {{"ns", 9, 0.9}, {"li", 8, 0.8}, {"hack", 7, 0.7}};
    auto kept = apply_denylist(c, std::unordered_set<std::string>{"ns", "li"});
    ASSERT_EQ(kept.size(), 1u);
    EXPECT_EQ(kept[0].token, "hack");
    EXPECT_EQ(apply_denylist(c, std::unordered_set<std::string>{}), c);
    EXPECT_EQ(apply_denylist(c, std::unordered_set<std::string>{"absent"}), c);

    TempDir dir("satd-deny");
    EXPECT_EQ(apply_denylist(c, dir.write("deny.txt", "ns\n\nli\n")).size(), 1u);
    EXPECT_EQ(apply_denylist(c, dir.write("empty.txt", "")), c);
    EXPECT_THROW(apply_denylist(c, dir.path() / "missing.txt"), DataError);
}

TEST(Augment, SizesAndCollisions) {
    std::vector<std::string> base_tokens = specials();
    for (int i = 0; base_tokens.size() < 28996; ++i) base_tokens.push_back(fmt::format("b{}", i));
    Vocabulary base(base_tokens);
    std::vector<CandidateToken> finals;
    for (int i = 0; i < 1653; ++i) finals.push_back({fmt::format("d{}", i), 1, 1.0});
    auto augmented = augment_vocabulary(base, finals);
    EXPECT_EQ(augmented.size(), 30649u);
    for (TokenId id = 0; id < base.size(); id += 997) EXPECT_EQ(augmented.token(id), base.token(id));
    EXPECT_EQ(augmented.find("d0"), TokenId{28996});

    EXPECT_EQ(augment_vocabulary(base, std::vector<CandidateToken>{}), base);
    EXPECT_THROW(augment_vocabulary(base, std::vector<CandidateToken>{{"b7", 1, 1.0}}), DataError);
}

TEST(Candidates, Render) {
    std::vector<CandidateToken> c = {{"a,b", 3, 0.3}, {"x", 1, 1.0 / 3}};
    EXPECT_EQ(render_candidates(c), "token,project_count,project_fraction\n\"a,b\",3,0.3000\nx,1,0.3333\n");
}
