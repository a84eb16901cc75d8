// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#include <algorithm>
#include <cctype>

#include <gtest/gtest.h>

#include "satd/error.hpp"
#include "satd/lexicon.hpp"
#include "satd/random.hpp"
#include "synthetic.hpp"

using namespace satd;

namespace {

const TriggerLexicon kTodo({"todo"}, MatchMode::Strict);

Comment comment(std::string text) {
    return {0, "P", std::move(text), Label::NonSatd, "", {}};
}

}  // namespace

TEST(Lexicon, Construction) {
    auto lex = TriggerLexicon::parse("# tags\nFIXME\n\ntodo\nfix\ntodo\n", MatchMode::Fuzzy);
    EXPECT_EQ(lex.triggers(), (std::vector<std::string>{"fixme", "todo", "fix"}));
    EXPECT_EQ(lex.mode(), MatchMode::Fuzzy);
    EXPECT_EQ(TriggerLexicon::default_mat().triggers().size(), 4u);
    auto dup = TriggerLexicon::default_dup().triggers();
    EXPECT_NE(std::find(dup.begin(), dup.end(), "ugly"), dup.end());
    EXPECT_THROW(TriggerLexicon({}, MatchMode::Strict), ConfigError);
    EXPECT_THROW(TriggerLexicon({"to do"}, MatchMode::Strict), ConfigError);
    EXPECT_THROW(TriggerLexicon({"to-do"}, MatchMode::Strict), ConfigError);
    EXPECT_THROW(TriggerLexicon::parse("# only a comment\n", MatchMode::Strict), ConfigError);
    EXPECT_THROW(TriggerLexicon::load("/nonexistent/lexicon.txt", MatchMode::Strict), ConfigError);
}

TEST(FindTriggers, Examples) {
    EXPECT_EQ(find_triggers(kTodo, "// TODO: nothing appears to read this"), (std::vector<Span>{{3, 7}}));
    EXPECT_TRUE(find_triggers(kTodo, "methodology").empty());
    EXPECT_TRUE(find_triggers(kTodo, "methodology", MatchMode::Fuzzy).empty());
    EXPECT_EQ(find_triggers(kTodo, "xtodox", MatchMode::Fuzzy), (std::vector<Span>{{1, 5}}));
    EXPECT_TRUE(find_triggers(kTodo, "xtodox").empty());
}

TEST(FindTriggers, WordEdgesAndOverlap) {
    EXPECT_EQ(find_triggers(kTodo, "//TODO:"), (std::vector<Span>{{2, 6}}));
    EXPECT_EQ(find_triggers(kTodo, "todo_later").size(), 1u);
    EXPECT_TRUE(find_triggers(kTodo, "todo2").empty());
    EXPECT_TRUE(find_triggers(kTodo, "caf\xC3\xA9todo").empty());
    EXPECT_EQ(find_triggers(kTodo, "TODOTODO", MatchMode::Fuzzy), (std::vector<Span>{{0, 4}, {4, 8}}));

    TriggerLexicon nested({"fix", "fixme"}, MatchMode::Fuzzy);
    EXPECT_EQ(find_triggers(nested, "FIXMEfix"), (std::vector<Span>{{0, 5}, {5, 8}}));
    EXPECT_EQ(find_triggers(nested, "fixme fix", MatchMode::Strict), (std::vector<Span>{{0, 5}, {6, 9}}));
}

TEST(RemoveTriggers, Examples) {
    auto lex = TriggerLexicon::default_dup();
    EXPECT_EQ(remove_triggers(lex, "// FIXME: This should probably..."), "// This should probably...");
    EXPECT_EQ(remove_triggers(lex, "// plain comment  with  gaps "), "// plain comment  with  gaps ");
    EXPECT_EQ(remove_triggers(lex, "// TODO TODO fix"), "// fix");
    EXPECT_EQ(remove_triggers(lex, "// TODO"), "//");
    EXPECT_EQ(remove_triggers(lex, "/* hack */"), "/* */");
    EXPECT_EQ(remove_triggers(lex, "//TODO: make this ugly code pretty"), "// make this code pretty");
    EXPECT_EQ(remove_triggers(lex, "// hackathon is fine"), "// hackathon is fine");
}

TEST(RemoveTriggers, LeavesNoStrictSpan) {
    auto lex = TriggerLexicon::default_dup();
    Rng rng(4);
    const std::vector<std::string> words = {"//", "/*", "*/", "TODO", "todo:", "Fixme", "XXX", "hack:",
                                            "ugly", "code", "fix", "x", ":", "hackathon", " "};
    for (int trial = 0; trial < 5000; ++trial) {
        std::string text;
        std::size_t n = rng.index(8);
        for (std::size_t i = 0; i < n; ++i) text += words[rng.index(words.size())] + (rng.chance(0.7) ? " " : "");
        auto cleaned = remove_triggers(lex, text);
        ASSERT_TRUE(find_triggers(lex, cleaned, MatchMode::Strict).empty()) << text << " -> " << cleaned;
        ASSERT_EQ(remove_triggers(lex, cleaned), cleaned);
    }
}

TEST(MatClassify, Examples) {
    auto strict = TriggerLexicon::default_mat();
    EXPECT_EQ(mat_classify(strict, comment("//TODO: I have no idea how to get it...")), Label::Satd);
    EXPECT_EQ(mat_classify(strict, comment("// sorry - otherwise we will get a ClassCastException")),
              Label::NonSatd);
    EXPECT_EQ(mat_classify(strict, comment("// refactor later")), Label::NonSatd);
    EXPECT_EQ(mat_classify(strict.with_mode(MatchMode::Fuzzy), comment("xtodox")), Label::Satd);
    EXPECT_EQ(mat_classify(strict, comment("xtodox")), Label::NonSatd);
}

TEST(Lexicon, StrictIsSubsetOfFuzzyAndCaseInvariant) {
    auto lex = TriggerLexicon::default_dup();
    Rng rng(17);
    const std::string alphabet = "todofixmehackxugly TODO_:/*1";
    for (int trial = 0; trial < 10000; ++trial) {
        std::string text(rng.index(30), ' ');
        for (auto& c : text) c = alphabet[rng.index(alphabet.size())];
        auto strict = find_triggers(lex, text, MatchMode::Strict);
        auto fuzzy = find_triggers(lex, text, MatchMode::Fuzzy);
        ASSERT_TRUE(strict.empty() || !fuzzy.empty()) << text;
        // Every strict span lies inside the fuzzy matched area.
        for (const Span& s : strict) {
            bool covered = std::any_of(fuzzy.begin(), fuzzy.end(),
                                       [&](const Span& f) { return f.begin <= s.begin && s.end <= f.end; });
            ASSERT_TRUE(covered) << text;
        }
        std::string upper = text, lower = text;
        for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        for (auto mode : {MatchMode::Strict, MatchMode::Fuzzy}) {
            auto m = lex.with_mode(mode);
            ASSERT_EQ(mat_classify(m, comment(upper)), mat_classify(m, comment(text)));
            ASSERT_EQ(mat_classify(m, comment(lower)), mat_classify(m, comment(text)));
        }
    }
}
