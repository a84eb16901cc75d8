// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#include <functional>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "satd/corpus.hpp"
#include "satd/error.hpp"
#include "synthetic.hpp"

using namespace satd;
using satd::fixtures::TempDir;

namespace {

const char* kThreeRows =
    "project,comment,raw_label\n"
    "Demo,// returns the cached value,WITHOUT_CLASSIFICATION\n"
    "Demo,\"// TODO: this is a hack, fix later\",DESIGN\n"
    "Demo,/* plain javadoc */,WITHOUT_CLASSIFICATION\n";

std::string what_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST(LabelMapping, StandardMapsWithoutClassificationToNonSatd) {
    auto m = LabelMapping::standard();
    EXPECT_EQ(m.map("WITHOUT_CLASSIFICATION"), Label::NonSatd);
    EXPECT_EQ(m.map("DESIGN"), Label::Satd);
    EXPECT_EQ(m.map("IMPLEMENTATION"), Label::Satd);
    EXPECT_EQ(m.map(""), std::nullopt);
}

TEST(LabelMapping, ParsesRulesAndFallback) {
    auto m = LabelMapping::parse("# comment\nnegative -> NON_SATD\npositive -> SATD\n* -> REJECT\n");
    EXPECT_EQ(m.map("negative"), Label::NonSatd);
    EXPECT_EQ(m.map("positive"), Label::Satd);
    EXPECT_EQ(m.map("other"), std::nullopt);

    auto with_default = LabelMapping::parse("a -> SATD\n* -> NON_SATD\n");
    EXPECT_EQ(with_default.map("zzz"), Label::NonSatd);
    EXPECT_THROW(LabelMapping::parse("a => SATD"), ConfigError);
    EXPECT_THROW(LabelMapping::parse("a -> MAYBE"), ConfigError);
}

TEST(LoadProject, ThreeRowFile) {
    auto ds = parse_project(kThreeRows, LabelMapping::standard(), "Demo");
    EXPECT_EQ(ds.n_total, 3u);
    EXPECT_EQ(ds.n_satd, 1u);
    ASSERT_EQ(ds.comments.size(), 3u);
    EXPECT_EQ(ds.comments[1].text, "// TODO: this is a hack, fix later");
    EXPECT_EQ(ds.comments[1].label, Label::Satd);
    EXPECT_EQ(ds.comments[1].raw_label, "DESIGN");
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(ds.comments[i].id, static_cast<std::int64_t>(i));
}

TEST(LoadProject, EmptyFileHasNoRows) {
    EXPECT_EQ(what_of([] { parse_project("", LabelMapping::standard(), "X"); }), "no rows");
    EXPECT_EQ(what_of([] { parse_project("project,comment,raw_label\n", LabelMapping::standard(), "X"); }),
              "no rows");
}

TEST(LoadProject, BlankCommentsAreRejectedAndIdsStayDense) {
    const char* text =
        "project,comment,raw_label\n"
        "P,first,WITHOUT_CLASSIFICATION\n"
        "P,\"   \",DESIGN\n"
        "P,third,DESIGN\n";
    auto ds = parse_project(text, LabelMapping::standard(), "P");
    EXPECT_EQ(ds.n_total, 2u);
    ASSERT_EQ(ds.rejected.size(), 1u);
    EXPECT_EQ(ds.rejected[0].row, 2u);
    EXPECT_EQ(ds.rejected[0].line, 3u);
    EXPECT_EQ(ds.comments[1].text, "third");
    EXPECT_EQ(ds.comments[1].id, 1);
    EXPECT_EQ(ds.n_total + ds.rejected.size(), 3u);
}

TEST(LoadProject, ErrorsNameTheRow) {
    auto mapping = LabelMapping::parse("ok -> SATD\n");
    auto unmapped = what_of([&] {
        parse_project("project,comment,raw_label\nP,a,ok\nP,b,weird\n", mapping, "P");
    });
    EXPECT_NE(unmapped.find("row 2"), std::string::npos) << unmapped;
    EXPECT_NE(unmapped.find("weird"), std::string::npos);

    auto malformed = what_of([] {
        parse_project("project,comment,raw_label\nP,a,b,c\n", LabelMapping::standard(), "P");
    });
    EXPECT_NE(malformed.find("row 1"), std::string::npos) << malformed;

    EXPECT_THROW(parse_project("id,text\n1,a\n", LabelMapping::standard(), "P"), DataError);
    EXPECT_THROW(load_project("/nonexistent/file.csv", LabelMapping::standard(), "P"), DataError);
}

TEST(LoadProject, ReloadIsIdentical) {
    TempDir dir("satd-corpus");
    auto path = dir.write("demo.csv", kThreeRows);
    auto a = load_project(path, LabelMapping::standard(), "Demo");
    auto b = load_project(path, LabelMapping::standard(), "Demo");
    EXPECT_EQ(a.comments, b.comments);
}

TEST(LoadProject, EveryCommentAgreesWithTheMapping) {
    auto collection = fixtures::make_planted_corpus({.projects = 2, .comments_per_project = 300});
    TempDir dir("satd-corpus");
    auto manifest = fixtures::write_collection(dir, collection);
    auto loaded = load_collection(manifest, LabelMapping::standard());
    for (const auto& p : loaded.projects) {
        for (const auto& c : p.comments) EXPECT_EQ(LabelMapping::standard().map(c.raw_label), c.label);
    }
}

TEST(LoadCollection, ManifestRules) {
    TempDir dir("satd-manifest");
    dir.write("a.csv", kThreeRows);
    dir.write("b.csv", kThreeRows);
    auto ok = dir.write("pair.tsv", "# two projects\nA\ta.csv\nB\tb.csv\n");
    auto collection = load_collection(ok, LabelMapping::standard());
    EXPECT_EQ(collection.name, "pair");
    ASSERT_EQ(collection.projects.size(), 2u);
    EXPECT_EQ(collection.projects[1].project, "B");
    EXPECT_EQ(collection.projects[1].comments[0].project, "B");

    auto empty = dir.write("empty.tsv", "# nothing\n");
    EXPECT_EQ(what_of([&] { load_collection(empty, LabelMapping::standard()); }), "empty manifest");

    auto dup = dir.write("dup.tsv", "A\ta.csv\nA\tb.csv\n");
    EXPECT_NE(what_of([&] { load_collection(dup, LabelMapping::standard()); }).find("duplicate project 'A'"),
              std::string::npos);

    dir.write("bad.csv", "project,comment,raw_label\nP,x,\n");
    auto broken = dir.write("broken.tsv", "A\ta.csv\nBad\tbad.csv\n");
    auto msg = what_of([&] { load_collection(broken, LabelMapping::standard()); });
    EXPECT_NE(msg.find("project 'Bad'"), std::string::npos) << msg;
}

TEST(LoadCollection, TwentyProjects) {
    TempDir dir("satd-twenty");
    std::string manifest;
    for (int i = 0; i < 20; ++i) {
        dir.write(fmt::format("p{}.csv", i), kThreeRows);
        manifest += fmt::format("Project{}\tp{}.csv\n", i, i);
    }
    auto collection = load_collection(dir.write("manifest.tsv", manifest), LabelMapping::standard(), "All-20");
    EXPECT_EQ(collection.name, "All-20");
    EXPECT_EQ(collection.projects.size(), 20u);
}

TEST(CorpusStats, PercentagesAndTotals) {
    CorpusCollection c;
    std::vector<Label> five_of_forty(40, Label::NonSatd);
    for (int i = 0; i < 5; ++i) five_of_forty[static_cast<std::size_t>(i)] = Label::Satd;
    c.projects.push_back(fixtures::make_labeled_project("Five", five_of_forty));
    c.projects.push_back(fixtures::make_labeled_project("None", std::vector<Label>(10, Label::NonSatd)));

    auto stats = corpus_stats(c);
    EXPECT_DOUBLE_EQ(stats.projects[0].satd_pct, 12.5);
    EXPECT_DOUBLE_EQ(stats.projects[1].satd_pct, 0.0);
    EXPECT_EQ(stats.total.n_total, 50u);
    EXPECT_EQ(stats.total.n_satd, 5u);

    EXPECT_EQ(render_stats(stats),
              "project,n_total,n_satd,satd_pct\n"
              "Five,40,5,12.50\n"
              "None,10,0,0.00\n"
              "TOTAL,50,5,10.00\n");
    EXPECT_THROW(corpus_stats(CorpusCollection{}), DataError);
}
