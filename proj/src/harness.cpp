// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#include "satd/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <mutex>
#include <thread>
#include <unordered_map>

#include <fmt/format.h>

#include "harness_internal.hpp"
#include "satd/classifier.hpp"
#include "satd/error.hpp"
#include "satd/io.hpp"
#include "satd/preprocess.hpp"
#include "satd/random.hpp"

namespace satd {

namespace fs = std::filesystem;

namespace detail {

namespace {

constexpr std::uint64_t kFoldTag = 0x464f4c44ULL;
constexpr std::uint64_t kUnitTag = 0x554e4954ULL;

}  // namespace

std::uint64_t fold_seed(const ExperimentConfig& config, const std::string& project) {
    return derive_seed(config.seed, {kFoldTag, fnv1a64(project)});
}

std::uint64_t unit_seed(const ExperimentConfig& config, const UnitSpec& unit) {
    return derive_seed(config.seed,
                       {kUnitTag, fnv1a64(unit.project), static_cast<std::uint64_t>(unit.fold + 1)});
}

std::string unit_name(const UnitSpec& unit) {
    std::string safe;
    for (char c : unit.project) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
                  c == '_' || c == '-';
        safe.push_back(ok ? c : '_');
    }
    if (unit.fold < 0) return "cross/" + safe;
    return fmt::format("{}/fold-{:02}", safe, unit.fold);
}

RunContext make_context(const ExperimentConfig& config, const CorpusCollection& collection) {
    config.validate();
    if (collection.projects.empty()) throw DataError("empty collection");

    RunContext ctx;
    ctx.config = &config;
    ctx.collection = &collection;
    if (config.projects.empty()) {
        for (const auto& p : collection.projects) ctx.selected.push_back(p.project);
    } else {
        for (const auto& p : collection.projects) {
            if (std::find(config.projects.begin(), config.projects.end(), p.project) != config.projects.end()) {
                ctx.selected.push_back(p.project);
            }
        }
        for (const auto& name : config.projects) {
            if (!collection.find(name)) throw ConfigError(fmt::format("unknown project '{}'", name));
        }
    }
    if (!config.dup_lexicon.empty()) ctx.dup_lexicon = TriggerLexicon::load(config.dup_lexicon, MatchMode::Strict);

    if (config.scenario == Scenario::Intra) {
        for (const auto& name : ctx.selected) {
            const ProjectDataset& ds = *collection.find(name);
            ctx.folds.push_back(stratified_kfold(ds, config.k, fold_seed(config, name)));
            for (std::size_t f = 0; f < config.k; ++f) ctx.units.push_back({name, static_cast<int>(f)});
        }
    } else {
        for (auto& split : mto_splits(collection)) {
            if (std::find(ctx.selected.begin(), ctx.selected.end(), split.test_project) == ctx.selected.end()) {
                continue;
            }
            ctx.units.push_back({split.test_project, -1});
            ctx.splits.push_back(std::move(split));
        }
    }
    return ctx;
}

UnitData materialize(const RunContext& ctx, const UnitSpec& unit) {
    UnitData data;
    if (unit.fold >= 0) {
        const ProjectDataset& ds = *ctx.collection->find(unit.project);
        auto plan = std::find_if(ctx.folds.begin(), ctx.folds.end(),
                                 [&](const FoldPlan& p) { return p.project == unit.project; });
        const auto& test_ids = plan->folds[static_cast<std::size_t>(unit.fold)];
        std::unordered_set<std::int64_t> test_set(test_ids.begin(), test_ids.end());
        for (const auto& c : ds.comments) (test_set.contains(c.id) ? data.test : data.train).push_back(c);
    } else {
        for (const auto& p : ctx.collection->projects) {
            auto& dest = p.project == unit.project ? data.test : data.train;
            dest.insert(dest.end(), p.comments.begin(), p.comments.end());
        }
    }
    return data;
}

TrainingPlan plan_training(const RunContext& ctx, const UnitSpec& unit, std::vector<Comment> train) {
    const ExperimentConfig& config = *ctx.config;
    TrainingPlan plan;
    plan.sampler = config.sampler(unit_seed(config, unit));
    if (config.augmentation == Augmentation::DupFmr) {
        DupOptions options;
        options.scope = config.dup_scope;
        // Duplicate ids start past every id of the project, test folds included.
        for (const auto& p : ctx.collection->projects) {
            options.id_floor[p.project] = static_cast<std::int64_t>(p.n_total);
        }
        DupResult dup = dup_augment(train, ctx.dup_lexicon, options);
        plan.train = std::move(dup.train);
        plan.duplicates = dup.duplicates;
    } else {
        plan.train = std::move(train);
    }
    if (config.augmentation != Augmentation::None) {
        plan.pool = satd_subset(plan.train);
        plan.fmr = !plan.pool.empty();
    }
    return plan;
}

std::unique_ptr<BatchSource> open_stream(const TrainingPlan& plan) {
    if (plan.fmr) return std::make_unique<FmrBatchStream>(plan.train, plan.pool, plan.sampler);
    return std::make_unique<PlainBatchStream>(plan.train, plan.sampler);
}

std::size_t minority_in_first_epoch(const TrainingPlan& plan) {
    auto stream = open_stream(plan);
    std::size_t count = 0;
    while (auto batch = stream->next()) {
        if (batch->epoch != 0) break;
        count += batch->count(Label::Satd);
    }
    return count;
}

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
}

}  // namespace detail

namespace {

using detail::RunContext;
using detail::UnitSpec;

std::string utc_now() {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Builds vocabularies for the linear model: one universal vocabulary, or
/// one per held-out project when the cross scenario excludes test words.
class VocabularyFactory {
public:
    VocabularyFactory(const ExperimentConfig& config, const CorpusCollection& collection)
        : config_(config) {
        if (!config.vocab.empty()) {
            fixed_ = std::make_shared<const Vocabulary>(load_base_vocabulary(config.vocab));
            return;
        }
        base_ = config.base_vocab.empty() ? builtin_char_vocabulary() : load_base_vocabulary(config.base_vocab);
        if (!config.denylist.empty()) denylist_ = load_denylist(config.denylist);
        words_ = collect_project_words(collection);
    }

    std::shared_ptr<const Vocabulary> universal() {
        if (fixed_) return fixed_;
        std::call_once(universal_once_, [this] { universal_ = build(""); });
        return universal_;
    }

    std::shared_ptr<const Vocabulary> for_unit(const UnitSpec& unit) {
        if (fixed_) return fixed_;
        if (config_.scenario == Scenario::Cross && config_.vocab_scope == VocabScope::Train) {
            return build(unit.project);
        }
        return universal();
    }

private:
    std::shared_ptr<const Vocabulary> build(const std::string& excluded) {
        std::vector<ProjectWords> scope;
        for (const auto& pw : words_) {
            if (pw.project != excluded) scope.push_back(pw);
        }
        auto candidates = discover_candidate_tokens(scope, *base_, config_.vocab_threshold);
        candidates = apply_denylist(std::move(candidates), denylist_);
        return std::make_shared<const Vocabulary>(augment_vocabulary(*base_, candidates));
    }

    const ExperimentConfig& config_;
    std::shared_ptr<const Vocabulary> fixed_;
    std::optional<Vocabulary> base_;
    std::unordered_set<std::string> denylist_;
    std::vector<ProjectWords> words_;
    std::once_flag universal_once_;
    std::shared_ptr<const Vocabulary> universal_;
};

std::unique_ptr<Classifier> make_classifier(const ExperimentConfig& config, VocabularyFactory* vocabs,
                                            const UnitSpec& unit) {
    switch (config.classifier) {
        case ClassifierKind::Linear:
            return std::make_unique<LinearClassifier>(vocabs->for_unit(unit), config.linear, config.max_seq_len);
        case ClassifierKind::MatStrict:
        case ClassifierKind::MatFuzzy: {
            MatchMode mode = config.classifier == ClassifierKind::MatStrict ? MatchMode::Strict : MatchMode::Fuzzy;
            return mat_as_classifier(config.mat_lexicon.empty() ? TriggerLexicon::default_mat(mode)
                                                                : TriggerLexicon::load(config.mat_lexicon, mode));
        }
        case ClassifierKind::External:
            break;
    }
    return nullptr;
}

struct UnitOutcome {
    UnitResult result;
    std::vector<Prediction> predictions;
};

UnitOutcome run_unit(const RunContext& ctx, const UnitSpec& unit, VocabularyFactory* vocabs,
                     const PredictionMap* external) {
    const ExperimentConfig& config = *ctx.config;
    UnitOutcome out;
    out.result.project = unit.project;
    out.result.fold = unit.fold;
    try {
        detail::UnitData data = detail::materialize(ctx, unit);
        out.result.test_size = data.test.size();
        if (data.test.empty()) throw DataError("empty test set");

        detail::TrainingPlan plan = detail::plan_training(ctx, unit, std::move(data.train));
        out.result.train_size = plan.train.size();
        out.result.duplicates = plan.duplicates;
        out.result.satd_pool = plan.pool.size();
        out.result.train_minority_epoch0 = detail::minority_in_first_epoch(plan);

        std::vector<double> scores;
        scores.reserve(data.test.size());
        if (external) {
            for (const auto& c : data.test) scores.push_back(external->at(key_of(c)));
        } else {
            auto classifier = make_classifier(config, vocabs, unit);
            auto stream = detail::open_stream(plan);
            classifier->train(*stream, plan.train);
            for (const auto& c : data.test) scores.push_back(classifier->score(split_identifiers(c.text)));
        }

        std::vector<Label> predicted, truth;
        for (std::size_t i = 0; i < data.test.size(); ++i) {
            predicted.push_back(scores[i] >= config.threshold ? Label::Satd : Label::NonSatd);
            truth.push_back(data.test[i].label);
            out.predictions.push_back({key_of(data.test[i]), scores[i]});
        }
        out.result.metrics = compute_metrics(predicted, truth);
    } catch (const std::exception& e) {
        out.result.ok = false;
        out.result.error = e.what();
        out.predictions.clear();
    }
    return out;
}

RunOutput run_units(const ExperimentConfig& config, const CorpusCollection& collection, Scenario scenario) {
    if (config.scenario != scenario) {
        throw ConfigError(fmt::format("config scenario is '{}', expected '{}'", to_string(config.scenario),
                                      to_string(scenario)));
    }
    RunOutput run;
    run.report.started_at = utc_now();
    RunContext ctx = detail::make_context(config, collection);

    std::optional<PredictionMap> external;
    if (config.classifier == ClassifierKind::External) {
        external = import_predictions(config.predictions);
        std::vector<CommentKey> expected;
        for (const auto& unit : ctx.units) {
            for (const auto& c : detail::materialize(ctx, unit).test) expected.push_back(key_of(c));
        }
        require_predictions(*external, expected);
    }

    std::unique_ptr<VocabularyFactory> vocabs;
    if (config.classifier == ClassifierKind::Linear) {
        vocabs = std::make_unique<VocabularyFactory>(config, collection);
    }

    std::vector<UnitOutcome> outcomes(ctx.units.size());
    detail::parallel_for(ctx.units.size(), config.threads, [&](std::size_t i) {
        outcomes[i] = run_unit(ctx, ctx.units[i], vocabs.get(), external ? &*external : nullptr);
    });

    run.report.config_digest = config_digest(config);
    run.report.scenario = config.scenario;
    run.report.classifier = config.classifier;
    run.report.augmentation = config.augmentation;
    run.report.seed = config.seed;
    for (auto& o : outcomes) {
        const auto& r = o.result;
        std::string where = r.fold >= 0 ? fmt::format("{} fold {}", r.project, r.fold) : r.project;
        if (r.ok) {
            run.log.push_back(fmt::format("{}: train={} dup={} pool={} minority@epoch0={} test={} f1={:.4f}", where,
                                          r.train_size, r.duplicates, r.satd_pool, r.train_minority_epoch0,
                                          r.test_size, r.metrics.f1));
        } else {
            run.log.push_back(fmt::format("{}: FAILED: {}", where, r.error));
        }
        run.report.units.push_back(std::move(o.result));
        run.predictions.insert(run.predictions.end(), o.predictions.begin(), o.predictions.end());
    }
    aggregate(run.report, &collection);
    run.folds = std::move(ctx.folds);
    run.splits = std::move(ctx.splits);
    run.report.finished_at = utc_now();
    return run;
}

}  // namespace

void aggregate(EvalReport& report, const CorpusCollection* collection) {
    report.projects.clear();
    std::vector<std::string> order;
    std::unordered_map<std::string, std::vector<const UnitResult*>> by_project;
    for (const auto& u : report.units) {
        auto [it, fresh] = by_project.try_emplace(u.project);
        if (fresh) order.push_back(u.project);
        it->second.push_back(&u);
    }
    double sum_p = 0, sum_r = 0, sum_f = 0;
    std::size_t counted = 0;
    for (const auto& name : order) {
        ProjectResult pr;
        pr.project = name;
        std::size_t ok = 0;
        for (const UnitResult* u : by_project[name]) {
            ++pr.units;
            if (!u->ok) {
                ++pr.failed_units;
                continue;
            }
            ++ok;
            pr.precision += u->metrics.precision;
            pr.recall += u->metrics.recall;
            pr.f1 += u->metrics.f1;
        }
        if (ok > 0) {
            pr.precision /= static_cast<double>(ok);
            pr.recall /= static_cast<double>(ok);
            pr.f1 /= static_cast<double>(ok);
            sum_p += pr.precision;
            sum_r += pr.recall;
            sum_f += pr.f1;
            ++counted;
        }
        if (collection) {
            if (const auto* ds = collection->find(name)) pr.degenerate = ds->n_satd == 0;
        }
        report.projects.push_back(std::move(pr));
    }
    if (counted > 0) {
        report.avg_precision = sum_p / static_cast<double>(counted);
        report.avg_recall = sum_r / static_cast<double>(counted);
        report.avg_f1 = sum_f / static_cast<double>(counted);
    } else {
        report.avg_precision = report.avg_recall = report.avg_f1 = 0.0;
    }
}

CorpusCollection load_experiment_corpus(const ExperimentConfig& config) {
    if (config.manifest.empty()) throw ConfigError("manifest is required");
    LabelMapping mapping =
        config.label_mapping.empty() ? LabelMapping::standard() : LabelMapping::load(config.label_mapping);
    return load_collection(config.manifest, mapping);
}

RunOutput run_intra(const ExperimentConfig& config, const CorpusCollection& collection) {
    return run_units(config, collection, Scenario::Intra);
}

RunOutput run_cross(const ExperimentConfig& config, const CorpusCollection& collection) {
    return run_units(config, collection, Scenario::Cross);
}

RunOutput run_experiment(const ExperimentConfig& config, const CorpusCollection& collection) {
    return config.scenario == Scenario::Intra ? run_intra(config, collection) : run_cross(config, collection);
}

RunOutput run_experiment(const ExperimentConfig& config) {
    config.validate();
    CorpusCollection collection = load_experiment_corpus(config);
    return run_experiment(config, collection);
}

fs::path write_run(const ExperimentConfig& config, const RunOutput& run) {
    fs::path dir = config.outdir / run.report.config_digest;
    io::write_atomic(dir / "report.json", to_json(run.report).dump(2) + "\n");
    io::write_atomic(dir / "report.csv", render_report(run.report, ReportFormat::Csv));
    io::write_atomic(dir / "report.md", render_report(run.report, ReportFormat::Markdown));

    nlohmann::json folds = nlohmann::json::array();
    if (config.scenario == Scenario::Intra) {
        for (const auto& f : run.folds) folds.push_back(to_json(f));
    } else {
        for (const auto& s : run.splits) folds.push_back(to_json(s));
    }
    io::write_atomic(dir / "folds.json", folds.dump(2) + "\n");

    std::string preds;
    for (const auto& p : run.predictions) {
        nlohmann::ordered_json line = {{"project", p.key.project}, {"id", p.key.id}, {"score", p.score}};
        preds += line.dump() + "\n";
    }
    io::write_atomic(dir / "predictions.jsonl", preds);

    std::string log = fmt::format("started {}\nfinished {}\n\n{}\n", run.report.started_at,
                                  run.report.finished_at, render_config(config));
    for (const auto& line : run.log) log += line + "\n";
    io::write_atomic(dir / "log.txt", log);
    return dir;
}

}  // namespace satd
