// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

// satd: command-line front end for the SATD detection experiment toolkit.

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "satd/config.hpp"
#include "satd/corpus.hpp"
#include "satd/error.hpp"
#include "satd/harness.hpp"
#include "satd/io.hpp"
#include "satd/vocab.hpp"

namespace fs = std::filesystem;

namespace {

/// Config file plus per-key flag overrides shared by run, export-batches
/// and import-predictions.
struct ConfigOptions {
    std::string config_path;
    std::map<std::string, std::string> overrides;

    void attach(CLI::App* cmd) {
        cmd->add_option("-c,--config", config_path, "experiment config file (key = value)");
        for (const auto& key : satd::config_keys()) {
            std::string flag = "--" + key.name;
            std::replace(flag.begin(), flag.end(), '_', '-');
            cmd->add_option_function<std::string>(
                flag, [this, name = key.name](const std::string& v) { overrides[name] = v; }, key.help);
        }
    }

    satd::ExperimentConfig resolve() const {
        satd::ExperimentConfig config = config_path.empty() ? satd::ExperimentConfig{}
                                                            : satd::load_config(config_path);
        for (const auto& [key, value] : overrides) satd::set_config_value(config, key, value);
        return config;
    }
};

satd::LabelMapping mapping_from(const std::string& path) {
    return path.empty() ? satd::LabelMapping::standard() : satd::LabelMapping::load(path);
}

void print_rejections(const satd::CorpusCollection& collection) {
    for (const auto& p : collection.projects) {
        for (const auto& r : p.rejected) {
            std::cerr << fmt::format("{}: row {} (line {}) rejected: {}\n", p.project, r.row, r.line, r.reason);
        }
    }
}

int cmd_ingest(const std::string& manifest, const std::string& mapping) {
    auto collection = satd::load_collection(manifest, mapping_from(mapping));
    print_rejections(collection);
    std::cout << satd::render_stats(satd::corpus_stats(collection));
    return 0;
}

int cmd_vocab_build(const std::string& manifest, const std::string& mapping, const std::string& base,
                    const std::string& denylist, double threshold, const std::string& out,
                    const std::string& candidates_out) {
    auto collection = satd::load_collection(manifest, mapping_from(mapping));
    satd::Vocabulary base_vocab = base.empty() ? satd::builtin_char_vocabulary() : satd::load_base_vocabulary(base);
    auto candidates = satd::discover_candidate_tokens(collection, base_vocab, threshold);
    std::size_t discovered = candidates.size();
    if (!denylist.empty()) candidates = satd::apply_denylist(std::move(candidates), fs::path(denylist));
    satd::Vocabulary vocab = satd::augment_vocabulary(base_vocab, candidates);
    satd::io::write_atomic(out, vocab.serialize());
    if (!candidates_out.empty()) satd::io::write_atomic(candidates_out, satd::render_candidates(candidates));
    std::cout << fmt::format("base tokens:       {}\ncandidates found:  {}\nafter denylist:    {}\n"
                             "vocabulary size:   {}\nwritten to:        {}\n",
                             base_vocab.size(), discovered, candidates.size(), vocab.size(), out);
    return 0;
}

int cmd_vocab_inspect(const std::string& vocab_path, const std::string& base, const std::string& text,
                      std::size_t max_seq_len) {
    satd::Vocabulary vocab = satd::load_base_vocabulary(vocab_path);
    std::cout << fmt::format("tokens: {}\n", vocab.size());
    if (!base.empty()) {
        satd::Vocabulary base_vocab = satd::load_base_vocabulary(base);
        std::size_t added = vocab.size() >= base_vocab.size() ? vocab.size() - base_vocab.size() : 0;
        std::cout << fmt::format("base tokens: {}\nadded tokens: {}\n", base_vocab.size(), added);
    }
    if (!text.empty()) {
        auto pre = satd::split_identifiers(text);
        auto seq = satd::tokenize(vocab, pre, max_seq_len);
        std::cout << "preprocessed: " << pre.text << "\npieces:";
        for (auto id : seq.ids) std::cout << ' ' << vocab.token(id);
        std::cout << (seq.truncated ? "\n(truncated)\n" : "\n");
    }
    return 0;
}

int cmd_run(const satd::ExperimentConfig& config) {
    auto run = satd::run_experiment(config);
    fs::path dir = satd::write_run(config, run);
    std::cout << satd::render_report(run.report, satd::ReportFormat::Markdown);
    std::size_t failed = 0;
    for (const auto& u : run.report.units) failed += u.ok ? 0 : 1;
    std::cout << fmt::format("\nresults in {}\n", dir.string());
    if (failed > 0) {
        std::cerr << fmt::format("{} unit(s) failed; see {}\n", failed, (dir / "log.txt").string());
        return 3;
    }
    return 0;
}

int cmd_export(const satd::ExperimentConfig& config, const std::string& out) {
    config.validate();
    auto collection = satd::load_experiment_corpus(config);
    auto summary = satd::export_batches(config, collection, out);
    std::cout << fmt::format("exported {} unit(s), {} batch line(s) to {}\n", summary.units, summary.batch_lines,
                             summary.directory.string());
    return 0;
}

int cmd_report(const std::string& input, const std::string& format, const std::string& out) {
    auto report = satd::eval_report_from_json(nlohmann::json::parse(satd::io::read_file(input)));
    auto text = satd::render_report(report, format == "csv" ? satd::ReportFormat::Csv : satd::ReportFormat::Markdown);
    if (out.empty()) {
        std::cout << text;
    } else {
        satd::io::write_atomic(out, text);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SATD detection experiment toolkit"};
    app.require_subcommand(1);

    std::string manifest, mapping;
    auto* ingest = app.add_subcommand("ingest", "validate a collection and print SATD statistics");
    ingest->add_option("-m,--manifest", manifest, "collection manifest")->required();
    ingest->add_option("--mapping", mapping, "raw-label mapping file");

    auto* vocab = app.add_subcommand("vocab", "build or inspect a domain vocabulary");
    vocab->require_subcommand(1);
    std::string base, denylist, vocab_out = "vocab.txt", candidates_out;
    double threshold = 0.25;
    auto* vbuild = vocab->add_subcommand("build", "discover domain tokens and write the augmented vocabulary");
    vbuild->add_option("-m,--manifest", manifest, "collection manifest")->required();
    vbuild->add_option("--mapping", mapping, "raw-label mapping file");
    vbuild->add_option("--base", base, "base vocabulary (default: built-in characters)");
    vbuild->add_option("--denylist", denylist, "tokens to drop from the candidates");
    vbuild->add_option("--threshold", threshold, "project fraction a word must exceed")->capture_default_str();
    vbuild->add_option("-o,--out", vocab_out, "output vocabulary file")->capture_default_str();
    vbuild->add_option("--candidates", candidates_out, "write candidate report CSV here");

    std::string vocab_path, text;
    std::size_t max_seq_len = satd::kDefaultMaxSeqLen;
    auto* vinspect = vocab->add_subcommand("inspect", "show vocabulary size and tokenize a sample");
    vinspect->add_option("--vocab", vocab_path, "vocabulary file")->required();
    vinspect->add_option("--base", base, "base vocabulary, to count added tokens");
    vinspect->add_option("--text", text, "text to tokenize");
    vinspect->add_option("--max-seq-len", max_seq_len, "sequence cap")->capture_default_str();

    ConfigOptions run_opts, export_opts, import_opts;
    auto* run = app.add_subcommand("run", "run an intra- or cross-project experiment");
    run_opts.attach(run);

    std::string export_out;
    auto* exp = app.add_subcommand("export-batches", "write training batch streams for an external trainer");
    export_opts.attach(exp);
    exp->add_option("-o,--out", export_out, "output directory")->required();

    std::string predictions_path;
    auto* imp = app.add_subcommand("import-predictions", "evaluate scores produced by an external trainer");
    import_opts.attach(imp);
    imp->add_option("-p,--predictions-file", predictions_path, "predictions JSONL")->required();

    std::string report_in, report_format = "markdown", report_out;
    auto* rep = app.add_subcommand("report", "render a report.json as CSV or Markdown");
    rep->add_option("-i,--input", report_in, "report.json")->required();
    rep->add_option("-f,--format", report_format, "csv|markdown")
        ->check(CLI::IsMember({"csv", "markdown"}))
        ->capture_default_str();
    rep->add_option("-o,--out", report_out, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*ingest) return cmd_ingest(manifest, mapping);
        if (*vbuild) return cmd_vocab_build(manifest, mapping, base, denylist, threshold, vocab_out, candidates_out);
        if (*vinspect) return cmd_vocab_inspect(vocab_path, base, text, max_seq_len);
        if (*run) return cmd_run(run_opts.resolve());
        if (*exp) return cmd_export(export_opts.resolve(), export_out);
        if (*imp) {
            auto config = import_opts.resolve();
            config.classifier = satd::ClassifierKind::External;
            config.predictions = predictions_path;
            return cmd_run(config);
        }
        if (*rep) return cmd_report(report_in, report_format, report_out);
    } catch (const satd::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
