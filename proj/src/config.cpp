// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#include "satd/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "satd/error.hpp"
#include "satd/io.hpp"
#include "satd/random.hpp"

namespace satd {

namespace fs = std::filesystem;

std::string_view to_string(Scenario v) noexcept { return v == Scenario::Intra ? "intra" : "cross"; }

std::string_view to_string(Augmentation v) noexcept {
    switch (v) {
        case Augmentation::None: return "none";
        case Augmentation::Fmr: return "fmr";
        case Augmentation::DupFmr: return "dup_fmr";
    }
    return "?";
}

std::string_view to_string(ClassifierKind v) noexcept {
    switch (v) {
        case ClassifierKind::Linear: return "linear";
        case ClassifierKind::MatStrict: return "mat_strict";
        case ClassifierKind::MatFuzzy: return "mat_fuzzy";
        case ClassifierKind::External: return "external";
    }
    return "?";
}

std::string_view to_string(VocabScope v) noexcept { return v == VocabScope::Train ? "train" : "all"; }

std::string_view to_string(DupScope v) noexcept { return v == DupScope::Triggered ? "triggered" : "all"; }

namespace {

template <class Enum, std::size_t N>
Enum parse_enum(std::string_view key, std::string_view value, const Enum (&options)[N]) {
    for (Enum e : options) {
        if (to_string(e) == value) return e;
    }
    std::string allowed;
    for (Enum e : options) allowed += fmt::format("{}{}", allowed.empty() ? "" : "|", to_string(e));
    throw ConfigError(fmt::format("{}: '{}' is not one of {}", key, value, allowed));
}

std::uint64_t parse_uint(std::string_view key, std::string_view value) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError(fmt::format("{}: '{}' is not a non-negative integer", key, value));
    }
    return out;
}

double parse_double(std::string_view key, std::string_view value) {
    std::string s(value);
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty() || !std::isfinite(out)) {
        throw ConfigError(fmt::format("{}: '{}' is not a number", key, value));
    }
    return out;
}

std::string fmt_double(double v) { return fmt::format("{}", v); }

std::vector<std::string> split_list(std::string_view value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        std::size_t comma = value.find(',', start);
        std::string_view part = io::trim(value.substr(start, comma == std::string_view::npos
                                                                 ? std::string_view::npos
                                                                 : comma - start));
        if (!part.empty()) out.emplace_back(part);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string join_list(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
    return out;
}

using Cfg = ExperimentConfig;

ConfigKey path_key(std::string name, std::string help, fs::path Cfg::*member, bool affects = true) {
    return {std::move(name), std::move(help),
            [member](Cfg& c, std::string_view v) { c.*member = fs::path(std::string(v)); },
            [member](const Cfg& c) { return (c.*member).string(); }, affects};
}

ConfigKey size_key(std::string name, std::string help, std::size_t Cfg::*member, bool affects = true) {
    return {name, std::move(help),
            [member, name](Cfg& c, std::string_view v) { c.*member = parse_uint(name, v); },
            [member](const Cfg& c) { return std::to_string(c.*member); }, affects};
}

ConfigKey double_key(std::string name, std::string help, double Cfg::*member) {
    return {name, std::move(help),
            [member, name](Cfg& c, std::string_view v) { c.*member = parse_double(name, v); },
            [member](const Cfg& c) { return fmt_double(c.*member); }};
}

std::vector<ConfigKey> make_keys() {
    static constexpr Scenario scenarios[] = {Scenario::Intra, Scenario::Cross};
    static constexpr Augmentation augmentations[] = {Augmentation::None, Augmentation::Fmr,
                                                     Augmentation::DupFmr};
    static constexpr ClassifierKind classifiers[] = {ClassifierKind::Linear, ClassifierKind::MatStrict,
                                                     ClassifierKind::MatFuzzy, ClassifierKind::External};
    static constexpr VocabScope scopes[] = {VocabScope::Train, VocabScope::All};
    static constexpr DupScope dup_scopes[] = {DupScope::Triggered, DupScope::All};

    std::vector<ConfigKey> keys;
    keys.push_back({"scenario", "intra|cross",
                    [](Cfg& c, std::string_view v) { c.scenario = parse_enum("scenario", v, scenarios); },
                    [](const Cfg& c) { return std::string(to_string(c.scenario)); }});
    keys.push_back(path_key("manifest", "collection manifest (project<TAB>csv path per line)", &Cfg::manifest));
    keys.push_back(path_key("label_mapping", "raw-label mapping file (default: standard)", &Cfg::label_mapping));
    keys.push_back({"projects", "comma-separated project filter",
                    [](Cfg& c, std::string_view v) { c.projects = split_list(v); },
                    [](const Cfg& c) { return join_list(c.projects); }});
    keys.push_back({"augmentation", "none|fmr|dup_fmr",
                    [](Cfg& c, std::string_view v) {
                        c.augmentation = parse_enum("augmentation", v, augmentations);
                    },
                    [](const Cfg& c) { return std::string(to_string(c.augmentation)); }});
    keys.push_back({"classifier", "linear|mat_strict|mat_fuzzy|external",
                    [](Cfg& c, std::string_view v) { c.classifier = parse_enum("classifier", v, classifiers); },
                    [](const Cfg& c) { return std::string(to_string(c.classifier)); }});
    keys.push_back(size_key("k", "folds for the intra scenario", &Cfg::k));
    keys.push_back({"seed", "experiment seed",
                    [](Cfg& c, std::string_view v) { c.seed = parse_uint("seed", v); },
                    [](const Cfg& c) { return std::to_string(c.seed); }});
    keys.push_back(size_key("batch_size", "training batch size", &Cfg::batch_size));
    keys.push_back(double_key("trigger_prob", "fraction of batches FMR adjusts", &Cfg::trigger_prob));
    keys.push_back(double_key("target_ratio", "max NON_SATD:SATD in adjusted batches", &Cfg::target_ratio));
    keys.push_back({"dup_scope", "triggered|all",
                    [](Cfg& c, std::string_view v) { c.dup_scope = parse_enum("dup_scope", v, dup_scopes); },
                    [](const Cfg& c) { return std::string(to_string(c.dup_scope)); }});
    keys.push_back({"learning_rate", "linear model step size",
                    [](Cfg& c, std::string_view v) { c.linear.learning_rate = parse_double("learning_rate", v); },
                    [](const Cfg& c) { return fmt_double(c.linear.learning_rate); }});
    keys.push_back({"epochs", "training epochs",
                    [](Cfg& c, std::string_view v) { c.linear.epochs = parse_uint("epochs", v); },
                    [](const Cfg& c) { return std::to_string(c.linear.epochs); }});
    keys.push_back({"l2", "L2 regularization coefficient",
                    [](Cfg& c, std::string_view v) { c.linear.l2 = parse_double("l2", v); },
                    [](const Cfg& c) { return fmt_double(c.linear.l2); }});
    keys.push_back(double_key("threshold", "score threshold for SATD", &Cfg::threshold));
    keys.push_back(size_key("max_seq_len", "token sequence cap", &Cfg::max_seq_len));
    keys.push_back(path_key("mat_lexicon", "MAT trigger file (default: built-in tags)", &Cfg::mat_lexicon));
    keys.push_back(path_key("dup_lexicon", "DUP trigger file (default: built-in triggers)", &Cfg::dup_lexicon));
    keys.push_back(path_key("base_vocab", "base vocabulary (default: built-in characters)", &Cfg::base_vocab));
    keys.push_back(path_key("vocab", "prebuilt vocabulary; disables discovery", &Cfg::vocab));
    keys.push_back(path_key("denylist", "tokens removed from discovered candidates", &Cfg::denylist));
    keys.push_back(double_key("vocab_threshold", "project fraction a word must exceed", &Cfg::vocab_threshold));
    keys.push_back({"vocab_scope", "train|all (cross scenario vocabulary source)",
                    [](Cfg& c, std::string_view v) { c.vocab_scope = parse_enum("vocab_scope", v, scopes); },
                    [](const Cfg& c) { return std::string(to_string(c.vocab_scope)); }});
    keys.push_back(path_key("predictions", "external predictions JSONL", &Cfg::predictions));
    keys.push_back(path_key("outdir", "output directory", &Cfg::outdir, false));
    keys.push_back(size_key("threads", "worker threads (0: all cores)", &Cfg::threads, false));
    return keys;
}

bool is_path_key(std::string_view key) {
    static constexpr std::string_view paths[] = {"manifest",   "label_mapping", "mat_lexicon",
                                                 "dup_lexicon", "base_vocab",   "vocab",
                                                 "denylist",   "predictions",   "outdir"};
    return std::find(std::begin(paths), std::end(paths), key) != std::end(paths);
}

std::string normalize_key(std::string_view key) {
    std::string out(key);
    std::replace(out.begin(), out.end(), '-', '_');
    return out;
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
    static const std::vector<ConfigKey> keys = make_keys();
    return keys;
}

void set_config_value(ExperimentConfig& config, std::string_view key, std::string_view value) {
    std::string name = normalize_key(key);
    for (const auto& k : config_keys()) {
        if (k.name == name) {
            k.set(config, io::trim(value));
            return;
        }
    }
    throw ConfigError(fmt::format("unknown configuration key '{}'", key));
}

ExperimentConfig parse_config(std::string_view text, const fs::path& base_dir) {
    ExperimentConfig config;
    std::size_t line_no = 0;
    for (const auto& raw : io::split_lines(text)) {
        ++line_no;
        std::string_view line = io::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("config line {}: expected 'key = value'", line_no));
        }
        std::string key = normalize_key(io::trim(line.substr(0, eq)));
        std::string_view value = io::trim(line.substr(eq + 1));
        if (is_path_key(key) && !value.empty() && !base_dir.empty() && fs::path(value).is_relative()) {
            set_config_value(config, key, (base_dir / fs::path(value)).lexically_normal().string());
        } else {
            set_config_value(config, key, value);
        }
    }
    return config;
}

ExperimentConfig load_config(const fs::path& path) {
    std::string text;
    try {
        text = io::read_file(path);
    } catch (const DataError& e) {
        throw ConfigError(e.what());
    }
    return parse_config(text, path.parent_path());
}

std::string render_config(const ExperimentConfig& config) {
    std::string out;
    for (const auto& k : config_keys()) out += fmt::format("{} = {}\n", k.name, k.get(config));
    return out;
}

std::string config_digest(const ExperimentConfig& config) {
    std::string canonical;
    for (const auto& k : config_keys()) {
        if (k.affects_results) canonical += fmt::format("{}={}\n", k.name, k.get(config));
    }
    return fmt::format("{:016x}", fnv1a64(canonical));
}

void ExperimentConfig::validate() const {
    if (manifest.empty()) throw ConfigError("manifest is required");
    if (scenario == Scenario::Intra && k < 2) throw ConfigError("k must be at least 2");
    if (classifier == ClassifierKind::External && predictions.empty()) {
        throw ConfigError("classifier=external requires a predictions file");
    }
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw ConfigError("threshold must lie in [0, 1]");
    if (max_seq_len < 2) throw ConfigError("max_seq_len must be at least 2");
    if (!(vocab_threshold >= 0.0 && vocab_threshold < 1.0)) {
        throw ConfigError("vocab_threshold must lie in [0, 1)");
    }
    if (!(linear.learning_rate >= 0.0)) throw ConfigError("learning_rate must be non-negative");
    if (!(linear.l2 >= 0.0)) throw ConfigError("l2 must be non-negative");
    sampler(seed).validate();
}

SamplerConfig ExperimentConfig::sampler(std::uint64_t unit_seed) const {
    SamplerConfig s;
    s.batch_size = batch_size;
    s.trigger_prob = trigger_prob;
    s.target_ratio = target_ratio;
    s.seed = unit_seed;
    s.epochs = std::max<std::size_t>(linear.epochs, 1);
    return s;
}

}  // namespace satd
