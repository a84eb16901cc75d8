// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "satd/augment.hpp"
#include "satd/classifier.hpp"
#include "satd/lexicon.hpp"

namespace satd {

enum class Scenario { Intra, Cross };
enum class Augmentation { None, Fmr, DupFmr };
enum class ClassifierKind { Linear, MatStrict, MatFuzzy, External };
enum class VocabScope { Train, All };

std::string_view to_string(Scenario v) noexcept;
std::string_view to_string(Augmentation v) noexcept;
std::string_view to_string(ClassifierKind v) noexcept;
std::string_view to_string(VocabScope v) noexcept;
std::string_view to_string(DupScope v) noexcept;

struct ExperimentConfig {
    Scenario scenario = Scenario::Intra;
    std::filesystem::path manifest;
    std::filesystem::path label_mapping;  // empty: the standard mapping
    std::vector<std::string> projects;    // empty: every project
    Augmentation augmentation = Augmentation::None;
    ClassifierKind classifier = ClassifierKind::Linear;
    std::size_t k = 10;
    std::uint64_t seed = 42;

    std::size_t batch_size = 32;
    double trigger_prob = 0.10;
    double target_ratio = 3.0;
    DupScope dup_scope = DupScope::Triggered;

    LinearHyper linear;
    double threshold = 0.5;
    std::size_t max_seq_len = kDefaultMaxSeqLen;

    std::filesystem::path mat_lexicon;  // empty: built-in MAT tags
    std::filesystem::path dup_lexicon;  // empty: built-in DUP triggers

    std::filesystem::path base_vocab;  // empty: built-in character vocabulary
    std::filesystem::path vocab;       // prebuilt vocabulary; skips discovery
    std::filesystem::path denylist;
    double vocab_threshold = 0.25;
    VocabScope vocab_scope = VocabScope::Train;

    std::filesystem::path predictions;  // classifier=external
    std::filesystem::path outdir = "runs";
    std::size_t threads = 0;  // 0: hardware concurrency

    /// Throws ConfigError on out-of-range values or missing required paths.
    void validate() const;

    SamplerConfig sampler(std::uint64_t unit_seed) const;
};

/// One settable configuration key. Names use underscores; the CLI exposes
/// each as --name-with-dashes.
struct ConfigKey {
    std::string name;
    std::string help;
    std::function<void(ExperimentConfig&, std::string_view)> set;
    std::function<std::string(const ExperimentConfig&)> get;
    bool affects_results = true;
};

const std::vector<ConfigKey>& config_keys();

/// Sets one key, accepting dashes or underscores. Throws ConfigError.
void set_config_value(ExperimentConfig& config, std::string_view key, std::string_view value);

/// `key = value` lines, `#` comments. Relative paths are resolved against
/// `base_dir`.
ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical `key = value` text of every key, in table order.
std::string render_config(const ExperimentConfig& config);

/// 16 hex digits identifying every result-relevant setting.
std::string config_digest(const ExperimentConfig& config);

}  // namespace satd
