// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "satd/corpus.hpp"
#include "satd/lexicon.hpp"
#include "satd/random.hpp"

namespace satd {

struct SamplerConfig {
    std::size_t batch_size = 32;
    double trigger_prob = 0.10;  // fraction of batches considered for adjustment
    double target_ratio = 3.0;   // max NON_SATD:SATD in an adjusted batch
    std::uint64_t seed = 0;
    std::size_t epochs = 1;

    /// Throws ConfigError unless 0 <= trigger_prob <= 1, target_ratio >= 1,
    /// batch_size >= 2.
    void validate() const;
};

struct BatchItem {
    CommentKey key;
    Label label = Label::NonSatd;

    bool operator==(const BatchItem&) const = default;
};

struct Batch {
    std::vector<BatchItem> items;
    bool adjusted = false;
    std::size_t epoch = 0;
    std::size_t batch_index = 0;

    std::size_t count(Label label) const;
    bool operator==(const Batch&) const = default;
};

/// A single-consumer sequential stream of training batches.
class BatchSource {
public:
    virtual ~BatchSource() = default;
    virtual std::optional<Batch> next() = 0;
};

/// Every epoch is an independent seeded shuffle of the training items cut
/// into consecutive batches; only the last batch of an epoch may be short.
class PlainBatchStream final : public BatchSource {
public:
    PlainBatchStream(std::span<const Comment> train, const SamplerConfig& cfg);

    std::optional<Batch> next() override;

private:
    void start_epoch();

    std::vector<BatchItem> items_;
    std::vector<BatchItem> order_;
    SamplerConfig cfg_;
    std::size_t epoch_ = 0;
    std::size_t cursor_ = 0;
    std::size_t batch_index_ = 0;
};

/// Forced minority re-sampling over a plain stream. Each batch flips a coin
/// seeded by (seed, epoch, batch); when it fires, NON_SATD items are
/// replaced one at a time by draws from the SATD pool until
/// NON_SATD <= target_ratio * SATD. Batch size never changes.
class FmrBatchStream final : public BatchSource {
public:
    /// Throws DataError for an empty pool or a pool item not labeled SATD.
    FmrBatchStream(std::span<const Comment> train, std::span<const Comment> satd_pool,
                   const SamplerConfig& cfg);

    std::optional<Batch> next() override;

    std::size_t pool_size() const noexcept { return pool_.size(); }

private:
    PlainBatchStream plain_;
    std::vector<BatchItem> pool_;
    SamplerConfig cfg_;
};

/// Rebalances one batch in place using `rng` for victim and pool choices.
/// Returns the number of replacements made.
std::size_t rebalance_batch(Batch& batch, std::span<const BatchItem> satd_pool,
                            double target_ratio, Rng& rng);

PlainBatchStream plain_batches(std::span<const Comment> train, const SamplerConfig& cfg);
FmrBatchStream fmr_batches(std::span<const Comment> train, std::span<const Comment> satd_pool,
                           const SamplerConfig& cfg);

/// The SATD-labeled comments of `train`, in order.
std::vector<Comment> satd_subset(std::span<const Comment> train);

/// Pulls every remaining batch.
std::vector<Batch> drain(BatchSource& source);

enum class DupScope { Triggered, All };

struct DupOptions {
    DupScope scope = DupScope::Triggered;
    // Per project, the smallest id a duplicate may take. Duplicates never
    // reuse an id at or below the largest training id either.
    std::unordered_map<std::string, std::int64_t> id_floor;
};

struct DupResult {
    std::vector<Comment> train;  // originals followed by duplicates
    std::size_t duplicates = 0;
    std::size_t skipped = 0;  // duplicates dropped as empty or marker-only
};

/// Appends, for each SATD comment with a strict trigger, a copy with the
/// triggers removed. Copies that end up holding only comment markers are
/// skipped. With DupScope::All trigger-free SATD comments are copied as is.
DupResult dup_augment(std::span<const Comment> train, const TriggerLexicon& lex,
                      const DupOptions& options = {});

/// True when only '/', '*' and whitespace remain.
bool is_marker_only(std::string_view text) noexcept;

}  // namespace satd
