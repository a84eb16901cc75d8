// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#include "satd/augment.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "satd/error.hpp"

namespace satd {

namespace {

// Stream tags keep the shuffle and coin generators independent.
constexpr std::uint64_t kShuffleTag = 0x5348554646ULL;
constexpr std::uint64_t kCoinTag = 0x434f494eULL;

std::vector<BatchItem> to_items(std::span<const Comment> comments) {
    std::vector<BatchItem> items;
    items.reserve(comments.size());
    for (const auto& c : comments) items.push_back({key_of(c), c.label});
    return items;
}

}  // namespace

void SamplerConfig::validate() const {
    if (batch_size < 2) throw ConfigError("batch_size must be at least 2");
    if (!(trigger_prob >= 0.0 && trigger_prob <= 1.0)) {
        throw ConfigError(fmt::format("trigger_prob {} outside [0, 1]", trigger_prob));
    }
    if (!(target_ratio >= 1.0)) throw ConfigError(fmt::format("target_ratio {} below 1", target_ratio));
}

std::size_t Batch::count(Label label) const {
    return static_cast<std::size_t>(
        std::count_if(items.begin(), items.end(), [label](const BatchItem& i) { return i.label == label; }));
}

PlainBatchStream::PlainBatchStream(std::span<const Comment> train, const SamplerConfig& cfg)
    : items_(to_items(train)), cfg_(cfg) {
    cfg_.validate();
    if (items_.empty()) throw DataError("training set is empty");
    start_epoch();
}

void PlainBatchStream::start_epoch() {
    order_ = items_;
    Rng rng(derive_seed(cfg_.seed, {kShuffleTag, epoch_}));
    rng.shuffle(order_);
    cursor_ = 0;
    batch_index_ = 0;
}

std::optional<Batch> PlainBatchStream::next() {
    if (epoch_ >= cfg_.epochs) return std::nullopt;
    Batch batch;
    batch.epoch = epoch_;
    batch.batch_index = batch_index_++;
    std::size_t stop = std::min(cursor_ + cfg_.batch_size, order_.size());
    batch.items.assign(order_.begin() + static_cast<std::ptrdiff_t>(cursor_),
                       order_.begin() + static_cast<std::ptrdiff_t>(stop));
    cursor_ = stop;
    if (cursor_ == order_.size()) {
        ++epoch_;
        if (epoch_ < cfg_.epochs) start_epoch();
    }
    return batch;
}

std::size_t rebalance_batch(Batch& batch, std::span<const BatchItem> satd_pool, double target_ratio,
                            Rng& rng) {
    std::size_t satd = batch.count(Label::Satd);
    std::size_t majority = batch.items.size() - satd;
    std::size_t replaced = 0;
    while (static_cast<double>(majority) > target_ratio * static_cast<double>(satd)) {
        std::vector<std::size_t> victims;
        victims.reserve(majority);
        for (std::size_t i = 0; i < batch.items.size(); ++i) {
            if (batch.items[i].label == Label::NonSatd) victims.push_back(i);
        }
        std::size_t victim = victims[rng.index(victims.size())];
        batch.items[victim] = satd_pool[rng.index(satd_pool.size())];
        ++satd;
        --majority;
        ++replaced;
    }
    return replaced;
}

FmrBatchStream::FmrBatchStream(std::span<const Comment> train, std::span<const Comment> satd_pool,
                               const SamplerConfig& cfg)
    : plain_(train, cfg), pool_(to_items(satd_pool)), cfg_(cfg) {
    if (pool_.empty()) throw DataError("FMR needs a non-empty SATD pool");
    for (const auto& item : pool_) {
        if (item.label != Label::Satd) {
            throw DataError(fmt::format("SATD pool holds non-SATD comment {}:{}", item.key.project,
                                        item.key.id));
        }
    }
}

std::optional<Batch> FmrBatchStream::next() {
    auto batch = plain_.next();
    if (!batch) return batch;
    Rng rng(derive_seed(cfg_.seed, {kCoinTag, batch->epoch, batch->batch_index}));
    if (rng.chance(cfg_.trigger_prob)) {
        batch->adjusted = true;
        rebalance_batch(*batch, pool_, cfg_.target_ratio, rng);
    }
    return batch;
}

PlainBatchStream plain_batches(std::span<const Comment> train, const SamplerConfig& cfg) {
    return PlainBatchStream(train, cfg);
}

FmrBatchStream fmr_batches(std::span<const Comment> train, std::span<const Comment> satd_pool,
                           const SamplerConfig& cfg) {
    return FmrBatchStream(train, satd_pool, cfg);
}

std::vector<Comment> satd_subset(std::span<const Comment> train) {
    std::vector<Comment> out;
    std::copy_if(train.begin(), train.end(), std::back_inserter(out),
                 [](const Comment& c) { return c.label == Label::Satd; });
    return out;
}

std::vector<Batch> drain(BatchSource& source) {
    std::vector<Batch> out;
    while (auto b = source.next()) out.push_back(std::move(*b));
    return out;
}

bool is_marker_only(std::string_view text) noexcept {
    return text.find_first_not_of("/* \t\r\n\f\v") == std::string_view::npos;
}

DupResult dup_augment(std::span<const Comment> train, const TriggerLexicon& lex,
                      const DupOptions& options) {
    DupResult result;
    result.train.assign(train.begin(), train.end());

    std::unordered_map<std::string, std::int64_t> next_id;
    for (const auto& c : train) {
        auto [it, fresh] = next_id.try_emplace(c.project, c.id + 1);
        if (!fresh) it->second = std::max(it->second, c.id + 1);
    }
    for (auto& [project, id] : next_id) {
        if (auto floor = options.id_floor.find(project); floor != options.id_floor.end()) {
            id = std::max(id, floor->second);
        }
    }

    for (const auto& c : train) {
        if (c.label != Label::Satd) continue;
        bool triggered = !find_triggers(lex, c.text, MatchMode::Strict).empty();
        if (!triggered && options.scope == DupScope::Triggered) continue;

        std::string text = remove_triggers(lex, c.text);
        if (is_marker_only(text)) {
            ++result.skipped;
            continue;
        }
        Comment dup = c;
        dup.text = std::move(text);
        dup.id = next_id[c.project]++;
        dup.source_id = c.id;
        result.train.push_back(std::move(dup));
        ++result.duplicates;
    }
    return result;
}

}  // namespace satd
