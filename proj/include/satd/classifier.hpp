// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "satd/augment.hpp"
#include "satd/corpus.hpp"
#include "satd/lexicon.hpp"
#include "satd/preprocess.hpp"
#include "satd/vocab.hpp"

namespace satd {

/// Training consumes a batch stream whose keys resolve against the given
/// comments; scoring is deterministic once trained. A score at or above
/// the threshold means SATD.
class Classifier {
public:
    virtual ~Classifier() = default;

    virtual void train(BatchSource& batches, std::span<const Comment> comments) = 0;
    virtual double score(const PreprocessedText& text) const = 0;

    Label classify(const PreprocessedText& text, double threshold = 0.5) const {
        return score(text) >= threshold ? Label::Satd : Label::NonSatd;
    }
};

// ---------------------------------------------------------------------------
// Linear model

struct LinearHyper {
    double learning_rate = 0.1;
    std::size_t epochs = 5;
    double l2 = 1e-4;

    bool operator==(const LinearHyper&) const = default;
};

struct LinearModelState {
    std::vector<double> weights;  // indexed by token id
    double bias = 0.0;
    LinearHyper hyper;

    static LinearModelState zero(std::size_t vocab_size, const LinearHyper& hyper = {});

    bool operator==(const LinearModelState&) const = default;
};

/// Sorted distinct token ids of a sequence, specials excluded.
using FeatureVector = std::vector<TokenId>;

FeatureVector presence_features(const Vocabulary& vocab, const TokenSequence& sequence);
FeatureVector presence_features(const Vocabulary& vocab, const PreprocessedText& text,
                                std::size_t max_seq_len = kDefaultMaxSeqLen);

using FeatureTable = std::unordered_map<CommentKey, FeatureVector, CommentKeyHash>;

FeatureTable build_feature_table(const Vocabulary& vocab, std::span<const Comment> comments,
                                 std::size_t max_seq_len = kDefaultMaxSeqLen);

double logistic(double z) noexcept;

struct LabeledFeatures {
    const FeatureVector* features = nullptr;
    Label label = Label::NonSatd;
};

/// Mean binary cross-entropy over the batch plus (l2 / 2) * |w|^2, whose
/// gradient is the update direction used in training.
double batch_objective(const LinearModelState& state, std::span<const LabeledFeatures> batch);

struct LinearGradient {
    std::vector<double> weights;
    double bias = 0.0;
};

LinearGradient batch_gradient(const LinearModelState& state, std::span<const LabeledFeatures> batch);

/// Gradient descent with one step per batch,
///   w <- w - lr * (dL/dw + l2 * w),  b <- b - lr * dL/db,
/// starting from zero weights. Batches are consumed in stream order while
/// their epoch is below hyper.epochs. Throws RunError on a non-finite loss.
LinearModelState train_linear(BatchSource& stream, const FeatureTable& features,
                              std::size_t vocab_size, const LinearHyper& hyper);

double predict_linear(const LinearModelState& state, const FeatureVector& features);
double predict_linear(const LinearModelState& state, const Vocabulary& vocab,
                      const PreprocessedText& text, std::size_t max_seq_len = kDefaultMaxSeqLen);

/// `{"format":"satd-linear","version":1,"vocab_size":..,"bias":..,
///   "hyper":{..},"weights":[[id,value],..]}` with zero weights omitted.
nlohmann::json to_json(const LinearModelState& state);
LinearModelState linear_state_from_json(const nlohmann::json& j);

class LinearClassifier final : public Classifier {
public:
    LinearClassifier(std::shared_ptr<const Vocabulary> vocab, LinearHyper hyper,
                     std::size_t max_seq_len = kDefaultMaxSeqLen);

    void train(BatchSource& batches, std::span<const Comment> comments) override;
    double score(const PreprocessedText& text) const override;

    const LinearModelState& state() const noexcept { return state_; }

private:
    std::shared_ptr<const Vocabulary> vocab_;
    std::size_t max_seq_len_;
    LinearModelState state_;
};

// ---------------------------------------------------------------------------
// Keyword baseline

/// Training-free: 1.0 when the lexicon matches the comment as written, else 0.0.
class MatClassifier final : public Classifier {
public:
    explicit MatClassifier(TriggerLexicon lex) : lex_(std::move(lex)) {}

    void train(BatchSource&, std::span<const Comment>) override {}
    double score(const PreprocessedText& text) const override;

private:
    TriggerLexicon lex_;
};

std::unique_ptr<Classifier> mat_as_classifier(const TriggerLexicon& lex);

}  // namespace satd
