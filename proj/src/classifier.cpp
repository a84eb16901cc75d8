// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#include "satd/classifier.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "satd/error.hpp"

namespace satd {

namespace {

// log(1 + exp(x)) without overflow.
double softplus(double x) noexcept { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

double margin(const LinearModelState& state, const FeatureVector& features) {
    double z = state.bias;
    for (TokenId id : features) z += state.weights[id];
    return z;
}

double target(Label label) noexcept { return label == Label::Satd ? 1.0 : 0.0; }

}  // namespace

LinearModelState LinearModelState::zero(std::size_t vocab_size, const LinearHyper& hyper) {
    LinearModelState s;
    s.weights.assign(vocab_size, 0.0);
    s.hyper = hyper;
    return s;
}

FeatureVector presence_features(const Vocabulary& vocab, const TokenSequence& sequence) {
    FeatureVector out;
    out.reserve(sequence.ids.size());
    for (TokenId id : sequence.ids) {
        if (!vocab.is_special(id)) out.push_back(id);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

FeatureVector presence_features(const Vocabulary& vocab, const PreprocessedText& text,
                                std::size_t max_seq_len) {
    return presence_features(vocab, tokenize(vocab, text, max_seq_len));
}

FeatureTable build_feature_table(const Vocabulary& vocab, std::span<const Comment> comments,
                                 std::size_t max_seq_len) {
    FeatureTable table;
    table.reserve(comments.size());
    for (const auto& c : comments) {
        table.emplace(key_of(c), presence_features(vocab, split_identifiers(c.text), max_seq_len));
    }
    return table;
}

double logistic(double z) noexcept {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

double batch_objective(const LinearModelState& state, std::span<const LabeledFeatures> batch) {
    double loss = 0.0;
    for (const auto& item : batch) {
        double z = margin(state, *item.features);
        loss += item.label == Label::Satd ? softplus(-z) : softplus(z);
    }
    loss /= static_cast<double>(batch.size());
    double norm = 0.0;
    for (double w : state.weights) norm += w * w;
    return loss + 0.5 * state.hyper.l2 * norm;
}

LinearGradient batch_gradient(const LinearModelState& state, std::span<const LabeledFeatures> batch) {
    LinearGradient g;
    g.weights.assign(state.weights.size(), 0.0);
    const double inv = 1.0 / static_cast<double>(batch.size());
    for (const auto& item : batch) {
        double residual = (logistic(margin(state, *item.features)) - target(item.label)) * inv;
        for (TokenId id : *item.features) g.weights[id] += residual;
        g.bias += residual;
    }
    for (std::size_t j = 0; j < g.weights.size(); ++j) g.weights[j] += state.hyper.l2 * state.weights[j];
    return g;
}

LinearModelState train_linear(BatchSource& stream, const FeatureTable& features, std::size_t vocab_size,
                              const LinearHyper& hyper) {
    if (!(hyper.learning_rate >= 0.0)) throw ConfigError("learning_rate must be non-negative");
    if (!(hyper.l2 >= 0.0)) throw ConfigError("l2 must be non-negative");

    LinearModelState state = LinearModelState::zero(vocab_size, hyper);
    if (hyper.epochs == 0) return state;

    const double lr = hyper.learning_rate;
    const double decay = 1.0 - lr * hyper.l2;
    std::vector<double> grad(vocab_size, 0.0);
    std::vector<TokenId> touched;
    std::vector<LabeledFeatures> items;

    while (auto batch = stream.next()) {
        if (batch->epoch >= hyper.epochs) break;
        if (batch->items.empty()) continue;

        items.clear();
        for (const auto& item : batch->items) {
            auto it = features.find(item.key);
            if (it == features.end()) {
                throw RunError(fmt::format("batch {}:{} refers to unknown comment {}:{}", batch->epoch,
                                           batch->batch_index, item.key.project, item.key.id));
            }
            items.push_back({&it->second, item.label});
        }

        const double inv = 1.0 / static_cast<double>(items.size());
        double loss = 0.0;
        double grad_bias = 0.0;
        touched.clear();
        for (const auto& item : items) {
            double z = margin(state, *item.features);
            loss += item.label == Label::Satd ? softplus(-z) : softplus(z);
            double residual = (logistic(z) - target(item.label)) * inv;
            grad_bias += residual;
            for (TokenId id : *item.features) {
                if (grad[id] == 0.0) touched.push_back(id);
                grad[id] += residual;
            }
        }
        if (!std::isfinite(loss)) {
            throw RunError(fmt::format("non-finite loss at epoch {} batch {}", batch->epoch,
                                       batch->batch_index));
        }

        if (decay != 1.0) {
            for (double& w : state.weights) w *= decay;
        }
        for (TokenId id : touched) {
            state.weights[id] -= lr * grad[id];
            grad[id] = 0.0;
        }
        state.bias -= lr * grad_bias;
    }
    return state;
}

double predict_linear(const LinearModelState& state, const FeatureVector& features) {
    return logistic(margin(state, features));
}

double predict_linear(const LinearModelState& state, const Vocabulary& vocab, const PreprocessedText& text,
                      std::size_t max_seq_len) {
    return predict_linear(state, presence_features(vocab, text, max_seq_len));
}

nlohmann::json to_json(const LinearModelState& state) {
    nlohmann::json weights = nlohmann::json::array();
    for (std::size_t j = 0; j < state.weights.size(); ++j) {
        if (state.weights[j] != 0.0) weights.push_back({j, state.weights[j]});
    }
    return {{"format", "satd-linear"},
            {"version", 1},
            {"vocab_size", state.weights.size()},
            {"bias", state.bias},
            {"hyper",
             {{"learning_rate", state.hyper.learning_rate},
              {"epochs", state.hyper.epochs},
              {"l2", state.hyper.l2}}},
            {"weights", std::move(weights)}};
}

LinearModelState linear_state_from_json(const nlohmann::json& j) {
    try {
        if (j.at("format") != "satd-linear" || j.at("version") != 1) {
            throw DataError("unsupported model format");
        }
        LinearModelState s;
        s.weights.assign(j.at("vocab_size").get<std::size_t>(), 0.0);
        s.bias = j.at("bias").get<double>();
        const auto& h = j.at("hyper");
        s.hyper.learning_rate = h.at("learning_rate").get<double>();
        s.hyper.epochs = h.at("epochs").get<std::size_t>();
        s.hyper.l2 = h.at("l2").get<double>();
        for (const auto& pair : j.at("weights")) {
            auto id = pair.at(0).get<std::size_t>();
            if (id >= s.weights.size()) throw DataError(fmt::format("weight id {} out of range", id));
            s.weights[id] = pair.at(1).get<double>();
        }
        if (!std::isfinite(s.bias) ||
            !std::all_of(s.weights.begin(), s.weights.end(), [](double w) { return std::isfinite(w); })) {
            throw DataError("model holds non-finite values");
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(fmt::format("malformed model file: {}", e.what()));
    }
}

LinearClassifier::LinearClassifier(std::shared_ptr<const Vocabulary> vocab, LinearHyper hyper,
                                   std::size_t max_seq_len)
    : vocab_(std::move(vocab)), max_seq_len_(max_seq_len),
      state_(LinearModelState::zero(vocab_->size(), hyper)) {}

void LinearClassifier::train(BatchSource& batches, std::span<const Comment> comments) {
    FeatureTable table = build_feature_table(*vocab_, comments, max_seq_len_);
    state_ = train_linear(batches, table, vocab_->size(), state_.hyper);
}

double LinearClassifier::score(const PreprocessedText& text) const {
    return predict_linear(state_, *vocab_, text, max_seq_len_);
}

double MatClassifier::score(const PreprocessedText& text) const {
    return find_triggers(lex_, text.original).empty() ? 0.0 : 1.0;
}

std::unique_ptr<Classifier> mat_as_classifier(const TriggerLexicon& lex) {
    return std::make_unique<MatClassifier>(lex);
}

}  // namespace satd
