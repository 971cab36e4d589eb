#include "robustgait/distill.hpp"

#include <algorithm>
#include <cmath>

namespace robustgait::distill {

namespace {

void check_finite(const std::vector<std::vector<double>>& rows) {
    for (const auto& row : rows)
        for (double v : row)
            if (!std::isfinite(v)) throw InvalidLoss("non-finite embedding entry");
}

std::vector<std::vector<double>> l2_normalize(const std::vector<std::vector<double>>& rows) {
    std::vector<std::vector<double>> out = rows;
    for (auto& row : out) {
        double norm = 0.0;
        for (double v : row) norm += v * v;
        norm = std::sqrt(norm);
        if (norm > 0.0)
            for (double& v : row) v /= norm;
    }
    return out;
}

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

} // namespace

double contrastive_loss(const EmbeddingBatch& teacher, const EmbeddingBatch& student,
                        const LossConfig& cfg) {
    const std::size_t b = teacher.vectors.size();
    if (b < 2 || student.vectors.size() != b)
        throw BatchTooSmall("contrastive loss needs index-aligned batches with B >= 2");
    if (cfg.temperature <= 0.0) throw InvalidConfig("temperature must be positive");
    check_finite(teacher.vectors);
    check_finite(student.vectors);

    const auto t = l2_normalize(teacher.vectors);
    const auto s = l2_normalize(student.vectors);

    // sim[i][j] = <t_i, s_j> / tau
    std::vector<std::vector<double>> sim(b, std::vector<double>(b));
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < b; ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < t[i].size(); ++k) dot += t[i][k] * s[j][k];
            sim[i][j] = dot / cfg.temperature;
        }

    auto nll = [&](bool teacher_anchor, std::size_t i) {
        double max_v = -1e300;
        for (std::size_t j = 0; j < b; ++j)
            max_v = std::max(max_v, teacher_anchor ? sim[i][j] : sim[j][i]);
        double denom = 0.0;
        for (std::size_t j = 0; j < b; ++j)
            denom += std::exp((teacher_anchor ? sim[i][j] : sim[j][i]) - max_v);
        return -(sim[i][i] - max_v - std::log(denom));
    };

    double loss = 0.0;
    for (std::size_t i = 0; i < b; ++i) loss += nll(true, i) + nll(false, i);
    return loss / (2.0 * static_cast<double>(b));
}

double softmax_loss(const std::vector<std::vector<double>>& logits,
                    const std::vector<int>& labels) {
    if (logits.empty() || logits.size() != labels.size())
        throw InvalidConfig("logits and labels must be nonempty and aligned");
    check_finite(logits);
    const std::size_t classes = logits.front().size();
    double loss = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= classes)
            throw InvalidLabel("label out of range");
        const double max_v = *std::max_element(logits[i].begin(), logits[i].end());
        double denom = 0.0;
        for (double z : logits[i]) denom += std::exp(z - max_v);
        loss -= logits[i][labels[i]] - max_v - std::log(denom);
    }
    return loss / static_cast<double>(logits.size());
}

double triplet_loss(const EmbeddingBatch& batch, const LossConfig& cfg) {
    const std::size_t b = batch.vectors.size();
    if (b < 2 || batch.labels.size() != b)
        throw BatchTooSmall("triplet loss needs a labeled batch with B >= 2");
    if (cfg.margin < 0.0) throw InvalidConfig("margin must be nonnegative");
    check_finite(batch.vectors);

    std::vector<std::vector<double>> dist(b, std::vector<double>(b, 0.0));
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = i + 1; j < b; ++j)
            dist[i][j] = dist[j][i] = euclidean(batch.vectors[i], batch.vectors[j]);

    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t a = 0; a < b; ++a)
        for (std::size_t p = 0; p < b; ++p) {
            if (p == a || batch.labels[p] != batch.labels[a]) continue;
            for (std::size_t n = 0; n < b; ++n) {
                if (batch.labels[n] == batch.labels[a]) continue;
                sum += std::max(0.0, dist[a][p] - dist[a][n] + cfg.margin);
                ++count;
            }
        }
    if (count == 0)
        throw NoValidTriplet("batch has no (anchor, positive, negative) triple");
    return sum / static_cast<double>(count);
}

double total_loss(const std::array<double, 6>& components, const LossWeights& weights) {
    double total = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
        if (!std::isfinite(components[i]) || components[i] < 0.0)
            throw InvalidLoss("loss components must be finite and nonnegative");
        if (!std::isfinite(weights.lambda[i]) || weights.lambda[i] < 0.0)
            throw InvalidLoss("loss weights must be finite and nonnegative");
        total += weights.lambda[i] * components[i];
    }
    return total;
}

} // namespace robustgait::distill
