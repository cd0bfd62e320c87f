#include "etdmine/svm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "etdmine/errors.hpp"

namespace etdmine {

double hinge_objective(std::span<const double> w, double b, const std::vector<const SparseVector*>& rows,
                       std::span<const int> labels, double C) {
    double reg = 0.0;
    for (double v : w) reg += v * v;
    double loss = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i)
        loss += std::max(0.0, 1.0 - labels[i] * (dot(*rows[i], w) + b));
    return 0.5 * reg + C * loss;
}

namespace {

constexpr double kTau = 1e-12;
constexpr std::size_t kMaxGramRows = 4096;

// Linear kernel over the training rows; the Gram matrix is cached when small.
class Kernel {
public:
    explicit Kernel(const std::vector<const SparseVector*>& rows) : rows_(rows), n_(rows.size()) {
        if (n_ <= kMaxGramRows) {
            gram_.resize(n_ * n_);
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = i; j < n_; ++j) gram_[i * n_ + j] = gram_[j * n_ + i] = dot(*rows_[i], *rows_[j]);
        } else {
            buffer_.resize(2 * n_);
        }
    }

    // Row i; slot selects one of two scratch buffers when uncached.
    std::span<const double> row(std::size_t i, int slot) {
        if (!gram_.empty()) return {gram_.data() + i * n_, n_};
        double* out = buffer_.data() + static_cast<std::size_t>(slot) * n_;
        for (std::size_t j = 0; j < n_; ++j) out[j] = dot(*rows_[i], *rows_[j]);
        return {out, n_};
    }

    double diag(std::size_t i) const { return gram_.empty() ? squared_norm(*rows_[i]) : gram_[i * n_ + i]; }

private:
    const std::vector<const SparseVector*>& rows_;
    std::size_t n_;
    std::vector<double> gram_;
    std::vector<double> buffer_;
};

// Interval of b minimizing sum_i max(0, 1 - y_i (s_i + b)); hint is clamped into it.
double best_bias(std::span<const double> scores, std::span<const int> labels, double hint) {
    std::vector<double> pos, neg;
    for (std::size_t i = 0; i < scores.size(); ++i) (labels[i] > 0 ? pos : neg).push_back(labels[i] - scores[i]);
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    std::vector<double> candidates(pos);
    candidates.insert(candidates.end(), neg.begin(), neg.end());
    std::sort(candidates.begin(), candidates.end());

    // Loss slope just right (left) of v: -#{pos > v} + #{neg <= v}  (-#{pos >= v} + #{neg < v}).
    auto right_slope = [&](double v) {
        auto pos_gt = pos.end() - std::upper_bound(pos.begin(), pos.end(), v);
        auto neg_le = std::upper_bound(neg.begin(), neg.end(), v) - neg.begin();
        return static_cast<long>(neg_le - pos_gt);
    };
    auto left_slope = [&](double v) {
        auto pos_ge = pos.end() - std::lower_bound(pos.begin(), pos.end(), v);
        auto neg_lt = std::lower_bound(neg.begin(), neg.end(), v) - neg.begin();
        return static_cast<long>(neg_lt - pos_ge);
    };
    double lo = candidates.back(), hi = candidates.front();
    for (double v : candidates)
        if (right_slope(v) >= 0) {
            lo = v;
            break;
        }
    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it)
        if (left_slope(*it) <= 0) {
            hi = *it;
            break;
        }
    return std::clamp(hint, lo, std::max(lo, hi));
}

BinarySvm solve(const std::vector<const SparseVector*>& rows, std::span<const int> y, std::size_t dim,
                const SvmOptions& opt, Kernel& kernel) {
    const std::size_t n = rows.size();
    const double C = opt.C;
    std::vector<double> alpha(n, 0.0), G(n, -1.0), Qd(n);
    for (std::size_t i = 0; i < n; ++i) Qd[i] = kernel.diag(i);

    auto in_up = [&](std::size_t t) { return (y[t] > 0 && alpha[t] < C) || (y[t] < 0 && alpha[t] > 0); };
    auto in_low = [&](std::size_t t) { return (y[t] > 0 && alpha[t] > 0) || (y[t] < 0 && alpha[t] < C); };

    // Returns false once the maximal violating pair is within tolerance.
    auto select = [&](std::size_t& out_i, std::size_t& out_j) {
        double g_max = -std::numeric_limits<double>::infinity();
        std::size_t i = n;
        for (std::size_t t = 0; t < n; ++t)
            if (in_up(t) && -y[t] * G[t] > g_max) {
                g_max = -y[t] * G[t];
                i = t;
            }
        if (i == n) return false;
        auto Ki = kernel.row(i, 0);
        double g_min = std::numeric_limits<double>::infinity();
        double best = std::numeric_limits<double>::infinity();
        std::size_t j = n;
        for (std::size_t t = 0; t < n; ++t) {
            if (!in_low(t)) continue;
            double v = -y[t] * G[t];
            g_min = std::min(g_min, v);
            double diff = g_max - v;
            if (diff <= 0) continue;
            double quad = Qd[i] + Qd[t] - 2.0 * Ki[t];
            double score = -(diff * diff) / (quad > 0 ? quad : kTau);
            if (score < best) {
                best = score;
                j = t;
            }
        }
        if (j == n || g_max - g_min < opt.kkt_tolerance) return false;
        out_i = i;
        out_j = j;
        return true;
    };

    auto update = [&](std::size_t i, std::size_t j) {
        auto Ki = kernel.row(i, 0);
        auto Kj = kernel.row(j, 1);
        double ai = alpha[i], aj = alpha[j];
        double Qij = y[i] * y[j] * Ki[j];
        if (y[i] != y[j]) {
            double quad = Qd[i] + Qd[j] + 2.0 * Qij;
            if (quad <= 0) quad = kTau;
            double delta = (-G[i] - G[j]) / quad;
            double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0) {
                if (alpha[j] < 0) { alpha[j] = 0; alpha[i] = diff; }
            } else {
                if (alpha[i] < 0) { alpha[i] = 0; alpha[j] = -diff; }
            }
            if (diff > 0) {
                if (alpha[i] > C) { alpha[i] = C; alpha[j] = C - diff; }
            } else {
                if (alpha[j] > C) { alpha[j] = C; alpha[i] = C + diff; }
            }
        } else {
            double quad = Qd[i] + Qd[j] - 2.0 * Qij;
            if (quad <= 0) quad = kTau;
            double delta = (G[i] - G[j]) / quad;
            double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > C) {
                if (alpha[i] > C) { alpha[i] = C; alpha[j] = sum - C; }
                if (alpha[j] > C) { alpha[j] = C; alpha[i] = sum - C; }
            } else {
                if (alpha[j] < 0) { alpha[j] = 0; alpha[i] = sum; }
                if (alpha[i] < 0) { alpha[i] = 0; alpha[j] = sum; }
            }
        }
        double di = alpha[i] - ai, dj = alpha[j] - aj;
        for (std::size_t t = 0; t < n; ++t) G[t] += y[t] * (y[i] * Ki[t] * di + y[j] * Kj[t] * dj);
    };

    // Bias from the KKT conditions: mean over free vectors, else the midpoint of the feasible range.
    auto kkt_bias = [&] {
        double ub = std::numeric_limits<double>::infinity(), lb = -ub, sum = 0.0;
        std::size_t free = 0;
        for (std::size_t t = 0; t < n; ++t) {
            double yg = y[t] * G[t];
            if (alpha[t] >= C) {
                if (y[t] < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
            } else if (alpha[t] <= 0) {
                if (y[t] > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
            } else {
                ++free;
                sum += yg;
            }
        }
        double rho = free > 0 ? sum / static_cast<double>(free) : (ub + lb) / 2.0;
        return -rho;
    };

    BinarySvm best;
    best.w.assign(dim, 0.0);
    double best_obj = std::numeric_limits<double>::infinity();
    std::vector<double> w(dim), scores(n);

    for (std::size_t epoch = 1; epoch <= opt.max_epochs; ++epoch) {
        bool dual_done = false;
        for (std::size_t it = 0; it < n; ++it) {
            std::size_t i = 0, j = 0;
            if (!select(i, j)) {
                dual_done = true;
                break;
            }
            update(i, j);
        }
        best.epochs = epoch;

        std::fill(w.begin(), w.end(), 0.0);
        for (std::size_t t = 0; t < n; ++t)
            if (alpha[t] != 0.0)
                for (const auto& e : *rows[t]) w[e.index] += alpha[t] * y[t] * e.value;
        for (std::size_t t = 0; t < n; ++t) scores[t] = dot(*rows[t], w);
        double b = best_bias(scores, y, kkt_bias());
        double obj = hinge_objective(w, b, rows, y, C);

        if (obj <= best_obj) {
            bool small_step = !best.objective_trace.empty() && best_obj - obj < opt.relative_tolerance * best_obj;
            best_obj = obj;
            best.w = w;
            best.b = b;
            best.objective_trace.push_back(obj);
            if (small_step) {
                best.converged = true;
                break;
            }
        }
        if (dual_done) {
            best.converged = true;
            break;
        }
    }
    return best;
}

}  // namespace

BinarySvm train_binary_svm(const std::vector<const SparseVector*>& rows, std::span<const int> labels,
                           std::size_t dim, const SvmOptions& options) {
    if (rows.size() != labels.size()) throw ConfigError("row and label counts differ");
    bool has_pos = std::count(labels.begin(), labels.end(), 1) > 0;
    bool has_neg = std::count(labels.begin(), labels.end(), -1) > 0;
    if (!has_pos || !has_neg || std::count_if(labels.begin(), labels.end(), [](int l) { return l != 1 && l != -1; }))
        throw ConfigError("binary SVM needs labels in {-1, +1} with both present");
    if (!(options.C > 0.0)) throw ConfigError("C must be > 0");
    Kernel kernel(rows);
    return solve(rows, labels, dim, options, kernel);
}

SvmModel train_svm(const FeatureMatrix& features, const std::vector<std::string>& tags,
                   std::span<const std::size_t> train_rows, const SvmOptions& options) {
    if (tags.size() != features.num_docs()) throw ConfigError("one tag per document is required");
    if (train_rows.empty()) throw ConfigError("empty training set");
    if (!(options.C > 0.0)) throw ConfigError("C must be > 0");

    SvmModel model;
    model.C_ = options.C;
    model.vocab_ = features.vocab;
    model.idf_ = features.idf;
    model.vocab_hash_ = features.vocab.hash();

    std::vector<const SparseVector*> rows;
    for (std::size_t r : train_rows) {
        if (r >= features.num_docs()) throw ConfigError("training row out of range");
        rows.push_back(&features.rows[r]);
        model.classes_.push_back(tags[r]);
    }
    std::sort(model.classes_.begin(), model.classes_.end());
    model.classes_.erase(std::unique(model.classes_.begin(), model.classes_.end()), model.classes_.end());

    const std::size_t dim = features.dim();
    if (model.classes_.size() == 1) {
        model.degenerate_ = true;
        model.weights_.assign(1, std::vector<double>(dim, 0.0));
        model.bias_.assign(1, 0.0);
        return model;
    }

    Kernel kernel(rows);
    std::vector<int> labels(rows.size());
    for (const auto& cls : model.classes_) {
        for (std::size_t i = 0; i < rows.size(); ++i) labels[i] = tags[train_rows[i]] == cls ? 1 : -1;
        auto fitted = solve(rows, labels, dim, options, kernel);
        model.weights_.push_back(fitted.w);
        model.bias_.push_back(fitted.b);
        model.training_.push_back(std::move(fitted));
    }
    return model;
}

std::vector<double> SvmModel::decision_values(const SparseVector& x) const {
    std::vector<double> f(classes_.size());
    for (std::size_t c = 0; c < f.size(); ++c) f[c] = dot(x, weights_[c]) + bias_[c];
    return f;
}

std::size_t argmax_decision(std::span<const double> values) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < values.size(); ++c)
        if (values[c] > values[best]) best = c;
    return best;
}

const std::string& SvmModel::predict(const SparseVector& x) const {
    return classes_.at(argmax_decision(decision_values(x)));
}

void SvmModel::scale(double factor) {
    for (auto& w : weights_)
        for (auto& v : w) v *= factor;
    for (auto& b : bias_) b *= factor;
}

void SvmModel::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError(fmt::format("cannot write model '{}'", path.string()));
    out << fmt::format("etdmine-svm {}\n", kFormatVersion);
    out << fmt::format("vocab_hash {:016x}\n", vocab_hash_);
    out << fmt::format("C {:.17g}\n", C_);
    out << fmt::format("degenerate {}\n", degenerate_ ? 1 : 0);
    out << fmt::format("classes {}\n", classes_.size());
    for (const auto& c : classes_) out << c << '\n';
    out << fmt::format("terms {}\n", vocab_.size());
    for (std::size_t t = 0; t < vocab_.size(); ++t)
        out << vocab_.term(static_cast<TermId>(t)) << '\t' << fmt::format("{:.17g}", idf_[t]) << '\n';
    for (std::size_t c = 0; c < classes_.size(); ++c) {
        std::size_t nnz = std::count_if(weights_[c].begin(), weights_[c].end(), [](double v) { return v != 0.0; });
        out << fmt::format("weights {} {:.17g} {}\n", c, bias_[c], nnz);
        for (std::size_t t = 0; t < weights_[c].size(); ++t)
            if (weights_[c][t] != 0.0) out << fmt::format("{} {:.17g}\n", t, weights_[c][t]);
    }
    if (!out) throw DataError(fmt::format("error writing model '{}'", path.string()));
}

SvmModel SvmModel::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(fmt::format("cannot read model '{}'", path.string()));
    auto fail = [&](const std::string& what) {
        return DataError(fmt::format("malformed model file '{}': {}", path.string(), what));
    };
    std::string line;
    auto next_line = [&]() -> std::string {
        if (!std::getline(in, line)) throw fail("unexpected end of file");
        return line;
    };
    auto expect_key = [&](const std::string& key) {
        std::istringstream ss(next_line());
        std::string k, v;
        ss >> k >> v;
        if (k != key || v.empty()) throw fail("expected '" + key + "'");
        return v;
    };

    SvmModel m;
    if (expect_key("etdmine-svm") != std::to_string(kFormatVersion)) throw fail("unsupported version");
    try {
        m.vocab_hash_ = std::stoull(expect_key("vocab_hash"), nullptr, 16);
        m.C_ = std::stod(expect_key("C"));
        m.degenerate_ = expect_key("degenerate") == "1";
        std::size_t n_classes = std::stoul(expect_key("classes"));
        for (std::size_t c = 0; c < n_classes; ++c) m.classes_.push_back(next_line());
        std::size_t n_terms = std::stoul(expect_key("terms"));
        for (std::size_t t = 0; t < n_terms; ++t) {
            next_line();
            auto tab = line.find('\t');
            if (tab == std::string::npos) throw fail("term line without idf");
            if (m.vocab_.add(line.substr(0, tab)) != t) throw fail("duplicate term");
            m.idf_.push_back(std::stod(line.substr(tab + 1)));
        }
        for (std::size_t c = 0; c < n_classes; ++c) {
            std::istringstream ss(next_line());
            std::string key;
            std::size_t idx, nnz;
            double b;
            if (!(ss >> key >> idx >> b >> nnz) || key != "weights" || idx != c) throw fail("bad weights header");
            std::vector<double> w(n_terms, 0.0);
            for (std::size_t k = 0; k < nnz; ++k) {
                std::istringstream es(next_line());
                std::size_t t;
                double v;
                if (!(es >> t >> v) || t >= n_terms) throw fail("bad weight entry");
                w[t] = v;
            }
            m.weights_.push_back(std::move(w));
            m.bias_.push_back(b);
        }
    } catch (const std::logic_error&) {
        throw fail("bad number");
    }
    if (m.vocab_.hash() != m.vocab_hash_) throw fail("vocabulary hash does not match stored terms");
    return m;
}

}  // namespace etdmine
