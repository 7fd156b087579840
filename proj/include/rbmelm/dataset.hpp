#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rbmelm/matrix.hpp"
#include "rbmelm/rng.hpp"

namespace rbmelm {

/// Labeled samples as loaded from disk, before any preprocessing.
struct RawDataset {
    Matrix features;                  // N x m
    std::vector<std::string> labels;  // length N
    std::string name;
};

/// Train/test partitions with one-hot targets and the z-score normalization
/// fitted on the training rows only.
struct SplitDataset {
    Matrix train_X, train_Y;
    Matrix test_X, test_Y;
    Vector norm_mean;   // per feature
    Vector norm_scale;  // per-feature sample std; 0 marks a constant feature
    std::vector<std::string> label_alphabet;
};

struct CsvOptions {
    char delimiter = ',';
    int label_column = -1;  // -1 = last column
    bool skip_header = false;
};

/// Distinct labels in first-appearance order.
inline std::vector<std::string> label_alphabet(const std::vector<std::string>& labels) {
    std::vector<std::string> alphabet;
    std::unordered_map<std::string, int> seen;
    for (const auto& l : labels) {
        if (seen.emplace(l, 1).second) alphabet.push_back(l);
    }
    return alphabet;
}

/// N x s one-hot matrix over the given alphabet order.
inline Matrix one_hot(const std::vector<std::string>& labels, const std::vector<std::string>& alphabet) {
    std::unordered_map<std::string, Index> pos;
    for (Index j = 0; j < static_cast<Index>(alphabet.size()); ++j) pos[alphabet[static_cast<std::size_t>(j)]] = j;
    Matrix y = Matrix::Zero(static_cast<Index>(labels.size()), static_cast<Index>(alphabet.size()));
    for (Index i = 0; i < y.rows(); ++i) {
        const auto it = pos.find(labels[static_cast<std::size_t>(i)]);
        if (it == pos.end()) throw DataError("one_hot: unknown label '" + labels[static_cast<std::size_t>(i)] + "'");
        y(i, it->second) = 1.0;
    }
    return y;
}

namespace detail {

inline std::string trim(std::string s) {
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

inline std::vector<std::string> split_fields(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = line.find(delimiter, start);
        fields.push_back(trim(line.substr(start, end - start)));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return fields;
}

inline double parse_number(const std::string& field, std::size_t line_no, std::size_t col) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || field.empty()) {
        throw DataError("load_csv: line " + std::to_string(line_no) + ", column " + std::to_string(col + 1) +
                        ": cannot parse '" + field + "' as a number");
    }
    if (!std::isfinite(value)) {
        throw DataError("load_csv: line " + std::to_string(line_no) + ", column " + std::to_string(col + 1) +
                        ": non-finite value");
    }
    return value;
}

}  // namespace detail

/// Load a delimiter-separated classification dataset. One sample per line;
/// all non-label fields must parse as finite numbers and every row must have
/// the same field count.
inline RawDataset load_csv(const std::string& path, const CsvOptions& opt = {}) {
    std::ifstream in(path);
    if (!in) throw DataError("load_csv: cannot open '" + path + "'");

    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    std::string line;
    std::size_t line_no = 0;
    std::size_t field_count = 0;
    Index label_col = -1;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (opt.skip_header && line_no == 1) continue;
        if (detail::trim(line).empty()) continue;

        const auto fields = detail::split_fields(line, opt.delimiter);
        if (field_count == 0) {
            field_count = fields.size();
            if (field_count < 2) {
                throw DataError("load_csv: line " + std::to_string(line_no) + ": need at least one feature and a label");
            }
            label_col = opt.label_column < 0 ? static_cast<Index>(field_count) - 1 : opt.label_column;
            if (label_col >= static_cast<Index>(field_count)) {
                throw DataError("load_csv: label column " + std::to_string(label_col) + " out of range for " +
                                std::to_string(field_count) + " fields");
            }
        } else if (fields.size() != field_count) {
            throw DataError("load_csv: line " + std::to_string(line_no) + ": expected " + std::to_string(field_count) +
                            " fields, found " + std::to_string(fields.size()));
        }

        std::vector<double> row;
        row.reserve(field_count - 1);
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (static_cast<Index>(c) == label_col) continue;
            row.push_back(detail::parse_number(fields[c], line_no, c));
        }
        rows.push_back(std::move(row));
        labels.push_back(fields[static_cast<std::size_t>(label_col)]);
    }

    if (rows.size() < 2) throw DataError("load_csv: '" + path + "' has fewer than 2 samples");
    if (label_alphabet(labels).size() < 2) {
        throw DataError("load_csv: '" + path + "' contains a single class only");
    }

    RawDataset data;
    data.features.resize(static_cast<Index>(rows.size()), static_cast<Index>(rows[0].size()));
    for (Index i = 0; i < data.features.rows(); ++i)
        for (Index j = 0; j < data.features.cols(); ++j)
            data.features(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    data.labels = std::move(labels);
    data.name = std::filesystem::path(path).stem().string();
    return data;
}

/// Write features plus a final label column, one sample per line.
inline void save_csv(const RawDataset& data, const std::string& path, char delimiter = ',') {
    std::ofstream out(path);
    if (!out) throw DataError("save_csv: cannot open '" + path + "' for writing");
    out.precision(17);
    for (Index i = 0; i < data.features.rows(); ++i) {
        for (Index j = 0; j < data.features.cols(); ++j) out << data.features(i, j) << delimiter;
        out << data.labels[static_cast<std::size_t>(i)] << '\n';
    }
}

/// Shuffle (when no predefined test set is given), partition, fit a z-score
/// on the training rows and apply it to both partitions. Constant training
/// features map to zero everywhere.
inline SplitDataset split_and_normalize(const RawDataset& data, double train_fraction, RngState& rng,
                                        const std::optional<RawDataset>& predefined_test = {}) {
    const Index n = data.features.rows();
    const Index m = data.features.cols();

    Matrix train_raw, test_raw;
    std::vector<std::string> train_labels, test_labels;

    if (predefined_test.has_value()) {
        if (predefined_test->features.cols() != m) {
            throw DataError("split_and_normalize: test partition has " + std::to_string(predefined_test->features.cols()) +
                            " features, train has " + std::to_string(m));
        }
        train_raw = data.features;
        train_labels = data.labels;
        test_raw = predefined_test->features;
        test_labels = predefined_test->labels;
    } else {
        if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
            throw std::invalid_argument("split_and_normalize: train_fraction must lie in (0,1)");
        }
        std::vector<Index> perm(static_cast<std::size_t>(n));
        for (Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        for (Index i = n - 1; i > 0; --i) {
            const auto j = static_cast<Index>(rng.uniform(0.0, static_cast<double>(i + 1)));
            std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        }
        const auto n_train = static_cast<Index>(std::ceil(train_fraction * static_cast<double>(n)));
        if (n_train >= n) throw DataError("split_and_normalize: empty test partition");
        train_raw.resize(n_train, m);
        test_raw.resize(n - n_train, m);
        for (Index i = 0; i < n; ++i) {
            const Index src = perm[static_cast<std::size_t>(i)];
            if (i < n_train) {
                train_raw.row(i) = data.features.row(src);
                train_labels.push_back(data.labels[static_cast<std::size_t>(src)]);
            } else {
                test_raw.row(i - n_train) = data.features.row(src);
                test_labels.push_back(data.labels[static_cast<std::size_t>(src)]);
            }
        }
    }

    if (train_raw.rows() < 2) throw DataError("split_and_normalize: training partition needs at least 2 rows");
    if (test_raw.rows() < 1) throw DataError("split_and_normalize: empty test partition");

    SplitDataset split;
    split.label_alphabet = label_alphabet(train_labels);
    for (const auto& l : test_labels) {
        if (std::find(split.label_alphabet.begin(), split.label_alphabet.end(), l) == split.label_alphabet.end()) {
            throw DataError("split_and_normalize: test label '" + l + "' absent from training alphabet");
        }
    }

    const Index n_train = train_raw.rows();
    split.norm_mean = train_raw.colwise().mean();
    Vector var = Vector::Zero(m);
    for (Index j = 0; j < m; ++j) {
        var(j) = (train_raw.col(j).array() - split.norm_mean(j)).square().sum() / static_cast<double>(n_train - 1);
    }
    split.norm_scale = var.array().sqrt();
    for (Index j = 0; j < m; ++j) {
        if (split.norm_scale(j) <= 1e-12 * std::max(1.0, std::abs(split.norm_mean(j)))) split.norm_scale(j) = 0.0;
    }

    const auto apply = [&](const Matrix& x) {
        Matrix out(x.rows(), x.cols());
        for (Index j = 0; j < m; ++j) {
            if (split.norm_scale(j) > 0.0) {
                out.col(j) = (x.col(j).array() - split.norm_mean(j)) / split.norm_scale(j);
            } else {
                out.col(j).setZero();
            }
        }
        return out;
    };
    split.train_X = apply(train_raw);
    split.test_X = apply(test_raw);
    split.train_Y = one_hot(train_labels, split.label_alphabet);
    split.test_Y = one_hot(test_labels, split.label_alphabet);
    return split;
}

/// Inverse of the fitted z-score; constant features map back to their mean.
inline Matrix denormalize(const SplitDataset& split, const Matrix& x) {
    Matrix out(x.rows(), x.cols());
    for (Index j = 0; j < x.cols(); ++j) {
        if (split.norm_scale(j) > 0.0) {
            out.col(j) = x.col(j).array() * split.norm_scale(j) + split.norm_mean(j);
        } else {
            out.col(j).setConstant(split.norm_mean(j));
        }
    }
    return out;
}

namespace detail {

struct Segment {
    double x0, y0, x1, y1;
};

inline double segment_distance(double px, double py, const Segment& s) {
    const double dx = s.x1 - s.x0, dy = s.y1 - s.y0;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((px - s.x0) * dx + (py - s.y0) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double qx = s.x0 + t * dx, qy = s.y0 + t * dy;
    return std::hypot(px - qx, py - qy);
}

/// Five vowel glyphs rasterized onto a side x side grid, values in {0,1}.
inline std::vector<Matrix> vowel_templates(Index side) {
    const double stroke = 0.07;
    const std::vector<std::vector<Segment>> letters = {
        // A
        {{0.50, 0.10, 0.15, 0.90}, {0.50, 0.10, 0.85, 0.90}, {0.32, 0.62, 0.68, 0.62}},
        // E
        {{0.25, 0.10, 0.25, 0.90}, {0.25, 0.10, 0.78, 0.10}, {0.25, 0.50, 0.70, 0.50}, {0.25, 0.90, 0.78, 0.90}},
        // I
        {{0.50, 0.10, 0.50, 0.90}, {0.30, 0.10, 0.70, 0.10}, {0.30, 0.90, 0.70, 0.90}},
        // O (ring, handled separately)
        {},
        // U
        {{0.22, 0.10, 0.22, 0.62}, {0.78, 0.10, 0.78, 0.62}},
    };

    std::vector<Matrix> templates;
    for (std::size_t c = 0; c < 5; ++c) {
        Matrix t = Matrix::Zero(side, side);
        for (Index r = 0; r < side; ++r) {
            for (Index q = 0; q < side; ++q) {
                const double y = (static_cast<double>(r) + 0.5) / static_cast<double>(side);
                const double x = (static_cast<double>(q) + 0.5) / static_cast<double>(side);
                bool on = false;
                for (const auto& seg : letters[c]) {
                    if (segment_distance(x, y, seg) < stroke) {
                        on = true;
                        break;
                    }
                }
                if (c == 3) {  // O: elliptical ring
                    const double rx = (x - 0.5) / 0.30, ry = (y - 0.5) / 0.38;
                    on = std::abs(std::hypot(rx, ry) - 1.0) < 0.22;
                }
                if (c == 4 && !on) {  // U: lower arc
                    const double rx = (x - 0.5) / 0.28, ry = (y - 0.62) / 0.28;
                    on = y > 0.62 && std::abs(std::hypot(rx, ry) - 1.0) < 0.25;
                }
                if (on) t(r, q) = 1.0;
            }
        }
        templates.push_back(std::move(t));
    }
    return templates;
}

}  // namespace detail

/// Synthetic stand-in for a private vowel-image database: five glyph
/// templates on a side x side grid, each sample shifted by a small random
/// offset and perturbed with pixel noise. Defaults give 1380 samples of
/// 900 features over 5 classes.
inline RawDataset synth_vowels(RngState& rng, Index per_class = 276, Index side = 30) {
    if (per_class < 1) throw std::invalid_argument("synth_vowels: per_class must be >= 1");
    if (side < 8) throw std::invalid_argument("synth_vowels: side must be >= 8");

    const double noise_std = 0.85;
    const auto max_shift = std::max<Index>(1, side / 10);
    const auto templates = detail::vowel_templates(side);
    static const char* names[5] = {"a", "e", "i", "o", "u"};

    RawDataset data;
    data.name = "synthetic-vowels";
    data.features.resize(5 * per_class, side * side);
    data.labels.reserve(static_cast<std::size_t>(5 * per_class));

    Index row = 0;
    for (std::size_t c = 0; c < 5; ++c) {
        for (Index i = 0; i < per_class; ++i, ++row) {
            const auto dr = static_cast<Index>(std::floor(rng.uniform(-static_cast<double>(max_shift),
                                                                      static_cast<double>(max_shift) + 1.0)));
            const auto dq = static_cast<Index>(std::floor(rng.uniform(-static_cast<double>(max_shift),
                                                                      static_cast<double>(max_shift) + 1.0)));
            for (Index r = 0; r < side; ++r) {
                for (Index q = 0; q < side; ++q) {
                    const Index sr = r + dr, sq = q + dq;
                    const bool inside = sr >= 0 && sr < side && sq >= 0 && sq < side;
                    const double base = inside ? templates[c](sr, sq) : 0.0;
                    data.features(row, r * side + q) = base + rng.normal(0.0, noise_std);
                }
            }
            data.labels.emplace_back(names[c]);
        }
    }
    return data;
}

}  // namespace rbmelm
