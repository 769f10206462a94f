#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rsj/index.hpp"
#include "rsj/scheme.hpp"

namespace rsj {

struct WeightRow {
    std::string term;
    std::uint64_t df;
    std::uint64_t corpus_size;
    /// One cell per scheme; nullopt where the scheme has no finite weight.
    std::vector<std::optional<double>> weights;
};

struct WeightTable {
    std::vector<std::string> scheme_labels;
    std::vector<WeightRow> rows;
};

/// One row per indexed term (or per filter term, indexed or not), sorted by df
/// descending then term ascending.
[[nodiscard]] WeightTable weight_table(const InvertedIndex& index, std::span<const WeightingScheme> schemes,
                                       std::optional<std::span<const std::string>> terms = std::nullopt);

/// Header `term,df,N,<label>...`; undefined cells are empty.
void write_weight_csv(const WeightTable& table, std::ostream& out);

struct CurvePoint {
    std::uint64_t df;
    double p_hat;
};

/// Estimated relevant-document probability at each df. Throws InvalidParameter
/// if corpus_size is 0 or any df exceeds it.
[[nodiscard]] std::vector<CurvePoint> estimator_curve(std::uint64_t corpus_size, const WeightingScheme& scheme,
                                                      std::span<const std::uint64_t> dfs);

/// Up to `points` evenly spaced document frequencies covering 0..corpus_size inclusive.
[[nodiscard]] std::vector<std::uint64_t> curve_range(std::uint64_t corpus_size, std::size_t points = 101);

/// Header `n,p_hat`.
void write_curve_csv(std::span<const CurvePoint> curve, std::ostream& out);

}  // namespace rsj
