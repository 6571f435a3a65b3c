#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace eap {

    /// Univariate series of finite doubles, length >= 1. Immutable after construction.
    class TimeSeries {
    public:
        /// Throws DegenerateInputError if `values` is empty or holds a non-finite value.
        explicit TimeSeries(std::vector<double> values);

        [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
        [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
        [[nodiscard]] const double* data() const noexcept { return values_.data(); }
        [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }

        [[nodiscard]] auto begin() const noexcept { return values_.begin(); }
        [[nodiscard]] auto end() const noexcept { return values_.end(); }

        friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

    private:
        std::vector<double> values_;
    };

    struct LabeledSeries {
        int label;
        TimeSeries series;
    };

    struct LabeledDataset {
        std::string name;
        std::vector<LabeledSeries> entries;

        [[nodiscard]] std::size_t size() const noexcept { return entries.size(); }
        [[nodiscard]] bool empty() const noexcept { return entries.empty(); }
    };

    enum class Delimiter : char { Tab = '\t', Comma = ',' };

    /// Read a UCR-style file: one series per line, first field is the class label.
    /// Blank lines are skipped, CRLF line endings accepted.
    /// Throws ParseError (with line/column) on a malformed field, EmptyDatasetError if no series are read.
    [[nodiscard]] LabeledDataset read_tsv(std::istream& in, Delimiter delim = Delimiter::Tab, std::string name = {});
    [[nodiscard]] LabeledDataset load_tsv(const std::filesystem::path& path, Delimiter delim = Delimiter::Tab);

    /// Values are written with round-trip precision.
    void write_tsv(std::ostream& out, const LabeledDataset& ds, Delimiter delim = Delimiter::Tab);
    void save_tsv(const std::filesystem::path& path, const LabeledDataset& ds, Delimiter delim = Delimiter::Tab);

    /// Zero mean, unit population standard deviation. A series with std-dev below 1e-12 maps to all zeros.
    /// Requires at least 2 points.
    [[nodiscard]] TimeSeries znormalize(const TimeSeries& s);
    /// Same, writing into `out` (same length as `in`). Used by sliding-window scans.
    void znormalize_into(std::span<const double> in, std::span<double> out);

    /// First-derivative estimate d_i = ((s[i+1]-s[i]) + (s[i+2]-s[i])/2)/2; output has L-2 points.
    [[nodiscard]] TimeSeries derivative(const TimeSeries& s);

    /// Apply a transform to every series of a dataset, keeping labels.
    template<typename F>
    [[nodiscard]] LabeledDataset transform(const LabeledDataset& ds, F&& f) {
        LabeledDataset out{ds.name, {}};
        out.entries.reserve(ds.size());
        for (const auto& e : ds.entries) { out.entries.push_back({e.label, f(e.series)}); }
        return out;
    }

    /// Deterministic random walks: entry i has label i % classes, and steps N(drift_k, 1)
    /// where the drift is specific to each class.
    [[nodiscard]] LabeledDataset gen_random_walk(std::size_t count, std::size_t length, std::size_t classes, std::uint64_t seed);

    /// Single unlabeled random walk with N(0,1) steps.
    [[nodiscard]] TimeSeries gen_walk(std::size_t length, std::uint64_t seed);

} // namespace eap
