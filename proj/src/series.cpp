#include "eap/series.hpp"

#include "eap/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>

namespace eap {

    TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty()) { throw DegenerateInputError("time series must hold at least one value"); }
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i])) {
                throw DegenerateInputError("time series value at index " + std::to_string(i) + " is not finite");
            }
        }
    }

    namespace {

        double parse_field(std::string_view field, std::size_t line, std::size_t column) {
            // Tolerate surrounding blanks; from_chars does not.
            while (!field.empty() && (field.front() == ' ' || field.front() == '+')) { field.remove_prefix(1); }
            while (!field.empty() && (field.back() == ' ' || field.back() == '\r')) { field.remove_suffix(1); }
            double v{};
            const auto* first = field.data();
            const auto* last = field.data() + field.size();
            auto [ptr, ec] = std::from_chars(first, last, v);
            if (field.empty() || ec != std::errc{} || ptr != last) {
                throw ParseError("malformed numeric field '" + std::string(field) + "'", line, column);
            }
            if (!std::isfinite(v)) { throw ParseError("non-finite numeric field", line, column); }
            return v;
        }

    } // namespace

    LabeledDataset read_tsv(std::istream& in, Delimiter delim, std::string name) {
        LabeledDataset ds{std::move(name), {}};
        const char sep = static_cast<char>(delim);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') { line.pop_back(); }
            if (line.find_first_not_of(" \t") == std::string::npos) { continue; }

            std::string_view rest{line};
            std::vector<double> values;
            std::size_t column = 0;
            int label = 0;
            while (true) {
                ++column;
                const auto pos = rest.find(sep);
                const auto field = rest.substr(0, pos);
                const double v = parse_field(field, lineno, column);
                if (column == 1) { label = static_cast<int>(std::trunc(v)); }
                else { values.push_back(v); }
                if (pos == std::string_view::npos) { break; }
                rest.remove_prefix(pos + 1);
            }
            if (values.empty()) { throw ParseError("line has a label but no values", lineno, column + 1); }
            ds.entries.push_back({label, TimeSeries(std::move(values))});
        }
        if (ds.empty()) { throw EmptyDatasetError("dataset '" + ds.name + "' holds no series"); }
        return ds;
    }

    LabeledDataset load_tsv(const std::filesystem::path& path, Delimiter delim) {
        std::ifstream in(path);
        if (!in) { throw Error("cannot open " + path.string()); }
        return read_tsv(in, delim, path.stem().string());
    }

    void write_tsv(std::ostream& out, const LabeledDataset& ds, Delimiter delim) {
        const char sep = static_cast<char>(delim);
        char buf[64];
        for (const auto& e : ds.entries) {
            out << e.label;
            for (double v : e.series) {
                auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
                out << sep << std::string_view(buf, static_cast<std::size_t>(ptr - buf));
            }
            out << '\n';
        }
    }

    void save_tsv(const std::filesystem::path& path, const LabeledDataset& ds, Delimiter delim) {
        std::ofstream out(path);
        if (!out) { throw Error("cannot write " + path.string()); }
        write_tsv(out, ds, delim);
    }

    void znormalize_into(std::span<const double> in, std::span<double> out) {
        const auto n = static_cast<double>(in.size());
        const double mean = std::accumulate(in.begin(), in.end(), 0.0) / n;
        double ss = 0;
        for (double v : in) { ss += (v - mean) * (v - mean); }
        const double sd = std::sqrt(ss / n);
        if (sd < 1e-12) {
            std::fill(out.begin(), out.end(), 0.0);
            return;
        }
        for (std::size_t i = 0; i < in.size(); ++i) { out[i] = (in[i] - mean) / sd; }
    }

    TimeSeries znormalize(const TimeSeries& s) {
        if (s.size() < 2) { throw DegenerateInputError("z-normalization needs at least 2 points"); }
        std::vector<double> out(s.size());
        znormalize_into(s.values(), out);
        return TimeSeries(std::move(out));
    }

    TimeSeries derivative(const TimeSeries& s) {
        if (s.size() < 3) { throw DegenerateInputError("derivative needs at least 3 points"); }
        std::vector<double> out(s.size() - 2);
        for (std::size_t i = 0; i + 2 < s.size(); ++i) {
            out[i] = ((s[i + 1] - s[i]) + (s[i + 2] - s[i]) / 2.0) / 2.0;
        }
        return TimeSeries(std::move(out));
    }

    LabeledDataset gen_random_walk(std::size_t count, std::size_t length, std::size_t classes, std::uint64_t seed) {
        if (count == 0 || length == 0 || classes == 0) {
            throw DegenerateInputError("gen_random_walk: count, length and classes must be positive");
        }
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> step(0.0, 1.0);
        LabeledDataset ds{"randomwalk-" + std::to_string(seed), {}};
        ds.entries.reserve(count);
        const double centre = (static_cast<double>(classes) - 1.0) / 2.0;
        for (std::size_t i = 0; i < count; ++i) {
            const auto k = i % classes;
            const double drift = 0.2 * (static_cast<double>(k) - centre);
            std::vector<double> v(length);
            double x = step(rng);
            for (auto& e : v) {
                e = x;
                x += drift + step(rng);
            }
            ds.entries.push_back({static_cast<int>(k), TimeSeries(std::move(v))});
        }
        return ds;
    }

    TimeSeries gen_walk(std::size_t length, std::uint64_t seed) {
        if (length == 0) { throw DegenerateInputError("gen_walk: length must be positive"); }
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> step(0.0, 1.0);
        std::vector<double> v(length);
        double x = 0;
        for (auto& e : v) {
            x += step(rng);
            e = x;
        }
        return TimeSeries(std::move(v));
    }

} // namespace eap
