#include "commands.hpp"

#include "eap/engines.hpp"
#include "eap/error.hpp"
#include "eap/search.hpp"
#include "eap/series.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace eap::cli {

    using json = nlohmann::json;

    std::vector<double> parse_values(const std::string& text) {
        std::vector<double> out;
        std::size_t column = 0;
        std::size_t pos = 0;
        const auto is_sep = [](char ch) { return ch == ',' || ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r'; };
        while (pos < text.size()) {
            while (pos < text.size() && is_sep(text[pos])) { ++pos; }
            if (pos == text.size()) { break; }
            std::size_t end = pos;
            while (end < text.size() && !is_sep(text[end])) { ++end; }
            ++column;
            double v{};
            const char* first = text.data() + pos;
            const char* last = text.data() + end;
            if (*first == '+') { ++first; }
            auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
                throw ParseError("malformed value '" + text.substr(pos, end - pos) + "'", 1, column);
            }
            out.push_back(v);
            pos = end;
        }
        if (out.empty()) { throw ParseError("no values", 1, 1); }
        return out;
    }

    namespace {

        /// Distance parameters shared by every command.
        struct SpecOptions {
            std::string kind{"dtw"};
            std::size_t window{0};
            CLI::Option* window_opt{nullptr};
            double wdtw_g{0.05};
            double erp_gap{0.0};
            double msm_c{1.0};
            double twe_nu{0.001};
            double twe_lambda{1.0};
            std::string cost{"squared"};

            void attach(CLI::App* app) {
                app->add_option("--kind", kind, "dtw, cdtw, wdtw, erp, msm or twe")->capture_default_str();
                window_opt = app->add_option("--window", window, "warping window (required for cdtw and erp)");
                app->add_option("--wdtw-g", wdtw_g, "WDTW weight factor g")->capture_default_str();
                app->add_option("--erp-gap", erp_gap, "ERP gap value")->capture_default_str();
                app->add_option("--msm-c", msm_c, "MSM split/merge cost")->capture_default_str();
                app->add_option("--twe-nu", twe_nu, "TWE stiffness")->capture_default_str();
                app->add_option("--twe-lambda", twe_lambda, "TWE delete penalty")->capture_default_str();
                app->add_option("--cost", cost, "point cost: squared or absolute")->capture_default_str();
            }

            [[nodiscard]] DistanceSpec to_spec() const {
                const auto k = parse_kind(kind);
                if (!k) { throw SpecError("unknown distance kind '" + kind + "'"); }
                const auto c = parse_cost_mode(cost);
                if (!c) { throw SpecError("unknown point cost '" + cost + "'"); }
                DistanceSpec spec{.kind = *k, .wdtw_g = wdtw_g, .erp_gap = erp_gap, .msm_c = msm_c,
                                  .twe_nu = twe_nu, .twe_lambda = twe_lambda, .cost = *c};
                if (window_opt->count() > 0) { spec.window = window; }
                spec.validate();
                return spec;
            }
        };

        json spec_json(const DistanceSpec& spec) {
            json j{{"kind", to_string(spec.kind)}, {"cost", to_string(spec.cost)}};
            j["window"] = spec.window ? json(*spec.window) : json(nullptr);
            switch (spec.kind) {
                case DistanceKind::WDTW: j["wdtw_g"] = spec.wdtw_g; break;
                case DistanceKind::ERP: j["erp_gap"] = spec.erp_gap; break;
                case DistanceKind::MSM: j["msm_c"] = spec.msm_c; break;
                case DistanceKind::TWE:
                    j["twe_nu"] = spec.twe_nu;
                    j["twe_lambda"] = spec.twe_lambda;
                    break;
                default: break;
            }
            return j;
        }

        json cost_json(double cost) { return std::isinf(cost) ? json(nullptr) : json(cost); }

        Variant to_variant(const std::string& name) {
            const auto v = parse_variant(name);
            if (!v) { throw SpecError("unknown variant '" + name + "'"); }
            return *v;
        }

        LbMode to_lb(const std::string& name) {
            const auto m = parse_lb_mode(name);
            if (!m) { throw SpecError("unknown lower bound '" + name + "'"); }
            return *m;
        }

        Delimiter to_delimiter(const std::string& name) {
            if (name == "tab" || name == "\t") { return Delimiter::Tab; }
            if (name == "comma" || name == ",") { return Delimiter::Comma; }
            throw SpecError("unknown delimiter '" + name + "' (tab or comma)");
        }

        std::size_t default_threads() {
            if (const char* env = std::getenv("EAP_THREADS")) {
                std::size_t n = 0;
                const std::string_view sv(env);
                auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), n);
                if (ec == std::errc{} && n > 0) { return n; }
            }
            return 1;
        }

        std::string read_file(const std::string& path) {
            std::ifstream in(path);
            if (!in) { throw Error("cannot open " + path); }
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        }

        /// A series given inline, as a plain numeric file, or as a row of a UCR file.
        struct SeriesSource {
            std::string inline_values;
            std::string file;
            std::size_t row{0};
            CLI::Option* row_opt{nullptr};
            std::string delimiter{"tab"};

            void attach(CLI::App* app, const std::string& name, const std::string& what) {
                auto* iv = app->add_option("--" + name, inline_values, what + " as comma-separated values");
                auto* f = app->add_option("--" + name + "-file", file,
                                          what + " file: plain numbers, or a UCR file when --" + name + "-row is given");
                row_opt = app->add_option("--" + name + "-row", row, "0-based row of the UCR file")->needs(f);
                iv->excludes(f);
            }

            [[nodiscard]] TimeSeries load(const std::string& name) const {
                if (!inline_values.empty()) { return TimeSeries(parse_values(inline_values)); }
                if (file.empty()) { throw SpecError("missing series --" + name + " (inline) or --" + name + "-file"); }
                if (row_opt->count() > 0) {
                    auto ds = load_tsv(file, to_delimiter(delimiter));
                    if (row >= ds.size()) {
                        throw DimensionError("row " + std::to_string(row) + " out of range for " + file);
                    }
                    return ds.entries[row].series;
                }
                return TimeSeries(parse_values(read_file(file)));
            }
        };

        /// Training and test data: UCR files, or the deterministic random-walk generator.
        struct DataOptions {
            std::string train, test;
            std::string delimiter{"tab"};
            std::size_t gen_train{0}, gen_test{0}, gen_length{128}, gen_classes{2};
            std::uint64_t seed{42};
            bool znorm{false};
            bool derivative{false};

            void attach(CLI::App* app) {
                app->add_option("--train", train, "training set (UCR format)");
                app->add_option("--test", test, "test set (UCR format)");
                app->add_option("--delimiter", delimiter, "tab or comma")->capture_default_str();
                app->add_option("--gen-train", gen_train, "generate this many random-walk training series");
                app->add_option("--gen-test", gen_test, "generate this many random-walk test series");
                app->add_option("--gen-length", gen_length, "generated series length")->capture_default_str();
                app->add_option("--gen-classes", gen_classes, "generated class count")->capture_default_str();
                app->add_option("--seed", seed, "generator seed (test set uses seed + 1)")->capture_default_str();
                app->add_flag("--znorm", znorm, "z-normalise every series");
                app->add_flag("--derivative", derivative, "apply the first-derivative transform");
            }

            [[nodiscard]] std::pair<LabeledDataset, LabeledDataset> load() const {
                LabeledDataset tr, te;
                if (!train.empty() || !test.empty()) {
                    if (train.empty() || test.empty()) { throw SpecError("--train and --test go together"); }
                    tr = load_tsv(train, to_delimiter(delimiter));
                    te = load_tsv(test, to_delimiter(delimiter));
                } else if (gen_train > 0 && gen_test > 0) {
                    tr = gen_random_walk(gen_train, gen_length, gen_classes, seed);
                    te = gen_random_walk(gen_test, gen_length, gen_classes, seed + 1);
                } else {
                    throw SpecError("give --train/--test files or --gen-train/--gen-test counts");
                }
                if (znorm) {
                    tr = transform(tr, [](const TimeSeries& s) { return znormalize(s); });
                    te = transform(te, [](const TimeSeries& s) { return znormalize(s); });
                }
                if (derivative) {
                    tr = transform(tr, [](const TimeSeries& s) { return eap::derivative(s); });
                    te = transform(te, [](const TimeSeries& s) { return eap::derivative(s); });
                }
                return {std::move(tr), std::move(te)};
            }

            [[nodiscard]] json describe(const LabeledDataset& tr, const LabeledDataset& te) const {
                json j{{"train", tr.name}, {"test", te.name}, {"train_size", tr.size()}, {"test_size", te.size()},
                       {"znorm", znorm}, {"derivative", derivative}};
                if (train.empty()) { j["seed"] = seed; }
                return j;
            }
        };

        double seconds_since(std::chrono::steady_clock::time_point t0) {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }

        // --- dist

        struct DistCommand {
            SpecOptions spec;
            SeriesSource a, b;
            std::string variant{"base"};
            double cutoff{INF};
            CLI::Option* cutoff_opt{nullptr};

            void attach(CLI::App* app) {
                spec.attach(app);
                a.attach(app, "a", "first series");
                b.attach(app, "b", "second series");
                app->add_option("--delimiter", a.delimiter, "delimiter of UCR files (tab or comma)")->capture_default_str();
                app->add_option("--variant", variant, "base, ea, eapruned or pruned")->capture_default_str();
                cutoff_opt = app->add_option("--cutoff", cutoff, "early-abandoning cut-off (ea, eapruned)");
            }

            int run(std::ostream& out) {
                b.delimiter = a.delimiter;
                const auto s = spec.to_spec();
                const auto v = to_variant(variant);
                const auto sa = a.load("a");
                const auto sb = b.load("b");
                const Cutoff co = cutoff_opt->count() > 0 ? Cutoff(cutoff) : Cutoff::none();
                const auto r = distance(s, v, sa, sb, co);
                json j{{"command", "dist"}, {"spec", spec_json(s)}, {"variant", to_string(v)},
                       {"cutoff", cost_json(co.value())}, {"length_a", sa.size()}, {"length_b", sb.size()},
                       {"cost", cost_json(r.cost)}, {"abandoned", r.abandoned()}, {"cells_computed", r.cells_computed}};
                out << j.dump() << '\n';
                return r.abandoned() ? Abandoned : Ok;
            }
        };

        // --- nn

        struct NnCommand {
            SpecOptions spec;
            DataOptions data;
            std::string variant{"eapruned"};
            std::string lb{"none"};
            std::size_t threads{default_threads()};

            void attach(CLI::App* app) {
                spec.attach(app);
                data.attach(app);
                app->add_option("--variant", variant, "base, ea, eapruned or pruned")->capture_default_str();
                app->add_option("--lb", lb, "none, keogh or keogh2 (dtw/cdtw only)")->capture_default_str();
                app->add_option("--threads", threads, "query-level worker threads (default: $EAP_THREADS or 1)");
            }

            int run(std::ostream& out) {
                const SearchConfig cfg{.spec = spec.to_spec(), .variant = to_variant(variant), .lb = to_lb(lb)};
                cfg.validate();
                const auto [train, test] = data.load();
                const auto t0 = std::chrono::steady_clock::now();
                const auto reports = classify_1nn(train, test, cfg, threads);
                const double wall = seconds_since(t0);

                json predictions = json::array();
                std::uint64_t cells = 0;
                std::size_t computed = 0, abandoned = 0, skips = 0;
                for (const auto& r : reports) {
                    out << json{{"query", r.query}, {"truth", r.truth}, {"predicted", r.predicted},
                                {"nn_index", r.nn_index}, {"nn_distance", cost_json(r.nn_distance)},
                                {"computed", r.computed}, {"abandoned", r.abandoned}, {"lb_skips", r.lb_skips},
                                {"cells", r.cells}, {"wall_s", r.wall_seconds}}.dump()
                        << '\n';
                    predictions.push_back(r.predicted);
                    cells += r.cells;
                    computed += r.computed;
                    abandoned += r.abandoned;
                    skips += r.lb_skips;
                }
                json summary{{"summary", true}, {"command", "nn"}, {"spec", spec_json(cfg.spec)},
                             {"variant", to_string(cfg.variant)}, {"lb", to_string(cfg.lb)}, {"threads", threads},
                             {"data", data.describe(train, test)}, {"accuracy", accuracy(reports)},
                             {"total_cells", cells}, {"total_computed", computed}, {"total_abandoned", abandoned},
                             {"total_lb_skips", skips}, {"predictions", predictions}, {"wall_s", wall}};
                out << summary.dump() << '\n';
                return Ok;
            }
        };

        // --- subseq

        struct SubseqCommand {
            SpecOptions spec;
            SeriesSource query, reference;
            std::string variant{"eapruned"};
            std::string lb{"none"};
            bool normalize{false};

            void attach(CLI::App* app) {
                spec.attach(app);
                query.attach(app, "query", "query");
                reference.attach(app, "reference", "reference series");
                app->add_option("--variant", variant, "base, ea, eapruned or pruned")->capture_default_str();
                app->add_option("--lb", lb, "none, keogh or keogh2")->capture_default_str();
                app->add_flag("--normalize", normalize, "z-normalise the query and every window");
            }

            int run(std::ostream& out) {
                const SearchConfig cfg{.spec = spec.to_spec(), .variant = to_variant(variant), .lb = to_lb(lb),
                                       .normalize = normalize};
                const auto q = query.load("query");
                const auto ref = reference.load("reference");
                const auto t0 = std::chrono::steady_clock::now();
                const auto r = subsequence_search(q, ref, cfg);
                const double wall = seconds_since(t0);
                json j{{"command", "subseq"}, {"spec", spec_json(cfg.spec)}, {"variant", to_string(cfg.variant)},
                       {"lb", to_string(cfg.lb)}, {"normalize", normalize}, {"query_length", q.size()},
                       {"reference_length", ref.size()}, {"offset", r.offset}, {"distance", cost_json(r.distance)},
                       {"windows", r.windows}, {"computed", r.computed}, {"abandoned", r.abandoned},
                       {"lb_skips", r.lb_skips}, {"cells", r.cells}, {"wall_s", wall}};
                out << j.dump() << '\n';
                return Ok;
            }
        };

        // --- bench

        struct BenchCommand {
            SpecOptions spec;
            DataOptions data;
            std::vector<std::string> variants{"base", "ea", "eapruned", "pruned"};
            std::string lb{"none"};
            std::size_t repetitions{1};
            std::size_t threads{default_threads()};

            void attach(CLI::App* app) {
                spec.attach(app);
                data.attach(app);
                app->add_option("--variants", variants, "engine variants to time")->delimiter(',')->capture_default_str();
                app->add_option("--lb", lb, "none, keogh or keogh2")->capture_default_str();
                app->add_option("--repetitions", repetitions, "runs per variant")->capture_default_str()->check(CLI::PositiveNumber);
                app->add_option("--threads", threads, "query-level worker threads (default: $EAP_THREADS or 1)");
            }

            int run(std::ostream& out) {
                const auto s = spec.to_spec();
                const auto mode = to_lb(lb);
                std::vector<Variant> vs;
                for (const auto& name : variants) { vs.push_back(to_variant(name)); }
                const auto [train, test] = data.load();

                out << "variant,lb,repetition,wall_s,cells,computed,abandoned,lb_skips,accuracy,speedup_vs_base\n";
                for (std::size_t rep = 0; rep < repetitions; ++rep) {
                    std::vector<std::pair<Variant, double>> walls;
                    std::vector<std::string> rows;
                    std::optional<double> base_wall;
                    for (auto v : vs) {
                        const SearchConfig cfg{.spec = s, .variant = v, .lb = mode};
                        const auto t0 = std::chrono::steady_clock::now();
                        const auto reports = classify_1nn(train, test, cfg, threads);
                        const double wall = seconds_since(t0);
                        if (v == Variant::Base) { base_wall = wall; }
                        std::uint64_t cells = 0;
                        std::size_t computed = 0, abandoned = 0, skips = 0;
                        for (const auto& r : reports) {
                            cells += r.cells;
                            computed += r.computed;
                            abandoned += r.abandoned;
                            skips += r.lb_skips;
                        }
                        std::ostringstream row;
                        row << to_string(v) << ',' << to_string(mode) << ',' << rep << ',' << std::setprecision(6) << wall
                            << ',' << cells << ',' << computed << ',' << abandoned << ',' << skips << ','
                            << std::setprecision(17) << accuracy(reports);
                        rows.push_back(row.str());
                        walls.emplace_back(v, wall);
                    }
                    for (std::size_t k = 0; k < rows.size(); ++k) {
                        out << rows[k] << ',';
                        if (walls[k].first == Variant::Base) { out << "1.0"; }
                        else if (base_wall) { out << std::setprecision(4) << *base_wall / walls[k].second; }
                        out << '\n';
                    }
                }
                return Ok;
            }
        };

    } // namespace

    int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
        CLI::App app{"Elastic distances with early abandoning and pruning", "eap"};
        app.require_subcommand(1);

        DistCommand dist;
        NnCommand nn;
        SubseqCommand subseq;
        BenchCommand bench;
        auto* dist_app = app.add_subcommand("dist", "distance between two series");
        auto* nn_app = app.add_subcommand("nn", "1-NN classification, JSON lines on stdout");
        auto* subseq_app = app.add_subcommand("subseq", "best-matching window of a reference series");
        auto* bench_app = app.add_subcommand("bench", "time 1-NN classification per engine variant, CSV on stdout");
        dist.attach(dist_app);
        nn.attach(nn_app);
        subseq.attach(subseq_app);
        bench.attach(bench_app);

        std::vector<const char*> argv;
        argv.reserve(args.size());
        for (const auto& a : args) { argv.push_back(a.c_str()); }
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return Ok;
        } catch (const CLI::CallForAllHelp&) {
            out << app.help("", CLI::AppFormatMode::All);
            return Ok;
        } catch (const CLI::ParseError& e) {
            err << "error: " << e.what() << '\n';
            return UsageError;
        }

        try {
            if (*dist_app) { return dist.run(out); }
            if (*nn_app) { return nn.run(out); }
            if (*subseq_app) { return subseq.run(out); }
            if (*bench_app) { return bench.run(out); }
        } catch (const Error& e) {
            err << "error: " << e.what() << '\n';
            return UsageError;
        }
        return UsageError;
    }

} // namespace eap::cli
