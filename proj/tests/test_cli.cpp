#include "commands.hpp"
#include "eap/error.hpp"
#include "eap/series.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using eap::cli::run;
using nlohmann::json;

namespace {

    struct Output {
        int code;
        std::string out;
        std::string err;
    };

    Output call(std::vector<std::string> args) {
        args.insert(args.begin(), "eap");
        std::ostringstream out, err;
        const int code = run(args, out, err);
        return {code, out.str(), err.str()};
    }

    std::vector<json> json_lines(const std::string& text) {
        std::vector<json> v;
        std::istringstream in(text);
        for (std::string line; std::getline(in, line);) {
            if (!line.empty()) { v.push_back(json::parse(line)); }
        }
        return v;
    }

} // namespace

TEST(Cli, ParseValues) {
    EXPECT_EQ(eap::cli::parse_values("1, 2.5 -3\n4e1"), (std::vector<double>{1, 2.5, -3, 40}));
    EXPECT_THROW((void)eap::cli::parse_values("1,x"), eap::ParseError);
}

TEST(Cli, DistSamplePair) {
    const auto r = call({"dist", "--a", "3,1,4,4,1,1", "--b", "1,3,2,1,2,2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["cost"].get<double>(), 9.0);
    EXPECT_FALSE(j["abandoned"].get<bool>());
    EXPECT_EQ(j["cells_computed"].get<std::size_t>(), 36u);
}

TEST(Cli, DistAbandonExitCode) {
    const auto r = call({"dist", "--a", "3,1,4,4,1,1", "--b", "1,3,2,1,2,2", "--variant", "ea", "--cutoff", "6"});
    EXPECT_EQ(r.code, 2);
    const auto j = json::parse(r.out);
    EXPECT_TRUE(j["cost"].is_null());
    EXPECT_TRUE(j["abandoned"].get<bool>());
    EXPECT_EQ(j["cells_computed"].get<std::size_t>(), 30u);
}

TEST(Cli, DistOtherKinds) {
    const auto r = call({"dist", "--kind", "msm", "--msm-c", "1", "--a", "1,2", "--b", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["cost"].get<double>(), 2.0);
    const auto erp = call({"dist", "--kind", "erp", "--window", "1", "--a", "1,2", "--b", "1"});
    ASSERT_EQ(erp.code, 0) << erp.err;
    EXPECT_EQ(json::parse(erp.out)["cost"].get<double>(), 2.0);
}

TEST(Cli, DistFromUcrFile) {
    const auto path = std::filesystem::temp_directory_path() / "eap_cli_dist.tsv";
    {
        std::ofstream f(path);
        f << "0\t3\t1\t4\t4\t1\t1\n1\t1\t3\t2\t1\t2\t2\n";
    }
    const auto r = call({"dist", "--a-file", path.string(), "--a-row", "0", "--b-file", path.string(), "--b-row", "1"});
    std::filesystem::remove(path);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["cost"].get<double>(), 9.0);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(call({}).code, 1);
    EXPECT_EQ(call({"dist", "--a", "1,2"}).code, 1);
    EXPECT_EQ(call({"dist", "--kind", "cdtw", "--a", "1", "--b", "1"}).code, 1);
    EXPECT_EQ(call({"dist", "--kind", "nope", "--a", "1", "--b", "1"}).code, 1);
    EXPECT_EQ(call({"dist", "--a", "1,2", "--b", "1", "--cutoff", "-1"}).code, 1);
    EXPECT_EQ(call({"dist", "--a-file", "/nonexistent/file.tsv", "--b", "1"}).code, 1);
    EXPECT_EQ(call({"nn", "--gen-train", "4", "--gen-test", "2", "--kind", "msm", "--lb", "keogh"}).code, 1);
    const auto r = call({"frobnicate"});
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, Help) {
    const auto r = call({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("dist"), std::string::npos);
}

TEST(Cli, NnGenerated) {
    const auto r = call({"nn", "--gen-train", "10", "--gen-test", "6", "--gen-length", "32", "--kind", "cdtw",
                         "--window", "3", "--lb", "keogh2", "--threads", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto lines = json_lines(r.out);
    ASSERT_EQ(lines.size(), 7u);
    const auto& summary = lines.back();
    EXPECT_TRUE(summary["summary"].get<bool>());
    const double acc = summary["accuracy"].get<double>();
    EXPECT_GE(acc, 0.0);
    EXPECT_LE(acc, 1.0);

    // Same predictions from every engine.
    const auto base = call({"nn", "--gen-train", "10", "--gen-test", "6", "--gen-length", "32", "--kind", "cdtw",
                            "--window", "3", "--variant", "base"});
    ASSERT_EQ(base.code, 0) << base.err;
    EXPECT_EQ(json_lines(base.out).back()["predictions"], summary["predictions"]);
}

TEST(Cli, Subseq) {
    const auto r = call({"subseq", "--query", "1,2,3", "--reference", "0,0,5,1,2,3,9,9"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["offset"].get<std::size_t>(), 3u);
    EXPECT_EQ(j["distance"].get<double>(), 0.0);
}

TEST(Cli, Bench) {
    const auto r = call({"bench", "--gen-train", "6", "--gen-test", "3", "--gen-length", "24", "--variants", "base,eapruned"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "variant,lb,repetition,wall_s,cells,computed,abandoned,lb_skips,accuracy,speedup_vs_base");
    int rows = 0;
    for (std::string line; std::getline(in, line);) { rows += !line.empty(); }
    EXPECT_EQ(rows, 2);
}
