#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using radrobust::cli::run;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path fresh_dir(const std::string &name) {
    const auto dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("configuration errors exit with 2") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"run", "--manifest", "m.csv"}).code == 2);
    CHECK(invoke({"run", "--manifest", "m.csv", "--binning", "dynamic:0"}).code == 2);
    CHECK(invoke({"run", "--manifest", "m.csv", "--binning", "fuzzy:3"}).code == 2);
    CHECK(invoke({"phantom", "--n-images", "0", "--out-dir", "x"}).code == 2);
    CHECK(invoke({"phantom", "--texture", "plaid"}).code == 2);
}

TEST_CASE("data errors exit with 3") {
    const auto dir = fresh_dir("radrobust_cli_data");
    CHECK(invoke({"run", "--manifest", (dir / "missing.csv").string(), "--binning", "dynamic:8"}).code == 3);
    {
        std::ofstream m(dir / "dup.csv");
        m << "image_id,image_path,spacing_x,spacing_y,x0,y0,bw,bh,label\n"
             "a,a.raw,1,1,0,0,2,2,\na,b.raw,1,1,0,0,2,2,\n";
    }
    const auto dup = invoke({"run", "--manifest", (dir / "dup.csv").string(), "--binning", "dynamic:8"});
    CHECK(dup.code == 3);
    CHECK(dup.err.find("DuplicateId") != std::string::npos);
    {
        std::ofstream m(dir / "gone.csv");
        m << "image_id,image_path,spacing_x,spacing_y,x0,y0,bw,bh,label\na,nowhere.raw,1,1,0,0,2,2,\n";
    }
    const auto gone = invoke({"extract", "--manifest", (dir / "gone.csv").string(), "--binning", "dynamic:8"});
    CHECK(gone.code == 3);
    CHECK(gone.err.find("MissingFile") != std::string::npos);
}

TEST_CASE("phantom, run, compare and scatter end to end") {
    const auto dir = fresh_dir("radrobust_cli_e2e");
    const auto corpus = (dir / "corpus").string();
    REQUIRE(invoke({"phantom", "--n-images", "6", "--image-size", "64", "--bbox-size", "32", "--out-dir", corpus}).code ==
            0);
    const auto manifest = (dir / "corpus" / "manifest.csv").string();
    REQUIRE(fs::exists(manifest));

    const std::vector<std::string> run_args{"run",        "--manifest", manifest,  "--binning",
                                            "dynamic:16", "--binning",  "static:0,255,16"};
    auto args_a = run_args;
    args_a.insert(args_a.end(), {"--out-dir", (dir / "a").string(), "--scatter", "lde", "--svg"});
    auto args_b = run_args;
    args_b.insert(args_b.end(), {"--out-dir", (dir / "b").string(), "--threads", "2"});
    const auto ra = invoke(args_a);
    REQUIRE(ra.code == 0);
    REQUIRE(invoke(args_b).code == 0);

    CHECK(slurp(dir / "a" / "features.csv") == slurp(dir / "b" / "features.csv"));
    CHECK(slurp(dir / "a" / "report.json") == slurp(dir / "b" / "report.json"));
    CHECK(fs::exists(dir / "a" / "scatter_lde_dynamic-16.csv"));
    CHECK(fs::exists(dir / "a" / "scatter_lde_static-0-255-16.svg"));

    const auto report = nlohmann::json::parse(slurp(dir / "a" / "report.json"));
    CHECK(report["comparisons"].size() == 6);
    CHECK(report["provenance"]["corpus"]["included"] == 6);
    CHECK(slurp(dir / "a" / "report.json").find(dir.string()) == std::string::npos);

    const auto features = (dir / "a" / "features.csv").string();
    REQUIRE(invoke({"compare", "--features", features, "--comparisons", "orig_vs_eroded", "--binning", "dynamic:16",
                    "--out-dir", (dir / "c").string()})
                .code == 0);
    const auto cmp = nlohmann::json::parse(slurp(dir / "c" / "report.json"));
    REQUIRE(cmp["comparisons"].size() == 1);
    CHECK(cmp["comparisons"][0] == report["comparisons"][0]);

    CHECK(invoke({"scatter", "--features", features, "--feature", "ldlgle", "--binning", "dynamic:16", "--comparison",
                  "eroded_vs_dilated", "--out-dir", (dir / "s").string()})
              .code == 0);
    CHECK(fs::exists(dir / "s" / "scatter_ldlgle_dynamic-16_eroded_vs_dilated.csv"));
    CHECK(invoke({"scatter", "--features", features, "--feature", "nope", "--binning", "dynamic:16", "--out-dir",
                  (dir / "s").string()})
              .code == 2);

    REQUIRE(invoke({"extract", "--manifest", manifest, "--binning", "static-width:10", "--out-dir",
                    (dir / "e").string(), "--comparisons", "orig_vs_dilated"})
                .code == 0);
    const auto extracted = slurp(dir / "e" / "features.csv");
    CHECK(extracted.find(",dilated,\"static-width:10,0\",lde,") != std::string::npos);
    CHECK(extracted.find(",eroded,") == std::string::npos);
    CHECK_FALSE(fs::exists(dir / "e" / "report.json"));
}
