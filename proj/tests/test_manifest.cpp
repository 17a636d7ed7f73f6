#include <doctest.h>

#include <string>

#include "radrobust/error.hpp"
#include "radrobust/feature_table.hpp"
#include "radrobust/manifest.hpp"

using namespace radrobust;

namespace {

const std::string kHeader = "image_id,image_path,spacing_x,spacing_y,x0,y0,bw,bh,label\n";

Error error_of(const std::string &text) {
    try {
        parse_manifest(text);
    } catch (const Error &e) {
        return e;
    }
    FAIL("expected an error");
    return Error(ErrorKind::InvalidArgument, "");
}

} // namespace

TEST_CASE("well-formed manifest") {
    const auto entries = parse_manifest(kHeader + "a,a.png,0.07,0.07,1,2,3,4,benign\n"
                                                  "b,img/b.raw,0.1,0.2,0,0,10,10,\n"
                                                  "\"c,1\",c.png,1,1,-2,5,7,8,\"mal \"\"x\"\"\"\r\n");
    REQUIRE(entries.size() == 3);
    CHECK(entries[0].image_id == "a");
    CHECK(entries[0].spacing == Spacing{0.07, 0.07});
    CHECK(entries[0].bbox == BBox{1, 2, 3, 4});
    CHECK(entries[0].label == "benign");
    CHECK_FALSE(entries[1].label.has_value());
    CHECK(entries[2].image_id == "c,1");
    CHECK(entries[2].bbox.x0 == -2);
    CHECK(entries[2].label == "mal \"x\"");
}

TEST_CASE("duplicate ids are rejected by name") {
    const auto e = error_of(kHeader + "a,a.png,1,1,0,0,2,2,\na,b.png,1,1,0,0,2,2,\n");
    CHECK(e.kind() == ErrorKind::DuplicateId);
    CHECK(std::string(e.what()).find("'a'") != std::string::npos);
}

TEST_CASE("parse errors carry a location") {
    const auto e = error_of(kHeader + "a,a.png,1,1,0,0,2,2,\nb,b.png,1,1,0,zero,2,2,\n");
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("line 3, column 6") != std::string::npos);

    CHECK(error_of("id,path\n").kind() == ErrorKind::ParseError);
    CHECK(error_of("").kind() == ErrorKind::ParseError);
    CHECK(std::string(error_of(kHeader + "a,a.png,1,1,0,0,2\n").what()).find("line 2") != std::string::npos);
    CHECK(std::string(error_of(kHeader + "a,a.png,-1,1,0,0,2,2,\n").what()).find("column 3") != std::string::npos);
    CHECK(std::string(error_of(kHeader + "a,a.png,1,1,0,0,0,2,\n").what()).find("column 7") != std::string::npos);
    CHECK(error_of(kHeader + "\"a,a.png,1,1,0,0,2,2,\n").kind() == ErrorKind::ParseError);
}

TEST_CASE("manifest write then read preserves entries") {
    const std::vector<ManifestEntry> entries{
        {"x", "x.raw", {0.07, 0.07}, {1, 2, 30, 40}, std::string("bright_rim")},
        {"y,z", "sub/y.png", {0.5, 0.25}, {0, 0, 1, 1}, std::nullopt},
    };
    const auto path = std::filesystem::temp_directory_path() / "radrobust_test_manifest.csv";
    write_manifest(path, entries);
    const auto back = read_manifest(path);
    REQUIRE(back.size() == 2);
    for (size_t i = 0; i < 2; ++i) {
        CHECK(back[i].image_id == entries[i].image_id);
        CHECK(back[i].image_path == entries[i].image_path);
        CHECK(back[i].spacing == entries[i].spacing);
        CHECK(back[i].bbox == entries[i].bbox);
        CHECK(back[i].label == entries[i].label);
    }
    CHECK(resolve_image_path("/data/m.csv", back[1]) == std::filesystem::path("/data/sub/y.png"));
    CHECK(resolve_image_path("/data/m.csv", ManifestEntry{"a", "/abs/a.png", {}, {}, {}}) ==
          std::filesystem::path("/abs/a.png"));
}

TEST_CASE("feature table csv round trip and errors") {
    FeatureTable t;
    t.add({"img,1", MaskVariant::Eroded, "static:0,255,32", "lde", 0.1 + 0.2});
    t.add({"img2", MaskVariant::Dilated, "dynamic:32", "ldlgle", -1e-300});
    const auto back = FeatureTable::from_csv(t.to_csv());
    REQUIRE(back.rows().size() == 2);
    CHECK(back.rows()[0].image_id == "img,1");
    CHECK(back.rows()[0].binning == "static:0,255,32");
    CHECK(back.rows()[0].value == 0.1 + 0.2);
    CHECK(back.rows()[1].variant == MaskVariant::Dilated);
    CHECK(back.rows()[1].value == -1e-300);
    CHECK(back.to_csv() == t.to_csv());

    CHECK_THROWS_AS(FeatureTable::from_csv("bad header\n"), Error);
    CHECK_THROWS_AS(FeatureTable::from_csv(std::string(kFeatureTableHeader) + "\na,shrunk,d,f,1\n"), Error);
    CHECK_THROWS_AS(FeatureTable::from_csv(std::string(kFeatureTableHeader) + "\na,original,d,f,x\n"), Error);
}
