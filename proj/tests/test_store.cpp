#include "refcast/store.hpp"
#include "refcast/errors.hpp"
#include "refcast/plot.hpp"

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <unistd.h>

using namespace refcast;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("refcast_store_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("fnv1a64 known vectors") {
    CHECK(fnv1a64_hex("") == "fnv1a64:cbf29ce484222325");
    CHECK(fnv1a64_hex("a") == "fnv1a64:af63dc4c8601ec8c");
    CHECK(fnv1a64_hex("foobar") == "fnv1a64:85944171f73967e8");
}

TEST_CASE("store registers, resolves, and checks datasets") {
    TempDir tmp;
    const auto file = tmp.path / "dams.csv";
    write_file(file, "id,name\n1,A\n");

    {
        DatasetStore store(tmp.path);
        CHECK_FALSE(store.resolve("dams").has_value());
        store.register_file("dams", file, 1);
    }

    DatasetStore reloaded(tmp.path);
    const auto resolved = reloaded.resolve("dams");
    REQUIRE(resolved.has_value());
    CHECK(fs::equivalent(*resolved, file));
    CHECK(reloaded.entries().at("dams").rows == 1);
    CHECK(reloaded.checksum_ok("dams"));

    write_file(file, "id,name\n1,A\n2,B\n");  // mutate behind the index
    CHECK_FALSE(reloaded.checksum_ok("dams"));
}

TEST_CASE("store refuses files outside its directory") {
    TempDir tmp;
    const auto outside = fs::temp_directory_path() / "refcast_outside.csv";
    write_file(outside, "x\n");
    DatasetStore store(tmp.path);
    CHECK_THROWS_AS(store.register_file("bad", outside, 0), DomainError);
    fs::remove(outside);
}

TEST_CASE("corrupt store.meta is a format error") {
    TempDir tmp;
    write_file(tmp.path / "store.meta", "{not json");
    CHECK_THROWS_AS(DatasetStore{tmp.path}, FormatError);
}

TEST_CASE("svg chart and xy csv are well formed") {
    plot::Series s;
    s.label = "cost";
    s.points = {{0.0, 0.0}, {0.5, 0.4}, {1.0, 1.0}};
    const auto svg = plot::svg_line_chart("Cumulative frequency", "overrun", "frequency", {s});
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("Cumulative frequency") != std::string::npos);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);

    const auto csv = plot::xy_csv("overrun", "frequency", s.points);
    CHECK(csv == "overrun,frequency\n0,0\n0.5,0.4\n1,1\n");

    // deterministic output
    CHECK(svg == plot::svg_line_chart("Cumulative frequency", "overrun", "frequency", {s}));
}
