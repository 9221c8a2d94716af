#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qre/cli.hpp"
#include "qre/io.hpp"

using namespace qre;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "qre");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "qre_io_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::vector<std::string> split_crlf(const std::string& s) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const auto end = s.find("\r\n", pos);
        REQUIRE(end != std::string::npos);
        lines.push_back(s.substr(pos, end - pos));
        pos = end + 2;
    }
    return lines;
}

} // namespace

TEST_CASE("format_real round-trips doubles and spells infinities") {
    CHECK(io::format_real(0.1) == "0.10000000000000001");
    CHECK(io::format_real(1.0) == "1");
    CHECK(io::format_real(std::numeric_limits<double>::infinity()) == "inf");
    for (double x : {0.1, 1.0 / 3.0, 3.682694376831169, 1e-300, 123456789.123}) CHECK(std::stod(io::format_real(x)) == x);
}

TEST_CASE("csv_field quotes per RFC 4180") {
    CHECK(io::csv_field("plain") == "plain");
    CHECK(io::csv_field("a,b") == "\"a,b\"");
    CHECK(io::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("csv layout: metadata comments, header, CRLF rows") {
    io::Table t;
    t.metadata = {{"schema", "x"}, {"note", "a,b"}};
    t.columns = {"a", "b", "c"};
    t.rows = {{io::Cell{1.5}, io::Cell{std::uint64_t{3}}, io::Cell{true}},
              {io::Cell{std::numeric_limits<double>::infinity()}, io::Cell{std::uint64_t{0}}, io::Cell{false}}};
    std::ostringstream os;
    io::write_csv(os, t);
    const auto lines = split_crlf(os.str());
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "# schema: x");
    CHECK(lines[1] == "# note: a,b");
    CHECK(lines[2] == "a,b,c");
    CHECK(lines[3] == "1.5,3,true");
    CHECK(lines[4] == "inf,0,false");
}

TEST_CASE("json output parses back with inf as null") {
    io::Table t;
    t.metadata = {{"schema", io::kSchemaVersion}};
    t.columns = {"x", "flag"};
    t.rows = {{io::Cell{0.1}, io::Cell{false}}, {io::Cell{std::numeric_limits<double>::infinity()}, io::Cell{true}}};
    std::ostringstream os;
    io::write_json(os, t);
    const auto doc = nlohmann::json::parse(os.str());
    CHECK(doc["metadata"]["schema"] == io::kSchemaVersion);
    REQUIRE(doc["rows"].size() == 2);
    CHECK(doc["rows"][0]["x"].get<double>() == 0.1);
    CHECK(doc["rows"][1]["x"].is_null());
    CHECK(doc["rows"][1]["flag"] == true);
}

TEST_CASE("records table round-trips through json") {
    const auto rs = mc::run_experiment(20, 42);
    std::ostringstream os;
    io::write_json(os, io::records_table(rs, 42));
    const auto doc = nlohmann::json::parse(os.str());
    CHECK(doc["metadata"]["seed"] == "42");
    CHECK(doc["metadata"]["n"] == "20");
    REQUIRE(doc["rows"].size() == 20);
    for (std::size_t k = 0; k < rs.size(); ++k) {
        CHECK(doc["rows"][k]["index"].get<std::uint64_t>() == k);
        CHECK(doc["rows"][k]["u"].get<double>() == rs[k].u);
        CHECK(doc["rows"][k]["s_tilde"].get<double>() == rs[k].s_tilde.value());
    }
}

TEST_CASE("cli montecarlo writes one row per record, deterministically") {
    const auto a = scratch("mc_a.csv"), b = scratch("mc_b.csv");
    const auto ra = invoke({"montecarlo", "-n", "1", "--seed", "42", "-o", a.string()});
    CHECK(ra.code == cli::kOk);
    const auto lines = split_crlf(slurp(a));
    std::size_t data_rows = 0;
    for (const auto& l : lines)
        if (!l.starts_with("#")) ++data_rows;
    CHECK(data_rows == 2); // header + 1
    CHECK(ra.out.find("violations: 0") != std::string::npos);

    invoke({"montecarlo", "-n", "50", "--seed", "9", "-o", a.string()});
    invoke({"montecarlo", "-n", "50", "--seed", "9", "-o", b.string()});
    CHECK(slurp(a) == slurp(b));

    const auto j = scratch("mc.json");
    CHECK(invoke({"montecarlo", "-n", "3", "--format", "json", "-o", j.string()}).code == cli::kOk);
    CHECK(nlohmann::json::parse(slurp(j))["rows"].size() == 3);
}

TEST_CASE("cli saturation") {
    const auto p = scratch("sat.csv");
    const auto r = invoke({"saturation", "--eps", "0.5,1,2", "-o", p.string()});
    CHECK(r.code == cli::kOk);
    const auto lines = split_crlf(slurp(p));
    CHECK(lines.back().starts_with("2,"));
}

TEST_CASE("cli exit codes") {
    CHECK(invoke({}).code == cli::kUsage);
    CHECK(invoke({"bogus"}).code == cli::kUsage);
    CHECK(invoke({"verify", "--suite", "bogus"}).code == cli::kUsage);
    CHECK(invoke({"verify", "--draws", "0"}).code == cli::kUsage);
    CHECK(invoke({"saturation", "--eps", "-1", "-o", scratch("x.csv").string()}).code == cli::kUsage);
    CHECK(invoke({"montecarlo", "-n", "5"}).code == cli::kUsage);
    CHECK(invoke({"montecarlo", "-n", "5", "-o", "/nonexistent-dir/out.csv"}).code == cli::kIoFailure);
    CHECK(invoke({"verify", "--suite", "bounds", "--draws", "50"}).code == cli::kOk);
    CHECK(invoke({"--help"}).code == cli::kOk);
}
