#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "edgekernel/finite_kernels.hpp"
#include "edgekernel/fredholm.hpp"
#include "edgekernel/limit_kernels.hpp"

#ifndef EDGEKERNEL_CLI_PATH
#error "EDGEKERNEL_CLI_PATH must point at the built binary"
#endif

using namespace edgekernel;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(EDGEKERNEL_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

// data lines only: comment/header stripped, keyed by the column header
struct Csv {
    std::vector<std::string> cols;
    std::vector<std::vector<double>> rows;
};

Csv parse_csv(const std::string& text) {
    Csv csv;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> parts;
        std::istringstream ls(line);
        std::string item;
        while (std::getline(ls, item, ',')) parts.push_back(item);
        if (!have_header) {
            csv.cols = parts;
            have_header = true;
            continue;
        }
        std::vector<double> row;
        for (const auto& s : parts) row.push_back(std::stod(s));
        csv.rows.push_back(std::move(row));
    }
    return csv;
}

int col(const Csv& csv, const std::string& name) {
    for (size_t i = 0; i < csv.cols.size(); ++i)
        if (csv.cols[i] == name) return int(i);
    return -1;
}

std::string data_payload(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') out << line << "\n";
    return out.str();
}

}  // namespace

TEST_CASE("no subcommand / bad flags are usage errors") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("limit").exit_code == 2);                              // missing required
    CHECK(run_cli("limit --ensemble gue --s-grid nonsense").exit_code == 2);
    CHECK(run_cli("limit --ensemble boe --s-grid 0:1:1").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("kernel --which limit --ensemble goe --entry Q --x-grid 0:1:1").exit_code == 2);
}

TEST_CASE("--help and --version succeed") {
    const RunResult help = run_cli("--help");
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("a:b:step") != std::string::npos);
    const RunResult ver = run_cli("--version");
    CHECK(ver.exit_code == 0);
    CHECK(ver.out.find("edgekernel v") != std::string::npos);
}

TEST_CASE("limit gue far in the right tail: F = 1") {
    const RunResult r = run_cli("limit --ensemble gue --s-grid 8:9:1");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("# edgekernel v", 0) == 0);  // header line first
    const Csv csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 2);
    const int fc = col(csv, "F");
    REQUIRE(fc >= 0);
    for (const auto& row : csv.rows) CHECK(std::fabs(row[fc] - 1.0) < 1e-9);
}

TEST_CASE("limit goe single row equals the direct library call") {
    const RunResult r = run_cli("limit --ensemble goe --s-grid 0:0:1");
    REQUIRE(r.exit_code == 0);
    const Csv csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 1);
    const double direct = gap_matrix(limit_kernel(Ensemble::GOE), 0.0).sqrt_value;
    CHECK(csv.rows[0][col(csv, "F")] == doctest::Approx(direct).epsilon(1e-15));
}

TEST_CASE("limit rows ascend in s with nondecreasing F") {
    const RunResult r = run_cli("limit --ensemble gse --s-grid -2:2:1");
    REQUIRE(r.exit_code == 0);
    const Csv csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 5);
    const int sc = col(csv, "s"), fc = col(csv, "F");
    for (size_t i = 1; i < csv.rows.size(); ++i) {
        CHECK(csv.rows[i][sc] > csv.rows[i - 1][sc]);
        CHECK(csv.rows[i][fc] >= csv.rows[i - 1][fc]);
    }
}

TEST_CASE("finite gse N=1 at t=0 and the small-N oracle columns") {
    const RunResult r = run_cli("finite --ensemble gse --N 1 --t-grid 0:0:1");
    REQUIRE(r.exit_code == 0);
    const Csv csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 1);
    CHECK(std::fabs(csv.rows[0][col(csv, "F")] - 0.5) < 1e-8);
    REQUIRE(col(csv, "oracle") >= 0);  // N <= 4 carries the oracle column
    REQUIRE(col(csv, "residual") >= 0);
    CHECK(std::fabs(csv.rows[0][col(csv, "residual")]) < 1e-6);
}

TEST_CASE("finite gse N=3 agrees with its oracle column") {
    const RunResult r = run_cli("finite --ensemble gse --N 3 --t-grid 2:2:1");
    REQUIRE(r.exit_code == 0);
    const Csv csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 1);
    const double F = csv.rows[0][col(csv, "F")];
    const double oracle = csv.rows[0][col(csv, "oracle")];
    CHECK(std::fabs(F - oracle) < 1e-6);
}

TEST_CASE("finite parity violation is a usage error") {
    CHECK(run_cli("finite --ensemble goe --N 3 --t-grid 0:0:1").exit_code == 2);
    CHECK(run_cli("finite --ensemble gse --N 2 --t-grid 0:0:1").exit_code == 2);
}

TEST_CASE("large N skips the oracle columns") {
    const RunResult r = run_cli("finite --ensemble goe --N 6 --t-grid 3:3:1");
    REQUIRE(r.exit_code == 0);
    const Csv csv = parse_csv(r.out);
    CHECK(col(csv, "oracle") == -1);
    CHECK(col(csv, "F") >= 0);
}

TEST_CASE("converge: error column decreasing, F_inf constant") {
    const RunResult r = run_cli("converge --ensemble gse --s 0 --N-list 5,11,25");
    REQUIRE(r.exit_code == 0);
    const Csv csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 3);
    const int err = col(csv, "abs_err"), finf = col(csv, "F_inf");
    for (size_t i = 1; i < csv.rows.size(); ++i) {
        CHECK(csv.rows[i][err] < csv.rows[i - 1][err]);
        CHECK(csv.rows[i][finf] == csv.rows[0][finf]);
    }
    CHECK(r.out.find("# monotone_decreasing: true") != std::string::npos);
}

TEST_CASE("converge equals the finite pipeline at the scaled point") {
    const RunResult r = run_cli("converge --ensemble goe --s 0.5 --N-list 6");
    REQUIRE(r.exit_code == 0);
    const Csv csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 1);
    const EnsembleSpec spec = make_spec(Ensemble::GOE, 6);
    const double direct = gap_matrix(finite_kernel(spec), 0.5).sqrt_value;
    CHECK(csv.rows[0][col(csv, "F_N")] == doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("oracle painleve at s=0 agrees with limit gue to 1e-6") {
    const RunResult pain = run_cli("oracle painleve --s 0");
    REQUIRE(pain.exit_code == 0);
    const Csv pcsv = parse_csv(pain.out);
    REQUIRE(pcsv.rows.size() == 1);
    const double f2 = pcsv.rows[0][col(pcsv, "F2")];
    CHECK(col(pcsv, "F1") >= 0);
    CHECK(col(pcsv, "F4") >= 0);

    const RunResult lim = run_cli("limit --ensemble gue --s-grid 0:0:1");
    const Csv lcsv = parse_csv(lim.out);
    CHECK(std::fabs(f2 - lcsv.rows[0][col(lcsv, "F")]) < 1e-6);
}

TEST_CASE("oracle painleve wants exactly one grid flavor") {
    CHECK(run_cli("oracle painleve").exit_code == 2);
    CHECK(run_cli("oracle painleve --s 0 --s-grid 0:1:1").exit_code == 2);
    CHECK(run_cli("oracle painleve --s -11").exit_code == 2);  // domain
    CHECK(run_cli("oracle painleve --s-grid -2:0:1").exit_code == 0);
}

TEST_CASE("oracle small-n is bit-identical across runs") {
    const RunResult a = run_cli("oracle small-n --ensemble goe --N 2 --t 0");
    const RunResult b = run_cli("oracle small-n --ensemble goe --N 2 --t 0");
    REQUIRE(a.exit_code == 0);
    CHECK(data_payload(a.out) == data_payload(b.out));
    const Csv csv = parse_csv(a.out);
    CHECK(csv.rows[0][col(csv, "cdf")] == doctest::Approx(0.14644660940672488).epsilon(1e-12));
}

TEST_CASE("oracle mc with a fixed seed is reproducible") {
    const std::string args = "oracle mc --ensemble goe --N 4 --samples 3000 --seed 42 "
                             "--s-grid -2:1:1";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    CHECK(data_payload(a.out) == data_payload(b.out));
    const Csv csv = parse_csv(a.out);
    REQUIRE(csv.rows.size() == 4);
    const int cdf = col(csv, "cdf");
    for (size_t i = 1; i < csv.rows.size(); ++i) CHECK(csv.rows[i][cdf] >= csv.rows[i - 1][cdf]);
}

TEST_CASE("oracle calibrate-f4 writes the convention constants file") {
    const std::string path = "cli_test_f4.txt";
    std::remove(path.c_str());
    const RunResult r =
        run_cli("oracle calibrate-f4 --calibration-file " + path + " --output /dev/null");
    REQUIRE(r.exit_code == 0);
    std::ifstream f(path);
    REQUIRE(f.good());
    std::stringstream buf;
    buf << f.rdbuf();
    const std::string text = buf.str();
    CHECK(text.find("f4_argument_scale = 1") != std::string::npos);
    CHECK(text.find("max_abs_residual") != std::string::npos);
    CHECK(text.find("# edgekernel v") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("kernel dump: limit GSE S at the origin matches the library") {
    const RunResult r = run_cli("kernel --which limit --ensemble gse --entry S --x-grid 0:0:1");
    REQUIRE(r.exit_code == 0);
    const Csv csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 1);
    CHECK(csv.rows[0][col(csv, "S")] ==
          doctest::Approx(k_gse(0.0, 0.0).e11).epsilon(1e-14));
}

TEST_CASE("kernel dump: finite GOE IS antisymmetric eps step") {
    const RunResult r = run_cli(
        "kernel --which finite --ensemble goe --N 4 --entry IS --x-grid 0:1:1 --y-grid 0:1:1");
    REQUIRE(r.exit_code == 0);
    const Csv csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 4);
    const int xc = col(csv, "x"), yc = col(csv, "y"), vc = col(csv, "IS");
    double v10 = 0, v01 = 0;
    for (const auto& row : csv.rows) {
        if (row[xc] == 1.0 && row[yc] == 0.0) v10 = row[vc];
        if (row[xc] == 0.0 && row[yc] == 1.0) v01 = row[vc];
    }
    // dumped corner carries -eps: the eps parts differ by exactly -1
    const EnsembleSpec spec = make_spec(Ensemble::GOE, 4);
    const double is10 = scaled_kernel(spec, 1.0, 0.0).e21 + 0.5;  // strip eps
    const double is01 = scaled_kernel(spec, 0.0, 1.0).e21 - 0.5;
    CHECK(v10 - v01 == doctest::Approx(is10 - is01 - 1.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("kernel dump: finite N=41 tracks the limit dump") {
    const RunResult fin = run_cli(
        "kernel --which finite --ensemble gse --N 41 --entry full --x-grid -1:1:1");
    const RunResult lim =
        run_cli("kernel --which limit --ensemble gse --entry full --x-grid -1:1:1");
    REQUIRE(fin.exit_code == 0);
    REQUIRE(lim.exit_code == 0);
    const Csv fc = parse_csv(fin.out), lc = parse_csv(lim.out);
    REQUIRE(fc.rows.size() == lc.rows.size());
    double max_diff = 0;
    for (size_t i = 0; i < fc.rows.size(); ++i)
        for (int c = 2; c < 6; ++c)
            max_diff = std::max(max_diff, std::fabs(fc.rows[i][c] - lc.rows[i][c]));
    CHECK(std::isfinite(max_diff));
    CHECK(max_diff < 0.05);  // N = 41 is already close at these probes
}

TEST_CASE("kernel dump emits a plot script next to the CSV") {
    const std::string csv_path = "cli_test_dump.csv";
    std::remove(csv_path.c_str());
    const RunResult r = run_cli("kernel --which limit --ensemble goe --entry S "
                                "--x-grid -2:2:1 --output " + csv_path + " --emit-plot");
    REQUIRE(r.exit_code == 0);
    std::ifstream csv(csv_path);
    CHECK(csv.good());
    std::ifstream script(csv_path + ".plot.py");
    REQUIRE(script.good());
    std::stringstream buf;
    buf << script.rdbuf();
    CHECK(buf.str().find(csv_path) != std::string::npos);  // self-contained reference
    std::remove(csv_path.c_str());
    std::remove((csv_path + ".plot.py").c_str());
}

TEST_CASE("json output mirrors the CSV columns as arrays") {
    const RunResult r = run_cli("limit --ensemble gue --s-grid 8:9:1 --format json");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    REQUIRE(doc.contains("manifest"));
    REQUIRE(doc.contains("columns"));
    CHECK(doc["manifest"]["command"] == "limit");
    CHECK(doc["manifest"]["version"] == "1.0.0");
    const auto& F = doc["columns"]["F"];
    REQUIRE(F.size() == 2);
    for (const auto& v : F) CHECK(std::fabs(v.get<double>() - 1.0) < 1e-9);
    // column order is recorded for table reconstruction
    CHECK(doc["column_order"][0] == "s");
}

TEST_CASE("every output embeds the run manifest") {
    const RunResult r = run_cli("oracle painleve --s 1");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("# manifest: {") != std::string::npos);
    CHECK(r.out.find("\"command\":\"oracle painleve\"") != std::string::npos);
    CHECK(r.out.find("\"version\":\"1.0.0\"") != std::string::npos);
}

TEST_CASE("csv payload is bit-identical across reruns") {
    const std::string args = "limit --ensemble gse --s-grid -1:1:0.5";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    CHECK(data_payload(a.out) == data_payload(b.out));
}
