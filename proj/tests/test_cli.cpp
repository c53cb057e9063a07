#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hardyop/error.hpp"
#include "hardyop/run.hpp"

using namespace hardyop;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("hardyop_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(p));
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> row;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) row.push_back(cell);
        if (!line.empty() && line.back() == ',') row.emplace_back();
        rows.push_back(row);
    }
    return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    FAIL("missing column " << name);
    return 0;
}

RunConfig config(const std::string& text) { return parse_config(parse_document(text, "test")); }

int run_exe(const std::string& args) {
    int status = std::system((std::string(HARDY_OP_EXE) + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("config validation names the offending field") {
    auto where = [](const std::string& text) {
        try {
            config(text);
        } catch (const ConfigError& e) {
            return e.where();
        }
        return std::string("<accepted>");
    };
    CHECK(where(R"({"operators":[{"nu":0.5}],"checks":["self_adjoint"],"dims":[]})") == "dims");
    CHECK(where(R"({"operators":[{"nu":0.5}],"checks":["self_adjoint"],"dims":[16,8]})") == "dims[1]");
    CHECK(where(R"({"operators":[{"nu":0.5}],"checks":["self_adjoint"],"dims":[8],"tolerances":{"tol_pass":1e-3,"tol_fail":1e-4}})") ==
          "tolerances");
    CHECK(where(R"({"operators":[{"nu":0.5}],"checks":["self_adjoint"],"dims":[8],"tolerances":{"eval_tol":1e-10}})") ==
          "tolerances.eval_tol");
    CHECK(where(R"({"operators":[{"nu":0.5},{"nu":[2,0]}],"checks":["self_adjoint"],"dims":[8]})") == "operators[1].nu");
    CHECK(where(R"({"operators":[{"nu":0.5,"colour":1}],"checks":["self_adjoint"],"dims":[8]})") == "operators[0].colour");
    CHECK(where(R"({"operators":[{"nu":0.5}],"checks":["spectrum"],"dims":[8]})") == "checks[0]");
    CHECK(where(R"({"space":"fock","operators":[{"nu":0.5}],"checks":["self_adjoint"],"dims":[8]})") == "<accepted>");

    try {
        parse_document("{\n  \"dims\": [8,\n}", "cfg.json");
        FAIL("expected a syntax error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("run reports co-isometry for a rotation") {
    auto dir = scratch("run");
    auto cfg = config(R"({"space":"fock","operators":[{"name":"rot","nu":[0,1],"upsilon":"one"}],
                          "checks":["co_isometry"],"dims":[16,32]})");
    RunOptions opts;
    opts.out_dir = dir.string();
    auto result = run(cfg, opts);
    CHECK(result.exit_status == 0);
    Json report = parse_document(slurp(dir / "report.json"), "report");
    const Json& v = report["operators"][0]["report"]["verdicts"][0];
    CHECK(v["property"] == "CoIsometry");
    CHECK(v["symbolic"]["truth"] == "True");
    CHECK(v["agreement"] == "Agree");
    auto curve = read_csv(dir / "report_residuals.csv");
    REQUIRE(curve.size() > 1);
    CHECK(curve[0] == std::vector<std::string>{"operator", "property", "N", "residual"});
}

TEST_CASE("run exits 2 on a paradox or disagreement and 1 on bad input") {
    auto dir = scratch("exe");
    {
        std::ofstream(dir / "empty_dims.json") << R"({"operators":[{"nu":0.5}],"checks":["self_adjoint"],"dims":[]})";
        std::ofstream(dir / "ok.json") << R"({"operators":[{"nu":[0,1]}],"checks":["co_isometry","self_adjoint"],"dims":[8]})";
        std::ofstream(dir / "sweep.json")
            << R"({"operators":[{"nu":0.2}],"checks":["self_adjoint"],"dims":[8],"sweep":{"nu":[0.2,[0.5,0.5],[0,1]]}})";
    }
    CHECK(run_exe("run " + (dir / "empty_dims.json").string() + " --out " + dir.string()) == 1);
    CHECK(run_exe("run " + (dir / "missing.json").string()) == 1);
    CHECK(run_exe("run " + (dir / "ok.json").string() + " --out " + dir.string()) == 0);
    CHECK(run_exe("sweep " + (dir / "sweep.json").string() + " --out " + dir.string() + " --jobs 2") == 0);
    CHECK(run_exe("frobnicate") == 1);
}

TEST_CASE("sweep over nu for self-adjointness") {
    auto dir = scratch("sweep_nu");
    auto cfg = config(R"({"operators":[{"nu":0.2,"upsilon":"one"}],"checks":["self_adjoint"],"dims":[32],
                          "sweep":{"nu":[0.2,[0.5,0.5],[0,1]]}})");
    RunOptions opts;
    opts.out_dir = dir.string();
    CHECK(sweep(cfg, opts).exit_status == 0);
    auto rows = read_csv(dir / "report.csv");
    REQUIRE(rows.size() == 4);
    auto sym = column(rows[0], "SelfAdjoint_symbolic");
    auto agree = column(rows[0], "SelfAdjoint_agree");
    CHECK(rows[1][sym] == "True");
    CHECK(rows[2][sym] == "False");
    CHECK(rows[3][sym] == "False");
    for (std::size_t i = 1; i < 4; ++i) CHECK(rows[i][agree] == "true");
}

TEST_CASE("sweep on the unit circle and over shifted symbols") {
    auto dir = scratch("sweep_circle");
    RunOptions opts;
    opts.out_dir = dir.string();
    opts.jobs = 3;
    auto circle = config(R"({"checks":["co_isometry"],"dims":[16],"sweep":{"nu":{"circle":{"radius":1,"count":8}},"c":[0]}})");
    CHECK(sweep(circle, opts).exit_status == 0);
    auto rows = read_csv(dir / "report.csv");
    REQUIRE(rows.size() == 9);
    auto sym = column(rows[0], "CoIsometry_symbolic");
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][sym] == "True");

    auto real = config(R"({"checks":["self_adjoint"],"dims":[32],"output":{"path":"real","format":"csv"},
                          "sweep":{"nu":{"linspace":{"from":0.1,"to":0.9,"count":5}},"c":[0]}})");
    CHECK(sweep(real, opts).exit_status == 0);
    rows = read_csv(dir / "real.csv");
    REQUIRE(rows.size() == 6);
    sym = column(rows[0], "SelfAdjoint_symbolic");
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][sym] == "True");

    auto shifted = config(R"({"checks":["self_adjoint"],"dims":[32],"output":{"path":"shifted","format":"csv"},
                             "sweep":{"nu":{"linspace":{"from":0.1,"to":0.9,"count":5}},"c":[0.1]}})");
    CHECK(sweep(shifted, opts).exit_status == 0);
    rows = read_csv(dir / "shifted.csv");
    REQUIRE(rows.size() == 6);
    sym = column(rows[0], "SelfAdjoint_symbolic");
    auto agree = column(rows[0], "SelfAdjoint_agree");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i][sym] == "False");
        CHECK(rows[i][agree] == "true");
    }
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
    auto cfg = config(R"({"space":"exp_power:p=1.5","operators":[{"nu":[0.6,0.8]},{"nu":[0.6,-0.8]},
                          {"nu":0.5,"c":[0.1,0.2],"upsilon":{"kernel_multiple":{"alpha":[1,0],"q":[0.3,0]}}}],
                          "pairs":[[0,1]],"checks":["self_adjoint","co_isometry","adjoint_pair","norm_growth","kernel_props"],
                          "dims":[8,16],"seed":99})");
    RunOptions one, many;
    many.jobs = 4;
    std::string a = dump(run_report(cfg, one));
    std::string b = dump(run_report(cfg, many));
    std::string c = dump(run_report(cfg, one));
    CHECK(a == b);
    CHECK(a == c);
    RunOptions other;
    other.seed = 100;
    CHECK(dump(run_report(cfg, other)) != a);
}

TEST_CASE("JSON round trips") {
    auto w = WeightSequence::fock();
    auto f = EntireFunction::polynomial({Complex(1.0, -2.0), 0.1, Complex(0.0, 1e-300)});
    auto g = function_from_json(function_to_json(f), w, "f");
    REQUIRE(g.as_polynomial());
    CHECK(g.as_polynomial()->coeffs == f.as_polynomial()->coeffs);

    auto k = function_from_json(parse_document(R"({"kernel_anchor":[0.5,-0.25]})", "k"), w, "k");
    REQUIRE(k.as_kernel());
    CHECK(k.as_kernel()->anchor == Complex(0.5, -0.25));

    auto op = operator_from_json(
        parse_document(R"({"nu":[0.6,0.8],"c":0.1,"upsilon":{"kernel_multiple":{"alpha":[2,1],"q":[0.5,0]}}})", "op"), w,
        "op");
    auto back = operator_from_json(operator_to_json(op), w, "op");
    CHECK(dump(operator_to_json(back)) == dump(operator_to_json(op)));
    CHECK(back.form().tag == UpsilonTag::KernelMultiple);

    auto s = weighted_comp_section(op, 4, w);
    Json js = parse_document(dump(section_to_json(s)), "s");
    CHECK(js["dim"] == 4);
    CHECK(js["exactness"].contains("TruncatedColumns"));
    for (Eigen::Index r = 0; r < 4; ++r)
        for (Eigen::Index c = 0; c < 4; ++c) {
            const Json& e = js["entries"][static_cast<std::size_t>(r * 4 + c)];
            CHECK(Complex(e[0].get<double>(), e[1].get<double>()) == s.entries(r, c));
        }
}
