#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = XYGIBBS_CLI_PATH;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out_file =
        fs::temp_directory_path() / ("xygibbs_cli_out_" + std::to_string(counter++));
    const std::string cmd = kCli + " " + args + " > " + out_file.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    fs::remove(out_file);
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, ss.str()};
}

fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p);
    out << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const fs::path kEx1Cfg =
    write_config("xyg_ex1.json", R"({"family":"example1"})");
const fs::path kZeroCfg = write_config("xyg_zero.json", R"({"family":"zero"})");
const fs::path kPolyCfg =
    write_config("xyg_poly.json", R"({"family":"polylog","gamma":3.0})");
const fs::path kTripleCfg = write_config(
    "xyg_triple.json",
    R"({"family":"single","coeffs":[0,0,-0.0625,0,0.5,0,-1]})");

}  // namespace

TEST_CASE("select on the single-peak family") {
    const auto r = run_cli("--config " + kEx1Cfg.string() + " --command select");
    REQUIRE(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep.at("schema") == 1);
    CHECK(rep.at("command") == "select");
    CHECK(rep.at("config").at("family") == "example1");
    const auto& peaks = rep.at("outputs").at("peaks");
    REQUIRE(peaks.size() == 1);
    CHECK(std::abs(peaks[0].at("location").get<double>()) <= 1e-7);
    CHECK(rep.at("outputs").at("weights")[0].get<double>() == 1.0);
}

TEST_CASE("pressure of the zero family vanishes") {
    const auto r = run_cli("--config " + kZeroCfg.string() +
                           " --command pressure --beta 7");
    REQUIRE(r.exit_code == 0);
    const json rep = json::parse(r.out);
    const auto& rows = rep.at("outputs").at("rows");
    REQUIRE(rows.size() == 1);
    CHECK(std::abs(rows[0][1].get<double>()) <= 1e-12);  // log_lambda
    CHECK(std::abs(rows[0][2].get<double>()) <= 1e-12);  // pressure/beta
    CHECK(rep.at("inputs").at("tol").get<double>() == 1e-10);
}

TEST_CASE("ldp command emits the expected CSV") {
    const fs::path csv = fs::temp_directory_path() / "xyg_ldp.csv";
    const auto r = run_cli("--config " + kEx1Cfg.string() +
                           " --command ldp --beta 100,1000,10000"
                           " --cylinder [[0.2,0.3]] --out " +
                           csv.string());
    REQUIRE(r.exit_code == 0);
    const std::string text = slurp(csv);
    CHECK(text.rfind("beta,log_mass_over_beta,neg_inf_I,residual\n", 0) == 0);
    // final residual within the asymptotic tolerance
    std::stringstream ss(text);
    std::string line, last;
    std::getline(ss, line);  // header
    while (std::getline(ss, line))
        if (!line.empty()) last = line;
    const auto pos = last.rfind(',');
    CHECK(std::stod(last.substr(pos + 1)) <= 0.02);
    fs::remove(csv);
}

TEST_CASE("fixed seed gives byte-identical CSV output") {
    const fs::path a = fs::temp_directory_path() / "xyg_sample_a.csv";
    const fs::path b = fs::temp_directory_path() / "xyg_sample_b.csv";
    const std::string args = "--config " + kEx1Cfg.string() +
                             " --command sample --beta 5 --seed 99 --count 2000 --out ";
    REQUIRE(run_cli(args + a.string()).exit_code == 0);
    REQUIRE(run_cli(args + b.string()).exit_code == 0);
    const std::string ta = slurp(a), tb = slurp(b);
    CHECK(!ta.empty());
    CHECK(ta == tb);
    fs::remove(a);
    fs::remove(b);

    const fs::path c = fs::temp_directory_path() / "xyg_sweep_a.csv";
    const fs::path d = fs::temp_directory_path() / "xyg_sweep_b.csv";
    const std::string sweep = "--config " + kEx1Cfg.string() +
                              " --command sweep --beta 1,10,100"
                              " --cylinder [[-0.1,0.1]] --out ";
    REQUIRE(run_cli(sweep + c.string()).exit_code == 0);
    REQUIRE(run_cli(sweep + d.string()).exit_code == 0);
    CHECK(slurp(c) == slurp(d));
    CHECK(slurp(c).rfind("beta,log_mass,pressure_over_beta\n", 0) == 0);
    fs::remove(c);
    fs::remove(d);
}

TEST_CASE("exit code 2 for config problems") {
    CHECK(run_cli("--config /nonexistent.json --command pressure --beta 1")
              .exit_code == 2);
    const fs::path bad = write_config("xyg_bad.json", "{\"family\":\"what\"}");
    CHECK(run_cli("--config " + bad.string() + " --command pressure --beta 1")
              .exit_code == 2);
    CHECK(run_cli("--config " + kEx1Cfg.string() + " --command nope").exit_code == 2);
    CHECK(run_cli("--bogus-flag").exit_code == 2);
    fs::remove(bad);
}

TEST_CASE("exit code 3 for domain errors") {
    const auto r = run_cli("--config " + kEx1Cfg.string() +
                           " --command cylinder --beta 1 --cylinder [[0.4,0.9]]");
    CHECK(r.exit_code == 3);
    CHECK(r.out.find("domain") != std::string::npos);
}

TEST_CASE("exit code 4 for selection obstructions") {
    CHECK(run_cli("--config " + kPolyCfg.string() + " --command select")
              .exit_code == 4);
    CHECK(run_cli("--config " + kTripleCfg.string() + " --command select")
              .exit_code == 4);
    CHECK(run_cli("--config " + kPolyCfg.string() + " --command laplace --beta 10")
              .exit_code == 4);
}

TEST_CASE("eigencheck and subaction run end to end") {
    const auto r = run_cli("--config " + kPolyCfg.string() +
                           " --command eigencheck --beta 0.5,1");
    REQUIRE(r.exit_code == 0);
    const json rep = json::parse(r.out);
    for (const auto& row : rep.at("outputs").at("rows")) {
        CHECK(row[1].get<double>() <= 1e-6);
        CHECK(row[2].get<double>() <= 1e-6);
        CHECK(row[3].get<double>() <= 1e-6);
    }

    const auto s = run_cli("--config " + kEx1Cfg.string() + " --command subaction");
    REQUIRE(s.exit_code == 0);
    const json srep = json::parse(s.out);
    CHECK(srep.at("outputs").at("max_calibration_residual").get<double>() <= 1e-8);
    CHECK(std::abs(srep.at("outputs").at("m_f").get<double>()) <= 1e-10);
}

TEST_CASE("cylinder spec can live in the config file") {
    const fs::path cfg = write_config(
        "xyg_cfg_cyl.json",
        R"({"family":"example1","cylinder":[[-0.1,0.1]]})");
    const auto r = run_cli("--config " + cfg.string() +
                           " --command cylinder --beta 100");
    REQUIRE(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep.at("outputs").at("mass").get<double>() ==
          doctest::Approx(0.84781).epsilon(1e-3));
    fs::remove(cfg);
}

TEST_CASE("parallel sweeps reproduce the sequential rows") {
    const fs::path a = fs::temp_directory_path() / "xyg_par_a.csv";
    const fs::path b = fs::temp_directory_path() / "xyg_par_b.csv";
    const std::string args = "--config " + kEx1Cfg.string() +
                             " --command sweep --beta 1,5,25,125"
                             " --cylinder [[-0.2,0.2]] --out ";
    REQUIRE(run_cli("env XYGIBBS_THREADS=1 " + kCli + " " + args + a.string(),
                    true) == 0);
    REQUIRE(run_cli("env XYGIBBS_THREADS=4 " + kCli + " " + args + b.string(),
                    true) == 0);
    CHECK(slurp(a) == slurp(b));
    fs::remove(a);
    fs::remove(b);
}

TEST_CASE("laplace command reports the asymptotic ratio") {
    const fs::path cfg = write_config(
        "xyg_quartic.json", R"({"family":"single","coeffs":[0,0,-1,0,-1]})");
    const auto r = run_cli("--config " + cfg.string() +
                           " --command laplace --beta 100,1000");
    REQUIRE(r.exit_code == 0);
    const json rep = json::parse(r.out);
    const auto& rows = rep.at("outputs").at("rows");
    CHECK(std::abs(rows[0][3].get<double>()) ==
          doctest::Approx(3.0 / 400.0).epsilon(0.1));
    fs::remove(cfg);
}
