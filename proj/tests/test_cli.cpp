#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct CmdResult {
    int code = -1;
    std::string out;
};

const fs::path& workdir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("orlicz_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
    fs::path p = workdir() / name;
    std::ofstream(p) << content;
    return p.string();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CmdResult run_cli(const std::string& args) {
    fs::path out = workdir() / "stdout.txt";
    fs::path err = workdir() / "stderr.txt";
    std::string cmd = std::string(ORLICZ_CLI_PATH) + " " + args + " > " + out.string() + " 2> " +
                      err.string();
    int rc = std::system(cmd.c_str());
    CmdResult r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out);
    return r;
}

const std::string kBasisMeasure =
    R"({"target":{"dim":2,"norm":"l2"},"atom_vectors":[[1,0],[0,1]]})";

} // namespace

TEST_CASE("semivar subcommand") {
    std::string m = write_file("m.json", kBasisMeasure);
    CmdResult r = run_cli("semivar --measure " + m + " --set '[\"a1\",\"a2\"]'");
    REQUIRE(r.code == 0);
    Json doc = Json::parse(r.out);
    CHECK(doc.at("v") == 1);
    CHECK(doc.at("value").get<double>() == Catch::Approx(1.4142135624).epsilon(1e-9));
}

TEST_CASE("luxemburg subcommand with the closed-form oracle") {
    std::string f34 = write_file("f34.json", R"({"values":[3,4]})");
    CmdResult r = run_cli("luxemburg --base '{\"kind\":\"l1mu\"}' --phi '{\"kind\":\"power\",\"p\":2}' --fn " +
                          f34);
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out).at("value").get<double>() == Catch::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("norm subcommand") {
    std::string zero = write_file("zero.json", R"({"values":[0,0,0]})");
    CmdResult r = run_cli("norm --space '{\"kind\":\"l1mu\"}' --fn " + zero);
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out).at("value").get<double>() == 0.0);

    // an orlicz space spec matches the dedicated solver
    std::string f = write_file("f.json", R"({"values":[3,4]})");
    CmdResult n = run_cli(
        "norm --space '{\"kind\":\"orlicz\",\"base\":{\"kind\":\"l1mu\"},\"phi\":{\"kind\":\"power\",\"p\":2}}' --fn " +
        f);
    REQUIRE(n.code == 0);
    CHECK(Json::parse(n.out).at("value").get<double>() == Catch::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("distfn emits JSON, CSV and SVG that agree") {
    std::string m = write_file("m2.json", kBasisMeasure);
    std::string f = write_file("f21.json", R"({"values":[2,1]})");
    fs::path csv = workdir() / "steps.csv";
    fs::path svg = workdir() / "steps.svg";
    CmdResult r = run_cli("distfn --measure " + m + " --fn " + f + " --csv " + csv.string() +
                          " --svg " + svg.string());
    REQUIRE(r.code == 0);
    Json doc = Json::parse(r.out);
    double integral = doc.at("integral").get<double>();
    CHECK(integral == Catch::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-12));

    // rectangle sum over the CSV rows reproduces the reported integral
    std::ifstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,value");
    std::vector<double> ts, vs;
    while (std::getline(in, line)) {
        auto comma = line.find(',');
        ts.push_back(std::stod(line.substr(0, comma)));
        vs.push_back(std::stod(line.substr(comma + 1)));
    }
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < ts.size(); ++j) sum += (ts[j + 1] - ts[j]) * vs[j];
    CHECK(std::fabs(sum - integral) <= 1e-12 * std::max(1.0, integral));

    CHECK(slurp(svg).find("<svg") != std::string::npos);
}

TEST_CASE("calderon subcommand") {
    std::string f = write_file("fc.json", R"({"values":[1,2,0.5]})");
    CmdResult r = run_cli("calderon --x0 '{\"kind\":\"l1mu\"}' --x1 '{\"kind\":\"l1mu\"}' "
                          "--theta 0.5 --fn " + f + " --method alternating");
    REQUIRE(r.code == 0);
    Json doc = Json::parse(r.out);
    CHECK(doc.at("lambda").get<double>() == Catch::Approx(3.5).epsilon(1e-9));
    CHECK(doc.at("converged").get<bool>());
    CHECK(doc.at("f0").size() == 3);
}

TEST_CASE("interpolate subcommand emits a reusable space spec") {
    std::string base =
        R"({"kind":"l1mu","space":{"atoms":["a1","a2"],"weights":[1,1]}})";
    CmdResult r = run_cli("interpolate --base '" + base +
                          "' --phi0 '{\"kind\":\"power\",\"p\":1}' "
                          "--phi1 '{\"kind\":\"power\",\"p\":3}' --theta 0.5 --trials 300");
    REQUIRE(r.code == 0);
    Json doc = Json::parse(r.out);
    CHECK(doc.at("lconvexity").at("passed").get<bool>());
    CHECK(doc.at("delta2").at("phi0").at("doubling").get<bool>());

    // round trip: the emitted spec evaluates as the L^{3/2} norm
    std::string spec = doc.at("space").dump();
    std::string f = write_file("fi.json", R"({"values":[1,1]})");
    CmdResult n = run_cli("norm --space '" + spec + "' --fn " + f);
    REQUIRE(n.code == 0);
    CHECK(Json::parse(n.out).at("value").get<double>() ==
          Catch::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-6));
}

TEST_CASE("verify subcommand writes a report") {
    fs::path report = workdir() / "report.json";
    CmdResult r = run_cli("verify --filter 'young-*' --seed 3 --budget 5 --out " + report.string());
    REQUIRE(r.code == 0);
    Json doc = Json::parse(slurp(report));
    CHECK(doc.at("v") == 1);
    CHECK(doc.at("seed") == 3);
    for (const auto& c : doc.at("checks")) CHECK(c.at("pass").get<bool>());

    CmdResult bad = run_cli("verify --filter 'no-such-*' --budget 2");
    CHECK(bad.code == 2);

    CmdResult suite = run_cli("verify cp --seed 3 --budget 2");
    CHECK(suite.code == 0);
}

TEST_CASE("error exit codes") {
    std::string broken = write_file("broken.json", "{not json");
    CmdResult parse = run_cli("norm --space '{\"kind\":\"l1mu\"}' --fn " + broken);
    CHECK(parse.code == 2);

    std::string f = write_file("f5.json", R"({"values":[1,1,1,1,1]})");
    CmdResult domain = run_cli("calderon --x0 '{\"kind\":\"l1mu\"}' --x1 '{\"kind\":\"linf\"}' "
                               "--theta 0.5 --fn " + f + " --method grid-oracle");
    CHECK(domain.code == 3);

    CmdResult usage = run_cli("norm");
    CHECK(usage.code == 2);
}
