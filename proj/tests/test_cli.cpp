// End-to-end checks of the command line tool: subcommands, formats, exit
// codes, and byte stability across separate process runs.  The binary path
// arrives as the last command line argument (see tests/CMakeLists.txt).

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <torusdiv/io.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_cli;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string capture = "test_cli_capture.txt";
    const std::string cmd = "\"" + g_cli + "\" " + args + " > " + capture + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    if (status >= 0) r.exit_code = WEXITSTATUS(status);
    std::ifstream f(capture);
    std::ostringstream os;
    os << f.rdbuf();
    r.output = os.str();
    std::remove(capture.c_str());
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("rule-show prints the template census") {
    const auto r = run_cli("rule-show --n 3");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("template (p,q)=(1,2)") != std::string::npos);
    CHECK(r.output.find("5 child(ren)") != std::string::npos);
    CHECK(r.output.find("3 child(ren)") != std::string::npos);
    CHECK(r.output.find("1 child(ren) (identity)") != std::string::npos);
}

TEST_CASE("subdivide writes stable JSON across runs") {
    CHECK(run_cli("subdivide --n 2 --k 1 --out cli_a.json").exit_code == 0);
    CHECK(run_cli("subdivide --n 2 --k 1 --out cli_b.json").exit_code == 0);
    const auto a = slurp("cli_a.json");
    CHECK(a == slurp("cli_b.json"));
    const auto doc = torusdiv::io::parse(a);
    CHECK(doc.n == 2);
    CHECK(doc.k == 1);
    CHECK(doc.complex.cells().size() == 12);
    std::remove("cli_a.json");
    std::remove("cli_b.json");
}

TEST_CASE("oracle produces the documented tile counts") {
    struct Case {
        const char* args;
        size_t tiles;
    };
    const Case cases[] = {{"oracle --n 2 --k 1 --out cli_o.json", 12},
                          {"oracle --n 3 --k 2 --out cli_o.json", 102},
                          {"oracle --n 4 --k 1 --out cli_o.json", 56}};
    for (const auto& c : cases) {
        CHECK(run_cli(c.args).exit_code == 0);
        CHECK(torusdiv::io::parse(slurp("cli_o.json")).complex.cells().size() == c.tiles);
    }
    std::remove("cli_o.json");
}

TEST_CASE("mesh and graph formats") {
    const auto off = run_cli("subdivide --n 2 --k 1 --format off");
    CHECK(off.exit_code == 0);
    CHECK(off.output.substr(0, 4) == "OFF\n");

    const auto dot = run_cli("oracle --n 2 --k 1 --format dot");
    CHECK(dot.exit_code == 0);
    CHECK(dot.output.find("graph complex {") != std::string::npos);
    CHECK(dot.output.find("[type=\"1,1\"]") != std::string::npos);

    // OFF is a 3-space format.
    CHECK(run_cli("subdivide --n 4 --k 0 --format off").exit_code == 2);
}

TEST_CASE("verify subcommand: reports and exit codes") {
    const auto ok = run_cli("verify --max-n 2 --max-k 1 --checks counts,euler");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("PASS check_counts n=2 k=1") != std::string::npos);
    CHECK(ok.output.find("PASS check_euler n=2 k=0") != std::string::npos);
    CHECK(ok.output.find("suite: 8 passed, 0 failed, 0 skipped") != std::string::npos);

    CHECK(run_cli("verify --max-n 0").exit_code == 2);
    CHECK(run_cli("verify --checks bogus").exit_code == 2);
}

TEST_CASE("bad invocations exit with code 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("subdivide --n 2").exit_code == 2);          // missing --k
    CHECK(run_cli("subdivide --n 2 --k 1 --format xml").exit_code == 2);
    CHECK(run_cli("subdivide --n 0 --k 1").exit_code == 2);
    CHECK(run_cli("oracle --n 2 --k -3").exit_code == 2);
    CHECK(run_cli("subdivide --n 2 --k 1 --bogus-flag").exit_code == 2);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli [doctest options] <path-to-cli>\n");
        return 1;
    }
    g_cli = argv[argc - 1];
    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv);
    return ctx.run();
}
