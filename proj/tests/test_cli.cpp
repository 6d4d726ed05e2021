#include "proofforge/cli.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pftest;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("pf-cli-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

const fs::path golden = PF_GOLDEN_DIR;
const fs::path fixtures_dir = PF_FIXTURES_DIR;

}  // namespace

TEST_CASE("usage and file errors") {
    CHECK(cli({"--version"}).code == 0);
    CHECK(cli({"--version"}).out.find("proof format 1") != std::string::npos);
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"bogus"}).code == kExitUsage);
    CHECK(cli({"run", "--input", "0"}).code == kExitUsage);
    CHECK(cli({"run", "--machine", "const1.tm"}).code == kExitUsage);
    CHECK(cli({"run", "--machine", "const1.tm", "--input", "012"}).code == kExitUsage);
    CHECK(cli({"run", "--machine", "const1.tm", "--input", "0", "--mode", "lax"}).code == kExitUsage);
    CHECK(cli({"run", "--machine", "/nonexistent/x.tm", "--input", "0"}).code == kExitFile);

    TempDir d;
    std::ofstream(d / "broken.tm") << "start: q0\nhalt: qh\nq0 0 -> q0 0 R\n";
    Result r = cli({"run", "--machine", d / "broken.tm", "--input", "0"});
    CHECK(r.code == kExitFile);
    CHECK(r.err.find("invalid machine") != std::string::npos);
    std::ofstream(d / "garbage.tm") << "this is not a machine\n";
    CHECK(cli({"run", "--machine", d / "garbage.tm", "--input", "0"}).code == kExitFile);
}

TEST_CASE("run") {
    Result r = cli({"run", "--machine", "firstbit.tm", "--input", "01"});
    CHECK(r.code == 0);
    CHECK(r.out == "halted 0 after 2 steps\n");
    Result j = cli({"run", "--machine", "scanner.tm", "--input", "0000", "--step-cap", "3", "--json-summary"});
    CHECK(j.code == kExitExhausted);
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["verdict"] == "step-cap-exceeded");
}

TEST_CASE("prove then verify") {
    TempDir d;
    Result p = cli({"prove", "--machine", "const1.tm", "--input", "", "--mode", "paper", "--out", d / "c.proof"});
    REQUIRE(p.code == 0);
    for (const auto& e : fs::directory_iterator(d.path)) CHECK(e.path().filename() == "c.proof");

    Result v = cli({"verify", "--machine", "const1.tm", "--input", "", "--proof", d / "c.proof"});
    CHECK(v.code == 0);
    CHECK(v.out.rfind("ok: 145 lines", 0) == 0);
    CHECK(cli({"verify", "--machine", "const1.tm", "--input", "", "--proof", d / "c.proof", "--infer"}).code == 0);

    // the proof file body is the library's rendering of the library's proof
    TuringMachine m = parse_machine(slurp(fixtures_dir / "const1.tm"));
    TableauTheory th(m, "");
    SpecialProof sp = build_special_proof(th, 10000);
    std::string body = format_proof(sp.proof, verify(th, sp.proof, sp.goal).type, sp.goal);
    std::string file = slurp(d / "c.proof");
    CHECK(file.substr(file.size() - body.size()) == body);

    // against an explicit theory written by encode
    REQUIRE(cli({"encode", "--machine", "const1.tm", "--input", "", "--out", d / "c.theory"}).code == 0);
    CHECK(cli({"verify", "--theory", d / "c.theory", "--proof", d / "c.proof", "--infer"}).code == 0);
    REQUIRE(cli({"encode", "--machine", "const1.tm", "--input", "01", "--out", d / "c01.theory"}).code == 0);
    Result other = cli({"verify", "--theory", d / "c01.theory", "--proof", d / "c.proof", "--infer"});
    CHECK(other.code == kExitFailure);

    // corrupt line 5
    std::istringstream in(file);
    std::string line, mutated;
    while (std::getline(in, line)) {
        if (line.rfind("5 | ", 0) == 0) line = "5 | $(2>1\\to t_{0,2}=(1,q0,0))$ | MP 4 3";
        mutated += line + "\n";
    }
    std::ofstream(d / "bad.proof") << mutated;
    for (bool infer : {false, true}) {
        std::vector<std::string> args{"verify", "--machine", "const1.tm", "--input", "", "--proof", d / "bad.proof"};
        if (infer) args.push_back("--infer");
        Result bad = cli(args);
        CHECK(bad.code == kExitFailure);
        CHECK(bad.out.find("at line 5") != std::string::npos);
    }
    Result bj = cli({"verify", "--machine", "const1.tm", "--input", "", "--proof", d / "bad.proof", "--json-summary"});
    CHECK(nlohmann::json::parse(bj.out)["failed_line"] == 5);
}

TEST_CASE("golden artifacts") {
    TempDir d;
    struct Case {
        std::vector<std::string> args;
        std::string golden;
    };
    std::vector<Case> cases{
        {{"prove", "--machine", "const1.tm", "--input", "", "--out", d / "a"}, "const1_empty.proof"},
        {{"encode", "--machine", "firstbit.tm", "--input", "01", "--out", d / "a"}, "firstbit_01.theory"},
        {{"table", "--machine", "firstbit.tm", "--input", "1", "--out", d / "a"}, "firstbit_1.table"},
        {{"discover", "--machine", "firstbit.tm", "--emit-transcript", d / "a"}, "firstbit.transcript"},
    };
    for (const auto& c : cases) {
        cli(c.args);
        std::string first = slurp(d / "a");
        CHECK_MESSAGE(first == slurp(golden / c.golden), c.golden);
        cli(c.args);
        CHECK(slurp(d / "a") == first);
    }
}

TEST_CASE("manifest") {
    RunManifest m;
    m.command = "prove";
    m.version = "9.9.9";
    m.mode = "strict";
    m.flags = {{"input", "\"\""}};
    std::string block = m.comment_block();
    CHECK(block.rfind("# proofforge 9.9.9\n# command: prove\n# mode: strict\n", 0) == 0);
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");

    TempDir d;
    ::setenv("PROOFFORGE_MODE", "strict", 1);
    Result r = cli({"prove", "--machine", "const1.tm", "--input", "1", "--out", d / "s.proof"});
    ::unsetenv("PROOFFORGE_MODE");
    REQUIRE(r.code == 0);
    std::string text = slurp(d / "s.proof");
    CHECK(text.find("# mode: strict") != std::string::npos);
    CHECK(cli({"verify", "--machine", "const1.tm", "--input", "1", "--proof", d / "s.proof", "--mode", "strict"}).code ==
          0);
    ::setenv("PROOFFORGE_MODE", "nonsense", 1);
    CHECK(cli({"run", "--machine", "const1.tm", "--input", "1"}).code == kExitUsage);
    ::unsetenv("PROOFFORGE_MODE");
}

TEST_CASE("discover") {
    Result fb = cli({"discover", "--machine", "firstbit.tm"});
    CHECK(fb.code == kExitFailure);
    CHECK(fb.out.find("counterexample \"0\"") != std::string::npos);
    CHECK(cli({"discover", "--machine", "allzero.tm"}).out.find("counterexample \"1\"") != std::string::npos);
    Result sc = cli({"discover", "--machine", "scanner.tm", "--k-cap", "3"});
    CHECK(sc.code == kExitExhausted);
    CHECK(sc.out.find("k-cap") != std::string::npos);

    TempDir d;
    Result c1 = cli({"discover", "--machine", "const1.tm", "--pool-budget", "100", "--emit-checkers", d / "ck",
                     "--emit-transcript", d / "t.txt", "--json-summary"});
    REQUIRE(c1.code == 0);
    auto j = nlohmann::json::parse(c1.out);
    CHECK(j["outcome"] == "proved-all-ones");
    std::size_t n = 0;
    TuringMachine m = parse_machine(slurp(fixtures_dir / "const1.tm"));
    for (const auto& e : fs::directory_iterator(d / "ck")) {
        ++n;
        ProofFile pf = parse_proof(slurp(e.path()));
        std::string witness;
        for (const auto& c : pf.comments)
            if (c.rfind("witness: ", 0) == 0) witness = c.substr(10, c.size() - 11);
        TableauTheory th(m, witness);
        CHECK(check_justified(th, pf.proof, pf.type, pf.goal).ok);
        Result ck = cli({"ck", "--machine", "const1.tm", "--proof", e.path().string(), "--input", witness});
        CHECK(ck.out.find("accept") != std::string::npos);
    }
    CHECK(n == j["checkers"].get<std::size_t>());
    CHECK(nlohmann::json::parse(slurp(d / "t.txt.json"))["outcome"] == "proved-all-ones");
}

TEST_CASE("ck, fs, apf, type") {
    TempDir d;
    REQUIRE(cli({"prove", "--machine", "firstbit.tm", "--input", "1", "--out", d / "p"}).code == 0);
    Result ck = cli({"ck", "--machine", "firstbit.tm", "--proof", d / "p", "--witness", "1", "--up-to", "2"});
    REQUIRE(ck.code == 0);
    CHECK(ck.out.find("\"1\" accept") != std::string::npos);
    CHECK(ck.out.find("\"0\" reject") != std::string::npos);
    CHECK(ck.out.find("keyinfo $") != std::string::npos);

    Result ty = cli({"type", "--machine", "firstbit.tm", "--input", "1", "--proof", d / "p"});
    CHECK(ty.code == 0);
    CHECK(ty.out.find("\n0 IN\n") != std::string::npos);

    Result up = cli({"fs", "--machine", "const1.tm", "--input", "0", "--json-summary"});
    CHECK(nlohmann::json::parse(up.out)["upper"] == fs_upper(fixtures::const1(), "0", 10000));
    Result ex = cli({"fs", "--machine", "const1.tm", "--input", "0", "--exact", "--budget", "10"});
    CHECK(ex.code == kExitExhausted);
    CHECK(ex.out.find("budget reached") != std::string::npos);

    Result ap = cli({"apf", "--machine", "const1.tm", "--n", "2", "--csv", d / "apf.csv"});
    CHECK(ap.code == 0);
    CHECK(ap.out.rfind("0 ", 0) == 0);
    std::string csv = slurp(d / "apf.csv");
    CHECK(csv.find("n,value,witness\n") != std::string::npos);
    CHECK(csv.find("\n2,") != std::string::npos);
}
