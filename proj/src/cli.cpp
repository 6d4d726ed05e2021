#include "proofforge/cli.hpp"

#include "proofforge/verifier.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <unistd.h>

#ifndef PROOFFORGE_VERSION
#define PROOFFORGE_VERSION "0.0.0"
#endif
#ifndef PROOFFORGE_FIXTURES
#define PROOFFORGE_FIXTURES ""
#endif

namespace fs = std::filesystem;

namespace proofforge {

const char* tool_version() { return PROOFFORGE_VERSION; }

std::vector<std::string> RunManifest::lines() const {
    std::vector<std::string> out;
    out.push_back("proofforge " + version);
    out.push_back("command: " + command);
    out.push_back("mode: " + mode);
    for (const auto& [k, v] : flags) out.push_back("flag " + k + ": " + v);
    for (const auto& [k, v] : caps) out.push_back("cap " + k + ": " + v);
    for (const auto& [k, v] : digests) out.push_back("sha256 " + k + ": " + v);
    return out;
}

std::string RunManifest::comment_block() const {
    std::string s;
    for (const auto& l : lines()) s += "# " + l + "\n";
    return s;
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int n = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &n, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < n; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

void write_atomic(const std::string& path, const std::string& contents) {
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
        if (!o) throw FileError("cannot write " + path);
        o << contents;
        o.flush();
        if (!o) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw FileError("cannot write " + path);
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw FileError("cannot write " + path);
    }
}

namespace {

struct Options {
    std::string machine;
    std::string input;
    bool has_input = false;
    std::string theory;
    std::string proof;
    std::string out;
    std::string mode;
    std::size_t step_cap = 10000;
    bool infer = false;
    bool trace = false;
    bool json = false;
    // ck
    std::string witness;
    std::vector<std::string> inputs;
    std::optional<std::size_t> up_to;
    // fs / apf
    std::size_t budget = 2000;
    std::optional<std::size_t> max_len;
    std::optional<std::size_t> max_lines;
    bool exact = false;
    std::size_t n = 0;
    std::string csv;
    // discover
    std::size_t k_cap = DiscoveryCaps{}.k_cap;
    std::size_t pool_budget = DiscoveryCaps{}.pool_budget;
    std::size_t max_iterations = DiscoveryCaps{}.max_iterations;
    std::string transcript;
    std::string checkers_dir;
};

class Session {
public:
    Session(std::string command, const Options& o, std::ostream& out, std::ostream& err)
        : cmd_(std::move(command)), o_(o), out_(out), err_(err) {}

    int dispatch();

private:
    KernelMode mode() const;
    void flag(const std::string& name, const std::string& value) { flags_[name] = value; }
    void cap(const std::string& name, std::size_t value) { caps_[name] = std::to_string(value); }
    std::string load(const std::string& path);
    std::string resolve_machine_path(const std::string& path) const;
    TuringMachine machine();
    Bits input_bits(const std::string& s) const;
    Bits input();
    FormulaSequence read_theory(const std::string& path);
    ProofFile read_proof(const std::string& path);
    RunManifest manifest() const;
    void emit(const std::string& body, const std::string& path);
    void summary(const nlohmann::json& j, const std::string& text);

    int cmd_run();
    int cmd_table();
    int cmd_encode();
    int cmd_prove();
    int cmd_verify();
    int cmd_type();
    int cmd_ck();
    int cmd_fs();
    int cmd_apf();
    int cmd_discover();

    std::string cmd_;
    const Options& o_;
    std::ostream& out_;
    std::ostream& err_;
    std::map<std::string, std::string> flags_;
    std::map<std::string, std::string> caps_;
    std::map<std::string, std::string> digests_;
};

KernelMode Session::mode() const {
    std::string m = o_.mode;
    if (m.empty()) {
        const char* env = std::getenv("PROOFFORGE_MODE");
        if (env && *env) m = env;
    }
    if (m.empty()) return KernelMode::Paper;
    auto k = parse_mode(m);
    if (!k) throw UsageError("unknown kernel mode '" + m + "' (expected paper or strict)");
    return *k;
}

std::string Session::load(const std::string& path) {
    std::string text = read_file(path);
    digests_[path] = sha256_hex(text);
    return text;
}

std::string Session::resolve_machine_path(const std::string& path) const {
    if (fs::exists(path)) return path;
    std::string dir = PROOFFORGE_FIXTURES;
    if (const char* env = std::getenv("PROOFFORGE_FIXTURES")) dir = env;
    if (!dir.empty() && fs::path(path).parent_path().empty()) {
        fs::path alt = fs::path(dir) / path;
        if (fs::exists(alt)) return alt.string();
    }
    return path;
}

TuringMachine Session::machine() {
    if (o_.machine.empty()) throw UsageError("--machine is required");
    flag("machine", o_.machine);
    std::string path = resolve_machine_path(o_.machine);
    std::string text = read_file(path);
    digests_[o_.machine] = sha256_hex(text);
    TuringMachine m = [&] {
        try {
            return parse_machine(text);
        } catch (const std::exception& e) {
            throw FileError(o_.machine + ": " + e.what());
        }
    }();
    ValidationReport rep = validate_machine(m);
    if (!rep.valid()) {
        std::string msg = o_.machine + ": invalid machine";
        for (const auto& v : rep.violations) msg += "\n  " + v;
        throw FileError(msg);
    }
    return m;
}

Bits Session::input_bits(const std::string& s) const {
    for (char c : s)
        if (c != '0' && c != '1') throw UsageError("input must be a bit string, got '" + s + "'");
    return s;
}

Bits Session::input() {
    if (!o_.has_input) throw UsageError("--input is required");
    flag("input", "\"" + o_.input + "\"");
    return input_bits(o_.input);
}

FormulaSequence Session::read_theory(const std::string& path) {
    flag("theory", path);
    std::string text = load(path);
    FormulaSequence seq;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        try {
            seq.push_back(parse_formula(line));
        } catch (const std::exception& e) {
            throw FileError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return seq;
}

ProofFile Session::read_proof(const std::string& path) {
    if (path.empty()) throw UsageError("--proof is required");
    flag("proof", path);
    std::string text = load(path);
    try {
        return parse_proof(text);
    } catch (const std::exception& e) {
        throw FileError(path + ": " + e.what());
    }
}

RunManifest Session::manifest() const {
    RunManifest m;
    m.command = cmd_;
    m.version = tool_version();
    m.mode = mode_name(mode());
    m.flags.assign(flags_.begin(), flags_.end());
    m.caps.assign(caps_.begin(), caps_.end());
    m.digests.assign(digests_.begin(), digests_.end());
    return m;
}

void Session::emit(const std::string& body, const std::string& path) {
    std::string text = manifest().comment_block() + body;
    if (path.empty())
        out_ << text;
    else
        write_atomic(path, text);
}

void Session::summary(const nlohmann::json& j, const std::string& text) {
    if (o_.json)
        out_ << j.dump() << "\n";
    else if (!text.empty())
        out_ << text;
}

std::string verdict_text(const RunResult& r) {
    switch (r.verdict) {
        case Verdict::Halted: return "halted " + std::to_string(r.value) + " after " + std::to_string(r.steps) + " steps";
        case Verdict::MalformedHalt:
            return "halted without an output bit on column 1 after " + std::to_string(r.steps) + " steps";
        case Verdict::StepCapExceeded: return "step cap exceeded";
    }
    return "?";
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Halted: return "halted";
        case Verdict::MalformedHalt: return "malformed-halt";
        case Verdict::StepCapExceeded: return "step-cap-exceeded";
    }
    return "?";
}

std::string square_text(const TuringMachine& m, const TapeSquare& sq) {
    return std::string("(") + symbol_glyph(sq.symbol) + "," + m.name(sq.state) + "," + std::to_string(sq.flag) + ")";
}

int Session::cmd_run() {
    TuringMachine m = machine();
    Bits s = input();
    RunResult r = run(m, s, o_.step_cap);
    std::string text;
    if (o_.trace && r.verdict != Verdict::StepCapExceeded)
        for (const auto& l : run_trace(m, s, o_.step_cap)) text += l + "\n";
    text += verdict_text(r) + "\n";
    summary({{"command", "run"},
             {"input", s},
             {"verdict", verdict_name(r.verdict)},
             {"value", r.value},
             {"steps", r.steps},
             {"max_column", r.max_column}},
            text);
    if (r.verdict == Verdict::StepCapExceeded) return kExitExhausted;
    return r.verdict == Verdict::Halted ? kExitOk : kExitFailure;
}

int Session::cmd_table() {
    TuringMachine m = machine();
    Bits s = input();
    cap("step-cap", o_.step_cap);
    ComputationTable t = build_table(m, s, o_.step_cap);
    std::string body;
    for (std::size_t i = 0; i < t.size(); ++i) {
        body += std::to_string(i) + ":";
        for (std::size_t j = 0; j < t.size(); ++j) body += " " + square_text(m, t.at(i, j));
        body += "\n";
    }
    emit(body, o_.out);
    if (o_.json) out_ << nlohmann::json{{"command", "table"}, {"input", s}, {"size", t.size()}}.dump() << "\n";
    return kExitOk;
}

int Session::cmd_encode() {
    TuringMachine m = machine();
    Bits s = input();
    TableauTheory th(m, s);
    std::string body = "# k: " + std::to_string(th.k()) + "\n";
    for (const auto& f : th.combined()) body += to_text(f) + "\n";
    emit(body, o_.out);
    if (o_.json)
        out_ << nlohmann::json{{"command", "encode"}, {"input", s}, {"k", th.k()}, {"formulas", th.combined().size()}}
                    .dump()
             << "\n";
    return kExitOk;
}

int Session::cmd_prove() {
    TuringMachine m = machine();
    Bits s = input();
    cap("step-cap", o_.step_cap);
    TableauTheory th(m, s);
    SpecialProof sp = build_special_proof(th, o_.step_cap, mode());
    VerifyResult vr = verify(th, sp.proof, sp.goal, mode());
    if (!vr.ok) {
        err_ << "internal error: synthesized proof fails at line " << vr.failed_line.value_or(0) << ": " << vr.reason
             << "\n";
        return kExitFailure;
    }
    emit(format_proof(sp.proof, vr.type, sp.goal), o_.out);
    std::size_t len = seq_ascii_len(sp.proof);
    std::ostringstream text;
    if (!o_.out.empty())
        text << "proved " << to_text(sp.goal) << ": " << sp.proof.size() << " lines, length " << len << "\n";
    summary({{"command", "prove"},
             {"input", s},
             {"value", sp.value},
             {"steps", sp.f},
             {"lines", sp.proof.size()},
             {"length", len},
             {"goal", to_text(sp.goal)}},
            text.str());
    return kExitOk;
}

int Session::cmd_verify() {
    ProofFile pf = read_proof(o_.proof);
    std::unique_ptr<Theory> theory;
    if (!o_.theory.empty()) {
        theory = std::make_unique<ExplicitTheory>(read_theory(o_.theory));
    } else if (!o_.machine.empty()) {
        TuringMachine m = machine();
        theory = std::make_unique<TableauTheory>(m, input());
    } else {
        throw UsageError("verify needs --theory or --machine with --input");
    }
    bool infer = o_.infer || pf.type.empty();
    VerifyResult r = infer ? verify(*theory, pf.proof, pf.goal, mode())
                           : check_justified(*theory, pf.proof, pf.type, pf.goal, mode());
    nlohmann::json j{{"command", "verify"},
                     {"ok", r.ok},
                     {"lines", pf.proof.size()},
                     {"inferred", infer},
                     {"mode", mode_name(mode())}};
    std::ostringstream text;
    if (r.ok) {
        text << "ok: " << pf.proof.size() << " lines";
        if (pf.goal) text << " prove " << to_text(*pf.goal);
        text << "\n";
    } else {
        if (r.failed_line) j["failed_line"] = *r.failed_line;
        j["reason"] = r.reason;
        text << "FAIL";
        if (r.failed_line) text << " at line " << *r.failed_line;
        text << ": " << r.reason << "\n";
    }
    summary(j, text.str());
    return r.ok ? kExitOk : kExitFailure;
}

int Session::cmd_type() {
    ProofFile pf = read_proof(o_.proof);
    TuringMachine m = machine();
    TableauTheory th(m, input());
    VerifyResult r = verify(th, pf.proof, pf.goal, mode());
    if (!r.ok) {
        err_ << "FAIL at line " << r.failed_line.value_or(0) << ": " << r.reason << "\n";
        return kExitFailure;
    }
    std::string body;
    for (std::size_t i = 0; i < r.type.size(); ++i) body += std::to_string(i) + " " + format_step(r.type.steps[i]) + "\n";
    emit(body, o_.out);
    return kExitOk;
}

int Session::cmd_ck() {
    TuringMachine m = machine();
    ProofFile pf = read_proof(o_.proof);
    EncodingPtr enc = encode_machine(m);
    std::optional<AdjointChecker> ck;
    std::optional<KeyInfo> keys;
    if (!o_.witness.empty() || pf.type.empty()) {
        flag("witness", "\"" + o_.witness + "\"");
        TableauTheory origin(enc, input_bits(o_.witness));
        VerifyResult r = verify(origin, pf.proof, pf.goal, mode());
        if (!r.ok) {
            err_ << "proof does not verify against the witness theory: line " << r.failed_line.value_or(0) << ": "
                 << r.reason << "\n";
            return kExitFailure;
        }
        ck.emplace(pf.proof, r.type, mode());
        keys = key_info(pf.proof, origin);
    } else {
        ck.emplace(pf.proof, pf.type, mode());
        if (!ck->structurally_valid()) {
            err_ << "stored justifications are not valid apart from membership\n";
            return kExitFailure;
        }
    }
    std::vector<Bits> inputs;
    for (const auto& s : o_.inputs) inputs.push_back(input_bits(s));
    if (o_.up_to) {
        cap("up-to", *o_.up_to);
        for (auto& s : strings_up_to(*o_.up_to)) inputs.push_back(s);
    }
    if (!o_.inputs.empty()) {
        std::string joined;
        for (const auto& s : o_.inputs) joined += (joined.empty() ? "\"" : " \"") + s + "\"";
        flag("input", joined);
    }
    std::ostringstream text;
    nlohmann::json rows = nlohmann::json::array();
    if (keys) {
        text << "keyinfo " << to_text(keys->keyinfo) << "\n";
    }
    for (const auto& s : inputs) {
        AdjointResult r = adjoint_check(*ck, TableauTheory(enc, s));
        text << "\"" << s << "\" " << (r.accepted ? "accept" : "reject") << " cost " << r.comparisons << "\n";
        rows.push_back({{"input", s}, {"accepted", r.accepted}, {"cost", r.comparisons}});
    }
    nlohmann::json j{{"command", "ck"}, {"results", rows}};
    if (keys) {
        nlohmann::json ks = nlohmann::json::array();
        for (const auto& f : keys->keyset) ks.push_back(to_text(f));
        j["keyset"] = ks;
    }
    if (o_.json)
        out_ << j.dump() << "\n";
    else
        emit(text.str(), o_.out);
    return kExitOk;
}

int Session::cmd_fs() {
    TuringMachine m = machine();
    Bits s = input();
    cap("step-cap", o_.step_cap);
    TableauTheory th(m, s);
    SpecialProof sp = build_special_proof(th, o_.step_cap, mode());
    std::size_t upper = seq_ascii_len(sp.proof);
    std::ostringstream text;
    text << "upper " << upper << "\n";
    nlohmann::json j{{"command", "fs"}, {"input", s}, {"upper", upper}};
    int rc = kExitOk;
    if (o_.exact) {
        std::size_t max_len = o_.max_len.value_or(upper + 1);
        cap("budget", o_.budget);
        cap("max-len", max_len);
        if (o_.max_lines) cap("max-lines", *o_.max_lines);
        FsSearch r = fs_exact(th, sp.goal, default_pool(sp), max_len, o_.budget, o_.max_lines.value_or(kUnbounded),
                              mode());
        j["tried"] = r.tried;
        if (r.length) {
            text << "exact " << *r.length << " (" << r.proof->size() << " lines, " << r.tried << " sequences tried)\n";
            j["exact"] = *r.length;
            j["exact_lines"] = r.proof->size();
        } else {
            text << "exact exhausted (" << r.tried << " sequences tried"
                 << (r.budget_exhausted ? ", budget reached" : ", no proof below max-len") << ")\n";
            j["exact"] = nullptr;
            j["budget_exhausted"] = r.budget_exhausted;
            rc = kExitExhausted;
        }
    }
    summary(j, text.str());
    return rc;
}

int Session::cmd_apf() {
    TuringMachine m = machine();
    flag("n", std::to_string(o_.n));
    cap("step-cap", o_.step_cap);
    if (o_.exact) cap("budget", o_.budget);
    ApfCaps caps{o_.step_cap, o_.budget};
    ApfMode am = o_.exact ? ApfMode::Exact : ApfMode::Upper;
    flag("exact", o_.exact ? "yes" : "no");
    std::ostringstream text, csv;
    csv << "n,value,witness\n";
    nlohmann::json rows = nlohmann::json::array();
    int rc = kExitOk;
    for (std::size_t n = 0; n <= o_.n; ++n) {
        ApfResult r = apf(m, n, am, caps, mode());
        if (r.value) {
            text << n << " " << *r.value << " \"" << r.witness << "\"\n";
            csv << n << "," << *r.value << "," << r.witness << "\n";
        } else {
            text << n << " exhausted \"" << r.witness << "\"\n";
            csv << n << ",," << r.witness << "\n";
            rc = kExitExhausted;
        }
        rows.push_back({{"n", n}, {"value", r.value ? nlohmann::json(*r.value) : nlohmann::json()}, {"witness", r.witness}});
    }
    if (!o_.csv.empty()) write_atomic(o_.csv, manifest().comment_block() + csv.str());
    summary({{"command", "apf"}, {"rows", rows}}, text.str());
    return rc;
}

int Session::cmd_discover() {
    TuringMachine m = machine();
    DiscoveryCaps caps;
    caps.step_cap = o_.step_cap;
    caps.k_cap = o_.k_cap;
    caps.pool_budget = o_.pool_budget;
    caps.max_iterations = o_.max_iterations;
    caps.mode = mode();
    cap("step-cap", caps.step_cap);
    cap("k-cap", caps.k_cap);
    cap("pool-budget", caps.pool_budget);
    cap("max-iterations", caps.max_iterations);
    DiscoveryOutcome res = discover(m, caps);
    std::string text = transcript_text(res, caps);
    nlohmann::json j = transcript_json(res, caps);
    if (!o_.transcript.empty()) {
        std::string block = manifest().comment_block();
        write_atomic(o_.transcript, block + text);
        nlohmann::json full = j;
        full["manifest"] = manifest().lines();
        write_atomic(o_.transcript + ".json", full.dump(2) + "\n");
    }
    if (!o_.checkers_dir.empty()) {
        std::error_code ec;
        fs::create_directories(o_.checkers_dir, ec);
        if (ec) throw FileError("cannot create " + o_.checkers_dir);
        std::size_t i = 0;
        for (const auto& c : res.verifier.checkers()) {
            std::ostringstream name;
            name << "checker-" << std::setw(4) << std::setfill('0') << i++ << ".proof";
            std::string body = "# witness: \"" + c.witness + "\"\n# reach: " + std::to_string(c.reach) +
                               "\n# cost-bound: " + std::to_string(c.cost_bound) + "\n" +
                               format_proof(c.checker.proof(), c.checker.type(), goal_formula(1, m.name(m.halt())));
            write_atomic((fs::path(o_.checkers_dir) / name.str()).string(), manifest().comment_block() + body);
        }
    }
    if (o_.json) {
        out_ << j.dump() << "\n";
    } else {
        out_ << "outcome: " << outcome_name(res.kind);
        switch (res.kind) {
            case DiscoveryOutcome::Kind::ProvedAllOnes:
                out_ << " (" << res.verifier.checkers().size() << " checkers, K=" << res.K << ")\n";
                break;
            case DiscoveryOutcome::Kind::Counterexample:
                out_ << " \"" << *res.counterexample << "\" returns " << res.counter_run.value << "\n";
                break;
            case DiscoveryOutcome::Kind::Exhausted:
                out_ << " (" << res.cap << ")\n";
                break;
        }
    }
    switch (res.kind) {
        case DiscoveryOutcome::Kind::ProvedAllOnes: return kExitOk;
        case DiscoveryOutcome::Kind::Counterexample: return kExitFailure;
        case DiscoveryOutcome::Kind::Exhausted: return kExitExhausted;
    }
    return kExitExhausted;
}

int Session::dispatch() {
    mode();
    if (cmd_ == "run") return cmd_run();
    if (cmd_ == "table") return cmd_table();
    if (cmd_ == "encode") return cmd_encode();
    if (cmd_ == "prove") return cmd_prove();
    if (cmd_ == "verify") return cmd_verify();
    if (cmd_ == "type") return cmd_type();
    if (cmd_ == "ck") return cmd_ck();
    if (cmd_ == "fs") return cmd_fs();
    if (cmd_ == "apf") return cmd_apf();
    if (cmd_ == "discover") return cmd_discover();
    throw UsageError("unknown command " + cmd_);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tableau proofs of Turing machine outputs", "proofforge"};
    app.require_subcommand(0, 1);
    Options o;
    bool version = false;
    app.add_flag("--version", version, "Print tool and format versions");

    auto machine_opt = [&](CLI::App* sc) { sc->add_option("--machine", o.machine, "Machine file"); };
    auto input_opt = [&](CLI::App* sc) {
        sc->add_option_function<std::string>(
            "--input",
            [&](const std::string& s) {
                o.input = s;
                o.has_input = true;
            },
            "Input bit string");
    };
    auto common = [&](CLI::App* sc) {
        sc->add_option("--mode", o.mode, "Kernel mode: paper or strict");
        sc->add_flag("--json-summary", o.json, "Print a JSON summary");
        sc->add_option("--step-cap", o.step_cap, "Simulation step cap");
    };

    auto* run_c = app.add_subcommand("run", "Simulate a machine");
    machine_opt(run_c), input_opt(run_c), common(run_c);
    run_c->add_flag("--trace", o.trace, "Print every configuration");

    auto* table_c = app.add_subcommand("table", "Print the computation table");
    machine_opt(table_c), input_opt(table_c), common(table_c);
    table_c->add_option("--out", o.out);

    auto* encode_c = app.add_subcommand("encode", "Write the theory T<M,s>");
    machine_opt(encode_c), input_opt(encode_c), common(encode_c);
    encode_c->add_option("--out", o.out);

    auto* prove_c = app.add_subcommand("prove", "Synthesize the special proof");
    machine_opt(prove_c), input_opt(prove_c), common(prove_c);
    prove_c->add_option("--out", o.out);

    auto* verify_c = app.add_subcommand("verify", "Check a proof file");
    machine_opt(verify_c), input_opt(verify_c), common(verify_c);
    verify_c->add_option("--theory", o.theory, "Theory file, one formula per line");
    verify_c->add_option("--proof", o.proof)->required();
    verify_c->add_flag("--infer", o.infer, "Ignore stored justifications and infer them");

    auto* type_c = app.add_subcommand("type", "Print the proof type");
    machine_opt(type_c), input_opt(type_c), common(type_c);
    type_c->add_option("--proof", o.proof)->required();
    type_c->add_option("--out", o.out);

    auto* ck_c = app.add_subcommand("ck", "Replay a proof as an adjoint checker");
    machine_opt(ck_c), common(ck_c);
    ck_c->add_option("--proof", o.proof)->required();
    ck_c->add_option("--witness", o.witness, "Input whose theory the proof was built for");
    ck_c->add_option("--input", o.inputs, "Input to check (repeatable)");
    ck_c->add_option("--up-to", o.up_to, "Check every input up to this length");
    ck_c->add_option("--out", o.out);

    auto* fs_c = app.add_subcommand("fs", "Proof length: upper bound and exact search");
    machine_opt(fs_c), input_opt(fs_c), common(fs_c);
    fs_c->add_flag("--exact", o.exact, "Run the exhaustive shortest-proof search");
    fs_c->add_option("--budget", o.budget, "Sequences to try before giving up");
    fs_c->add_option("--max-len", o.max_len);
    fs_c->add_option("--max-lines", o.max_lines);

    auto* apf_c = app.add_subcommand("apf", "Worst-case proof length per input length");
    machine_opt(apf_c), common(apf_c);
    apf_c->add_option("--n", o.n, "Largest input length")->required();
    apf_c->add_flag("--exact", o.exact);
    apf_c->add_option("--budget", o.budget);
    apf_c->add_option("--csv", o.csv, "Also write a CSV table");

    auto* disc_c = app.add_subcommand("discover", "Run the checker discovery loop");
    machine_opt(disc_c), common(disc_c);
    disc_c->add_option("--k-cap", o.k_cap, "Largest input length K before giving up");
    disc_c->add_option("--pool-budget", o.pool_budget, "Shortest-proof search budget per witness");
    disc_c->add_option("--max-iterations", o.max_iterations, "Most checkers to add");
    disc_c->add_option("--emit-transcript", o.transcript, "Write the transcript (and <path>.json)");
    disc_c->add_option("--emit-checkers", o.checkers_dir, "Write each checker as a proof file in this directory");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "proofforge: " << e.what() << "\n";
        return kExitUsage;
    }
    if (version) {
        out << "proofforge " << tool_version() << " (machine format " << kMachineFormat << ", proof format "
            << kProofFormat << ", theory format " << kTheoryFormat << ")\n";
        return kExitOk;
    }
    auto subs = app.get_subcommands();
    if (subs.empty()) {
        err << app.help();
        return kExitUsage;
    }
    try {
        Session s(subs.front()->get_name(), o, out, err);
        return s.dispatch();
    } catch (const UsageError& e) {
        err << "proofforge: " << e.what() << "\n";
        return kExitUsage;
    } catch (const FileError& e) {
        err << "proofforge: " << e.what() << "\n";
        return kExitFile;
    } catch (const CapExceeded& e) {
        err << "proofforge: " << e.what() << "\n";
        return kExitExhausted;
    } catch (const std::exception& e) {
        err << "proofforge: " << e.what() << "\n";
        return kExitFailure;
    }
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace proofforge
