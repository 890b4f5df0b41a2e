#include "hypersynth/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <thread>

#include "hypersynth/error.hpp"
#include "hypersynth/nrp.hpp"
#include "hypersynth/parser.hpp"
#include "hypersynth/plant_io.hpp"
#include "hypersynth/reductions.hpp"
#include "hypersynth/semantics.hpp"
#include "hypersynth/synthesis.hpp"

namespace hypersynth {

using nlohmann::json;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    }
};

Formula read_formula_file(const std::string& path) {
    std::string text = read_text_file(path);
    // '#' starts a comment line
    std::string clean;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t eol = text.find('\n', i);
        if (eol == std::string::npos) eol = text.size();
        std::string line = text.substr(i, eol - i);
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        clean += line + "\n";
        i = eol + 1;
    }
    return parse(clean);
}

json read_json_file(const std::string& path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

json witness_json(const Plant& p, const ControllerSolution& sol) {
    json r = json::array();
    for (auto e : sol.retained) r.push_back({p.name(e.from), p.name(e.to)});
    return {{"plant_hash", plant_hash(p)}, {"retained", r}};
}

ControllerSolution witness_from_json(const Plant& p, const json& j) {
    if (!j.is_object() || !j.contains("plant_hash") || !j.contains("retained") || !j["retained"].is_array())
        throw FormatError("witness needs plant_hash and retained");
    if (j["plant_hash"] != plant_hash(p)) throw FormatError("stale witness: plant hash does not match");
    ControllerSolution sol;
    for (const auto& e : j["retained"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw FormatError("retained entries must be [from,to] pairs");
        auto a = p.find(e[0].get<std::string>()), b = p.find(e[1].get<std::string>());
        if (!a || !b) throw DanglingReference(e.dump());
        sol.retained.insert({*a, *b});
    }
    return sol;
}

unsigned env_threads() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const char* v = std::getenv("HYPERSYNTH_THREADS");
    if (!v || !*v) return hw;
    char* end = nullptr;
    long n = std::strtol(v, &end, 10);
    if (*end || n < 1) throw FormatError("HYPERSYNTH_THREADS must be a positive integer");
    return static_cast<unsigned>(n);
}

std::optional<Bounds> bounds_of(std::size_t stem, std::size_t loop, const Plant& p) {
    if (!stem && !loop) return std::nullopt;
    Bounds d = default_bounds(p);
    return Bounds{stem ? stem : d.stem, loop ? loop : d.loop};
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::Realizable: return kExitOk;
        case Verdict::Unrealizable: return kExitNegative;
        case Verdict::BoundedUnknown: return kExitBounded;
    }
    return kExitMalformed;
}

const char* yes(bool b) { return b ? "true" : "false"; }

void print_assignment(std::ostream& out, const std::map<int, bool>& a) {
    out << "assignment:";
    for (auto [k, v] : a) out << " x" << k << "=" << yes(v);
    out << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"HyperLTL controller synthesis for finite plants"};
    app.require_subcommand(1);

    // classify
    auto* cls = app.add_subcommand("classify", "print the frame kind of a plant and/or the fragment of a formula");
    std::string cls_plant, cls_formula, cls_dot;
    cls->add_option("plant", cls_plant, "plant JSON file");
    cls->add_option("--formula", cls_formula, "formula file");
    cls->add_option("--dot", cls_dot, "write the plant as DOT");

    // check
    auto* chk = app.add_subcommand("check", "model check a plant against a formula");
    std::string chk_plant, chk_formula, chk_witness;
    std::size_t stem = 0, loop = 0;
    chk->add_option("plant", chk_plant)->required();
    chk->add_option("formula", chk_formula)->required();
    chk->add_option("--stem-bound", stem, "lasso stem bound for general frames");
    chk->add_option("--loop-bound", loop, "lasso loop bound for general frames");
    chk->add_option("--witness", chk_witness, "check the plant pruned by this witness");

    // synth
    auto* syn = app.add_subcommand("synth", "synthesize a controller");
    std::string syn_plant, syn_formula, syn_out, syn_decoder;
    std::size_t max_c = kDefaultMaxRemovable;
    bool force = false, deterministic = false;
    syn->add_option("plant", syn_plant)->required();
    syn->add_option("formula", syn_formula)->required();
    syn->add_option("--out", syn_out, "witness file to write");
    syn->add_option("--max-c", max_c, "limit on removable controllable edges for candidate search");
    syn->add_flag("--force", force, "search even above --max-c");
    syn->add_flag("--deterministic", deterministic, "single-threaded search");
    syn->add_option("--decoder", syn_decoder, "decoder metadata from reduce; prints the decoded assignment");
    syn->add_option("--stem-bound", stem);
    syn->add_option("--loop-bound", loop);

    // reduce
    auto* red = app.add_subcommand("reduce", "build a synthesis instance from DIMACS/QDIMACS");
    std::string kind, red_input, out_dir = ".";
    red->add_option("kind", kind)->required()->check(CLI::IsMember({"horn", "3sat", "qbf"}));
    red->add_option("input", red_input)->required();
    red->add_option("--out-dir", out_dir);

    // casestudy
    auto* cs = app.add_subcommand("casestudy", "non-repudiation protocol case study");
    std::string cs_config, strategy = "synthesize", cs_out, cs_plant_out;
    bool with_consistency = false;
    cs->add_option("--config", cs_config, "protocol config JSON (default: curated)");
    cs->add_option("--strategy", strategy)->check(CLI::IsMember({"correct", "incorrect", "strange", "synthesize"}));
    cs->add_flag("--with-consistency", with_consistency);
    cs->add_option("--out", cs_out, "witness file to write");
    cs->add_option("--plant-out", cs_plant_out, "write the protocol plant JSON");
    cs->add_option("--max-c", max_c);
    cs->add_flag("--force", force);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformed;
    }

    Timer timer;
    try {
        if (*cls) {
            if (cls_plant.empty() && cls_formula.empty()) throw FormatError("classify needs a plant or --formula");
            if (!cls_plant.empty()) {
                Plant p = read_plant_file(cls_plant);
                out << to_string(classify_frame(p)) << "\n";
                if (!cls_dot.empty()) write_text_file(cls_dot, to_dot(p));
            }
            if (!cls_formula.empty()) out << classify_fragment(read_formula_file(cls_formula)).name() << "\n";
            return kExitOk;
        }

        if (*chk) {
            Plant p = read_plant_file(chk_plant);
            Formula f = read_formula_file(chk_formula);
            if (!chk_witness.empty()) p = apply_solution(p, witness_from_json(p, read_json_file(chk_witness)));
            CheckResult r = check(p, f, bounds_of(stem, loop, p));
            out << "verdict: " << yes(r.holds) << "\n"
                << "frame: " << to_string(r.frame) << "\n"
                << "fragment: " << classify_fragment(f).name() << "\n"
                << "exact: " << yes(r.exact) << "\n"
                << "traces: " << r.traces << "\n"
                << "time_ms: " << timer.ms() << "\n";
            if (r.holds) return kExitOk;
            return r.definitive ? kExitNegative : kExitBounded;
        }

        if (*syn) {
            Plant p = read_plant_file(syn_plant);
            Formula f = read_formula_file(syn_formula);
            SynthOptions opt;
            opt.bounds = bounds_of(stem, loop, p);
            opt.max_removable = max_c;
            opt.force = force;
            opt.threads = deterministic ? 1 : env_threads();
            SynthesisResult r = dispatch(p, f, opt);
            out << "verdict: " << to_string(r.verdict) << "\n"
                << "algorithm: " << r.algorithm << "\n"
                << "frame: " << to_string(classify_frame(p)) << "\n"
                << "fragment: " << classify_fragment(f).name() << "\n"
                << "exact: " << yes(r.exact) << "\n";
            if (r.solution) {
                out << "retained: " << r.solution->retained.size() << " of " << p.controllable().size() << "\n";
                if (!syn_out.empty()) {
                    write_text_file(syn_out, witness_json(p, *r.solution).dump(2) + "\n");
                    out << "witness: " << syn_out << "\n";
                }
                if (!syn_decoder.empty())
                    print_assignment(out, decode_assignment(p, read_json_file(syn_decoder), *r.solution));
            }
            out << "time_ms: " << timer.ms() << "\n";
            return verdict_exit(r.verdict);
        }

        if (*red) {
            std::string text = read_text_file(red_input);
            SynthesisInstance inst;
            if (kind == "horn")
                inst = horn_to_instance(normalize_horn(parse_dimacs(text)));
            else if (kind == "3sat")
                inst = threesat_to_instance(parse_dimacs(text));
            else
                inst = qbf_to_instance(parse_qdimacs(text));
            std::filesystem::create_directories(out_dir);
            auto path = [&](const char* name) { return (std::filesystem::path(out_dir) / name).string(); };
            write_plant_file(inst.plant, path("plant.json"));
            write_text_file(path("formula.txt"), print(inst.formula) + "\n");
            write_text_file(path("decoder.json"), inst.decoder.dump(2) + "\n");
            out << "states: " << inst.plant.size() << "\n"
                << "frame: " << to_string(classify_frame(inst.plant)) << "\n"
                << "fragment: " << classify_fragment(inst.formula).name() << "\n"
                << "wrote: " << path("plant.json") << " " << path("formula.txt") << " " << path("decoder.json") << "\n";
            return kExitOk;
        }

        if (*cs) {
            nrp::ProtocolConfig cfg =
                cs_config.empty() ? nrp::curated_config() : nrp::config_from_json(read_json_file(cs_config));
            Plant p = nrp::build_plant(cfg);
            if (!cs_plant_out.empty()) write_plant_file(p, cs_plant_out);
            Formula phi = nrp::effectiveness_fairness_formula();
            Formula cons = nrp::consistency_formula();
            out << "states: " << p.size() << "\n";
            if (strategy != "synthesize") {
                nrp::Strategy s = strategy == "correct"     ? nrp::t_correct()
                                  : strategy == "incorrect" ? nrp::t_incorrect()
                                                            : nrp::t_strange();
                ControllerSolution sol = nrp::encode_strategy(p, s);
                Plant q = apply_solution(p, sol);
                out << "phi: " << (check(q, phi).holds ? "pass" : "fail") << "\n"
                    << "consistency: " << (check(q, cons).holds ? "pass" : "fail") << "\n";
                if (!cs_out.empty()) write_text_file(cs_out, witness_json(p, sol).dump(2) + "\n");
                return kExitOk;
            }
            Formula goal = with_consistency ? conjoin(phi, cons) : phi;
            SynthOptions opt;
            opt.max_removable = max_c;
            opt.force = force;
            opt.threads = env_threads();
            SynthesisResult r = dispatch(p, goal, opt);
            out << "verdict: " << to_string(r.verdict) << "\n"
                << "algorithm: " << r.algorithm << "\n";
            if (r.solution) {
                Plant q = apply_solution(p, *r.solution);
                out << "phi: " << (check(q, phi).holds ? "pass" : "fail") << "\n"
                    << "consistency: " << (check(q, cons).holds ? "pass" : "fail") << "\n";
                if (!cs_out.empty()) write_text_file(cs_out, witness_json(p, *r.solution).dump(2) + "\n");
            }
            out << "time_ms: " << timer.ms() << "\n";
            return verdict_exit(r.verdict);
        }
    } catch (const CandidateSpaceTooLarge& e) {
        err << "error: " << e.what() << " (raise --max-c or pass --force)\n";
        return kExitGuard;
    } catch (const HorizonExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kExitGuard;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
    return kExitMalformed;
}

}  // namespace hypersynth
