// Copyright 2026 The Quasar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: run (single shot), sample (Pauli frames), gen
// (random circuits), schedule (window dump), verify (differential suites),
// bench (phase timing table).

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "quasar/frames.hpp"
#include "quasar/oracle/scalar_chp.hpp"
#include "quasar/oracle/state_vector.hpp"
#include "quasar/oracle/stats.hpp"
#include "quasar/qasm.hpp"
#include "quasar/simulator.hpp"

namespace {

using namespace quasar;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitResourceError = 3;

struct CommonOpts {
    uint64_t seed = 0;
    unsigned word_size = 64;
    unsigned threads = 0; // 0 = env or hardware
};

void apply_threads(unsigned threads) {
    if (threads == 0) {
        if (const char *env = std::getenv("QUASAR_THREADS"))
            threads = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    }
    if (threads != 0)
        set_num_threads(threads);
}

Circuit load_circuit(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_qasm(buf.str());
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

void print_report(const Circuit &circuit, const RunReport &report,
                  const std::string &json_path) {
    auto ms = [](double s) { return s * 1e3; };
    std::cout << "qubits=" << circuit.num_qubits << "\n"
              << "gates=" << report.gate_count << "\n"
              << "measures=" << report.measure_count << "\n"
              << "windows=" << report.window_count << "\n"
              << "probabilistic=" << report.probabilistic_count << "\n"
              << "to_ms=" << ms(report.timers.to_seconds) << "\n"
              << "t_ms=" << ms(report.timers.t_seconds) << "\n"
              << "cmp_ms=" << ms(report.timers.cmp_seconds) << "\n"
              << "ge_ms=" << ms(report.timers.ge_seconds) << "\n"
              << "total_ms=" << ms(report.total_seconds) << "\n";
    if (!json_path.empty()) {
        nlohmann::json j{{"qubits", circuit.num_qubits},
                         {"gates", report.gate_count},
                         {"measures", report.measure_count},
                         {"windows", report.window_count},
                         {"probabilistic", report.probabilistic_count},
                         {"to_ms", ms(report.timers.to_seconds)},
                         {"t_ms", ms(report.timers.t_seconds)},
                         {"cmp_ms", ms(report.timers.cmp_seconds)},
                         {"ge_ms", ms(report.timers.ge_seconds)},
                         {"total_ms", ms(report.total_seconds)}};
        write_file(json_path, j.dump(2) + "\n");
    }
}

// ---- run ------------------------------------------------------------------

template <Word W>
int run_with_word(const Circuit &circuit, uint64_t seed, const std::string &out_path,
                  const std::string &json_path) {
    auto result = run_single_shot<W>(circuit, seed);
    std::string outcomes;
    for (const auto &[qubit, bit] : result.record.per_qubit())
        outcomes += bit ? '1' : '0';
    outcomes += '\n';
    if (!out_path.empty())
        write_file(out_path, result.record.entries.empty() ? "" : outcomes);
    else if (!result.record.entries.empty())
        std::cout << "outcomes=" << outcomes;
    print_report(circuit, result.report, json_path);
    return kExitOk;
}

// ---- sample ---------------------------------------------------------------

template <Word W>
int sample_with_word(const Circuit &circuit, size_t shots, uint64_t seed,
                     const std::string &out_path, const std::string &format,
                     const std::string &json_path) {
    RunReport report;
    ShotRecord<W> record = sample<W>(circuit, shots, seed, &report);
    std::string payload;
    if (format == "text") {
        payload.reserve(shots * (record.measured.size() + 1));
        for (size_t shot = 0; shot < shots; ++shot) {
            for (size_t r = 0; r < record.measured.size(); ++r)
                payload += record.bit(r, shot) ? '1' : '0';
            payload += '\n';
        }
    } else if (format == "binary") {
        // Per measured qubit: kf little-endian words, LSB = lowest shot.
        payload.reserve(record.words.size() * sizeof(W));
        for (W word : record.words) {
            for (size_t byte = 0; byte < sizeof(W); ++byte)
                payload += static_cast<char>((word >> (8 * byte)) & 0xFF);
        }
    } else {
        throw std::runtime_error("unknown format: " + format);
    }
    if (!out_path.empty())
        write_file(out_path, payload);
    else
        std::cout << payload;
    print_report(circuit, report, json_path);
    return kExitOk;
}

// ---- verify ---------------------------------------------------------------

struct VerifyOpts {
    uint32_t n_min = 2, n_max = 32;
    uint32_t depth_min = 4, depth_max = 32;
    uint32_t trials = 50;
    uint64_t seed = 1;
};

int cmd_verify(const VerifyOpts &opt) {
    if (opt.trials == 0) {
        std::cout << "warning: trials=0, nothing verified\n";
        std::cout << "verify=pass (vacuous)\n";
        return kExitOk;
    }
    if (opt.n_min < 1 || opt.n_max < opt.n_min || opt.depth_max < opt.depth_min)
        throw std::runtime_error("bad verify ranges");

    size_t failures = 0;
    RandomStream pick(opt.seed, 12);
    size_t differential = 0, statistical = 0;
    for (uint32_t trial = 0; trial < opt.trials; ++trial) {
        uint32_t n = opt.n_min + static_cast<uint32_t>(pick.next_below(opt.n_max - opt.n_min + 1));
        uint32_t depth =
            opt.depth_min + static_cast<uint32_t>(pick.next_below(opt.depth_max - opt.depth_min + 1));
        uint64_t circuit_seed = pick.next_word();
        Circuit circuit = generate_random(n, depth, circuit_seed, 0.5);
        Schedule schedule = schedule_windows(circuit, ScheduleMode::single_shot);
        if (validate_schedule(circuit, schedule) != "valid") {
            std::cout << "FAIL schedule n=" << n << " depth=" << depth << " seed="
                      << circuit_seed << "\n";
            ++failures;
            continue;
        }

        // Differential: packed engine vs sequential reference, bit for bit.
        uint64_t run_seed = pick.next_word();
        auto packed = run_single_shot<uint64_t>(circuit, schedule, run_seed);
        auto scalar = oracle::run_scalar(circuit, schedule, run_seed);
        bool same_record = scalar.record.entries.size() == packed.record.entries.size();
        if (same_record) {
            for (size_t i = 0; i < scalar.record.entries.size(); ++i) {
                same_record &= scalar.record.entries[i].qubit == packed.record.entries[i].qubit &&
                               scalar.record.entries[i].outcome ==
                                   packed.record.entries[i].outcome;
            }
        }
        if (!(scalar.tableau.pack<uint64_t>() == packed.tableau) || !same_record) {
            std::cout << "FAIL differential n=" << n << " depth=" << depth << " seed="
                      << circuit_seed << "\n";
            ++failures;
        }
        ++differential;

        // Statistical: sampler frequencies against the exact distribution.
        if (n <= 6 && circuit.measure_count() >= 1 && circuit.measure_count() <= 10) {
            auto expected = oracle::sv_distribution(circuit);
            const size_t shots = 4096;
            auto record = sample<uint64_t>(circuit, shots, run_seed);
            std::map<std::vector<bool>, size_t> observed;
            for (size_t shot = 0; shot < shots; ++shot) {
                std::vector<bool> key;
                for (size_t r = 0; r < record.measured.size(); ++r)
                    key.push_back(record.bit(r, shot));
                observed[key]++;
            }
            double p = oracle::chi_square_pvalue(observed, expected, shots);
            if (p <= 0.001) {
                std::cout << "FAIL statistical n=" << n << " depth=" << depth << " seed="
                          << circuit_seed << " p=" << p << "\n";
                ++failures;
            }
            ++statistical;
        }
    }
    std::cout << "differential_trials=" << differential << "\n"
              << "statistical_trials=" << statistical << "\n"
              << "failures=" << failures << "\n"
              << "verify=" << (failures == 0 ? "pass" : "fail") << "\n";
    return failures == 0 ? kExitOk : kExitVerifyFailure;
}

// ---- bench ----------------------------------------------------------------

template <Word W>
int bench_with_word(const Circuit &circuit, uint64_t seed, unsigned reps) {
    Schedule schedule = schedule_windows(circuit, ScheduleMode::single_shot);
    std::vector<RunReport> reports;
    std::cout << "rep\tto_ms\tt_ms\tcmp_ms\tge_ms\ttotal_ms\n";
    for (unsigned rep = 0; rep < reps; ++rep) {
        auto result = run_single_shot<W>(circuit, schedule, seed + rep);
        reports.push_back(result.report);
        const auto &tm = result.report.timers;
        std::cout << rep << '\t' << tm.to_seconds * 1e3 << '\t' << tm.t_seconds * 1e3 << '\t'
                  << tm.cmp_seconds * 1e3 << '\t' << tm.ge_seconds * 1e3 << '\t'
                  << result.report.total_seconds * 1e3 << "\n";
    }
    auto median = [&](auto getter) {
        std::vector<double> v;
        for (const auto &r : reports)
            v.push_back(getter(r));
        std::sort(v.begin(), v.end());
        return v[v.size() / 2] * 1e3;
    };
    std::cout << "median\t" << median([](const RunReport &r) { return r.timers.to_seconds; })
              << '\t' << median([](const RunReport &r) { return r.timers.t_seconds; }) << '\t'
              << median([](const RunReport &r) { return r.timers.cmp_seconds; }) << '\t'
              << median([](const RunReport &r) { return r.timers.ge_seconds; }) << '\t'
              << median([](const RunReport &r) { return r.total_seconds; }) << "\n";
    return kExitOk;
}

template <typename F>
int dispatch_word(unsigned word_size, F &&f) {
    switch (word_size) {
    case 8: return f(uint8_t{});
    case 16: return f(uint16_t{});
    case 32: return f(uint32_t{});
    case 64: return f(uint64_t{});
    default: throw std::runtime_error("word size must be one of 8, 16, 32, 64");
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"data-parallel stabilizer circuit simulator"};
    app.require_subcommand(1);

    CommonOpts common;
    std::string in_path, out_path, json_path, format = "text";
    uint64_t shots = 1024;
    uint32_t gen_qubits = 16, gen_depth = 16;
    double measure_prob = 0.1;
    unsigned reps = 3;
    VerifyOpts verify;

    auto add_common = [&](CLI::App *cmd, bool with_word = true) {
        cmd->add_option("--seed", common.seed, "64-bit random seed");
        if (with_word)
            cmd->add_option("--word-size", common.word_size, "packed word width")
                ->check(CLI::IsMember({8, 16, 32, 64}));
        cmd->add_option("--threads", common.threads,
                        "worker threads (default: QUASAR_THREADS or hardware)");
    };

    CLI::App *run = app.add_subcommand("run", "single-shot simulation of a QASM file");
    run->add_option("input", in_path, "OpenQASM input")->required();
    run->add_option("--out", out_path, "outcome bit file");
    run->add_option("--json", json_path, "machine-readable report");
    add_common(run);

    CLI::App *smp = app.add_subcommand("sample", "many-shot Pauli-frame sampling");
    smp->add_option("input", in_path, "OpenQASM input")->required();
    smp->add_option("--shots", shots, "number of shots")->check(CLI::PositiveNumber);
    smp->add_option("--format", format, "text or binary")
        ->check(CLI::IsMember({"text", "binary"}));
    smp->add_option("--out", out_path, "record file");
    smp->add_option("--json", json_path, "machine-readable report");
    add_common(smp);

    CLI::App *gen = app.add_subcommand("gen", "generate a random Clifford benchmark circuit");
    gen->add_option("--qubits", gen_qubits, "qubit count")->check(CLI::PositiveNumber);
    gen->add_option("--depth", gen_depth, "layer count")->check(CLI::PositiveNumber);
    gen->add_option("--measure-prob", measure_prob, "per-qubit measurement probability")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--out", out_path, "output QASM path");
    add_common(gen, false);

    CLI::App *sched = app.add_subcommand("schedule", "dump the window schedule of a circuit");
    sched->add_option("input", in_path, "OpenQASM input")->required();

    CLI::App *ver = app.add_subcommand("verify", "differential and statistical self-checks");
    ver->add_option("--n-min", verify.n_min);
    ver->add_option("--n-max", verify.n_max);
    ver->add_option("--depth-min", verify.depth_min);
    ver->add_option("--depth-max", verify.depth_max);
    ver->add_option("--trials", verify.trials);
    ver->add_option("--seed", verify.seed);
    ver->add_option("--threads", common.threads);

    CLI::App *bench = app.add_subcommand("bench", "phase-timing table (TO/T/CMP/GE)");
    bench->add_option("input", in_path, "OpenQASM input (omit to generate)");
    bench->add_option("--qubits", gen_qubits);
    bench->add_option("--depth", gen_depth);
    bench->add_option("--measure-prob", measure_prob)->check(CLI::Range(0.0, 1.0));
    bench->add_option("--reps", reps)->check(CLI::PositiveNumber);
    add_common(bench);

    CLI11_PARSE(app, argc, argv);

    try {
        apply_threads(common.threads);
        if (run->parsed()) {
            Circuit c = load_circuit(in_path);
            return dispatch_word(common.word_size, [&](auto w) {
                return run_with_word<decltype(w)>(c, common.seed, out_path, json_path);
            });
        }
        if (smp->parsed()) {
            Circuit c = load_circuit(in_path);
            return dispatch_word(common.word_size, [&](auto w) {
                return sample_with_word<decltype(w)>(c, shots, common.seed, out_path, format,
                                                     json_path);
            });
        }
        if (gen->parsed()) {
            Circuit c = generate_random(gen_qubits, gen_depth, common.seed, measure_prob);
            std::string text = emit_qasm(c);
            if (out_path.empty())
                std::cout << text;
            else
                write_file(out_path, text);
            return kExitOk;
        }
        if (sched->parsed()) {
            Circuit c = load_circuit(in_path);
            std::cout << schedule_to_text(schedule_windows(c, ScheduleMode::single_shot));
            return kExitOk;
        }
        if (ver->parsed())
            return cmd_verify(verify);
        if (bench->parsed()) {
            Circuit c = in_path.empty()
                            ? generate_random(gen_qubits, gen_depth, common.seed, measure_prob)
                            : load_circuit(in_path);
            return dispatch_word(common.word_size, [&](auto w) {
                return bench_with_word<decltype(w)>(c, common.seed, reps);
            });
        }
    } catch (const std::bad_alloc &) {
        std::cerr << "error: out of memory\n";
        return kExitResourceError;
    } catch (const QasmError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
