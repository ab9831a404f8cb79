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

#ifndef QUASAR_SIMULATOR_HPP_
#define QUASAR_SIMULATOR_HPP_

#include <cstdint>

#include "quasar/gates.hpp"
#include "quasar/measure.hpp"
#include "quasar/schedule.hpp"
#include "quasar/tableau.hpp"

namespace quasar {

struct RunReport {
    PhaseTimers timers;
    size_t gate_count = 0;
    size_t measure_count = 0;
    size_t probabilistic_count = 0;
    size_t window_count = 0;
    double total_seconds = 0;
};

// Single-shot driver: schedule once, evolve the tableau window by window,
// dispatch measurement windows through the transpose/compact/eliminate
// pipeline.
template <Word W>
struct SingleShotResult {
    Tableau<W> tableau;
    MeasurementRecord record;
    RunReport report;
};

template <Word W>
SingleShotResult<W> run_single_shot(const Circuit &circuit, const Schedule &schedule,
                                    uint64_t seed) {
    auto start = std::chrono::steady_clock::now();
    SingleShotResult<W> result{Tableau<W>::zero_state(circuit.num_qubits), {}, {}};
    RandomStream coins(seed, kStreamMeasure);
    MeasureScratch<W> scratch;
    for (const Window &w : schedule.windows) {
        if (w.is_measurement) {
            measure_window(result.tableau, w, coins, result.record, scratch,
                           &result.report.timers);
        } else {
            result.report.timers.timed(&PhaseTimers::to_seconds,
                                       [&] { apply_window(result.tableau, w); });
        }
    }
    result.report.gate_count = circuit.gates.size() - circuit.measure_count();
    result.report.measure_count = circuit.measure_count();
    result.report.window_count = schedule.windows.size();
    for (const auto &e : result.record.entries)
        result.report.probabilistic_count += e.deterministic ? 0 : 1;
    result.report.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

template <Word W>
SingleShotResult<W> run_single_shot(const Circuit &circuit, uint64_t seed) {
    return run_single_shot<W>(circuit, schedule_windows(circuit, ScheduleMode::single_shot),
                              seed);
}

} // namespace quasar

#endif // QUASAR_SIMULATOR_HPP_
