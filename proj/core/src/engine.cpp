// Copyright 2026 The starqed Authors
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

#include "starqed/engine.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "starqed/rng.h"
#include "starqed/tableau.h"

namespace starqed {

namespace {

constexpr uint64_t kNoiseStream = 0;
constexpr uint64_t kMeasureStream = 1;

enum class Code : uint8_t { Reset, Gate, Measure, Dep1, Dep2, Pc1, Flip };

// How a gate moves a Pauli frame. Signs do not matter for frames.
enum class FrameAction : uint8_t { None, SwapXZ, ZxorX, XxorZ, CZ, CX, Swap, ISwap };

FrameAction frame_action(Gate g) {
    switch (g) {
        case Gate::I:
        case Gate::X:
        case Gate::Y:
        case Gate::Z: return FrameAction::None;
        case Gate::H:
        case Gate::SQRT_Y:
        case Gate::SQRT_Y_DAG: return FrameAction::SwapXZ;
        case Gate::S:
        case Gate::S_DAG: return FrameAction::ZxorX;
        case Gate::SQRT_X:
        case Gate::SQRT_X_DAG: return FrameAction::XxorZ;
        case Gate::CZ: return FrameAction::CZ;
        case Gate::CX: return FrameAction::CX;
        case Gate::SWAP: return FrameAction::Swap;
        case Gate::ISWAP:
        case Gate::ISWAP_DAG: return FrameAction::ISwap;
    }
    return FrameAction::None;
}

struct FlatOp {
    Code code;
    FrameAction action = FrameAction::None;
    Gate gate = Gate::I;
    uint8_t a = 0;
    uint8_t b = 0;
    std::array<uint64_t, 3> thr{0, 0, 0};
};

uint64_t threshold(double p) {
    if (!(p > 0.0)) {
        return 0;
    }
    double v = std::ldexp(p, 64);
    if (v >= 18446744073709549568.0) {
        return UINT64_MAX;
    }
    return static_cast<uint64_t>(v);
}

std::vector<FlatOp> flatten(const CircuitProgram& program) {
    if (program.num_elements() > 64) {
        throw std::invalid_argument("run_shots: at most 64 elements are supported");
    }
    std::vector<FlatOp> ops;
    for (const auto& ins : program.instructions) {
        FlatOp op{Code::Gate};
        if (!ins.targets.empty()) {
            op.a = static_cast<uint8_t>(ins.targets[0]);
        }
        if (ins.targets.size() > 1) {
            op.b = static_cast<uint8_t>(ins.targets[1]);
        }
        switch (ins.kind) {
            case OpKind::PrepareZero: op.code = Code::Reset; break;
            case OpKind::SingleQubitGate:
            case OpKind::TwoQubitGate:
            case OpKind::Move:
                op.code = Code::Gate;
                op.gate = ins.gate;
                op.action = frame_action(ins.gate);
                break;
            case OpKind::Measure: op.code = Code::Measure; break;
            case OpKind::Noise: {
                const auto& ev = *ins.noise;
                const auto& p = ev.params;
                switch (ev.kind) {
                    case NoiseKind::Depolarize1: op.code = Code::Dep1; op.thr[0] = threshold(p[0]); break;
                    case NoiseKind::Depolarize2: op.code = Code::Dep2; op.thr[0] = threshold(p[0]); break;
                    case NoiseKind::BitFlip: op.code = Code::Flip; op.thr[0] = threshold(p[0]); break;
                    case NoiseKind::PauliChannel1:
                        op.code = Code::Pc1;
                        op.thr = {threshold(p[0]), threshold(p[0] + p[1]), threshold(p[0] + p[1] + p[2])};
                        break;
                }
                break;
            }
            case OpKind::Barrier: continue;
        }
        ops.push_back(op);
    }
    return ops;
}

// Index in [0, k) of a hit r < thr, uniform over the hit range.
inline unsigned hit_index(uint64_t r, uint64_t thr, unsigned k) {
    __extension__ using u128 = unsigned __int128;
    return static_cast<unsigned>((static_cast<u128>(r) * k) / thr);
}

// Pauli(s) chosen by one draw; (I, I) when nothing happens.
inline std::pair<Pauli, Pauli> pick(const FlatOp& op, uint64_t r) {
    switch (op.code) {
        case Code::Dep1:
            if (r < op.thr[0]) {
                return {static_cast<Pauli>(1 + std::min(2u, hit_index(r, op.thr[0], 3))), Pauli::I};
            }
            break;
        case Code::Dep2:
            if (r < op.thr[0]) {
                unsigned m = 1 + std::min(14u, hit_index(r, op.thr[0], 15));
                return {static_cast<Pauli>(m >> 2), static_cast<Pauli>(m & 3)};
            }
            break;
        case Code::Flip:
            if (r < op.thr[0]) {
                return {Pauli::X, Pauli::I};
            }
            break;
        case Code::Pc1:
            if (r < op.thr[0]) {
                return {Pauli::X, Pauli::I};
            }
            if (r < op.thr[1]) {
                return {Pauli::Y, Pauli::I};
            }
            if (r < op.thr[2]) {
                return {Pauli::Z, Pauli::I};
            }
            break;
        default: break;
    }
    return {Pauli::I, Pauli::I};
}

inline bool px(Pauli p) { return p == Pauli::X || p == Pauli::Y; }
inline bool pz(Pauli p) { return p == Pauli::Z || p == Pauli::Y; }

// Noiseless run with every random outcome fixed to 0.
std::vector<uint8_t> reference_sample(const CircuitProgram& program, const std::vector<FlatOp>& ops) {
    Tableau t(program.num_elements());
    std::vector<uint8_t> ref;
    for (const auto& op : ops) {
        switch (op.code) {
            case Code::Reset: t.reset_z_forced(op.a, false); break;
            case Code::Gate:
                if (gate_arity(op.gate) == 1) {
                    t.apply(op.gate, {op.a});
                } else {
                    t.apply(op.gate, {op.a, op.b});
                }
                break;
            case Code::Measure: ref.push_back(t.measure_z_forced(op.a, false) ? 1 : 0); break;
            default: break;
        }
    }
    return ref;
}

class FrameRunner {
   public:
    FrameRunner(const std::vector<FlatOp>& ops, const std::vector<uint8_t>& ref, std::size_t n)
        : ops_(ops), ref_(ref), all_(n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1) {}

    // Writes measurement bits into out[m].
    void run(uint64_t seed, uint64_t shot, uint8_t* out) const {
        CounterRng noise(stream_key(seed, shot, kNoiseStream));
        CounterRng meas(stream_key(seed, shot, kMeasureStream));
        uint64_t x = 0;
        // Z components are invisible on |0>; randomizing them lets later
        // basis changes produce uniformly random outcomes.
        uint64_t z = meas() & all_;
        std::size_t m = 0;
        for (const auto& op : ops_) {
            const uint64_t ma = uint64_t{1} << op.a;
            const uint64_t mb = uint64_t{1} << op.b;
            switch (op.code) {
                case Code::Reset:
                    x &= ~ma;
                    z = (z & ~ma) | (meas.coin() ? ma : 0);
                    break;
                case Code::Gate:
                    apply(op, ma, mb, x, z);
                    break;
                case Code::Measure:
                    out[m] = static_cast<uint8_t>(ref_[m] ^ ((x >> op.a) & 1));
                    ++m;
                    if (meas.coin()) {
                        z ^= ma;
                    }
                    break;
                default: {
                    auto [pa, pb] = pick(op, noise());
                    if (pa != Pauli::I) {
                        x ^= px(pa) ? ma : 0;
                        z ^= pz(pa) ? ma : 0;
                    }
                    if (pb != Pauli::I) {
                        x ^= px(pb) ? mb : 0;
                        z ^= pz(pb) ? mb : 0;
                    }
                    break;
                }
            }
        }
    }

   private:
    static void apply(const FlatOp& op, uint64_t ma, uint64_t mb, uint64_t& x, uint64_t& z) {
        auto get = [](uint64_t w, uint64_t m) { return (w & m) != 0; };
        auto put = [](uint64_t& w, uint64_t m, bool v) { w = v ? (w | m) : (w & ~m); };
        switch (op.action) {
            case FrameAction::None: break;
            case FrameAction::SwapXZ: {
                bool xa = get(x, ma);
                put(x, ma, get(z, ma));
                put(z, ma, xa);
                break;
            }
            case FrameAction::ZxorX:
                if (get(x, ma)) {
                    z ^= ma;
                }
                break;
            case FrameAction::XxorZ:
                if (get(z, ma)) {
                    x ^= ma;
                }
                break;
            case FrameAction::CZ: {
                bool xa = get(x, ma);
                bool xb = get(x, mb);
                if (xb) z ^= ma;
                if (xa) z ^= mb;
                break;
            }
            case FrameAction::CX: {
                if (get(x, ma)) x ^= mb;
                if (get(z, mb)) z ^= ma;
                break;
            }
            case FrameAction::ISwap: {
                bool xa = get(x, ma);
                bool xb = get(x, mb);
                // S on both, CZ, then SWAP.
                if (xa ^ xb) {
                    z ^= ma | mb;
                }
                [[fallthrough]];
            }
            case FrameAction::Swap: {
                bool xa = get(x, ma), za = get(z, ma);
                put(x, ma, get(x, mb));
                put(z, ma, get(z, mb));
                put(x, mb, xa);
                put(z, mb, za);
                break;
            }
        }
    }

    const std::vector<FlatOp>& ops_;
    const std::vector<uint8_t>& ref_;
    uint64_t all_;
};

class TableauRunner {
   public:
    TableauRunner(const std::vector<FlatOp>& ops, std::size_t n) : ops_(ops), n_(n) {}

    void run(uint64_t seed, uint64_t shot, uint8_t* out) const {
        CounterRng noise(stream_key(seed, shot, kNoiseStream));
        CounterRng meas(stream_key(seed, shot, kMeasureStream));
        Tableau t(n_);
        std::size_t m = 0;
        for (const auto& op : ops_) {
            switch (op.code) {
                case Code::Reset: t.reset_z(op.a, meas); break;
                case Code::Gate:
                    if (gate_arity(op.gate) == 1) {
                        t.apply(op.gate, {op.a});
                    } else {
                        t.apply(op.gate, {op.a, op.b});
                    }
                    break;
                case Code::Measure: out[m++] = t.measure_z(op.a, meas) ? 1 : 0; break;
                default: {
                    auto [pa, pb] = pick(op, noise());
                    if (pa != Pauli::I) {
                        t.apply_pauli(op.a, pa);
                    }
                    if (pb != Pauli::I) {
                        t.apply_pauli(op.b, pb);
                    }
                    break;
                }
            }
        }
    }

   private:
    const std::vector<FlatOp>& ops_;
    std::size_t n_;
};

template <typename Runner>
void run_range(const Runner& runner, ShotBatch& batch, uint64_t seed, std::size_t word_begin, std::size_t word_end) {
    const std::size_t slots = batch.num_slots();
    std::vector<uint8_t> out(std::max<std::size_t>(slots, 1));
    std::vector<uint64_t> words(slots);
    for (std::size_t w = word_begin; w < word_end; ++w) {
        std::fill(words.begin(), words.end(), 0);
        const std::size_t first = w * 64;
        const std::size_t last = std::min(batch.shots(), first + 64);
        for (std::size_t s = first; s < last; ++s) {
            runner.run(seed, s, out.data());
            for (std::size_t k = 0; k < slots; ++k) {
                words[k] |= static_cast<uint64_t>(out[k]) << (s & 63);
            }
        }
        for (std::size_t k = 0; k < slots; ++k) {
            batch.column(k)[w] = words[k];
        }
    }
}

template <typename Runner>
void run_parallel(const Runner& runner, ShotBatch& batch, uint64_t seed, std::size_t threads) {
    const std::size_t words = batch.words_per_slot();
    threads = std::max<std::size_t>(1, std::min(threads, words));
    if (threads == 1) {
        run_range(runner, batch, seed, 0, words);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t per = (words + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
        std::size_t b = t * per;
        std::size_t e = std::min(words, b + per);
        if (b >= e) {
            break;
        }
        pool.emplace_back([&, b, e] { run_range(runner, batch, seed, b, e); });
    }
    for (auto& th : pool) {
        th.join();
    }
}

}  // namespace

ShotBatch run_shots(const CircuitProgram& program, std::size_t shots, uint64_t seed, const EngineOptions& options) {
    program.validate();
    ShotBatch batch(program.schema, program.readout, program.digest(), seed, shots);
    if (shots == 0) {
        return batch;
    }
    const std::vector<FlatOp> ops = flatten(program);
    if (options.backend == Backend::Tableau) {
        TableauRunner runner(ops, program.num_elements());
        run_parallel(runner, batch, seed, options.threads);
    } else {
        const std::vector<uint8_t> ref = reference_sample(program, ops);
        FrameRunner runner(ops, ref, program.num_elements());
        run_parallel(runner, batch, seed, options.threads);
    }
    return batch;
}

uint64_t outcome_key(const ShotBatch& batch, std::size_t shot) {
    if (batch.num_slots() > 64) {
        throw std::invalid_argument("outcome_key: more than 64 measurements");
    }
    uint64_t key = 0;
    for (std::size_t k = 0; k < batch.num_slots(); ++k) {
        key |= static_cast<uint64_t>(batch.bit(k, shot)) << k;
    }
    return key;
}

}  // namespace starqed
