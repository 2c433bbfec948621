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

// ShotBatch storage and its binary / CSV containers.
//
// Binary layout, all integers little endian:
//   "SQDB" u32 version | u64 digest | u64 seed | u64 shots | u8 bases[4]
//   i32 setting_id | i32 cycles | u32 slots | per slot: u32 len, tag bytes,
//   i32 cycle, u32 element, u8 role | slots * words u64 bit words.

#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include "starqed/engine.h"

namespace starqed {

namespace {

constexpr char kMagic[4] = {'S', 'Q', 'D', 'B'};
constexpr uint32_t kVersion = 1;

class Writer {
   public:
    void u8(uint8_t v) { out.push_back(v); }
    void u32(uint32_t v) {
        for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
    void u64(uint64_t v) {
        for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
    void bytes(const void* p, std::size_t n) {
        const auto* b = static_cast<const uint8_t*>(p);
        out.insert(out.end(), b, b + n);
    }
    std::vector<uint8_t> out;
};

class Reader {
   public:
    explicit Reader(const std::vector<uint8_t>& in) : in_(in) {}
    uint8_t u8() {
        need(1);
        return in_[pos_++];
    }
    uint32_t u32() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(in_[pos_++]) << (8 * i);
        return v;
    }
    uint64_t u64() {
        need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(in_[pos_++]) << (8 * i);
        return v;
    }
    std::string str(std::size_t n) {
        need(n);
        std::string s(in_.begin() + static_cast<long>(pos_), in_.begin() + static_cast<long>(pos_ + n));
        pos_ += n;
        return s;
    }
    bool done() const { return pos_ == in_.size(); }

   private:
    void need(std::size_t n) const {
        if (pos_ + n > in_.size()) {
            throw std::runtime_error("ShotBatch: truncated container");
        }
    }
    const std::vector<uint8_t>& in_;
    std::size_t pos_ = 0;
};

}  // namespace

ShotBatch::ShotBatch(std::vector<MeasurementSlot> schema, ReadoutInfo readout, uint64_t digest, uint64_t seed,
                     std::size_t shots)
    : schema_(std::move(schema)),
      readout_(readout),
      digest_(digest),
      seed_(seed),
      shots_(shots),
      words_((shots + 63) / 64),
      bits_(schema_.size() * words_, 0) {
    index_slots();
}

void ShotBatch::index_slots() {
    anc_x_.clear();
    anc_z_.clear();
    data_.fill(-1);
    for (std::size_t i = 0; i < schema_.size(); ++i) {
        const auto& s = schema_[i];
        auto place = [&](std::vector<long>& v) {
            if (s.cycle < 1) {
                throw std::invalid_argument("ShotBatch: ancilla slot without cycle");
            }
            if (v.size() < static_cast<std::size_t>(s.cycle)) {
                v.resize(static_cast<std::size_t>(s.cycle), -1);
            }
            v[static_cast<std::size_t>(s.cycle - 1)] = static_cast<long>(i);
        };
        switch (s.role) {
            case SlotRole::AncillaX: place(anc_x_); break;
            case SlotRole::AncillaZ: place(anc_z_); break;
            case SlotRole::Data:
                if (s.tag.size() == 2 && s.tag[0] == 'D' && s.tag[1] >= '1' && s.tag[1] <= '4') {
                    data_[static_cast<std::size_t>(s.tag[1] - '1')] = static_cast<long>(i);
                }
                break;
            default: break;
        }
    }
}

void ShotBatch::set_bit(std::size_t slot, std::size_t shot, bool v) {
    uint64_t& w = bits_[slot * words_ + (shot >> 6)];
    const uint64_t m = uint64_t{1} << (shot & 63);
    w = v ? (w | m) : (w & ~m);
}

std::optional<std::size_t> ShotBatch::find_slot(const std::string& tag) const {
    for (std::size_t i = 0; i < schema_.size(); ++i) {
        if (schema_[i].tag == tag) {
            return i;
        }
    }
    return std::nullopt;
}

long ShotBatch::ancilla_slot(Basis stabilizer, int n) const {
    const auto& v = stabilizer == Basis::X ? anc_x_ : anc_z_;
    if (n < 1 || static_cast<std::size_t>(n) > v.size()) {
        return -1;
    }
    return v[static_cast<std::size_t>(n - 1)];
}

long ShotBatch::data_slot(int k) const {
    if (k < 0 || k > 3) {
        return -1;
    }
    return data_[static_cast<std::size_t>(k)];
}

unsigned ShotBatch::data_bits(std::size_t shot) const {
    unsigned bits = 0;
    for (int k = 0; k < 4; ++k) {
        long s = data_[static_cast<std::size_t>(k)];
        if (s >= 0 && bit(static_cast<std::size_t>(s), shot)) {
            bits |= 1u << k;
        }
    }
    return bits;
}

RunRecord ShotBatch::record(std::size_t shot) const {
    if (shot >= shots_) {
        throw std::out_of_range("ShotBatch::record: shot out of range");
    }
    RunRecord r;
    r.shot = shot;
    r.cycles = readout_.cycles;
    for (long s : anc_x_) {
        r.d_x.push_back(s >= 0 ? bit(static_cast<std::size_t>(s), shot) : 0);
    }
    for (long s : anc_z_) {
        r.d_z.push_back(s >= 0 ? bit(static_cast<std::size_t>(s), shot) : 0);
    }
    r.has_data = data_[0] >= 0;
    r.data_bits = data_bits(shot);
    r.bases = readout_.data_bases;
    r.setting_id = readout_.setting_id;
    return r;
}

std::vector<uint8_t> ShotBatch::serialize() const {
    Writer w;
    w.bytes(kMagic, 4);
    w.u32(kVersion);
    w.u64(digest_);
    w.u64(seed_);
    w.u64(shots_);
    for (Basis b : readout_.data_bases) {
        w.u8(static_cast<uint8_t>(b));
    }
    w.u32(static_cast<uint32_t>(readout_.setting_id));
    w.u32(static_cast<uint32_t>(readout_.cycles));
    w.u32(static_cast<uint32_t>(schema_.size()));
    for (const auto& s : schema_) {
        w.u32(static_cast<uint32_t>(s.tag.size()));
        w.bytes(s.tag.data(), s.tag.size());
        w.u32(static_cast<uint32_t>(s.cycle));
        w.u32(static_cast<uint32_t>(s.element));
        w.u8(static_cast<uint8_t>(s.role));
    }
    for (uint64_t word : bits_) {
        w.u64(word);
    }
    return std::move(w.out);
}

ShotBatch ShotBatch::deserialize(const std::vector<uint8_t>& bytes) {
    Reader r(bytes);
    if (r.str(4) != std::string(kMagic, 4)) {
        throw std::runtime_error("ShotBatch: bad magic");
    }
    if (r.u32() != kVersion) {
        throw std::runtime_error("ShotBatch: unsupported version");
    }
    uint64_t digest = r.u64();
    uint64_t seed = r.u64();
    uint64_t shots = r.u64();
    ReadoutInfo ro;
    for (auto& b : ro.data_bases) {
        uint8_t v = r.u8();
        if (v > 2) {
            throw std::runtime_error("ShotBatch: bad basis code");
        }
        b = static_cast<Basis>(v);
    }
    ro.setting_id = static_cast<int32_t>(r.u32());
    ro.cycles = static_cast<int32_t>(r.u32());
    uint32_t slots = r.u32();
    std::vector<MeasurementSlot> schema;
    for (uint32_t i = 0; i < slots; ++i) {
        MeasurementSlot s;
        s.tag = r.str(r.u32());
        s.cycle = static_cast<int32_t>(r.u32());
        s.element = r.u32();
        uint8_t role = r.u8();
        if (role > 3) {
            throw std::runtime_error("ShotBatch: bad slot role");
        }
        s.role = static_cast<SlotRole>(role);
        schema.push_back(std::move(s));
    }
    ShotBatch batch(std::move(schema), ro, digest, seed, shots);
    for (auto& word : batch.bits_) {
        word = r.u64();
    }
    if (!r.done()) {
        throw std::runtime_error("ShotBatch: trailing bytes");
    }
    return batch;
}

void ShotBatch::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    auto bytes = serialize();
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

ShotBatch ShotBatch::read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize(bytes);
}

std::string ShotBatch::to_csv() const {
    std::ostringstream out;
    out << "# digest=" << digest_ << " seed=" << seed_ << " cycles=" << readout_.cycles
        << " setting=" << readout_.setting_id << " bases=";
    for (Basis b : readout_.data_bases) {
        out << basis_char(b);
    }
    out << "\n# slots";
    for (const auto& s : schema_) {
        out << " " << s.tag << ":" << s.cycle << ":" << s.element << ":" << static_cast<int>(s.role);
    }
    out << "\nshot";
    for (const auto& s : schema_) {
        out << "," << s.tag;
    }
    out << "\n";
    for (std::size_t i = 0; i < shots_; ++i) {
        out << i;
        for (std::size_t k = 0; k < schema_.size(); ++k) {
            out << "," << (bit(k, i) ? '1' : '0');
        }
        out << "\n";
    }
    return out.str();
}

ShotBatch ShotBatch::from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    uint64_t digest = 0;
    uint64_t seed = 0;
    ReadoutInfo ro;
    std::vector<MeasurementSlot> schema;
    std::vector<std::string> rows;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.rfind("# digest=", 0) == 0) {
            std::string bases;
            if (std::sscanf(line.c_str(), "# digest=%lu seed=%lu cycles=%d setting=%d", &digest, &seed, &ro.cycles,
                            &ro.setting_id) != 4) {
                throw std::runtime_error("ShotBatch CSV: bad header");
            }
            auto pos = line.find("bases=");
            if (pos == std::string::npos || line.size() < pos + 10) {
                throw std::runtime_error("ShotBatch CSV: missing bases");
            }
            for (int k = 0; k < 4; ++k) {
                ro.data_bases[static_cast<std::size_t>(k)] = basis_from_char(line[pos + 6 + static_cast<std::size_t>(k)]);
            }
        } else if (line.rfind("# slots", 0) == 0) {
            std::istringstream ss(line.substr(7));
            std::string item;
            while (ss >> item) {
                MeasurementSlot s;
                std::istringstream parts(item);
                std::string field;
                std::vector<std::string> f;
                while (std::getline(parts, field, ':')) {
                    f.push_back(field);
                }
                if (f.size() != 4) {
                    throw std::runtime_error("ShotBatch CSV: bad slot '" + item + "'");
                }
                s.tag = f[0];
                s.cycle = std::stoi(f[1]);
                s.element = std::stoul(f[2]);
                s.role = static_cast<SlotRole>(std::stoi(f[3]));
                schema.push_back(std::move(s));
            }
        } else if (!header_seen) {
            header_seen = true;
        } else if (!line.empty()) {
            rows.push_back(line);
        }
    }
    ShotBatch batch(std::move(schema), ro, digest, seed, rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto comma = rows[i].find(',');
        std::string bits = comma == std::string::npos ? "" : rows[i].substr(comma + 1);
        std::size_t k = 0;
        for (char c : bits) {
            if (c == '0' || c == '1') {
                if (k >= batch.num_slots()) {
                    throw std::runtime_error("ShotBatch CSV: too many columns");
                }
                batch.set_bit(k++, i, c == '1');
            }
        }
        if (k != batch.num_slots()) {
            throw std::runtime_error("ShotBatch CSV: wrong column count");
        }
    }
    return batch;
}

bool ShotBatch::operator==(const ShotBatch& other) const {
    return schema_ == other.schema_ && readout_ == other.readout_ && digest_ == other.digest_ &&
           seed_ == other.seed_ && shots_ == other.shots_ && bits_ == other.bits_;
}

}  // namespace starqed
