/*
 * Copyright 2026 The RLBL Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "rlbl/snapshot.h"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "rlbl/errors.h"

namespace rlbl {
namespace {

constexpr char kMagic[8] = {'R', 'L', 'B', 'L', 'S', 'N', 'A', 'P'};
constexpr uint32_t kVersion = 1;
// Guards allocation sizes read from untrusted input.
constexpr uint64_t kMaxCount = uint64_t{1} << 32;

class Writer {
 public:
  void bytes(const void* p, size_t n) {
    out_.append(static_cast<const char*>(p), n);
  }
  template <typename T>
  void le(T value) {
    static_assert(std::endian::native == std::endian::little,
                  "snapshot writer assumes a little-endian host");
    bytes(&value, sizeof(T));
  }
  void u32(uint32_t v) { le(v); }
  void u64(uint64_t v) { le(v); }
  void f64(double v) { le(v); }
  void str(const std::string& s) {
    u64(s.size());
    bytes(s.data(), s.size());
  }
  void values(std::span<const double> vs) {
    for (double v : vs) f64(v);
  }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(const std::string& in) : in_(in) {}

  void bytes(void* p, size_t n) {
    if (n > in_.size() - pos_) throw SnapshotError("truncated snapshot");
    std::memcpy(p, in_.data() + pos_, n);
    pos_ += n;
  }
  template <typename T>
  T le() {
    T v;
    bytes(&v, sizeof(T));
    return v;
  }
  uint32_t u32() { return le<uint32_t>(); }
  uint64_t u64() { return le<uint64_t>(); }
  double f64() { return le<double>(); }
  uint64_t count() {
    const uint64_t n = u64();
    if (n > kMaxCount) throw SnapshotError("implausible count in snapshot");
    return n;
  }
  std::string str() {
    const uint64_t n = count();
    std::string s(n, '\0');
    bytes(s.data(), n);
    return s;
  }
  void values(std::span<double> vs) {
    for (double& v : vs) v = f64();
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  const std::string& in_;
  size_t pos_ = 0;
};

void write_strings(Writer& w, const std::vector<std::string>& v) {
  w.u64(v.size());
  for (const auto& s : v) w.str(s);
}

std::vector<std::string> read_strings(Reader& r) {
  std::vector<std::string> v(r.count());
  for (auto& s : v) s = r.str();
  return v;
}

void write_core_dims(Writer& w, const CoreParams& c) {
  w.u64(c.d);
  w.u64(c.n);
  w.u64(c.n_users());
  w.u64(c.n_items());
  w.u64(c.n_behaviors());
}

void write_mats(Writer& w, const std::vector<Mat>& ms) {
  for (const Mat& m : ms) w.values(m.values());
}

struct CoreDims {
  uint64_t d, n, users, items, behaviors;
};

CoreDims read_core_dims(Reader& r) {
  CoreDims c{r.count(), r.count(), r.count(), r.count(), r.count()};
  if (c.d == 0 || c.n == 0 || c.behaviors == 0 || c.d > 4096) {
    throw SnapshotError("invalid model dimensions");
  }
  return c;
}

std::vector<Vec> read_vecs(Reader& r, uint64_t count, uint64_t d) {
  std::vector<Vec> out;
  out.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    Vec v(d);
    r.values(v.values());
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Mat> read_mats(Reader& r, uint64_t count, uint64_t d) {
  std::vector<Mat> out;
  out.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    Mat m(d, d);
    r.values(m.values());
    out.push_back(std::move(m));
  }
  return out;
}

void write_vecs(Writer& w, const std::vector<Vec>& vs) {
  for (const Vec& v : vs) w.values(v.values());
}

}  // namespace

const char* model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kRlbl:
      return "rlbl";
    case ModelKind::kTaRlbl:
      return "ta-rlbl";
    case ModelKind::kPop:
      return "pop";
    case ModelKind::kMarkov:
      return "markov";
    case ModelKind::kLinearRnn:
      return "linear-rnn";
  }
  return "unknown";
}

ModelKind parse_model_kind(const std::string& name) {
  for (ModelKind k : {ModelKind::kRlbl, ModelKind::kTaRlbl, ModelKind::kPop,
                      ModelKind::kMarkov, ModelKind::kLinearRnn}) {
    if (name == model_kind_name(k)) return k;
  }
  throw ConfigError("unknown model kind '" + name + "'");
}

Vocabulary Vocabulary::Of(const Corpus& corpus) {
  return Vocabulary{corpus.user_ids(), corpus.item_ids(),
                    corpus.behavior_labels()};
}

std::string serialize_snapshot(const Snapshot& s) {
  Writer w;
  w.bytes(kMagic, sizeof(kMagic));
  w.u32(kVersion);
  w.u32(static_cast<uint32_t>(s.kind));
  write_strings(w, s.vocab.users);
  write_strings(w, s.vocab.items);
  write_strings(w, s.vocab.behaviors);

  if (const auto* p = std::get_if<RlblParams>(&s.model)) {
    write_core_dims(w, p->core);
    write_vecs(w, p->core.user_vecs);
    write_vecs(w, p->core.item_vecs);
    w.values(p->core.W.values());
    write_mats(w, p->C);
    write_mats(w, p->core.M);
    w.values(p->core.u0.values());
  } else if (const auto* p = std::get_if<TaRlblParams>(&s.model)) {
    write_core_dims(w, p->core);
    w.f64(p->grid.bin_width);
    w.u64(p->grid.n_bins);
    write_vecs(w, p->core.user_vecs);
    write_vecs(w, p->core.item_vecs);
    w.values(p->core.W.values());
    write_mats(w, p->grid.boundary_mats);
    write_mats(w, p->core.M);
    w.values(p->core.u0.values());
  } else if (const auto* p = std::get_if<PopModel>(&s.model)) {
    w.u64(p->item_counts.size());
    w.values(p->item_counts);
  } else if (const auto* p = std::get_if<MarkovModel>(&s.model)) {
    w.u64(p->rows.size());
    w.values(p->fallback);
    for (const auto& row : p->rows) {
      w.u64(row.size());
      for (const auto& [item, prob] : row) {
        w.u64(item);
        w.f64(prob);
      }
    }
  }
  return w.take();
}

Snapshot deserialize_snapshot(const std::string& bytes) {
  Reader r(bytes);
  char magic[sizeof(kMagic)];
  r.bytes(magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw SnapshotError("not a snapshot file");
  }
  if (r.u32() != kVersion) throw SnapshotError("unsupported snapshot version");
  const uint32_t kind = r.u32();
  if (kind < 1 || kind > 5) throw SnapshotError("unknown model kind tag");

  Snapshot s;
  s.kind = static_cast<ModelKind>(kind);
  s.vocab.users = read_strings(r);
  s.vocab.items = read_strings(r);
  s.vocab.behaviors = read_strings(r);

  switch (s.kind) {
    case ModelKind::kRlbl:
    case ModelKind::kLinearRnn: {
      const CoreDims dims = read_core_dims(r);
      RlblParams p;
      p.core.d = dims.d;
      p.core.n = dims.n;
      p.core.user_vecs = read_vecs(r, dims.users, dims.d);
      p.core.item_vecs = read_vecs(r, dims.items, dims.d);
      p.core.W = Mat(dims.d, dims.d);
      r.values(p.core.W.values());
      p.C = read_mats(r, dims.n, dims.d);
      p.core.M = read_mats(r, dims.behaviors, dims.d);
      p.core.u0 = Vec(dims.d);
      r.values(p.core.u0.values());
      s.model = std::move(p);
      break;
    }
    case ModelKind::kTaRlbl: {
      const CoreDims dims = read_core_dims(r);
      TaRlblParams p;
      p.core.d = dims.d;
      p.core.n = dims.n;
      p.grid.bin_width = r.f64();
      p.grid.n_bins = r.count();
      p.core.user_vecs = read_vecs(r, dims.users, dims.d);
      p.core.item_vecs = read_vecs(r, dims.items, dims.d);
      p.core.W = Mat(dims.d, dims.d);
      r.values(p.core.W.values());
      p.grid.boundary_mats = read_mats(r, p.grid.n_bins + 1, dims.d);
      p.core.M = read_mats(r, dims.behaviors, dims.d);
      p.core.u0 = Vec(dims.d);
      r.values(p.core.u0.values());
      try {
        p.grid.validate();
      } catch (const ConfigError& e) {
        throw SnapshotError(e.what());
      }
      s.model = std::move(p);
      break;
    }
    case ModelKind::kPop: {
      PopModel p;
      p.item_counts.resize(r.count());
      r.values(p.item_counts);
      s.model = std::move(p);
      break;
    }
    case ModelKind::kMarkov: {
      MarkovModel p;
      const uint64_t n = r.count();
      p.fallback.resize(n);
      r.values(p.fallback);
      p.rows.resize(n);
      for (auto& row : p.rows) {
        const uint64_t entries = r.count();
        for (uint64_t e = 0; e < entries; ++e) {
          const uint64_t item = r.u64();
          if (item >= n) throw SnapshotError("markov entry out of range");
          row[item] = r.f64();
        }
      }
      s.model = std::move(p);
      break;
    }
  }
  if (!r.done()) throw SnapshotError("trailing bytes after snapshot");
  return s;
}

void save_snapshot(const std::string& path, const Snapshot& snapshot) {
  const std::string bytes = serialize_snapshot(snapshot);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for '" + path + "'");
}

Snapshot load_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_snapshot(buf.str());
}

void check_compatible(const Snapshot& snapshot, const Corpus& corpus) {
  if (!(snapshot.vocab == Vocabulary::Of(corpus))) {
    throw SnapshotError(
        "snapshot vocabulary (" + std::to_string(snapshot.vocab.users.size()) +
        " users, " + std::to_string(snapshot.vocab.items.size()) +
        " items) does not match the corpus (" +
        std::to_string(corpus.n_users()) + " users, " +
        std::to_string(corpus.n_items()) + " items)");
  }
}

}  // namespace rlbl
