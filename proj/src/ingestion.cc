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

#include "rlbl/ingestion.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "rlbl/errors.h"

namespace rlbl {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed for '" + path + "'");
  return buf.str();
}

// Calls fn(line_number, line) for every non-empty line; returns the count.
template <typename Fn>
size_t for_each_line(std::string_view text, Fn&& fn) {
  size_t line_no = 0;
  size_t non_empty = 0;
  while (!text.empty()) {
    const size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    ++non_empty;
    fn(line_no, line);
  }
  return non_empty;
}

std::vector<std::string_view> split(std::string_view line,
                                    std::string_view delim) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + delim.size();
  }
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

void enforce_malformed_budget(const ParseResult& r, size_t lines) {
  if (lines == 0 || r.malformed.empty()) return;
  const double frac = double(r.malformed.size()) / double(lines);
  if (frac > kMaxMalformedFraction) {
    const LineError& first = r.malformed.front();
    throw FormatError(std::to_string(r.malformed.size()) + " of " +
                      std::to_string(lines) + " lines malformed (first: line " +
                      std::to_string(first.line) + ": " + first.reason + ")");
  }
}

}  // namespace

ParseResult parse_movielens_text(std::string_view text) {
  ParseResult result;
  for (int r = 1; r <= 5; ++r) result.behavior_labels.push_back(std::to_string(r));
  const size_t lines = for_each_line(text, [&](size_t no, std::string_view line) {
    const auto fields = split(line, "::");
    if (fields.size() != 4) {
      result.malformed.push_back({no, "expected 4 '::'-separated fields"});
      return;
    }
    int rating = 0;
    Timestamp ts = 0;
    if (fields[0].empty() || fields[1].empty()) {
      result.malformed.push_back({no, "empty user or item id"});
    } else if (!parse_int(fields[2], rating) || rating < 1 || rating > 5) {
      result.malformed.push_back({no, "rating must be an integer in 1..5"});
    } else if (!parse_int(fields[3], ts) || ts < 0) {
      result.malformed.push_back({no, "timestamp must be a non-negative integer"});
    } else {
      result.events.push_back(RawEvent{std::string(fields[0]),
                                       std::string(fields[1]),
                                       static_cast<size_t>(rating - 1), ts});
    }
  });
  enforce_malformed_budget(result, lines);
  return result;
}

ParseResult parse_movielens(const std::string& path) {
  return parse_movielens_text(read_file(path));
}

ParseResult parse_generic_text(std::string_view text,
                               const GenericFormat& format,
                               const std::vector<std::string>& behavior_map) {
  if (format.time_scale <= 0) throw ConfigError("time_scale must be positive");
  const size_t needed = std::max({format.user_col, format.item_col,
                                  format.behavior_col, format.time_col}) + 1;
  ParseResult result;
  result.behavior_labels = behavior_map;
  bool header_pending = format.header;
  const std::string delim(1, format.delimiter);
  size_t max_id = 0;

  const size_t lines = for_each_line(text, [&](size_t no, std::string_view line) {
    if (header_pending) {
      header_pending = false;
      return;
    }
    const auto fields = split(line, delim);
    if (fields.size() < needed) {
      result.malformed.push_back({no, "expected at least " +
                                          std::to_string(needed) + " fields"});
      return;
    }
    const auto user = fields[format.user_col];
    const auto item = fields[format.item_col];
    const auto label = fields[format.behavior_col];
    Timestamp raw_ts = 0;
    if (user.empty() || item.empty() || label.empty()) {
      result.malformed.push_back({no, "empty field"});
      return;
    }
    if (!parse_int(fields[format.time_col], raw_ts) || raw_ts < 0 ||
        raw_ts > std::numeric_limits<Timestamp>::max() / format.time_scale) {
      result.malformed.push_back({no, "timestamp must be a non-negative integer"});
      return;
    }

    size_t behavior = 0;
    if (behavior_map.empty()) {
      if (!parse_int(label, behavior)) {
        result.malformed.push_back({no, "behavior id must be an integer"});
        return;
      }
      max_id = std::max(max_id, behavior);
    } else {
      auto it = std::find(behavior_map.begin(), behavior_map.end(), label);
      if (it == behavior_map.end()) {
        if (format.strict) {
          throw FormatError("line " + std::to_string(no) +
                            ": unknown behavior '" + std::string(label) + "'");
        }
        ++result.skipped_unknown_behavior;
        return;
      }
      behavior = static_cast<size_t>(it - behavior_map.begin());
    }
    result.events.push_back(RawEvent{std::string(user), std::string(item),
                                     behavior, raw_ts * format.time_scale});
  });
  if (behavior_map.empty() && !result.events.empty()) {
    for (size_t b = 0; b <= max_id; ++b) {
      result.behavior_labels.push_back(std::to_string(b));
    }
  }
  enforce_malformed_budget(result, lines);
  return result;
}

ParseResult parse_generic(const std::string& path, const GenericFormat& format,
                          const std::vector<std::string>& behavior_map) {
  return parse_generic_text(read_file(path), format, behavior_map);
}

std::string format_generic(const std::vector<RawEvent>& events, char delimiter,
                           const std::vector<std::string>& behavior_map) {
  auto check = [delimiter](const std::string& field) {
    if (field.empty() || field.find(delimiter) != std::string::npos ||
        field.find('\n') != std::string::npos ||
        field.find('\r') != std::string::npos) {
      throw FormatError("field '" + field +
                        "' is empty or contains a delimiter or line break");
    }
  };
  std::string out;
  for (const RawEvent& e : events) {
    check(e.user);
    check(e.item);
    std::string label;
    if (behavior_map.empty()) {
      label = std::to_string(e.behavior_id);
    } else {
      if (e.behavior_id >= behavior_map.size()) {
        throw FormatError("behavior id without label");
      }
      label = behavior_map[e.behavior_id];
    }
    check(label);
    out += e.user;
    out += delimiter;
    out += e.item;
    out += delimiter;
    out += label;
    out += delimiter;
    out += std::to_string(e.timestamp);
    out += '\n';
  }
  return out;
}

void write_generic(const std::string& path, const std::vector<RawEvent>& events,
                   char delimiter, const std::vector<std::string>& behavior_map) {
  const std::string text = format_generic(events, delimiter, behavior_map);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

void SynthSpec::validate() const {
  if (n_users < 1 || n_items < 1 || n_behaviors < 1) {
    throw ConfigError("synthetic counts must be >= 1");
  }
  if (min_len < 1 || min_len > max_len) {
    throw ConfigError("synthetic length range must satisfy 1 <= min <= max");
  }
  if (!(markov_strength >= 0.0 && markov_strength <= 1.0)) {
    throw ConfigError("markov_strength must lie in [0,1]");
  }
  for (double p : behavior_flip_prob) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ConfigError("behavior_flip_prob entries must lie in [0,1]");
    }
  }
  if (behavior_flip_prob.size() > n_behaviors) {
    throw ConfigError("more flip probabilities than behaviors");
  }
  if (!(gap_mean_seconds >= 0.0)) throw ConfigError("gap mean must be >= 0");
  if (start_time < 0) throw ConfigError("start_time must be >= 0");
}

std::vector<size_t> planted_successors(const SynthSpec& spec) {
  std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<size_t> order(spec.n_items);
  std::iota(order.begin(), order.end(), size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<size_t> succ(spec.n_items);
  if (spec.cycle_period == 0) {
    for (size_t i = 0; i < spec.n_items; ++i) succ[i] = order[i];
    return succ;
  }
  for (size_t start = 0; start < spec.n_items; start += spec.cycle_period) {
    const size_t end = std::min(spec.n_items, start + spec.cycle_period);
    for (size_t j = start; j < end; ++j) {
      succ[order[j]] = order[j + 1 < end ? j + 1 : start];
    }
  }
  return succ;
}

std::vector<RawEvent> generate_synthetic(const SynthSpec& spec) {
  spec.validate();
  const std::vector<size_t> succ = planted_successors(spec);
  std::vector<size_t> pred(succ.size());
  for (size_t i = 0; i < succ.size(); ++i) pred[succ[i]] = i;

  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<size_t> len_dist(spec.min_len, spec.max_len);
  std::uniform_int_distribution<size_t> item_dist(0, spec.n_items - 1);
  std::uniform_int_distribution<size_t> behavior_dist(0, spec.n_behaviors - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> gap_dist(
      spec.gap_mean_seconds > 0.0 ? 1.0 / spec.gap_mean_seconds : 1.0);
  auto flip_prob = [&](size_t b) {
    return b < spec.behavior_flip_prob.size() ? spec.behavior_flip_prob[b]
                                              : 0.0;
  };

  std::vector<RawEvent> events;
  for (size_t u = 0; u < spec.n_users; ++u) {
    const size_t len = len_dist(rng);
    Timestamp t = spec.start_time;
    size_t item = item_dist(rng);
    size_t behavior = behavior_dist(rng);
    for (size_t j = 0; j < len; ++j) {
      if (j > 0) {
        const bool flipped = unit(rng) < flip_prob(behavior);
        if (unit(rng) < spec.markov_strength) {
          item = flipped ? pred[item] : succ[item];
        } else {
          item = item_dist(rng);
        }
        behavior = behavior_dist(rng);
        if (spec.gap_mean_seconds > 0.0) {
          t += static_cast<Timestamp>(std::llround(gap_dist(rng)));
        }
      }
      events.push_back(RawEvent{"u" + std::to_string(u),
                                "i" + std::to_string(item), behavior, t});
    }
  }
  return events;
}

}  // namespace rlbl
