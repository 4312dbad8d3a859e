#pragma once

// Benchmark harness: instance loading, repeated timing of both algorithms,
// CSV output, and the asymptotic cost-model calculators.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <new>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "bmssp/bmssp.hpp"
#include "bmssp/dijkstra.hpp"
#include "bmssp/dimacs.hpp"
#include "bmssp/distance_state.hpp"
#include "bmssp/generator.hpp"

namespace bmssp::bench {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GraphSource {
  enum class Kind { dimacs_file, generated };

  Kind kind = Kind::generated;
  std::string name;
  std::optional<std::uint64_t> seed;            // generated only
  std::optional<std::filesystem::path> path;    // dimacs_file only
  std::size_t n = 0;                            // generated only
  std::uint64_t max_weight = GeneratorOptions::kDefaultMaxWeight;

  static GraphSource dimacs(std::filesystem::path file, std::string label = {}) {
    GraphSource s;
    s.kind = Kind::dimacs_file;
    s.name = label.empty() ? file.filename().string() : std::move(label);
    s.path = std::move(file);
    return s;
  }

  static GraphSource generated(std::size_t n, std::uint64_t seed,
                               std::uint64_t max_weight = GeneratorOptions::kDefaultMaxWeight) {
    GraphSource s;
    s.kind = Kind::generated;
    s.name = "random-n" + std::to_string(n) + "-s" + std::to_string(seed);
    s.seed = seed;
    s.n = n;
    s.max_weight = max_weight;
    return s;
  }

  Graph<std::uint64_t> load() const {
    if (kind == Kind::generated) return generate_sparse_random(n, seed.value_or(0), max_weight);
    std::ifstream in(*path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path->string());
    return parse_dimacs(in);
  }
};

enum class RecordStatus { ok, checksum_mismatch, load_failed, out_of_memory };

inline std::string_view to_string(RecordStatus s) {
  switch (s) {
    case RecordStatus::ok: return "ok";
    case RecordStatus::checksum_mismatch: return "checksum mismatch";
    case RecordStatus::load_failed: return "load failed";
    case RecordStatus::out_of_memory: return "out of memory";
  }
  return "unknown";
}

struct BenchRecord {
  std::string instance;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  double time_dijkstra_ms = 0;
  double time_bmssp_ms = 0;
  double ratio = 0;  // time_bmssp_ms / time_dijkstra_ms, rounded to 3 decimals
  std::uint32_t repetitions = 0;
  std::uint64_t checksum = 0;
  RecordStatus status = RecordStatus::ok;
  std::string error;

  bool valid() const noexcept { return status == RecordStatus::ok; }
  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

struct BenchOptions {
  std::uint32_t repetitions = 5;
  std::uint64_t source = 1;
  bool warm_up = false;
};

inline double round3(double x) { return std::round(x * 1000.0) / 1000.0; }

/// Arithmetic mean wall time in milliseconds of `repetitions` calls of fn.
template <class Clock = std::chrono::steady_clock, class Fn>
double mean_time_ms(std::uint32_t repetitions, Fn&& fn) {
  if (repetitions == 0) throw std::invalid_argument("repetitions must be >= 1");
  double total = 0;
  for (std::uint32_t r = 0; r < repetitions; ++r) {
    auto start = Clock::now();
    fn();
    auto stop = Clock::now();
    total += std::chrono::duration<double, std::milli>(stop - start).count();
  }
  return total / repetitions;
}

/// Times both algorithms on one loaded graph. Runs alternate between the two
/// algorithms; only the algorithm call is inside the timed region.
template <class Clock = std::chrono::steady_clock>
BenchRecord benchmark_graph(const Graph<std::uint64_t>& graph, std::string instance, const BenchOptions& options) {
  if (options.repetitions == 0) throw std::invalid_argument("repetitions must be >= 1");
  BenchRecord rec;
  rec.instance = std::move(instance);
  rec.n = graph.vertex_count();
  rec.m = graph.edge_count();
  rec.repetitions = options.repetitions;

  std::optional<std::uint64_t> dijkstra_sum;
  std::optional<std::uint64_t> bmssp_sum;
  if (options.warm_up) {
    (void)dijkstra(graph, options.source);
    (void)sssp(graph, options.source);
  }
  double dijkstra_total = 0;
  double bmssp_total = 0;
  for (std::uint32_t r = 0; r < options.repetitions; ++r) {
    DistanceState<std::uint64_t> out;
    dijkstra_total += mean_time_ms<Clock>(1, [&] { out = dijkstra(graph, options.source); });
    if (!dijkstra_sum) dijkstra_sum = distance_checksum(out);
    bmssp_total += mean_time_ms<Clock>(1, [&] { out = sssp(graph, options.source); });
    if (!bmssp_sum) bmssp_sum = distance_checksum(out);
  }
  rec.time_dijkstra_ms = dijkstra_total / options.repetitions;
  rec.time_bmssp_ms = bmssp_total / options.repetitions;
  rec.ratio = rec.time_dijkstra_ms > 0 ? round3(rec.time_bmssp_ms / rec.time_dijkstra_ms) : 0;
  rec.checksum = *dijkstra_sum;
  if (*dijkstra_sum != *bmssp_sum) {
    rec.status = RecordStatus::checksum_mismatch;
    rec.error = "dijkstra checksum " + std::to_string(*dijkstra_sum) + " != bmssp checksum " + std::to_string(*bmssp_sum);
  }
  return rec;
}

/// One record per source, in order. Load failures and allocation failures
/// are recorded on that instance and the batch continues.
template <class Clock = std::chrono::steady_clock>
std::vector<BenchRecord> run_benchmark(std::span<const GraphSource> sources, const BenchOptions& options,
                                       std::ostream* progress = nullptr) {
  if (options.repetitions == 0) throw std::invalid_argument("repetitions must be >= 1");
  std::vector<BenchRecord> records;
  for (const auto& src : sources) {
    BenchRecord rec;
    try {
      auto graph = src.load();
      rec = benchmark_graph<Clock>(graph, src.name, options);
    } catch (const std::bad_alloc&) {
      rec = BenchRecord{};
      rec.instance = src.name;
      rec.repetitions = options.repetitions;
      rec.status = RecordStatus::out_of_memory;
      rec.error = "out of memory";
    } catch (const std::exception& e) {
      rec = BenchRecord{};
      rec.instance = src.name;
      rec.repetitions = options.repetitions;
      rec.status = RecordStatus::load_failed;
      rec.error = e.what();
    }
    if (progress) {
      *progress << rec.instance << ": n=" << rec.n << " m=" << rec.m << " dijkstra=" << rec.time_dijkstra_ms
                << "ms bmssp=" << rec.time_bmssp_ms << "ms ratio=" << rec.ratio;
      if (!rec.valid()) *progress << " [" << to_string(rec.status) << ": " << rec.error << ']';
      *progress << '\n';
    }
    records.push_back(std::move(rec));
  }
  return records;
}

/// Predicted BMSSP/Dijkstra time ratio from the cost models n log^{2/3} n and
/// n log n: (log2 n)^(-1/3).
inline double theoretical_ratio(double n) {
  if (!(n >= 2)) throw std::invalid_argument("theoretical_ratio requires n >= 2");
  return 1.0 / std::cbrt(std::log2(n));
}

/// Smallest n with (log2 n)^(1/3) > c, i.e. floor(2^(c^3)) + 1.
struct Threshold {
  double c_ratio = 0;
  double log2_floor_part = 0;          // c^3; n0 = floor(2^this) + 1
  std::optional<std::uint64_t> exact;  // when n0 fits in 64 bits
  double log10_n0 = 0;

  /// "1.34e8" style rendering of n0.
  std::string order_of_magnitude() const {
    const double exponent = std::floor(log10_n0);
    const double mantissa = std::pow(10.0, log10_n0 - exponent);
    std::ostringstream os;
    os.precision(3);
    os << mantissa << "e" << static_cast<long long>(exponent);
    return os.str();
  }
};

inline Threshold crossover_threshold(double c_ratio) {
  if (!(c_ratio > 0) || !std::isfinite(c_ratio)) throw std::invalid_argument("c_ratio must be a positive finite number");
  Threshold th;
  th.c_ratio = c_ratio;
  th.log2_floor_part = c_ratio * c_ratio * c_ratio;
  const double e = th.log2_floor_part;
  if (e < 63) {
    const double whole = std::floor(e);
    std::uint64_t power = std::uint64_t{1} << static_cast<unsigned>(whole);
    std::uint64_t base = e == whole ? power : static_cast<std::uint64_t>(std::floor(std::exp2l(static_cast<long double>(e))));
    th.exact = base + 1;
    th.log10_n0 = std::log10(static_cast<double>(*th.exact));
  } else {
    // The +1 is far below double resolution here.
    th.log10_n0 = e * std::log10(2.0);
  }
  return th;
}

namespace detail {

inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

inline std::string format_fixed3(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 3);
  return std::string(buf, ptr);
}

inline std::string csv_quote(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::vector<std::string> csv_split(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

template <class T>
T parse_number(const std::string& field, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw IoError("csv line " + std::to_string(line) + ": malformed number '" + field + "'");
  }
  return value;
}

}  // namespace detail

inline constexpr std::string_view kCsvHeader = "instance,n,m,time_dijkstra_ms,time_bmssp_ms,ratio,repetitions,checksum";

/// Writes the header and one row per valid record. Records flagged invalid
/// are skipped. Throws IoError if the stream fails.
inline void emit_csv(std::span<const BenchRecord> records, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    if (!r.valid()) continue;
    out << detail::csv_quote(r.instance) << ',' << r.n << ',' << r.m << ',' << detail::format_double(r.time_dijkstra_ms) << ','
        << detail::format_double(r.time_bmssp_ms) << ',' << detail::format_fixed3(r.ratio) << ',' << r.repetitions << ','
        << r.checksum << '\n';
  }
  out.flush();
  if (!out) throw IoError("failed writing CSV output");
}

inline std::vector<BenchRecord> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw IoError("csv: unexpected header '" + line + "'");
  std::vector<BenchRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto f = detail::csv_split(line);
    if (f.size() != 8) throw IoError("csv line " + std::to_string(line_no) + ": expected 8 fields");
    BenchRecord r;
    r.instance = f[0];
    r.n = detail::parse_number<std::uint64_t>(f[1], line_no);
    r.m = detail::parse_number<std::uint64_t>(f[2], line_no);
    r.time_dijkstra_ms = detail::parse_number<double>(f[3], line_no);
    r.time_bmssp_ms = detail::parse_number<double>(f[4], line_no);
    r.ratio = detail::parse_number<double>(f[5], line_no);
    r.repetitions = detail::parse_number<std::uint32_t>(f[6], line_no);
    r.checksum = detail::parse_number<std::uint64_t>(f[7], line_no);
    records.push_back(std::move(r));
  }
  return records;
}

/// Rows (n, theoretical_ratio(n)) for n = 2^p_min .. 2^p_max.
inline void emit_ratio_curve(unsigned p_min, unsigned p_max, std::ostream& out) {
  if (p_min < 1 || p_min > p_max || p_max > 62) throw std::invalid_argument("ratio curve requires 1 <= p_min <= p_max <= 62");
  out << "n,theoretical_ratio\n";
  for (unsigned p = p_min; p <= p_max; ++p) {
    const std::uint64_t n = std::uint64_t{1} << p;
    out << n << ',' << detail::format_double(theoretical_ratio(static_cast<double>(n))) << '\n';
  }
  out.flush();
  if (!out) throw IoError("failed writing CSV output");
}

}  // namespace bmssp::bench
