#pragma once

// File formats: the "SDFT" binary array container, CSV text, ThetaKey JSON,
// scramble payloads and graph spectrum reports.
//
// Binary layout (all little-endian):
//   'S' 'D' 'F' 'T' | version=1 | dtype (0 real f64, 1 complex f64) | ndim (1|2) | 0
//   ndim x u64 dimensions | payload f64 (complex interleaved re, im)
// Scramble payloads append one u64 holding the original N.

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "sdft/apps.hpp"
#include "sdft/graph_lab.hpp"

namespace sdft::io {

enum class DType : std::uint8_t { real = 0, complex = 1 };

struct ArrayFile {
  DType dtype = DType::real;
  std::vector<std::uint64_t> dims;
  std::vector<cplx> values;  // row-major; real arrays carry zero imaginary parts

  std::size_t ndim() const { return dims.size(); }
};

inline constexpr std::array<std::uint8_t, 4> kMagic{0x53, 0x44, 0x46, 0x54};
inline constexpr std::uint8_t kVersion = 1;

namespace detail {

inline void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline std::uint64_t get_u64(std::string_view in, std::size_t offset) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(in[offset + i])) << (8 * i);
  }
  return v;
}

inline void put_f64(std::string& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }
inline double get_f64(std::string_view in, std::size_t offset) {
  return std::bit_cast<double>(get_u64(in, offset));
}

[[noreturn]] inline void fail(const std::string& msg) { throw Error(ErrorKind::format, msg); }

inline std::size_t header_size(std::size_t ndim) { return 8 + 8 * ndim; }

}  // namespace detail

inline bool all_real(std::span<const cplx> values) {
  return std::all_of(values.begin(), values.end(), [](const cplx& v) { return v.imag() == 0.0; });
}

inline std::string encode_array(const ArrayFile& a) {
  if (a.dims.empty() || a.dims.size() > 2) detail::fail("binary array must have 1 or 2 dimensions");
  std::uint64_t count = 1;
  for (auto d : a.dims) count *= d;
  if (count != a.values.size()) detail::fail("binary array dimensions do not match value count");
  std::string out;
  out.reserve(detail::header_size(a.ndim()) + a.values.size() * 16);
  for (auto b : kMagic) out.push_back(static_cast<char>(b));
  out.push_back(static_cast<char>(kVersion));
  out.push_back(static_cast<char>(a.dtype));
  out.push_back(static_cast<char>(a.dims.size()));
  out.push_back(0);
  for (auto d : a.dims) detail::put_u64(out, d);
  for (const cplx& v : a.values) {
    detail::put_f64(out, v.real());
    if (a.dtype == DType::complex) detail::put_f64(out, v.imag());
  }
  return out;
}

/// Decodes one array; `consumed` receives the number of bytes used.
inline ArrayFile decode_array(std::string_view bytes, std::size_t* consumed = nullptr) {
  if (bytes.size() < 8) detail::fail("binary array: truncated header");
  for (std::size_t i = 0; i < 4; ++i) {
    if (static_cast<std::uint8_t>(bytes[i]) != kMagic[i]) detail::fail("binary array: bad magic");
  }
  if (static_cast<std::uint8_t>(bytes[4]) != kVersion) detail::fail("binary array: unsupported version");
  const auto dtype = static_cast<std::uint8_t>(bytes[5]);
  const auto ndim = static_cast<std::uint8_t>(bytes[6]);
  if (dtype > 1) detail::fail("binary array: unknown dtype");
  if (ndim < 1 || ndim > 2) detail::fail("binary array: ndim must be 1 or 2");
  if (bytes[7] != 0) detail::fail("binary array: nonzero pad byte");
  if (bytes.size() < detail::header_size(ndim)) detail::fail("binary array: truncated dimensions");
  ArrayFile a;
  a.dtype = static_cast<DType>(dtype);
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < ndim; ++i) {
    const std::uint64_t d = detail::get_u64(bytes, 8 + 8 * i);
    if (d == 0 || d > (std::uint64_t{1} << 32)) detail::fail("binary array: bad dimension");
    a.dims.push_back(d);
    count *= d;
  }
  const std::size_t width = a.dtype == DType::complex ? 16 : 8;
  const std::size_t header = detail::header_size(ndim);
  if (count > (bytes.size() - header) / width) detail::fail("binary array: truncated payload");
  a.values.resize(count);
  std::size_t off = header;
  for (std::size_t i = 0; i < count; ++i) {
    const double re = detail::get_f64(bytes, off);
    off += 8;
    double im = 0.0;
    if (a.dtype == DType::complex) {
      im = detail::get_f64(bytes, off);
      off += 8;
    }
    a.values[i] = {re, im};
  }
  if (consumed) {
    *consumed = off;
  } else if (off != bytes.size()) {
    detail::fail("binary array: trailing bytes");
  }
  return a;
}

// ---------------------------------------------------------------------------
// CSV
//
// 1D: one sample per line, "v" (real) or "re,im" (complex).
// 2D: one grid row per line, N values (real) or 2N interleaved re,im values.

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::vector<std::vector<double>> parse_csv_numbers(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    std::vector<double> fields;
    std::size_t fpos = 0;
    while (true) {
      std::size_t comma = line.find(',', fpos);
      std::string field(line.substr(fpos, comma == std::string_view::npos ? line.size() - fpos : comma - fpos));
      const auto first = field.find_first_not_of(" \t");
      const auto last = field.find_last_not_of(" \t");
      if (first == std::string::npos) fail("CSV line " + std::to_string(line_no) + ": empty field");
      field = field.substr(first, last - first + 1);
      char* stop = nullptr;
      const double v = std::strtod(field.c_str(), &stop);
      if (stop != field.c_str() + field.size() || !std::isfinite(v)) {
        fail("CSV line " + std::to_string(line_no) + ": not a finite number: '" + field + "'");
      }
      fields.push_back(v);
      if (comma == std::string_view::npos) break;
      fpos = comma + 1;
    }
    rows.push_back(std::move(fields));
    if (end == text.size()) break;
  }
  return rows;
}

}  // namespace detail

inline ArrayFile parse_csv(std::string_view text, int dim) {
  const auto rows = detail::parse_csv_numbers(text);
  if (rows.empty()) detail::fail("CSV: no data");
  ArrayFile a;
  if (dim == 1) {
    const std::size_t width = rows.front().size();
    if (width != 1 && width != 2) detail::fail("CSV 1D: expected 1 or 2 fields per line");
    a.dtype = width == 2 ? DType::complex : DType::real;
    a.dims = {rows.size()};
    for (const auto& r : rows) {
      if (r.size() != width) detail::fail("CSV 1D: inconsistent field count");
      a.values.push_back(width == 2 ? cplx{r[0], r[1]} : cplx{r[0], 0.0});
    }
    return a;
  }
  if (dim != 2) detail::fail("CSV: dim must be 1 or 2");
  const std::size_t n = rows.size();
  const std::size_t width = rows.front().size();
  if (width != n && width != 2 * n) detail::fail("CSV 2D: rows must hold N (real) or 2N (complex) values");
  a.dtype = width == 2 * n ? DType::complex : DType::real;
  a.dims = {n, n};
  for (const auto& r : rows) {
    if (r.size() != width) detail::fail("CSV 2D: inconsistent field count");
    for (std::size_t i = 0; i < n; ++i) {
      a.values.push_back(a.dtype == DType::complex ? cplx{r[2 * i], r[2 * i + 1]} : cplx{r[i], 0.0});
    }
  }
  return a;
}

inline std::string format_csv(const ArrayFile& a) {
  std::string out;
  auto put = [&out, &a](const cplx& v) {
    out += format_double(v.real());
    if (a.dtype == DType::complex) {
      out += ',';
      out += format_double(v.imag());
    }
  };
  if (a.ndim() == 1) {
    for (const cplx& v : a.values) {
      put(v);
      out += '\n';
    }
    return out;
  }
  const std::size_t rows = a.dims[0];
  const std::size_t cols = a.dims[1];
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c) out += ',';
      put(a.values[r * cols + c]);
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conversions to library types

inline ArrayFile to_array(const Signal1D& x, DType dtype) { return {dtype, {x.size()}, x.values()}; }
inline ArrayFile to_array(const Spectrum1D& x) { return {DType::complex, {x.size()}, x.values()}; }
inline ArrayFile to_array(const Signal2D& x, DType dtype) { return {dtype, {x.n(), x.n()}, x.values()}; }
inline ArrayFile to_array(const Spectrum2D& x) { return {DType::complex, {x.n(), x.n()}, x.values()}; }

template <class T>
T to_1d(const ArrayFile& a) {
  if (a.ndim() != 1) detail::fail("expected a 1D array");
  return T(a.values);
}

template <class T>
T to_2d(const ArrayFile& a) {
  if (a.ndim() != 2) detail::fail("expected a 2D array");
  if (a.dims[0] != a.dims[1]) throw Error(ErrorKind::invalid_input, "2D array must be square");
  return T(a.dims[0], a.values);
}

// ---------------------------------------------------------------------------
// Scramble payload

inline std::string encode_payload(const ScramblePayload& p) {
  std::string out = encode_array({DType::complex, {p.coefficients.size()}, p.coefficients});
  detail::put_u64(out, p.n);
  return out;
}

inline ScramblePayload decode_payload(std::string_view bytes) {
  std::size_t used = 0;
  ArrayFile a = decode_array(bytes, &used);
  if (a.ndim() != 1 || a.dtype != DType::complex) detail::fail("payload: expected a complex 1D array");
  if (bytes.size() != used + 8) detail::fail("payload: missing or malformed trailing N");
  ScramblePayload p;
  p.n = detail::get_u64(bytes, used);
  if (p.n / 2 + 1 != a.values.size() || p.n % 2 != 0) detail::fail("payload: trailing N inconsistent with length");
  p.coefficients = std::move(a.values);
  return p;
}

/// CSV payload: "re,im" per line; N is 2 * (lines - 1).
inline ScramblePayload payload_from_csv(std::string_view text) {
  ArrayFile a = parse_csv(text, 1);
  if (a.values.size() < 2) detail::fail("payload CSV: too short");
  return {2 * (a.values.size() - 1), std::move(a.values)};
}

inline std::string payload_to_csv(const ScramblePayload& p) {
  return format_csv({DType::complex, {p.coefficients.size()}, p.coefficients});
}

// ---------------------------------------------------------------------------
// ThetaKey JSON
//   {"version":1, "mode":"1d"|"2d-sym"|"2d-conj", "n":N, "angles":[...]}
//   {"version":1, "mode":..., "n":N, "seed":"0x<16 hex>"}   angles from keygen
// Optional "purpose": "general" | "scramble" (selects the keygen range).

struct KeyFile {
  std::string mode = "1d";
  std::size_t n = 0;
  std::optional<std::vector<double>> angles;
  std::optional<std::uint64_t> seed;
  std::optional<KeyPurpose> purpose;
};

inline std::string format_seed(std::uint64_t seed) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(seed));
  return buf;
}

inline std::uint64_t parse_seed(std::string_view text) {
  std::string_view digits = text;
  int base = 10;
  if (digits.starts_with("0x") || digits.starts_with("0X")) {
    digits.remove_prefix(2);
    base = 16;
  }
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v, base);
  if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
    detail::fail("bad seed '" + std::string(text) + "'");
  }
  return v;
}

inline KeyFile parse_key_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    detail::fail(std::string("key JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) detail::fail("key JSON: expected an object");
    if (j.value("version", 0) != 1) detail::fail("key JSON: version must be 1");
    KeyFile k;
    k.mode = j.at("mode").get<std::string>();
    if (k.mode != "1d" && k.mode != "2d-sym" && k.mode != "2d-conj") {
      detail::fail("key JSON: unknown mode '" + k.mode + "'");
    }
    k.n = j.at("n").get<std::size_t>();
    if (j.contains("angles")) k.angles = j.at("angles").get<std::vector<double>>();
    if (j.contains("seed")) k.seed = parse_seed(j.at("seed").get<std::string>());
    if (!k.angles && !k.seed) detail::fail("key JSON: needs 'angles' or 'seed'");
    if (j.contains("purpose")) {
      const auto p = j.at("purpose").get<std::string>();
      if (p == "general") {
        k.purpose = KeyPurpose::general;
      } else if (p == "scramble") {
        k.purpose = KeyPurpose::scramble;
      } else {
        detail::fail("key JSON: unknown purpose '" + p + "'");
      }
    }
    return k;
  } catch (const nlohmann::json::exception& e) {
    detail::fail(std::string("key JSON: ") + e.what());
  }
}

namespace detail {

inline std::vector<double> seeded_angles(const KeyFile& k, std::size_t count) {
  if (k.angles) return *k.angles;
  // 2D keys draw from the same stream as the general 1D keygen
  SplitMix64 rng(*k.seed);
  std::vector<double> out(count);
  for (double& a : out) a = kTwoPi * rng.next_unit();
  return out;
}

}  // namespace detail

inline ThetaKey1D to_key_1d(const KeyFile& k) {
  if (k.mode != "1d") throw Error(ErrorKind::size_mismatch, "key mode '" + k.mode + "' is not 1d");
  if (k.angles) return ThetaKey1D(k.n, *k.angles);
  return keygen(*k.seed, k.n, k.purpose.value_or(KeyPurpose::general));
}

inline ThetaKey2D to_key_2d(const KeyFile& k) {
  PairMode mode;
  if (k.mode == "2d-sym") {
    mode = PairMode::symmetric;
  } else if (k.mode == "2d-conj") {
    mode = PairMode::conjugate;
  } else {
    throw Error(ErrorKind::size_mismatch, "key mode '" + k.mode + "' is not a 2D mode");
  }
  sdft::detail::require_sdft_size(k.n, "ThetaKey2D");
  return ThetaKey2D(k.n, mode, detail::seeded_angles(k, pair_count_2d(k.n, mode)));
}

inline std::string key_to_json(const ThetaKey1D& key, std::optional<KeyPurpose> purpose = std::nullopt,
                               std::optional<std::uint64_t> seed = std::nullopt) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["mode"] = "1d";
  j["n"] = key.n();
  if (purpose) j["purpose"] = to_string(*purpose);
  if (seed) j["seed"] = format_seed(*seed);
  j["angles"] = key.angles();
  return j.dump(2) + "\n";
}

inline std::string key_to_json(const ThetaKey2D& key) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["mode"] = to_string(key.mode());
  j["n"] = key.n();
  j["angles"] = key.angles();
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Graph spectrum report

inline nlohmann::ordered_json report_to_json(const GraphSpectrumReport& r) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(r.kind);
  j["n"] = r.n;
  j["analytic_eigenvalues"] = r.analytic_eigenvalues;
  auto classes = nlohmann::ordered_json::array();
  for (const auto& c : r.classes) {
    nlohmann::ordered_json e;
    e["tag"] = c.tag;
    e["representative"] = c.representative;
    e["members"] = c.members;
    e["mu"] = c.mu;
    classes.push_back(std::move(e));
  }
  j["classes"] = std::move(classes);
  auto merges = nlohmann::ordered_json::array();
  for (const auto& m : r.merges) {
    nlohmann::ordered_json e;
    e["mu"] = m.mu;
    e["classes"] = m.representatives;
    e["analytic_multiplicity"] = m.analytic_multiplicity;
    e["observed_multiplicity"] = m.observed_multiplicity;
    merges.push_back(std::move(e));
  }
  j["merges"] = std::move(merges);
  auto observed = nlohmann::ordered_json::array();
  for (const auto& g : r.observed_groups) {
    observed.push_back({{"mu", g.value}, {"multiplicity", g.multiplicity}});
  }
  j["observed_multiplicities"] = std::move(observed);
  j["census_ok"] = r.census_ok();
  j["max_residual"] = r.max_residual;
  return j;
}

// ---------------------------------------------------------------------------
// Files

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) detail::fail("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) detail::fail("cannot open '" + path + "' for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) detail::fail("write to '" + path + "' failed");
}

inline bool is_binary_path(std::string_view path) { return path.ends_with(".sdft"); }

/// Loads an array by extension: .sdft binary, anything else CSV.
inline ArrayFile load_array(const std::string& path, int dim) {
  const std::string bytes = read_file(path);
  if (is_binary_path(path)) return decode_array(bytes);
  return parse_csv(bytes, dim);
}

inline void save_array(const std::string& path, const ArrayFile& a) {
  write_file(path, is_binary_path(path) ? encode_array(a) : format_csv(a));
}

}  // namespace sdft::io
