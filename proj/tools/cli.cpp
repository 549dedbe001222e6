#include "cli.hpp"

#include <chrono>
#include <iostream>
#include <limits>

#include <CLI11.hpp>

#include "sdft/sdft.hpp"

namespace sdft::cli {
namespace {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input:
    case ErrorKind::format: return kInputError;
    case ErrorKind::size_mismatch:
    case ErrorKind::index_out_of_range:
    case ErrorKind::degenerate_key: return kMismatch;
    case ErrorKind::unsupported_size: return kUnsupportedSize;
  }
  return kInputError;
}

io::KeyFile load_key(const std::string& path) { return io::parse_key_json(io::read_file(path)); }

void require_dim_mode(int dim, const io::KeyFile& key) {
  const bool is_1d = key.mode == "1d";
  if ((dim == 1) != is_1d) {
    throw Error(ErrorKind::size_mismatch,
                "key mode '" + key.mode + "' does not match --dim " + std::to_string(dim));
  }
}

// --- transform ------------------------------------------------------------

struct TransformArgs {
  int dim = 1;
  bool inverse = false;
  bool real_output = false;
  std::string key, in, out;
};

void cmd_transform(const TransformArgs& a) {
  const io::KeyFile key = load_key(a.key);
  require_dim_mode(a.dim, key);
  const io::ArrayFile input = io::load_array(a.in, a.dim);
  if (static_cast<int>(input.ndim()) != a.dim) {
    throw Error(ErrorKind::format, "input array is " + std::to_string(input.ndim()) + "D, expected " +
                                       std::to_string(a.dim) + "D");
  }
  io::ArrayFile result;
  if (a.dim == 1) {
    detail::require_sdft_size(input.values.size(), "transform");
    const ThetaKey1D k = io::to_key_1d(key);
    if (a.inverse) {
      result = io::to_array(sdft_inverse_1d(io::to_1d<Spectrum1D>(input), k), io::DType::complex);
    } else {
      result = io::to_array(sdft_forward_1d(io::to_1d<Signal1D>(input), k));
    }
  } else {
    const Signal2D probe = io::to_2d<Signal2D>(input);
    detail::require_sdft_size(probe.n(), "transform");
    const ThetaKey2D k = io::to_key_2d(key);
    if (a.inverse) {
      result = io::to_array(sdft_inverse_2d(io::to_2d<Spectrum2D>(input), k), io::DType::complex);
    } else {
      result = io::to_array(sdft_forward_2d(probe, k));
    }
  }
  if (a.real_output) {
    result.dtype = io::DType::real;
    for (cplx& v : result.values) v = {v.real(), 0.0};
  }
  io::save_array(a.out, result);
}

// --- trace ----------------------------------------------------------------

struct TraceArgs {
  std::size_t k = 1;
  std::size_t samples = 64;
  std::string in, out;
};

void cmd_trace(const TraceArgs& a) {
  const io::ArrayFile input = io::load_array(a.in, 1);
  if (input.ndim() != 1) throw Error(ErrorKind::format, "trace expects a 1D signal");
  const auto points = coefficient_trace(io::to_1d<Signal1D>(input), a.k, a.samples);
  std::string csv = "theta,re_k,im_k,re_nk,im_nk,energy\n";
  for (const TracePoint& p : points) {
    const double energy = std::norm(p.first) + std::norm(p.second);
    for (double v : {p.theta, p.first.real(), p.first.imag(), p.second.real(), p.second.imag()}) {
      csv += io::format_double(v);
      csv += ',';
    }
    csv += io::format_double(energy);
    csv += '\n';
  }
  io::write_file(a.out, csv);
}

// --- hilbert / filter -----------------------------------------------------

void cmd_hilbert(const std::string& in, const std::string& out) {
  const io::ArrayFile input = io::load_array(in, 1);
  if (input.ndim() != 1) throw Error(ErrorKind::format, "hilbert expects a 1D signal");
  io::save_array(out, io::to_array(hilbert(io::to_1d<Signal1D>(input)), io::DType::real));
}

struct FilterArgs {
  std::string part = "even";
  std::string bands;
  int dim = 1;
  std::string in, out;
};

std::vector<std::size_t> parse_bands(const std::string& text) {
  std::vector<std::size_t> bands;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw Error(ErrorKind::format, "bad band index '" + item + "'");
    }
    bands.push_back(v);
  }
  return bands;
}

void cmd_filter(const FilterArgs& a) {
  const Parity part = a.part == "odd" ? Parity::odd : Parity::even;
  const io::ArrayFile input = io::load_array(a.in, a.dim);
  if (static_cast<int>(input.ndim()) != a.dim) throw Error(ErrorKind::format, "input dimensionality does not match --dim");
  if (a.dim == 1) {
    std::optional<std::vector<std::size_t>> bands;
    if (!a.bands.empty()) bands = parse_bands(a.bands);
    io::save_array(a.out, io::to_array(parity_filter_1d(io::to_1d<Signal1D>(input), part, bands), io::DType::real));
  } else {
    if (!a.bands.empty()) throw Error(ErrorKind::invalid_input, "--bands applies to --dim 1 only");
    io::save_array(a.out, io::to_array(parity_filter_2d(io::to_2d<Signal2D>(input), part), io::DType::real));
  }
}

// --- scramble / descramble / keygen --------------------------------------

void cmd_scramble(const std::string& key_path, const std::string& in, const std::string& out) {
  const io::KeyFile key = load_key(key_path);
  require_dim_mode(1, key);
  const io::ArrayFile input = io::load_array(in, 1);
  if (input.ndim() != 1) throw Error(ErrorKind::format, "scramble expects a 1D signal");
  detail::require_sdft_size(input.values.size(), "scramble");
  const ScramblePayload p = scramble(io::to_1d<Signal1D>(input), ScrambleKey(io::to_key_1d(key)));
  io::write_file(out, io::is_binary_path(out) ? io::encode_payload(p) : io::payload_to_csv(p));
}

void cmd_descramble(const std::string& key_path, const std::string& in, const std::string& out) {
  const io::KeyFile key = load_key(key_path);
  require_dim_mode(1, key);
  const std::string bytes = io::read_file(in);
  const ScramblePayload p = io::is_binary_path(in) ? io::decode_payload(bytes) : io::payload_from_csv(bytes);
  detail::require_sdft_size(p.n, "descramble");
  io::save_array(out, io::to_array(descramble(p, ScrambleKey(io::to_key_1d(key))), io::DType::real));
}

struct KeygenArgs {
  std::string seed = "0";
  std::size_t n = 0;
  std::string purpose = "general";
  std::string out;
};

void cmd_keygen(const KeygenArgs& a) {
  const std::uint64_t seed = io::parse_seed(a.seed);
  const KeyPurpose purpose = a.purpose == "scramble" ? KeyPurpose::scramble : KeyPurpose::general;
  io::write_file(a.out, io::key_to_json(keygen(seed, a.n, purpose), purpose, seed));
}

// --- graph verify ---------------------------------------------------------

struct VerifyArgs {
  int dim = 1;
  std::size_t n = 0;
  std::string key;
  std::size_t cap = 0;  // 0: 256 for dim 1, 16 for dim 2
};

int cmd_graph_verify(const VerifyArgs& a, std::ostream& out) {
  const std::size_t cap = a.cap ? a.cap : (a.dim == 1 ? 256 : 16);
  detail::require_sdft_size(a.n, "graph verify");
  if (a.n > cap) {
    throw Error(ErrorKind::unsupported_size,
                "graph verify: N=" + std::to_string(a.n) + " exceeds the cap of " + std::to_string(cap));
  }
  std::optional<io::KeyFile> key;
  if (!a.key.empty()) {
    key = load_key(a.key);
    require_dim_mode(a.dim, *key);
  }
  GraphSpectrumReport report;
  if (a.dim == 1) {
    const ThetaKey1D k = key ? io::to_key_1d(*key) : ThetaKey1D::zeros(a.n);
    if (k.n() != a.n) throw Error(ErrorKind::size_mismatch, "key N does not match --n");
    report = multiplicity_census_1d(a.n);
    const auto rows = sdft_rows_1d(k);
    report.max_residual = verify_eigenbasis(cycle_laplacian(a.n), rows, cycle_eigenvalues(a.n));
  } else {
    const ThetaKey2D k = key ? io::to_key_2d(*key) : ThetaKey2D::zeros(a.n, PairMode::symmetric);
    if (k.n() != a.n) throw Error(ErrorKind::size_mismatch, "key N does not match --n");
    report = multiplicity_census_2d(a.n);
    const auto rows = sdft_rows_2d(k);
    report.max_residual = verify_eigenbasis(torus_laplacian(a.n), rows, torus_eigenvalues(a.n));
  }
  out << io::report_to_json(report).dump(2) << "\n";
  return (report.max_residual <= 1e-9 && report.census_ok()) ? kOk : kVerificationFailed;
}

// --- bench ----------------------------------------------------------------

struct BenchArgs {
  int dim = 1;
  std::size_t n = 1 << 20;
  std::size_t iters = 10;
  std::size_t sweep_from = 0;
};

template <class F>
double min_time_ns(std::size_t iters, std::size_t reps, F&& f) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < iters; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t r = 0; r < reps; ++r) f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::nano>(t1 - t0).count() /
                              static_cast<double>(reps));
  }
  return best;
}

nlohmann::ordered_json bench_one(int dim, std::size_t n, std::size_t iters) {
  SplitMix64 rng(0x5DF7);
  const std::size_t total = dim == 1 ? n : n * n;
  std::vector<cplx> data(total);
  for (cplx& v : data) v = rng.next_unit() - 0.5;
  // repeat small sizes so each timed batch covers ~2^20 samples
  const std::size_t reps = std::max<std::size_t>(1, (std::size_t{1} << 20) / total);
  double fft_ns = 0.0;
  double rotate_ns = 0.0;
  if (dim == 1) {
    const Sdft1dPlan plan(keygen(0, n, KeyPurpose::general));
    std::vector<cplx> work = data;
    fft_ns = min_time_ns(iters, reps, [&] { plan.fft().forward(work, work); });
    rotate_ns = min_time_ns(iters, reps, [&] { plan.rotate(work); });
  } else {
    const FftPlan fft(n);
    SplitMix64 krng(0);
    std::vector<double> angles(pair_count_2d(n, PairMode::symmetric));
    for (double& a : angles) a = kTwoPi * krng.next_unit();
    const ThetaKey2D key(n, PairMode::symmetric, std::move(angles));
    std::vector<cplx> work = data;
    fft_ns = min_time_ns(iters, reps, [&] { detail::transform_2d(work, n, fft, false); });
    rotate_ns = min_time_ns(iters, reps, [&] { detail::rotate_2d(work, key, false); });
  }
  nlohmann::ordered_json j;
  j["dim"] = dim;
  j["n"] = n;
  j["iters"] = iters;
  j["fft_ns"] = fft_ns;
  j["rotate_ns"] = rotate_ns;
  j["total_ns"] = fft_ns + rotate_ns;
  return j;
}

void cmd_bench(const BenchArgs& a, std::ostream& out) {
  if (!std::has_single_bit(a.n) || a.n < 4) {
    throw Error(ErrorKind::unsupported_size, "bench: --n must be a power of two >= 4");
  }
  if (a.iters == 0) throw Error(ErrorKind::invalid_input, "bench: --iters must be >= 1");
  if (a.sweep_from == 0) {
    out << bench_one(a.dim, a.n, a.iters).dump(2) << "\n";
    return;
  }
  if (!std::has_single_bit(a.sweep_from) || a.sweep_from < 4 || a.sweep_from > a.n) {
    throw Error(ErrorKind::unsupported_size, "bench: --sweep-from must be a power of two in [4, n]");
  }
  nlohmann::ordered_json j;
  j["runs"] = nlohmann::ordered_json::array();
  j["rotate_ratios"] = nlohmann::ordered_json::array();
  double prev = 0.0;
  for (std::size_t n = a.sweep_from; n <= a.n; n *= 2) {
    auto run = bench_one(a.dim, n, a.iters);
    const double rot = run["rotate_ns"].get<double>();
    if (prev > 0.0) j["rotate_ratios"].push_back(rot / prev);
    prev = rot;
    j["runs"].push_back(std::move(run));
  }
  out << j.dump(2) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steerable DFT toolkit: transforms, filters, scrambling and graph checks"};
  app.name("sdft");
  app.require_subcommand(1);

  TransformArgs transform;
  auto* t = app.add_subcommand("transform", "Forward or inverse 1D/2D steerable DFT");
  t->add_option("--dim", transform.dim, "1 or 2")->check(CLI::IsMember({1, 2}));
  t->add_flag("--inverse", transform.inverse, "Run the inverse transform");
  t->add_flag("--real-output", transform.real_output, "Write only real parts");
  t->add_option("--key", transform.key, "ThetaKey JSON file")->required();
  t->add_option("--in", transform.in, "Input (.csv or .sdft)")->required();
  t->add_option("--out", transform.out, "Output (.csv or .sdft)")->required();

  TraceArgs trace;
  auto* tr = app.add_subcommand("trace", "Sweep one pair angle over [0, 2pi) and emit both coefficients");
  tr->add_option("--k", trace.k, "Pair index, 1..N/2-1")->required();
  tr->add_option("--samples", trace.samples, "Number of uniform angles")->check(CLI::PositiveNumber);
  tr->add_option("--in", trace.in, "Input 1D signal")->required();
  tr->add_option("--out", trace.out, "Output CSV")->required();

  std::string hin, hout;
  auto* h = app.add_subcommand("hilbert", "Discrete Hilbert transform of a real 1D signal");
  h->add_option("--in", hin, "Input 1D signal")->required();
  h->add_option("--out", hout, "Output")->required();

  FilterArgs filter;
  auto* f = app.add_subcommand("filter", "Even/odd parity filter");
  f->add_option("--part", filter.part, "even or odd")->check(CLI::IsMember({"even", "odd"}));
  f->add_option("--bands", filter.bands, "Comma-separated pair indices (1D only)");
  f->add_option("--dim", filter.dim, "1 or 2")->check(CLI::IsMember({1, 2}));
  f->add_option("--in", filter.in, "Input")->required();
  f->add_option("--out", filter.out, "Output")->required();

  std::string skey, sin, sout;
  auto* s = app.add_subcommand("scramble", "Keyed half-spectrum scrambling of a real 1D signal");
  s->add_option("--key", skey, "Scramble key JSON")->required();
  s->add_option("--in", sin, "Input signal")->required();
  s->add_option("--out", sout, "Payload (.sdft binary or .csv)")->required();

  std::string dkey, din, dout;
  auto* d = app.add_subcommand("descramble", "Invert scramble with the same key");
  d->add_option("--key", dkey, "Scramble key JSON")->required();
  d->add_option("--in", din, "Payload (.sdft binary or .csv)")->required();
  d->add_option("--out", dout, "Output signal")->required();

  KeygenArgs kg;
  auto* k = app.add_subcommand("keygen", "Deterministic 1D key from a 64-bit seed");
  k->add_option("--seed", kg.seed, "Seed, decimal or 0x-prefixed hex")->required();
  k->add_option("--n", kg.n, "Signal length (even, >= 4)")->required();
  k->add_option("--purpose", kg.purpose, "general or scramble")->check(CLI::IsMember({"general", "scramble"}));
  k->add_option("--out", kg.out, "Output key JSON")->required();

  VerifyArgs verify;
  auto* g = app.add_subcommand("graph", "Graph-spectral checks");
  g->require_subcommand(1);
  auto* gv = g->add_subcommand("verify", "Census and eigenbasis check; prints a JSON report");
  gv->add_option("--dim", verify.dim, "1 (cycle) or 2 (torus)")->check(CLI::IsMember({1, 2}));
  gv->add_option("--n", verify.n, "Graph size N (even)")->required();
  gv->add_option("--key", verify.key, "Optional ThetaKey JSON; zero angles otherwise");
  gv->add_option("--cap", verify.cap, "Largest accepted N (default 256 for dim 1, 16 for dim 2)");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Per-stage timings (FFT, rotation) as JSON");
  b->add_option("--dim", bench.dim, "1 or 2")->check(CLI::IsMember({1, 2}));
  b->add_option("--n", bench.n, "Size (power of two)");
  b->add_option("--iters", bench.iters, "Timed repetitions; the minimum is reported");
  b->add_option("--sweep-from", bench.sweep_from, "Also time every power of two from this size up to --n");

  std::vector<const char*> argv{"sdft"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    // top-level help lists every subcommand's flags
    const bool top = app.get_subcommands().empty();
    out << app.help("", top ? CLI::AppFormatMode::All : CLI::AppFormatMode::Normal);
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "sdft: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (t->parsed()) cmd_transform(transform);
    if (tr->parsed()) cmd_trace(trace);
    if (h->parsed()) cmd_hilbert(hin, hout);
    if (f->parsed()) cmd_filter(filter);
    if (s->parsed()) cmd_scramble(skey, sin, sout);
    if (d->parsed()) cmd_descramble(dkey, din, dout);
    if (k->parsed()) cmd_keygen(kg);
    if (gv->parsed()) return cmd_graph_verify(verify, out);
    if (b->parsed()) cmd_bench(bench, out);
  } catch (const Error& e) {
    err << "sdft: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kOk;
}

}  // namespace sdft::cli
