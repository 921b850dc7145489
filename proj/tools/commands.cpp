#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <thread>

namespace purity::cli {
namespace {

using nlohmann::json;

int parse_int(std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw ValidationError("expected an integer, got '" + std::string(text) + "'");
  return value;
}

Boundary boundary(const ExperimentConfig& cfg) { return cfg.pbc ? Boundary::periodic : Boundary::open; }

int require_p(const ExperimentConfig& cfg) {
  if (!cfg.p) throw ValidationError("--p is required");
  return *cfg.p;
}

Bipartition target_of(const ExperimentConfig& cfg) {
  if (cfg.cut && cfg.bipartition) throw ValidationError("give either --cut or --bipartition, not both");
  if (cfg.cut) return Bipartition::first_k(cfg.n, *cfg.cut);
  if (cfg.bipartition) return parse_bipartition(cfg.n, *cfg.bipartition);
  throw ValidationError("--cut or --bipartition is required");
}

struct Setup {
  Protocol proto;
  Bipartition target;
  std::string method;
  ReducedTransferMatrix matrix;
};

std::string resolve_method(const ExperimentConfig& cfg) {
  if (cfg.method == "analytic" || cfg.method == "closure") return cfg.method;
  if (cfg.method != "auto") throw ValidationError("--method must be auto, analytic or closure");
  const bool analytic = !cfg.pbc && cfg.cut && *cfg.cut > 0 && *cfg.cut < cfg.n;
  return analytic || cfg.perturbed ? "analytic" : "closure";
}

ReducedTransferMatrix build_analytic(const ExperimentConfig& cfg, int p, const Bipartition& target) {
  if (cfg.pbc) throw ValidationError("analytic matrices are defined for open boundaries only");
  if (!cfg.cut) throw ValidationError("analytic matrices need a single cut (--cut)");
  const int k = *cfg.cut;
  const bool odd_inside = k % 2 == 1 && k < 2 * p;
  if (cfg.perturbed) {
    if (odd_inside) throw ValidationError("the perturbed matrix has no odd cut inside the brickwall");
    return build_perturbed(cfg.n, p, cfg.d);
  }
  auto m = odd_inside ? extend_odd_k(cfg.n, p, k, cfg.d) : build_canonical(cfg.n, p, cfg.d);
  if (!m.basis().contains(target)) throw ValidationError("cut " + std::to_string(k) + " is not in the analytic basis");
  return m;
}

Setup make_setup(const ExperimentConfig& cfg, int p) {
  auto proto = make_canonical(cfg.n, p, boundary(cfg));
  auto target = target_of(cfg);
  const auto method = resolve_method(cfg);
  if (method == "analytic") {
    auto m = build_analytic(cfg, p, target);
    return {std::move(proto), std::move(target), method, std::move(m)};
  }
  if (cfg.perturbed) throw ValidationError("--perturbed needs the analytic method");
  auto m = closure_reduce(proto, target, ClosureOptions{cfg.max_basis, cfg.d});
  return {std::move(proto), std::move(target), method, std::move(m)};
}

Precision resolve_precision(const ExperimentConfig& cfg, std::size_t block) {
  if (cfg.precision == "standard") return Precision::standard;
  if (cfg.precision == "extended") return Precision::extended;
  if (cfg.precision != "auto") throw ValidationError("--precision must be auto, standard or extended");
  return block <= 300 ? Precision::extended : Precision::standard;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw ValidationError("cannot open output file " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void emit_report(const ExperimentConfig& cfg, const json& report) {
  if (cfg.report) {
    std::ofstream f(*cfg.report, std::ios::binary);
    if (!f) throw ValidationError("cannot open report file " + *cfg.report);
    f << report.dump(2) << '\n';
  } else {
    std::cerr << report.dump(2) << '\n';
  }
}

json optional_json(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }
json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json decay_json(const DecayReport& rep) {
  return json{{"rate_kind", rep.rate_kind},
              {"lambda_eff", rep.lambda_eff},
              {"lambda2", rep.lambda2},
              {"lambda2_source", rep.lambda2_source},
              {"conjecture", optional_json(rep.conjecture)},
              {"t_crossover", optional_json(rep.t_crossover)},
              {"t_plateau_exit", optional_json(rep.t_plateau_exit)},
              {"window", {rep.window.lo, rep.window.hi}},
              {"truncated", rep.truncated},
              {"notices", rep.notices}};
}

void add_matrix_lines(HeaderLines& h, const Setup& s) {
  h.emplace_back("method", s.method);
  h.emplace_back("kind", s.matrix.meta().kind);
  h.emplace_back("target", s.target.bitstring());
  h.emplace_back("basis_size", std::to_string(s.matrix.size()));
  h.emplace_back("nonzeros", std::to_string(s.matrix.nonzeros()));
}

DecayOptions decay_options(const ExperimentConfig& cfg, const Setup& s) {
  DecayOptions opts;
  opts.steps = cfg.tmax;
  if (cfg.window) opts.window = parse_window(*cfg.window);
  opts.cuts = classify_cuts(s.proto, s.target);
  return opts;
}

std::string optional_field(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); }
std::string optional_field(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

Window parse_window(const std::string& text) {
  const auto sep = text.find_first_of(":,");
  if (sep == std::string::npos) throw ValidationError("window must look like lo:hi, got '" + text + "'");
  Window w{parse_int(std::string_view(text).substr(0, sep)), parse_int(std::string_view(text).substr(sep + 1))};
  if (w.lo < 0 || w.hi < w.lo) throw ValidationError("window must satisfy 0 <= lo <= hi");
  return w;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto sep = text.find("..");
  if (sep == std::string::npos) {
    const int v = parse_int(text);
    return {v, v};
  }
  const int lo = parse_int(std::string_view(text).substr(0, sep));
  const int hi = parse_int(std::string_view(text).substr(sep + 2));
  if (hi < lo) throw ValidationError("empty range '" + text + "'");
  return {lo, hi};
}

HeaderLines config_header(const ExperimentConfig& cfg) {
  HeaderLines h;
  h.emplace_back("command", cfg.command);
  h.emplace_back("version", PURITY_VERSION_STRING);
  h.emplace_back("n", std::to_string(cfg.n));
  if (!cfg.p_range.empty()) h.emplace_back("p", cfg.p_range);
  else if (cfg.p) h.emplace_back("p", std::to_string(*cfg.p));
  h.emplace_back("bc", std::string(to_string(boundary(cfg))));
  h.emplace_back("d", std::to_string(cfg.d));
  h.emplace_back("a", format_double(gate_weight(cfg.d)));
  if (cfg.cut) h.emplace_back("cut", std::to_string(*cfg.cut));
  if (cfg.bipartition) h.emplace_back("bipartition", *cfg.bipartition);
  if (cfg.command != "mc") {
    h.emplace_back("method_requested", cfg.method);
    h.emplace_back("perturbed", cfg.perturbed ? "true" : "false");
    h.emplace_back("max_basis", std::to_string(cfg.max_basis));
  }
  if (cfg.command == "spectrum") {
    h.emplace_back("precision_requested", cfg.precision);
    h.emplace_back("nonzero", cfg.nonzero ? "true" : "false");
    h.emplace_back("pseudo", cfg.pseudo ? "true" : "false");
    if (cfg.pseudo) {
      h.emplace_back("eps", format_double(cfg.eps));
      h.emplace_back("samples", std::to_string(cfg.samples));
      h.emplace_back("seed", std::to_string(cfg.seed));
    }
  }
  if (cfg.command == "evolve" || cfg.command == "sweep" || cfg.command == "mc") {
    h.emplace_back("tmax", std::to_string(cfg.tmax));
  }
  if (cfg.command == "evolve" || cfg.command == "sweep") h.emplace_back("window", cfg.window.value_or("default"));
  if (cfg.command == "mc") {
    h.emplace_back("samples", std::to_string(cfg.samples));
    h.emplace_back("seed", std::to_string(cfg.seed));
  }
  return h;
}

int cmd_reduce(const ExperimentConfig& cfg) {
  const auto setup = make_setup(cfg, require_p(cfg));
  auto header = config_header(cfg);
  add_matrix_lines(header, setup);
  header.emplace_back("closed", setup.matrix.is_closed() ? "true" : "false");
  Output out(cfg.out);
  write_matrix_csv(out.stream(), setup.matrix, header);
  return 0;
}

int cmd_spectrum(const ExperimentConfig& cfg) {
  const int p = require_p(cfg);
  const auto setup = make_setup(cfg, p);
  const auto& m = setup.matrix;
  const auto block = m.basis().nontrivial();
  auto header = config_header(cfg);
  add_matrix_lines(header, setup);
  json report{{"command", "spectrum"}, {"basis_size", m.size()}, {"kind", m.meta().kind}};

  if (cfg.perturbed && p < cfg.n / 2) {
    const double root = perturbed_lambda2(cfg.n, p, cfg.d);
    header.emplace_back("perturbed_lambda2", format_double(root));
    report["perturbed_lambda2"] = root;
  }

  Output out(cfg.out);
  if (cfg.pseudo) {
    const int samples = cfg.samples > 0 ? cfg.samples : 20;
    const auto ps = pseudospectrum(m.dense_as<double>(block), cfg.eps, samples, cfg.seed);
    header.emplace_back("largest_modulus", format_double(ps.largest_modulus));
    header.emplace_back("typical_modulus", format_double(ps.typical_modulus));
    report["largest_modulus"] = ps.largest_modulus;
    report["typical_modulus"] = ps.typical_modulus;
    write_pseudospectrum_csv(out.stream(), ps, header);
  } else {
    const auto precision = resolve_precision(cfg, block.size());
    header.emplace_back("precision", precision == Precision::extended ? "extended" : "standard");
    if (cfg.nonzero) {
      const auto values = nonzero_spectrum(m, precision);
      header.emplace_back("count", std::to_string(values.size()));
      write_header(out.stream(), header);
      out.stream() << "re,im,modulus\n";
      for (const auto& z : values) {
        out.stream() << format_double(z.real()) << ',' << format_double(z.imag()) << ','
                     << format_double(std::abs(z)) << '\n';
      }
      if (!values.empty()) report["leading_modulus"] = std::abs(values.front());
    } else {
      const auto dec = eig_reduced(m, block, precision);
      header.emplace_back("count", std::to_string(dec.size()));
      if (dec.size() > 0) {
        header.emplace_back("leading_modulus", format_double(std::abs(dec.eigenvalues.front())));
        report["leading_modulus"] = std::abs(dec.eigenvalues.front());
        report["leading_eigenvalue"] = {dec.eigenvalues.front().real(), dec.eigenvalues.front().imag()};
      }
      write_spectrum_csv(out.stream(), dec, header);
    }
  }
  emit_report(cfg, report);
  return 0;
}

int cmd_evolve(const ExperimentConfig& cfg) {
  const auto setup = make_setup(cfg, require_p(cfg));
  auto resolved = cfg;
  if (resolved.tmax <= 0) resolved.tmax = 3 * cfg.n;
  const auto rep = analyze_decay(setup.matrix, setup.target, decay_options(resolved, setup));
  auto header = config_header(resolved);
  add_matrix_lines(header, setup);
  header.emplace_back("rate_kind", rep.rate_kind);
  header.emplace_back("lambda_eff", format_double(rep.lambda_eff));
  header.emplace_back("lambda2", format_double(rep.lambda2));
  header.emplace_back("lambda2_source", rep.lambda2_source);
  header.emplace_back("conjecture", optional_field(rep.conjecture));
  header.emplace_back("t_crossover", optional_field(rep.t_crossover));
  header.emplace_back("t_plateau_exit", optional_field(rep.t_plateau_exit));
  header.emplace_back("window_used", std::to_string(rep.window.lo) + ":" + std::to_string(rep.window.hi));
  Output out(cfg.out);
  write_trajectory_csv(out.stream(), rep.values, rep.rates, header);
  auto report = decay_json(rep);
  report["command"] = "evolve";
  report["basis_size"] = setup.matrix.size();
  emit_report(cfg, report);
  return 0;
}

int cmd_mc(const ExperimentConfig& cfg) {
  if (cfg.n > kMonteCarloMaxSites) {
    throw CapacityError("Monte Carlo is limited to n <= " + std::to_string(kMonteCarloMaxSites));
  }
  if (cfg.d != 2) throw ValidationError("Monte Carlo samples qubit circuits only (d = 2)");
  auto resolved = cfg;
  if (resolved.tmax <= 0) resolved.tmax = 10;
  if (resolved.samples <= 0) resolved.samples = 20000;
  const auto proto = make_canonical(cfg.n, require_p(cfg), boundary(cfg));
  const auto target = target_of(cfg);
  MCOptions opts;
  opts.samples = static_cast<std::size_t>(resolved.samples);
  opts.seed = cfg.seed;
  opts.threads = cfg.threads;
  const auto est = mc_trajectory(proto, target, resolved.tmax, opts);
  auto header = config_header(resolved);
  header.emplace_back("target", target.bitstring());
  Output out(cfg.out);
  write_mc_csv(out.stream(), est, header);
  return 0;
}

int cmd_sweep(const ExperimentConfig& cfg) {
  if (cfg.p_range.empty()) throw ValidationError("--p is required (a value or lo..hi)");
  const auto [lo, hi] = parse_range(cfg.p_range);
  auto resolved = cfg;
  if (resolved.tmax <= 0) resolved.tmax = 3 * cfg.n;
  const auto count = static_cast<std::size_t>(hi - lo + 1);

  struct Row {
    std::optional<DecayReport> report;
    std::size_t basis = 0;
    std::exception_ptr error;
  };
  std::vector<Row> rows(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        const auto setup = make_setup(resolved, lo + static_cast<int>(i));
        rows[i].basis = setup.matrix.size();
        rows[i].report = analyze_decay(setup.matrix, setup.target, decay_options(resolved, setup));
      } catch (...) {
        rows[i].error = std::current_exception();
      }
    }
  };
  unsigned workers = cfg.threads > 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  for (const auto& r : rows) {
    if (r.error) std::rethrow_exception(r.error);
  }

  Output out(cfg.out);
  write_header(out.stream(), config_header(resolved));
  auto& os = out.stream();
  os << "p,basis_size,lambda_eff,lambda2,conjecture,t_crossover,t_plateau_exit,window_lo,window_hi,rate_kind\n";
  json report{{"command", "sweep"}, {"rows", json::array()}};
  for (std::size_t i = 0; i < count; ++i) {
    const auto& rep = *rows[i].report;
    const int p = lo + static_cast<int>(i);
    os << p << ',' << rows[i].basis << ',' << format_double(rep.lambda_eff) << ',' << format_double(rep.lambda2)
       << ',' << optional_field(rep.conjecture) << ',' << optional_field(rep.t_crossover) << ','
       << optional_field(rep.t_plateau_exit) << ',' << rep.window.lo << ',' << rep.window.hi << ',' << rep.rate_kind
       << '\n';
    auto entry = decay_json(rep);
    entry["p"] = p;
    report["rows"].push_back(std::move(entry));
  }
  emit_report(cfg, report);
  return 0;
}

}  // namespace purity::cli
