#include "mzm/resilience.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "mzm/braid.hpp"
#include "mzm/kitaev.hpp"
#include "mzm/random.hpp"

namespace mzm {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kLeakageFloor = 1e-14;
constexpr std::uint64_t kBootstrapStream = 0xb0075ULL << 32;

double overlap_fidelity(const ComplexMatrix& ideal, const ComplexMatrix& rho) {
  const double overlap = (ideal * rho).trace().real();
  return std::sqrt(std::clamp(overlap, 0.0, 1.0));
}

// Precomputed circuits for one (noise, frame) choice.
class TrialKernel {
 public:
  TrialKernel(const NoiseSpec& noise, ErrorFrame frame)
      : un_noise_(noise), enc_noise_(noise), encode_(encoding_isometry()) {
    noise.validate();
    if (frame == ErrorFrame::measurement) {
      const ComplexMatrix h = hadamard();
      enc_noise_.error_unitary = h.adjoint() * noise.error_unitary * h;
    }
    un_steps_.push_back({cnot_matrix(), {0, 1}});
    for (const auto& g : cnot_word()) {
      enc_steps_.push_back({generator_unitary(g), g.participants()});
    }
    cnot_ = cnot_matrix();
  }

  TrialResult run(const ComplexVector& psi, double p) {
    un_noise_.p = p;
    enc_noise_.p = p;
    const ComplexVector out = cnot_ * psi;
    const ComplexMatrix ideal = out * out.adjoint();
    const ComplexMatrix rho = psi * psi.adjoint();

    TrialResult r;
    r.f_un = overlap_fidelity(ideal, run_noisy_circuit(un_steps_, un_noise_, rho, 2));

    const ComplexMatrix rho8 = encode_ * rho * encode_.adjoint();
    const ComplexMatrix out8 = run_noisy_circuit(enc_steps_, enc_noise_, rho8, 3);
    double weight = 0.0;
    const ComplexMatrix decoded = project_even_sector(out8, &weight);
    r.leakage = std::clamp(1.0 - weight, 0.0, 1.0);
    if (weight > kLeakageFloor) {
      r.f_enc = overlap_fidelity(ideal, decoded);
    } else {
      r.f_enc = 0.0;
      r.leakage = 1.0;
    }
    return r;
  }

 private:
  NoiseSpec un_noise_;
  NoiseSpec enc_noise_;
  ComplexMatrix encode_;
  ComplexMatrix cnot_;
  std::vector<CircuitStep> un_steps_;
  std::vector<CircuitStep> enc_steps_;
};

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v, double m) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

int sign_of(double d) {
  if (d > kTieTolerance) return 1;
  if (d < -kTieTolerance) return -1;
  return 0;
}

}  // namespace

std::string to_string(ErrorFrame f) {
  return f == ErrorFrame::chain ? "chain" : "measurement";
}

ErrorFrame parse_error_frame(std::string_view name) {
  if (name == "chain") return ErrorFrame::chain;
  if (name == "measurement") return ErrorFrame::measurement;
  throw std::invalid_argument("unknown error frame '" + std::string(name) + "'");
}

std::vector<double> linear_grid(double start, double stop, double step) {
  if (!(step > 0.0) || stop < start) {
    throw std::invalid_argument("linear_grid: need step > 0 and stop >= start");
  }
  std::vector<double> grid;
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long k = 0; k <= count; ++k) grid.push_back(start + static_cast<double>(k) * step);
  return grid;
}

void StudyConfig::validate() const {
  if (n_samples < 1) throw std::invalid_argument("StudyConfig: n_samples must be >= 1");
  if (p_grid.empty()) throw std::invalid_argument("StudyConfig: empty p_grid");
  for (std::size_t k = 0; k < p_grid.size(); ++k) {
    if (!(p_grid[k] >= 0.0 && p_grid[k] <= 1.0)) {
      throw std::invalid_argument("StudyConfig: p_grid values must lie in [0, 1]");
    }
    if (k > 0 && p_grid[k] < p_grid[k - 1]) {
      throw std::invalid_argument("StudyConfig: p_grid must be sorted ascending");
    }
  }
  if (reference_state.dim() != 4) {
    throw std::invalid_argument("StudyConfig: reference state must be two qubits");
  }
  noise.validate();
}

TrialResult run_trial(const StateVector& psi_in, double p, const NoiseSpec& noise,
                      ErrorFrame encoded_frame) {
  if (psi_in.dim() != 4) {
    throw std::invalid_argument("run_trial: expected a two-qubit input state");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("run_trial: p must lie in [0, 1]");
  }
  TrialKernel kernel(noise, encoded_frame);
  return kernel.run(psi_in.amplitudes(), p);
}

StudyResult run_comparison(const StudyConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n_samples;
  const std::size_t n_p = cfg.p_grid.size();

  std::vector<ComplexVector> inputs(n);
  // fidelity tables indexed [p][sample]
  std::vector<std::vector<double>> f_enc(n_p, std::vector<double>(n));
  std::vector<std::vector<double>> f_un(n_p, std::vector<double>(n));
  std::vector<std::vector<double>> leak(n_p, std::vector<double>(n));

  auto work = [&](std::size_t begin, std::size_t end) {
    TrialKernel kernel(cfg.noise, cfg.encoded_frame);
    for (std::size_t k = begin; k < end; ++k) {
      const ComplexMatrix u = haar_random_unitary(4, cfg.master_seed, k);
      const ComplexVector psi = StateVector(u * cfg.reference_state.amplitudes()).amplitudes();
      for (std::size_t j = 0; j < n_p; ++j) {
        const TrialResult r = kernel.run(psi, cfg.p_grid[j]);
        f_enc[j][k] = r.f_enc;
        f_un[j][k] = r.f_un;
        leak[j][k] = r.leakage;
      }
    }
  };

  unsigned threads = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(std::min<std::size_t>(n, 64)));
  if (threads == 1) {
    work(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(n, t * chunk);
      const std::size_t end = std::min(n, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }

  StudyResult result;
  result.placement = cfg.noise.placement;
  result.encoded_frame = cfg.encoded_frame;
  result.n_samples = n;
  result.master_seed = cfg.master_seed;
  for (std::size_t j = 0; j < n_p; ++j) {
    StudyPoint pt;
    pt.p = cfg.p_grid[j];
    pt.f_enc_mean = mean(f_enc[j]);
    pt.f_un_mean = mean(f_un[j]);
    pt.f_enc_stderr = stderr_of(f_enc[j], pt.f_enc_mean);
    pt.f_un_stderr = stderr_of(f_un[j], pt.f_un_mean);
    pt.leakage_mean = mean(leak[j]);
    std::size_t wins = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (f_enc[j][k] > f_un[j][k] + kTieTolerance) ++wins;
    }
    pt.p_avg = static_cast<double>(wins) / static_cast<double>(n);

    if (cfg.bootstrap_resamples > 0) {
      CounterRng rng(derive_seed(cfg.master_seed, kBootstrapStream), j);
      std::size_t mean_wins = 0;
      for (std::size_t b = 0; b < cfg.bootstrap_resamples; ++b) {
        double se = 0.0;
        double su = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const std::size_t pick = rng() % n;
          se += f_enc[j][pick];
          su += f_un[j][pick];
        }
        if ((se - su) / static_cast<double>(n) > kTieTolerance) ++mean_wins;
      }
      pt.p_avg_bootstrap =
          static_cast<double>(mean_wins) / static_cast<double>(cfg.bootstrap_resamples);
    }
    result.points.push_back(pt);
  }
  result.threshold = find_threshold(result);
  return result;
}

std::optional<double> find_threshold(const std::vector<double>& p,
                                     const std::vector<double>& f_enc,
                                     const std::vector<double>& f_un) {
  if (p.size() != f_enc.size() || p.size() != f_un.size()) {
    throw std::invalid_argument("find_threshold: mismatched curve lengths");
  }
  if (p.size() < 2) return std::nullopt;
  std::optional<std::size_t> last;  // last index with a definite sign
  std::optional<std::size_t> first_zero;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = f_enc[i] - f_un[i];
    const int s = sign_of(d);
    if (s == 0) {
      if (last && !first_zero) first_zero = i;
      continue;
    }
    if (last) {
      const double d_last = f_enc[*last] - f_un[*last];
      if (sign_of(d_last) != s) {
        if (first_zero) return p[*first_zero];
        return p[*last] + (p[i] - p[*last]) * d_last / (d_last - d);
      }
    }
    last = i;
    first_zero.reset();
  }
  return std::nullopt;
}

std::optional<double> find_threshold(const StudyResult& result) {
  std::vector<double> p;
  std::vector<double> fe;
  std::vector<double> fu;
  for (const auto& pt : result.points) {
    p.push_back(pt.p);
    fe.push_back(pt.f_enc_mean);
    fu.push_back(pt.f_un_mean);
  }
  return find_threshold(p, fe, fu);
}

Calibration calibrate_placement(const StudyConfig& base, double target) {
  Calibration cal;
  cal.placement = base.noise.placement;
  cal.frame = base.encoded_frame;
  double best = 0.0;
  for (ErrorFrame frame : {ErrorFrame::chain, ErrorFrame::measurement}) {
    for (Placement placement : kAllPlacements) {
      StudyConfig cfg = base;
      cfg.noise.placement = placement;
      cfg.encoded_frame = frame;
      cfg.bootstrap_resamples = 0;
      const StudyResult r = run_comparison(cfg);
      cal.entries.push_back({placement, frame, r.threshold});
      if (r.threshold) {
        const double gap = std::abs(*r.threshold - target);
        if (!cal.threshold || gap < best) {
          best = gap;
          cal.threshold = r.threshold;
          cal.placement = placement;
          cal.frame = frame;
        }
      }
    }
  }
  return cal;
}

}  // namespace mzm
