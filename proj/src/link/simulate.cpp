#include "raqr/link/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "raqr/parallel.hpp"

namespace raqr::link {

namespace {
constexpr std::uint64_t kSymbolsPerBlock = 8192;
}

double dbm_to_w(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

double snr_at_power(double tx_power_w, const ChannelConfig& cfg,
                    const rx::BasebandModel& model) {
  if (model.sensitivity <= 0)
    throw std::invalid_argument("snr_at_power: model sensitivity must be positive");
  double field = received_field_vcm(tx_power_w, cfg);
  double noise_field_sq =
      model.sensitivity * model.sensitivity * cfg.bandwidth_hz;
  return field * field / noise_field_sq;
}

std::vector<BerPoint> simulate_siso(const ChannelConfig& cfg,
                                    const rx::BasebandModel& model,
                                    Modulation mod,
                                    const std::vector<double>& power_dbm,
                                    std::uint64_t bits_per_point,
                                    int threads) {
  cfg.validate();
  if (power_dbm.empty()) throw std::invalid_argument("simulate_siso: empty power grid");
  if (bits_per_point < 1000)
    throw std::invalid_argument("simulate_siso: too few bits per point");

  const int bps = bits_per_symbol(mod);
  const std::uint64_t n_sym = (bits_per_point + bps - 1) / bps;
  const int n_blocks =
      static_cast<int>((n_sym + kSymbolsPerBlock - 1) / kSymbolsPerBlock);
  const double phi = model.phi;
  const std::complex<double> rot(std::cos(phi), std::sin(phi));

  std::vector<BerPoint> out(power_dbm.size());
  for (std::size_t pi = 0; pi < power_dbm.size(); ++pi) {
    const double p_w = dbm_to_w(power_dbm[pi]);
    const double snr = snr_at_power(p_w, cfg, model);
    const double amp = received_field_vcm(p_w, cfg) * model.rho;
    const double sigma = std::sqrt(model.noise_psd * cfg.bandwidth_hz);

    std::vector<std::uint64_t> block_err(n_blocks, 0), block_bits(n_blocks, 0);
    parallel_for(
        n_blocks,
        [&](int b) {
          Rng rng(cfg.seed, (static_cast<std::uint64_t>(pi) << 32) |
                                static_cast<std::uint64_t>(b));
          std::uint64_t first = static_cast<std::uint64_t>(b) * kSymbolsPerBlock;
          std::uint64_t count = std::min(kSymbolsPerBlock, n_sym - first);
          std::uint64_t errs = 0;
          for (std::uint64_t t = 0; t < count; ++t) {
            unsigned bits = 0;
            for (int k = 0; k < bps; ++k)
              bits |= (rng.uniform() < 0.5 ? 0u : 1u) << k;
            std::complex<double> x = map_symbol(mod, bits);
            std::complex<double> h = draw_channel(cfg, rng);
            std::complex<double> w = sigma * rng.cgauss();
            std::complex<double> y = rot * h * amp * x + w;
            std::complex<double> g = rot * h * amp;
            std::complex<double> z =
                std::norm(g) > 0 ? y * std::conj(g) / std::norm(g)
                                 : std::complex<double>(0, 0);
            unsigned got = demap_symbol(mod, z);
            unsigned diff = got ^ bits;
            for (int k = 0; k < bps; ++k) errs += (diff >> k) & 1u;
          }
          block_err[b] = errs;
          block_bits[b] = count * bps;
        },
        threads);

    BerPoint pt;
    pt.tx_power_dbm = power_dbm[pi];
    pt.snr_db = 10.0 * std::log10(snr);
    for (int b = 0; b < n_blocks; ++b) {
      pt.errors += block_err[b];
      pt.bits += block_bits[b];
    }
    pt.ber = static_cast<double>(pt.errors) / static_cast<double>(pt.bits);
    if (n_blocks >= 2) {
      // spread of per-block rates captures the symbol-level correlation of
      // bit errors under fading
      double mean = pt.ber, ss = 0.0;
      for (int b = 0; b < n_blocks; ++b) {
        double r = static_cast<double>(block_err[b]) / block_bits[b];
        ss += (r - mean) * (r - mean);
      }
      pt.ber_stderr = std::sqrt(ss / (n_blocks - 1) / n_blocks);
    } else {
      pt.ber_stderr = std::sqrt(pt.ber * (1.0 - pt.ber) /
                                static_cast<double>(pt.bits));
    }
    out[pi] = pt;
  }
  return out;
}

std::vector<RatePoint> simulate_mimo_rate(const ChannelConfig& cfg,
                                          int elements,
                                          const rx::BasebandModel& raqr,
                                          const rx::BasebandModel& conv,
                                          const std::vector<double>& power_dbm,
                                          int draws, int threads) {
  cfg.validate();
  if (elements < 1) throw std::invalid_argument("simulate_mimo_rate: elements < 1");
  if (draws < 100) throw std::invalid_argument("simulate_mimo_rate: too few draws");
  if (power_dbm.empty())
    throw std::invalid_argument("simulate_mimo_rate: empty power grid");

  // common channel draws for both models and every power point
  Eigen::VectorXd normsq(draws);
  parallel_for(
      draws,
      [&](int d) {
        Rng rng(cfg.seed, static_cast<std::uint64_t>(d));
        normsq[d] = draw_channel_vector(cfg, elements, rng).squaredNorm();
      },
      threads);

  std::vector<RatePoint> out(power_dbm.size());
  const double inv_ln2 = 1.0 / std::log(2.0);
  for (std::size_t pi = 0; pi < power_dbm.size(); ++pi) {
    double p_w = dbm_to_w(power_dbm[pi]);
    double snr_r = snr_at_power(p_w, cfg, raqr);
    double snr_c = snr_at_power(p_w, cfg, conv);
    double sum_r = 0.0, sum_c = 0.0, sum_gap = 0.0, sum_gap2 = 0.0;
    for (int d = 0; d < draws; ++d) {
      double rr = std::log1p(snr_r * normsq[d]) * inv_ln2;
      double rc = std::log1p(snr_c * normsq[d]) * inv_ln2;
      sum_r += rr;
      sum_c += rc;
      sum_gap += rr - rc;
      sum_gap2 += (rr - rc) * (rr - rc);
    }
    RatePoint pt;
    pt.tx_power_dbm = power_dbm[pi];
    pt.snr_raqr_db = 10.0 * std::log10(snr_r);
    pt.snr_conv_db = 10.0 * std::log10(snr_c);
    pt.rate_raqr = sum_r / draws;
    pt.rate_conv = sum_c / draws;
    double gm = sum_gap / draws;
    pt.gap_stderr = std::sqrt(std::max(0.0, sum_gap2 / draws - gm * gm) / draws);
    out[pi] = pt;
  }
  return out;
}

} // namespace raqr::link
