#pragma once

// Physical-layer model of an uplink channel shared by cellular users (CUs)
// and D2D multicast groups (MGs), both placed as homogeneous Poisson point
// processes on the plane with Rayleigh fading. Interference limited: there is
// no noise term. All powers are linear milliwatts.

namespace underlay {

struct ScenarioConfig {
  double alpha = 3.0;         // path-loss exponent, > 2
  int group_size = 3;         // receivers per multicast group |U_g|
  double d_gr = 2.0;          // D2D Tx -> reference (worst) receiver, m
  double d_cb = 8.0;          // CU -> eNB, m
  double rate_th_d2d = 3.0;   // group rate target R_g^th, bit/s/Hz
  double rate_th_cu = 1.0;    // CU rate target R_c^th, bit/s/Hz
  double theta_d2d = 0.1;     // D2D outage threshold, in (0, 1)
  double theta_cu = 0.1;      // CU outage threshold, in (0, 1)
  double p_total_d2d = 316.22776601683793;  // P_G, mW (25 dBm)
};

struct ChannelParams {
  double lambda_c = 0.0;  // CU density, 1/m^2
  double lambda_g = 0.0;  // MG transmitter density, 1/m^2
  double p_c = 1.0;       // CU transmit power, mW
  double p_up = 1.0;      // per-channel cap on the MG transmit power, mW
};

struct ChiCoefficients {
  double chi_g = 0.0;
  double chi_c = 0.0;
};

/// Throws std::invalid_argument naming the first violated constraint.
void validate(const ScenarioConfig& cfg);
void validate(const ChannelParams& ch);

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

/// Gamma(1 + 2/alpha) Gamma(1 - 2/alpha); throws std::invalid_argument for alpha <= 2.
double fading_integral(double alpha);

/// SIR threshold 2^(rate / group_size) - 1 that the reference D2D receiver must reach.
double sir_threshold_d2d(const ScenarioConfig& cfg);
double sir_threshold_cu(const ScenarioConfig& cfg);

double chi_d2d(const ScenarioConfig& cfg);
double chi_cu(const ScenarioConfig& cfg);
ChiCoefficients chi_coefficients(const ScenarioConfig& cfg);

/// Outage probability of a D2D multicast group transmitting with power p_g:
/// 1 - exp(-chi_g (lambda_c (p_c/p_g)^(2/alpha) + lambda_g)).
double outage_d2d(const ScenarioConfig& cfg, const ChannelParams& ch, double p_g);

/// 1 - outage_d2d, without the cancellation when the outage is close to 1.
double coverage_d2d(const ScenarioConfig& cfg, const ChannelParams& ch, double p_g);

/// Outage probability of a CU when co-channel MGs transmit with power p_g:
/// 1 - exp(-chi_c (lambda_c + lambda_g (p_g/p_c)^(2/alpha))).
double outage_cu(const ScenarioConfig& cfg, const ChannelParams& ch, double p_g);

}  // namespace underlay
