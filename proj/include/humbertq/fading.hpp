#pragma once

#include "humbertq/config.hpp"

namespace humbertq {

// kappa-mu power-fading model: kappa = dominant-to-scattered power ratio,
// mu = number of multipath clusters (possibly non-integer), omega = mean
// power. All strictly positive.
struct KappaMuParams {
    double kappa = 1.0;
    double mu = 1.0;
    double omega = 1.0;
    void validate() const;
};

// Signal-of-interest and co-channel-interference channels. The closed-form
// outage expression requires integer mu on both.
struct InterferenceScenario {
    KappaMuParams soi;
    KappaMuParams cci;
};

// Energy detector over a kappa-mu channel: u = time-bandwidth product,
// lambda = decision threshold.
struct DetectionParams {
    double u = 1.0;
    double lambda = 1.0;
    KappaMuParams channel;
};

// Tagged probability: closed_form is false when the value came from the
// direct quadrature fallback instead of a closed expression.
struct TaggedProb {
    double value;
    bool closed_form;
};

// Power density of the kappa-mu distribution at x >= 0. At x = 0 the value
// is 0 for mu > 1, the analytic limit (1+kappa)e^{-kappa}/omega for mu = 1,
// and +infinity for mu < 1 (the density diverges there).
double kappa_mu_pdf(const KappaMuParams& params, double x,
                    const EvalConfig& cfg = {});

// Distribution function: 1 - Q_mu(sqrt(2 kappa mu), sqrt(2(1+kappa) mu z / omega)).
double kappa_mu_cdf(const KappaMuParams& params, double z,
                    const EvalConfig& cfg = {});

// Probability that the SoI-to-CCI power ratio falls below z, for integer
// cluster counts on both channels. The omega fields of the scenario are
// ignored: the interferer power is normalized to 1 and the SoI power set to
// 10^(sir_db/10).
TaggedProb outage_probability(const InterferenceScenario& scenario,
                              double sir_db, double z,
                              const EvalConfig& cfg = {});

// Decision threshold lambda solving upper_gamma_reg(u, lambda/2) = pf by
// bracketed bisection to 1e-12 relative accuracy. Requires 0 < pf < 1.
double threshold_from_pf(double u, double pf, const EvalConfig& cfg = {});

// Detection probability at fixed SNR (no fading):
//   P_d = Q_u(sqrt(2 snr), sqrt(lambda)),
// so that snr = 0 gives upper_gamma_reg(u, lambda/2), the false-alarm
// probability for the same threshold.
double detection_probability_awgn(double u, double snr, double lambda,
                                  const EvalConfig& cfg = {});

// Average detection probability over kappa-mu fading of mean power omega.
// When u - mu is within 1e-9 of an integer the closed form (prefactor times
// the In transform) is used; otherwise the value is the direct quadrature
// average of the fixed-SNR probability over the fading density, tagged as a
// numeric result.
TaggedProb detection_probability_kappa_mu(const DetectionParams& d,
                                          const EvalConfig& cfg = {});

// The quadrature average that backs the non-integer-offset path, exposed so
// the closed form can be verified against it. Integrates in the normalized
// variable x = snr/omega so small omega loses no accuracy.
double detection_probability_numeric(const DetectionParams& d,
                                     const EvalConfig& cfg = {});

// Quadrature of the outage integrand (SoI CDF against the CCI density),
// an independent cross-check of the closed form.
double outage_probability_numeric(const InterferenceScenario& scenario,
                                  double sir_db, double z,
                                  const EvalConfig& cfg = {});

}  // namespace humbertq
