#pragma once

#include <cstdint>
#include <vector>

#include "hfsk/codebook.hpp"
#include "hfsk/rng.hpp"

namespace hfsk {

inline constexpr double kSpeedOfLight = 299792458.0;
// Hard-decision threshold factor: l_th = 0.6 * sqrt(Es_r).
inline constexpr double kThresholdFactor = 0.6;

// Radio-layer scalars. Defaults follow the IEEE 802.22-flavoured setup the
// experiments assume: f1 = 56 MHz, 6 MHz spacing, N0 = 2.5e-14, 1 MW PU,
// 10 m separations.
struct LinkParams {
    double pt_su_w = 4e-3;
    double pt_pu_w = 1e6;
    double n0 = 2.5e-14;
    double f1_hz = 56e6;
    double band_spacing_hz = 6e6;
    int h = 3;
    double symbol_s = 1.0 / 6e6;
    double d_su_m = 10.0;
    double d_pu_m = 10.0;
    double antenna_gain = 1.0;
    double sinr_min = 10.0; // ratio

    double band_hz(int band) const { return f1_hz + band * band_spacing_hz; }
    void validate() const;
};

struct DerivedEnergies {
    double es_r = 0.0; // received SU energy per code matrix (J)
    double i_pu = 0.0; // PU interference energy per symbol interval (J)
};

// Free-space received power, Eq.-(1) style.
double received_power(double pt_w, double f_hz, double d_m, double antenna_gain);

// Transmit powers per band equalizing the received power across bands to the
// f1 reference: P_T(f_j) = P_T * (f_j / f1)^2.
std::vector<double> per_band_power_adjust(const LinkParams& params);

struct SinrCheck {
    double sinr = 0.0;
    bool pass = false;
};

// PU receiver SINR guard. The PU receiver is taken co-located with the SU
// receiver geometry (d_pu from both transmitters); p_i_su_w is the SU
// interference power it sees.
SinrCheck check_pu_sinr(const LinkParams& params, double p_i_su_w);

// Energies implied by the link geometry; pu_band indexes the band carrying
// the PU used for the interference path loss.
DerivedEnergies derive_energies(const LinkParams& params, int pu_band);

// SU transmit power (at f1) required for a target received Es_r/N0.
double su_power_for_snr(const LinkParams& params, double snr_db);

// Per-band PU activity process. Markov direction per Eqs. (17)-(18):
// r = On->Off exit probability, p = Off->On entry probability, so
// P_Off = r/(r+p) and P_On = p/(r+p); larger r means more Off time.
struct OccupancyModel {
    enum class Kind { AlwaysOn, AlwaysOff, Markov };

    Kind kind = Kind::AlwaysOff;
    int band = 1;
    double r = 0.0;
    double p = 0.0;

    static OccupancyModel always_on(int band) { return {Kind::AlwaysOn, band, 0.0, 0.0}; }
    static OccupancyModel always_off(int band) { return {Kind::AlwaysOff, band, 0.0, 0.0}; }
    static OccupancyModel markov(int band, double r, double p);
    // Markov model hitting a target On probability with transition scale
    // churn = r + p.
    static OccupancyModel markov_with_p_on(int band, double p_on, double churn);

    double p_on() const;
    double p_off() const { return 1.0 - p_on(); }
    bool sample_initial(Philox& rng) const;
    // Advance one symbol interval.
    bool step(bool on, Philox& rng) const;
};

// Steady state (P_Off, P_On) of a Markov model; errors on r + p == 0.
std::pair<double, double> steady_state(const OccupancyModel& model);

struct ReceivedMatrix {
    int h = 0;
    std::uint32_t mask = 0;

    bool cell(int row, int col) const { return (mask >> (col * h + row)) & 1u; }
};

// One envelope-detector hard decision. Samples the random carrier phase and
// the two quadrature noises; returns 1 iff the envelope clears
// 0.6*sqrt(Es_r). When the PU is active the SU contribution is dropped (the
// PU dominates by assumption).
bool demodulate_cell(bool q, bool pu_active, const DerivedEnergies& energies, double n0, int h, Philox& rng);

// Occupancy of every band over the H time steps of one matrix.
// pu_on[band * h + step] (band-major).
ReceivedMatrix transmit_matrix(const CodeMatrix& t, const std::vector<std::uint8_t>& pu_on,
                               const DerivedEnergies& energies, double n0, Philox& rng);

} // namespace hfsk
