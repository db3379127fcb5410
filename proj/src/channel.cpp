#include "hfsk/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hfsk {

void LinkParams::validate() const {
    if (pt_su_w <= 0 || pt_pu_w <= 0 || n0 <= 0 || f1_hz <= 0 || symbol_s <= 0 || d_su_m <= 0 ||
        d_pu_m <= 0 || antenna_gain <= 0)
        throw std::invalid_argument("LinkParams: powers, frequencies, distances and durations must be positive");
    if (band_spacing_hz < 0) throw std::invalid_argument("LinkParams: negative band spacing");
    if (h < 2) throw std::invalid_argument("LinkParams: need at least 2 bands");
}

double received_power(double pt_w, double f_hz, double d_m, double antenna_gain) {
    if (f_hz <= 0 || d_m <= 0) throw std::invalid_argument("received_power: f and d must be positive");
    const double lambda = kSpeedOfLight / f_hz;
    const double factor = std::sqrt(antenna_gain) * lambda / (4.0 * std::numbers::pi * d_m);
    return pt_w * factor * factor;
}

std::vector<double> per_band_power_adjust(const LinkParams& params) {
    params.validate();
    std::vector<double> powers(static_cast<std::size_t>(params.h));
    for (int j = 0; j < params.h; ++j) {
        const double ratio = params.band_hz(j) / params.f1_hz;
        powers[static_cast<std::size_t>(j)] = params.pt_su_w * ratio * ratio;
    }
    return powers;
}

SinrCheck check_pu_sinr(const LinkParams& params, double p_i_su_w) {
    params.validate();
    const double p_r_pu = received_power(params.pt_pu_w, params.band_hz(1), params.d_pu_m, params.antenna_gain);
    const double sinr = p_r_pu / (params.n0 + p_i_su_w);
    return {sinr, sinr >= params.sinr_min};
}

DerivedEnergies derive_energies(const LinkParams& params, int pu_band) {
    params.validate();
    DerivedEnergies e;
    // Per-band power adjustment equalizes received power to the f1 value.
    const double p_r_su = received_power(params.pt_su_w, params.f1_hz, params.d_su_m, params.antenna_gain);
    e.es_r = p_r_su * params.symbol_s;
    const double p_i_pu =
        received_power(params.pt_pu_w, params.band_hz(pu_band), params.d_pu_m, params.antenna_gain);
    e.i_pu = p_i_pu * params.symbol_s;
    return e;
}

double su_power_for_snr(const LinkParams& params, double snr_db) {
    params.validate();
    const double es_target = params.n0 * std::pow(10.0, snr_db / 10.0);
    const double p_r_target = es_target / params.symbol_s;
    const double gain = received_power(1.0, params.f1_hz, params.d_su_m, params.antenna_gain);
    return p_r_target / gain;
}

OccupancyModel OccupancyModel::markov(int band, double r, double p) {
    if (r < 0 || r > 1 || p < 0 || p > 1)
        throw std::invalid_argument("OccupancyModel: r and p must lie in [0,1]");
    return {Kind::Markov, band, r, p};
}

OccupancyModel OccupancyModel::markov_with_p_on(int band, double p_on, double churn) {
    if (p_on < 0 || p_on > 1) throw std::invalid_argument("OccupancyModel: p_on must lie in [0,1]");
    if (churn <= 0 || churn > 1) throw std::invalid_argument("OccupancyModel: churn must lie in (0,1]");
    if (p_on == 0.0) return always_off(band);
    if (p_on == 1.0) return always_on(band);
    return markov(band, churn * (1.0 - p_on), churn * p_on);
}

double OccupancyModel::p_on() const {
    switch (kind) {
        case Kind::AlwaysOn: return 1.0;
        case Kind::AlwaysOff: return 0.0;
        case Kind::Markov: return steady_state(*this).second;
    }
    return 0.0;
}

bool OccupancyModel::sample_initial(Philox& rng) const {
    if (kind == Kind::Markov) return rng.bernoulli(p_on());
    return kind == Kind::AlwaysOn;
}

bool OccupancyModel::step(bool on, Philox& rng) const {
    switch (kind) {
        case Kind::AlwaysOn: return true;
        case Kind::AlwaysOff: return false;
        case Kind::Markov: return on ? !rng.bernoulli(r) : rng.bernoulli(p);
    }
    return on;
}

std::pair<double, double> steady_state(const OccupancyModel& model) {
    if (model.kind != OccupancyModel::Kind::Markov)
        throw std::invalid_argument("steady_state: defined for the Markov variant");
    const double sum = model.r + model.p;
    if (sum <= 0.0) throw std::domain_error("steady_state: degenerate chain (r + p = 0)");
    return {model.r / sum, model.p / sum};
}

bool demodulate_cell(bool q, bool pu_active, const DerivedEnergies& energies, double n0, int h, Philox& rng) {
    if (n0 <= 0 || h < 1 || energies.es_r < 0 || energies.i_pu < 0)
        throw std::invalid_argument("demodulate_cell: invalid parameters");
    double mean = 0.0;
    if (pu_active) {
        mean = std::sqrt(energies.i_pu / h);
    } else if (q) {
        mean = std::sqrt(energies.es_r / h);
    }
    const double phase = rng.uniform_angle();
    const auto noise = rng.next_normal_pair();
    const double sigma = std::sqrt(0.5 * n0);
    const double xi = mean * std::cos(phase) + sigma * noise[0];
    const double xq = mean * std::sin(phase) + sigma * noise[1];
    const double th = kThresholdFactor * std::sqrt(energies.es_r);
    return xi * xi + xq * xq >= th * th;
}

ReceivedMatrix transmit_matrix(const CodeMatrix& t, const std::vector<std::uint8_t>& pu_on,
                               const DerivedEnergies& energies, double n0, Philox& rng) {
    const int h = t.h;
    if (static_cast<int>(pu_on.size()) != h * h)
        throw std::invalid_argument("transmit_matrix: occupancy must cover H bands x H steps");
    ReceivedMatrix r;
    r.h = h;
    for (int col = 0; col < h; ++col) {
        for (int row = 0; row < h; ++row) {
            const bool q = t.cell(row, col);
            const bool on = pu_on[static_cast<std::size_t>(row * h + col)] != 0;
            if (demodulate_cell(q, on, energies, n0, h, rng))
                r.mask |= 1u << (col * h + row);
        }
    }
    return r;
}

} // namespace hfsk
