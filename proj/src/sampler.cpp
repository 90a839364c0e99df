#include "spinspec/sampler.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "spinspec/config.hpp"
#include "spinspec/numerics.hpp"
#include "spinspec/rng.hpp"

namespace spinspec {

void validate_noise(const NoiseModel& m) {
    if (const auto* sh = std::get_if<Shots>(&m)) {
        if (sh->R < 1) throw std::invalid_argument("noise.R: need R >= 1");
    } else if (const auto* g = std::get_if<AdditiveGaussian>(&m)) {
        if (!(g->sigma_g >= 0.0))
            throw std::invalid_argument("noise.sigma_g: need sigma_g >= 0");
    }
}

std::string noise_name(const NoiseModel& m) {
    if (std::holds_alternative<Exact>(m)) return "exact";
    if (std::holds_alternative<Shots>(m)) return "shots";
    return "gaussian";
}

std::complex<double> exact_g(const std::vector<EnergyLevel>& levels,
                             std::int64_t dimension, double t) {
    KahanSum re, im;
    for (const auto& lv : levels) {
        const double d = static_cast<double>(lv.degeneracy);
        re.add(d * std::cos(lv.energy * t));
        im.add(d * -std::sin(lv.energy * t));
    }
    const double inv = 1.0 / static_cast<double>(dimension);
    return {re.value() * inv, im.value() * inv};
}

std::complex<double> exact_g(const Spectrum& s, double t) {
    return exact_g(energy_levels(s), s.dimension, t);
}

CircuitProbabilities circuit_probabilities(std::complex<double> g) {
    const double re = g.real(), im = g.imag();
    if (std::norm(g) > 1.0 + 1e-12)
        throw std::domain_error("circuit probabilities: |g| > 1");
    CircuitProbabilities p;
    p.p_x0 = 0.25 * ((1.0 - im) * (1.0 - im) + re * re);  // |1 + i g|^2 / 4
    p.p_x1 = 0.25 * ((1.0 + im) * (1.0 + im) + re * re);  // |1 - i g|^2 / 4
    p.p_y0 = 0.25 * ((1.0 + re) * (1.0 + re) + im * im);  // |1 + g|^2 / 4
    p.p_y1 = 0.25 * ((1.0 - re) * (1.0 - re) + im * im);  // |1 - g|^2 / 4
    return p;
}

std::vector<std::complex<double>> exact_series(
    const std::vector<EnergyLevel>& levels, std::int64_t dimension,
    const SamplingPlan& plan, double energy_offset) {
    const std::int64_t half = plan.N / 2;
    std::vector<std::complex<double>> out(
        static_cast<std::size_t>(half) + 1);
    for (std::int64_t l = 0; l <= half; ++l) {
        const double t = l * plan.dt;
        std::complex<double> g = exact_g(levels, dimension, t);
        if (energy_offset != 0.0) {
            // spectrum shifted by +offset: g picks up e^{-i offset t}
            const double ph = energy_offset * t;
            g *= std::complex<double>(std::cos(ph), -std::sin(ph));
        }
        out[static_cast<std::size_t>(l)] = g;
    }
    return out;
}

namespace {

// R trinomial draws from (p0, p1, 1-p0-p1); returns (count0 - count1)/R.
double trinomial_difference(SplitMix64& rng, double p0, double p1,
                            std::int64_t R) {
    std::int64_t c0 = 0, c1 = 0;
    for (std::int64_t rep = 0; rep < R; ++rep) {
        const double u = rng.uniform();
        if (u < p0)
            ++c0;
        else if (u < p0 + p1)
            ++c1;
    }
    return static_cast<double>(c0 - c1) / static_cast<double>(R);
}

}  // namespace

std::vector<std::complex<double>> apply_noise(
    const SamplingPlan& plan, const std::vector<std::complex<double>>& base,
    const NoiseModel& noise, std::uint64_t seed) {
    validate_noise(noise);
    if (std::holds_alternative<Exact>(noise)) return base;
    std::vector<std::complex<double>> out(base.size());
    for (std::size_t l = 0; l < base.size(); ++l) {
        SplitMix64 rng(substream_seed(seed, 0, l));
        if (const auto* sh = std::get_if<Shots>(&noise)) {
            const auto p = circuit_probabilities(base[l]);
            // X quadrature first, then Y; Im g = p_x1 - p_x0, Re g = p_y0 - p_y1.
            const double im = -trinomial_difference(rng, p.p_x0, p.p_x1, sh->R);
            const double re = trinomial_difference(rng, p.p_y0, p.p_y1, sh->R);
            out[l] = {re, im};
        } else {
            const double sg = std::get<AdditiveGaussian>(noise).sigma_g;
            auto [z_re, z_im] = rng.normal_pair();
            out[l] = base[l] + std::complex<double>(sg * z_re, sg * z_im);
        }
    }
    (void)plan;
    return out;
}

SampleSet sample_series(const Spectrum& s, const SamplingPlan& plan,
                        const NoiseModel& noise, std::uint64_t seed,
                        double energy_offset) {
    const auto levels = energy_levels(s);
    const auto base = exact_series(levels, s.dimension, plan, energy_offset);
    const auto values = apply_noise(plan, base, noise, seed);
    SampleSet set;
    set.plan = plan;
    set.noise = noise;
    set.seed = seed;
    set.dimension = s.dimension;
    set.n = s.n;
    set.energy_offset = energy_offset;
    set.samples.reserve(values.size());
    for (std::size_t l = 0; l < values.size(); ++l)
        set.samples.push_back(
            {static_cast<std::int64_t>(l), l * plan.dt, values[l]});
    return set;
}

double shots_mean_component_variance(std::int64_t R) {
    if (R < 1) throw std::invalid_argument("shots variance: R < 1");
    // Var(Re) + Var(Im) = [(1+|g|^2)/2 - Re^2 + (1+|g|^2)/2 - Im^2]/R = 1/R
    // for any g, so the per-component mean is 1/(2R) exactly.
    return 0.5 / static_cast<double>(R);
}

void write_sample_set_csv(std::ostream& out, const SampleSet& set) {
    nlohmann::json meta;
    meta["plan"] = plan_to_json(set.plan);
    meta["noise"] = noise_to_json(set.noise);
    meta["seed"] = set.seed;
    meta["dimension"] = set.dimension;
    meta["n"] = set.n;
    meta["energy_offset"] = set.energy_offset;
    meta["config_hash"] = set.config_hash;
    out << "# meta: " << meta.dump() << "\n";
    out << "l,t,re,im\n";
    for (const auto& s : set.samples)
        out << s.l << ',' << format_double(s.t) << ','
            << format_double(s.g.real()) << ',' << format_double(s.g.imag())
            << '\n';
}

SampleSet read_sample_set_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# meta: ", 0) != 0)
        throw std::runtime_error("sample set: missing '# meta:' header line");
    const nlohmann::json meta = nlohmann::json::parse(line.substr(8));
    SampleSet set;
    set.plan = plan_from_json(meta.at("plan"));
    set.noise = noise_from_json(meta.at("noise"));
    set.seed = meta.at("seed").get<std::uint64_t>();
    set.dimension = meta.at("dimension").get<std::int64_t>();
    set.n = meta.at("n").get<int>();
    set.energy_offset = meta.at("energy_offset").get<double>();
    set.config_hash = meta.value("config_hash", "");
    if (!std::getline(in, line) || line != "l,t,re,im")
        throw std::runtime_error("sample set: missing column header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        Sample s;
        std::getline(row, field, ',');
        s.l = std::stoll(field);
        std::getline(row, field, ',');
        s.t = std::stod(field);
        std::getline(row, field, ',');
        const double re = std::stod(field);
        std::getline(row, field, ',');
        const double im = std::stod(field);
        s.g = {re, im};
        set.samples.push_back(s);
    }
    return set;
}

}  // namespace spinspec
