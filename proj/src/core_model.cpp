//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file core_model.cpp
//---------------------------------------------------------------------------//
#include "qrnglab/core_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "qrnglab/errors.hpp"
#include "qrnglab/parallel.hpp"
#include "qrnglab/poisson.hpp"
#include "qrnglab/quadrature.hpp"

namespace qrnglab
{
namespace
{
//---------------------------------------------------------------------------//
// Added before flooring so that K*n landing on an integer up to rounding
// (e.g. 0.8192 * 625) maps to that integer's code.
constexpr double quantize_guard = 1e-9;

// Gaussian bins further than this many sigmas from the mean are dropped
constexpr double bin_sigmas = 10.0;

constexpr double inf = std::numeric_limits<double>::infinity();

int clamp_code(std::int64_t z, ChipParams const& chip)
{
    return static_cast<int>(
        std::clamp<std::int64_t>(z, chip.z_min(), chip.z_max()));
}

std::int64_t floor_code(double x)
{
    return static_cast<std::int64_t>(std::floor(x + quantize_guard));
}

//---------------------------------------------------------------------------//
// Photo-electron distribution restricted to its truncated support
struct PhotonWeights
{
    CountRange range;
    std::vector<double> weights;
    double missing{0};
};

PhotonWeights photon_weights(double mu, double tail_eps)
{
    PhotonWeights result;
    result.range = truncated_poisson_support(mu, tail_eps);
    result.weights = poisson_weights(mu, result.range);
    double captured = 0;
    for (double w : result.weights)
        captured += w;
    result.missing = std::max(0.0, 1 - captured);
    return result;
}

//---------------------------------------------------------------------------//
// Region of readout-noise values over which the guessed symbol pmf is fixed
struct Piece
{
    double lo;
    double hi;
    double value;
};

struct StepEvent
{
    double r;
    std::int64_t n;
    std::int64_t code;
};

/*!
 * Split [a, b] of readout-noise values r into pieces on which every
 * photo-electron count n lands in a fixed code, and record on each piece the
 * largest symbol probability (restricted to accepted codes when a window is
 * given).
 *
 * The code of count n is floor(K n + shift + r); it steps up by one each
 * time the argument crosses an integer, moving that count's weight to the
 * neighboring symbol.
 */
void collect_pieces(double shift, double a, double b,
                    PhotonWeights const& photons, ChipParams const& chip,
                    std::optional<CodeWindow> const& accept,
                    std::vector<StepEvent>& events, std::vector<Piece>& out)
{
    auto symbol_slot = [&](std::int64_t raw_code) -> int {
        int z = clamp_code(raw_code, chip);
        if (accept && (z < accept->lo || z > accept->hi))
            return -1;
        return extract_symbol(z, chip);
    };

    double const k = chip.gain_k;
    std::array<double, 4> mass{0, 0, 0, 0};
    events.clear();
    for (std::int64_t n = photons.range.lo; n <= photons.range.hi; ++n)
    {
        double base = k * static_cast<double>(n) + shift;
        std::int64_t first = floor_code(base + a);
        std::int64_t last = floor_code(base + b);
        int slot = symbol_slot(first);
        if (slot >= 0)
            mass[slot] += photons.weights[n - photons.range.lo];
        for (std::int64_t j = first + 1; j <= last; ++j)
        {
            double r = static_cast<double>(j) - quantize_guard - base;
            events.push_back({std::clamp(r, a, b), n, j});
        }
    }
    std::sort(events.begin(), events.end(),
              [](StepEvent const& x, StepEvent const& y) { return x.r < y.r; });

    auto best = [&mass] { return *std::max_element(mass.begin(), mass.end()); };

    double prev = a;
    for (auto const& ev : events)
    {
        if (ev.r > prev)
        {
            out.push_back({prev, ev.r, best()});
            prev = ev.r;
        }
        double w = photons.weights[ev.n - photons.range.lo];
        int from = symbol_slot(ev.code - 1);
        int to = symbol_slot(ev.code);
        if (from != to)
        {
            if (from >= 0)
                mass[from] -= w;
            if (to >= 0)
                mass[to] += w;
        }
    }
    if (b > prev)
        out.push_back({prev, b, best()});
}

// Largest accepted symbol probability at one fixed noise realization
double guess_at(double e, PhotonWeights const& photons,
                ChipParams const& chip, std::optional<CodeWindow> const& accept)
{
    std::array<double, 4> mass{0, 0, 0, 0};
    for (std::int64_t n = photons.range.lo; n <= photons.range.hi; ++n)
    {
        int z = quantize(chip.gain_k * static_cast<double>(n) + e
                             + chip.adc_offset,
                         chip);
        if (accept && (z < accept->lo || z > accept->hi))
            continue;
        mass[extract_symbol(z, chip)] += photons.weights[n - photons.range.lo];
    }
    return *std::max_element(mass.begin(), mass.end());
}

EntropyResult make_result(double p_raw, double bound, int symbol_bits)
{
    EntropyResult result;
    result.truncation_bound = bound;
    result.p_guess = std::min(1.0, p_raw + bound);
    result.h_min_total = -std::log2(result.p_guess);
    if (result.h_min_total == 0)
        result.h_min_total = 0;  // normalize -0
    result.h_min_per_bit = result.h_min_total / symbol_bits;
    return result;
}

//---------------------------------------------------------------------------//
}  // namespace

//---------------------------------------------------------------------------//
void QuadratureSpec::validate() const
{
    require(tail_eps > 0 && tail_eps < 1, "tail_eps must lie in (0, 1)");
    require(range_sigmas > 0, "range_sigmas must be positive");
    require(gl_order >= 1 && gl_order <= 128, "gl_order must be 1..128");
    require(initial_panels >= 1, "initial_panels must be positive");
    require(max_refinements >= 1 && max_refinements <= 20,
            "max_refinements must be 1..20");
    require(tolerance > 0, "tolerance must be positive");
    require(divergence_limit >= tolerance,
            "divergence_limit must not be below tolerance");
}

int quantize(double x, ChipParams const& chip)
{
    if (std::isnan(x))
        throw DomainError("cannot quantize NaN");
    if (x < chip.z_min())
        return chip.z_min();
    if (x > chip.z_max() + 1)
        return chip.z_max();
    return clamp_code(floor_code(x), chip);
}

double noise_pdf(double e, NoiseParams const& noise, ChipParams const& chip,
                 double tail_eps)
{
    noise.validate();
    chip.validate();
    require(noise.sigma_r > 0, "noise density requires sigma_r > 0");

    auto range = truncated_poisson_support(noise.mu_dark, tail_eps);
    double density = 0;
    for (std::int64_t n = range.lo; n <= range.hi; ++n)
    {
        density += poisson_pmf(n, noise.mu_dark)
                   * normal_pdf(e, noise.mu_r + chip.gain_k * n, noise.sigma_r);
    }
    return density;
}

Pmf adc_output_pmf(SourceParams const& source, NoiseParams const& noise,
                   ChipParams const& chip, double tail_eps)
{
    source.validate();
    noise.validate();
    chip.validate();
    require(tail_eps > 0 && tail_eps < 1, "tail_eps must lie in (0, 1)");

    // Photo- and dark electrons see the same gain, so only their total
    // count matters; the sum of independent Poissons is Poisson.
    double mu_total = source.mu_e + noise.mu_dark;
    auto range = truncated_poisson_support(mu_total, tail_eps);
    auto weights = poisson_weights(mu_total, range);

    double const sigma = noise.sigma_r;
    double const shift = noise.mu_r + chip.adc_offset + quantize_guard;
    int const z_max = chip.z_max();
    std::vector<double> probs(chip.num_codes(), 0.0);

    for (std::int64_t n = range.lo; n <= range.hi; ++n)
    {
        double w = weights[n - range.lo];
        double x0 = chip.gain_k * static_cast<double>(n) + shift;
        if (sigma == 0)
        {
            probs[quantize(x0 - quantize_guard, chip)] += w;
            continue;
        }
        int lo = clamp_code(
            static_cast<std::int64_t>(std::floor(x0 - bin_sigmas * sigma)),
            chip);
        int hi = clamp_code(
            static_cast<std::int64_t>(std::floor(x0 + bin_sigmas * sigma)),
            chip);
        for (int z = lo; z <= hi; ++z)
        {
            double lower = z == 0 ? -inf : z;
            double upper = z == z_max ? inf : z + 1;
            probs[z] += w * normal_interval_mass(lower, upper, x0, sigma);
        }
    }

    Pmf result(0, std::move(probs));
    result.normalize();
    return result;
}

int extract_symbol(int z, ChipParams const& chip)
{
    if (z < chip.z_min() || z > chip.z_max())
    {
        std::ostringstream msg;
        msg << "ADC code " << z << " outside [0, " << chip.z_max() << "]";
        throw DomainError(msg.str());
    }
    int low = (z >> chip.retained_bits[0]) & 1;
    int high = (z >> chip.retained_bits[1]) & 1;
    return (high << 1) | low;
}

Pmf symbol_pmf(Pmf const& pmf_z, ChipParams const& chip)
{
    std::vector<double> probs(4, 0.0);
    for (std::int64_t z = pmf_z.first(); z <= pmf_z.last(); ++z)
    {
        double p = pmf_z(z);
        if (p > 0)
            probs[extract_symbol(static_cast<int>(z), chip)] += p;
    }
    Pmf result(0, std::move(probs));
    result.normalize();
    return result;
}

Pmf conditional_symbol_pmf(double e, SourceParams const& source,
                           ChipParams const& chip, double tail_eps)
{
    source.validate();
    chip.validate();
    require(std::isfinite(e), "noise realization must be finite");

    auto photons = photon_weights(source.mu_e, tail_eps);
    std::vector<double> probs(4, 0.0);
    for (std::int64_t n = photons.range.lo; n <= photons.range.hi; ++n)
    {
        int z = quantize(chip.gain_k * static_cast<double>(n) + e
                             + chip.adc_offset,
                         chip);
        probs[extract_symbol(z, chip)] += photons.weights[n - photons.range.lo];
    }
    Pmf result(0, std::move(probs));
    result.normalize();
    return result;
}

EntropyResult min_entropy_conditional(SourceParams const& source,
                                      NoiseParams const& noise,
                                      ChipParams const& chip,
                                      QuadratureSpec const& quad,
                                      std::optional<CodeWindow> accept)
{
    source.validate();
    noise.validate();
    chip.validate();
    quad.validate();

    double acceptance = 1;
    if (accept)
    {
        require(accept->lo <= accept->hi, "empty acceptance window");
        auto pmf = adc_output_pmf(source, noise, chip, quad.tail_eps);
        acceptance = 0;
        for (int z = accept->lo; z <= accept->hi; ++z)
            acceptance += pmf(z);
        require(acceptance > 0, "acceptance window has zero probability");
    }

    auto photons = photon_weights(source.mu_e, quad.tail_eps);
    auto dark_range = truncated_poisson_support(noise.mu_dark, quad.tail_eps);
    auto dark_weights = poisson_weights(noise.mu_dark, dark_range);

    double dark_captured = 0;
    for (double w : dark_weights)
        dark_captured += w;
    double bound = std::max(0.0, 1 - dark_captured) + photons.missing;

    double const k = chip.gain_k;
    double const sigma = noise.sigma_r;

    if (sigma == 0)
    {
        double p_raw = 0;
        for (std::int64_t nd = dark_range.lo; nd <= dark_range.hi; ++nd)
        {
            double e = noise.mu_r + k * static_cast<double>(nd);
            p_raw += dark_weights[nd - dark_range.lo]
                     * guess_at(e, photons, chip, accept);
        }
        return make_result(p_raw / acceptance, bound / acceptance, 2);
    }

    double const a = noise.mu_r - quad.range_sigmas * sigma;
    double const b = noise.mu_r + quad.range_sigmas * sigma;
    bound += 2 * normal_cdf(-quad.range_sigmas);

    // Pieces of every dark-electron component, tagged by their weight
    struct Component
    {
        double weight;
        std::size_t begin;
        std::size_t end;
    };
    std::vector<Component> components;
    std::vector<Piece> pieces;
    std::vector<StepEvent> events;
    for (std::int64_t nd = dark_range.lo; nd <= dark_range.hi; ++nd)
    {
        double shift = k * static_cast<double>(nd) + chip.adc_offset;
        std::size_t begin = pieces.size();
        collect_pieces(shift, a, b, photons, chip, accept, events, pieces);
        components.push_back(
            {dark_weights[nd - dark_range.lo], begin, pieces.size()});
    }

    auto const rule = gauss_legendre(quad.gl_order);
    auto density = [&](double r) {
        return normal_pdf(r, noise.mu_r, sigma);
    };
    auto estimate = [&](int panels) {
        double total = 0;
        for (auto const& comp : components)
        {
            double sum = 0;
            for (std::size_t i = comp.begin; i < comp.end; ++i)
            {
                auto const& piece = pieces[i];
                sum += piece.value
                       * integrate(density, piece.lo, piece.hi, rule, panels);
            }
            total += comp.weight * sum;
        }
        return total;
    };

    int panels = quad.initial_panels;
    double previous = estimate(panels);
    double current = previous;
    double delta = 0;
    int level = 0;
    for (level = 1; level <= quad.max_refinements; ++level)
    {
        panels *= 2;
        current = estimate(panels);
        delta = std::fabs(current - previous);
        if (delta < quad.tolerance)
            break;
        previous = current;
    }
    if (delta > quad.divergence_limit)
    {
        std::ostringstream msg;
        msg << "guessing-probability quadrature did not converge at mu_e = "
            << source.mu_e << " (last refinement changed p_guess by " << delta
            << ")";
        throw ConvergenceError(msg.str(), source.mu_e, delta);
    }

    auto result = make_result(current / acceptance, bound / acceptance, 2);
    result.quadrature_delta = delta;
    result.refinements = std::min(level, quad.max_refinements);
    return result;
}

EntropyResult min_entropy_unconditional(Pmf const& pmf_symbols, int symbol_bits)
{
    require(!pmf_symbols.empty(), "empty symbol pmf");
    require(symbol_bits >= 1, "symbol_bits must be positive");
    double total = pmf_symbols.total();
    require(std::fabs(total - 1) < 1e-9, "symbol pmf is not normalized");
    return make_result(pmf_symbols.max_prob(), 0.0, symbol_bits);
}

std::vector<CurvePoint> entropy_curve(std::span<double const> mu_e_grid,
                                      NoiseParams const& noise,
                                      ChipParams const& chip,
                                      QuadratureSpec const& quad)
{
    require(!mu_e_grid.empty(), "entropy curve needs a non-empty grid");
    for (std::size_t i = 1; i < mu_e_grid.size(); ++i)
    {
        require(mu_e_grid[i] > mu_e_grid[i - 1],
                "entropy curve grid must be strictly ascending");
    }

    std::vector<CurvePoint> curve(mu_e_grid.size());
    parallel_for(curve.size(), [&](std::size_t i) {
        curve[i].mu_e = mu_e_grid[i];
        curve[i].result = min_entropy_conditional(
            SourceParams{mu_e_grid[i]}, noise, chip, quad);
    });
    return curve;
}

//---------------------------------------------------------------------------//
}  // namespace qrnglab
