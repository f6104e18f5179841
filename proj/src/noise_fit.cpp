//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file noise_fit.cpp
//---------------------------------------------------------------------------//
#include "qrnglab/noise_fit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "qrnglab/core_model.hpp"
#include "qrnglab/errors.hpp"

namespace qrnglab
{
namespace
{
//---------------------------------------------------------------------------//
using Point = std::vector<double>;
using Objective = std::function<double(Point const&)>;

struct Minimum
{
    Point x;
    double f{0};
    int iterations{0};
    bool converged{false};
};

Minimum nelder_mead(Objective const& f, Point start, Point const& steps,
                    int max_iterations, double tolerance)
{
    std::size_t const dim = start.size();
    std::vector<Point> simplex(dim + 1, start);
    for (std::size_t i = 0; i < dim; ++i)
        simplex[i + 1][i] += steps[i];
    std::vector<double> values(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i)
        values[i] = f(simplex[i]);

    Minimum result;
    std::vector<std::size_t> order(dim + 1);
    for (int iter = 0; iter < max_iterations; ++iter)
    {
        for (std::size_t i = 0; i <= dim; ++i)
            order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) {
                      return values[a] < values[b];
                  });
        std::size_t best = order.front();
        std::size_t worst = order.back();
        std::size_t second = order[dim - 1];

        double spread = values[worst] - values[best];
        double size = 0;
        for (std::size_t i = 0; i <= dim; ++i)
            for (std::size_t k = 0; k < dim; ++k)
                size = std::max(size,
                                std::fabs(simplex[i][k] - simplex[best][k]));
        result.iterations = iter;
        if (spread <= tolerance * (1 + std::fabs(values[best])) && size < 1e-7)
        {
            result.converged = true;
            break;
        }

        Point centroid(dim, 0.0);
        for (std::size_t i = 0; i <= dim; ++i)
        {
            if (i == worst)
                continue;
            for (std::size_t k = 0; k < dim; ++k)
                centroid[k] += simplex[i][k] / dim;
        }
        auto along = [&](double t) {
            Point p(dim);
            for (std::size_t k = 0; k < dim; ++k)
                p[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
            return p;
        };

        Point reflected = along(-1);
        double fr = f(reflected);
        if (fr < values[best])
        {
            Point expanded = along(-2);
            double fe = f(expanded);
            if (fe < fr)
            {
                simplex[worst] = expanded;
                values[worst] = fe;
            }
            else
            {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[second])
        {
            simplex[worst] = reflected;
            values[worst] = fr;
            continue;
        }
        Point contracted = fr < values[worst] ? along(-0.5) : along(0.5);
        double fc = f(contracted);
        if (fc < std::min(fr, values[worst]))
        {
            simplex[worst] = contracted;
            values[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= dim; ++i)
        {
            if (i == best)
                continue;
            for (std::size_t k = 0; k < dim; ++k)
                simplex[i][k] = simplex[best][k]
                                + 0.5 * (simplex[i][k] - simplex[best][k]);
            values[i] = f(simplex[i]);
        }
    }
    auto best = std::min_element(values.begin(), values.end())
                - values.begin();
    result.x = simplex[best];
    result.f = values[best];
    return result;
}

// Invert a small symmetric matrix by Gauss-Jordan; false if singular
bool invert(std::vector<double>& m, std::size_t n)
{
    std::vector<double> inv(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        inv[i * n + i] = 1;
    for (std::size_t col = 0; col < n; ++col)
    {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(m[r * n + col]) > std::fabs(m[pivot * n + col]))
                pivot = r;
        if (std::fabs(m[pivot * n + col]) < 1e-300)
            return false;
        for (std::size_t k = 0; k < n; ++k)
        {
            std::swap(m[col * n + k], m[pivot * n + k]);
            std::swap(inv[col * n + k], inv[pivot * n + k]);
        }
        double d = m[col * n + col];
        for (std::size_t k = 0; k < n; ++k)
        {
            m[col * n + k] /= d;
            inv[col * n + k] /= d;
        }
        for (std::size_t r = 0; r < n; ++r)
        {
            if (r == col)
                continue;
            double factor = m[r * n + col];
            for (std::size_t k = 0; k < n; ++k)
            {
                m[r * n + k] -= factor * m[col * n + k];
                inv[r * n + k] -= factor * inv[col * n + k];
            }
        }
    }
    m = std::move(inv);
    return true;
}

//---------------------------------------------------------------------------//
}  // namespace

//---------------------------------------------------------------------------//
NoiseFit fit_noise_model(std::span<double const> counts, ChipParams const& chip,
                         NoiseParams const& init, NoiseFitOptions const& options)
{
    chip.validate();
    init.validate();
    require(counts.size() == static_cast<std::size_t>(chip.num_codes()),
            "histogram length must equal the number of ADC codes");

    double total = 0;
    double mean = 0;
    for (std::size_t z = 0; z < counts.size(); ++z)
    {
        require(counts[z] >= 0 && std::isfinite(counts[z]),
                "histogram counts must be finite and non-negative");
        total += counts[z];
        mean += counts[z] * static_cast<double>(z);
    }
    require(total >= options.min_total_count,
            "histogram has too few counts to fit");
    mean /= total;
    double variance = 0;
    for (std::size_t z = 0; z < counts.size(); ++z)
    {
        double d = static_cast<double>(z) - mean;
        variance += counts[z] * d * d;
    }
    variance /= total;

    if (counts.front() > options.clip_limit * total
        || counts.back() > options.clip_limit * total)
    {
        std::ostringstream msg;
        msg << "unfittable: clipped histogram (" << counts.front() / total
            << " of the mass at code 0, " << counts.back() / total
            << " at code " << chip.z_max() << ")";
        throw UnfittableError(msg.str());
    }

    std::size_t const dim = options.fit_gain ? 4 : 3;

    // Natural parameters (mu_r, sigma_r, mu_dark[, K]) from the search
    // coordinates (mu_r, log sigma_r, sqrt mu_dark[, K])
    auto natural = [&](Point const& u) {
        Point theta{u[0], std::exp(u[1]), u[2] * u[2]};
        if (options.fit_gain)
            theta.push_back(u[3]);
        return theta;
    };
    auto nll = [&](Point const& theta) {
        ChipParams c = chip;
        if (options.fit_gain)
        {
            if (!(theta[3] > 0 && theta[3] <= 1))
                return std::numeric_limits<double>::infinity();
            c.gain_k = theta[3];
        }
        NoiseParams noise{theta[0], theta[1], theta[2]};
        if (!(noise.sigma_r > 1e-6) || !(noise.sigma_r < 1e3)
            || !(noise.mu_dark < 1e5))
        {
            return std::numeric_limits<double>::infinity();
        }
        auto pmf = adc_output_pmf(SourceParams{0}, noise, c);
        double sum = 0;
        for (std::size_t z = 0; z < counts.size(); ++z)
        {
            if (counts[z] > 0)
                sum -= counts[z] * std::log(std::max(pmf(z), 1e-300));
        }
        return sum;
    };
    auto objective = [&](Point const& u) { return nll(natural(u)); };

    // Starts along the line of constant mean code, centred on the moment
    // estimate Var Z ~ K^2 mu_dark + sigma_r^2 + 1/12. The pile-up comb makes
    // the likelihood multimodal in mu_r, hence the scan.
    double const k0 = chip.gain_k;
    std::vector<Point> starts;
    auto add_start = [&](double mu_r, double mu_dark) {
        Point u{mu_r, std::log(std::max(init.sigma_r, 0.05)),
                std::sqrt(std::max(mu_dark, 0.0))};
        if (options.fit_gain)
            u.push_back(k0);
        starts.push_back(u);
    };
    add_start(init.mu_r, init.mu_dark);
    double const sigma0 = std::max(init.sigma_r, 0.05);
    double const dark0
        = std::max(0.0, (variance - 1.0 / 12 - sigma0 * sigma0) / (k0 * k0));
    double const mu_r0 = mean + 0.5 - chip.adc_offset - k0 * dark0;
    for (double delta = -2; delta <= 2; delta += 0.25)
    {
        double mu_r = mu_r0 + delta;
        double mu_dark = (mean + 0.5 - mu_r - chip.adc_offset) / k0;
        add_start(mu_r, mu_dark);
    }

    Point steps{0.3, 0.3, 0.5};
    if (options.fit_gain)
        steps.push_back(0.02);

    Minimum best;
    best.f = std::numeric_limits<double>::infinity();
    for (auto const& start : starts)
    {
        auto run = nelder_mead(objective, start, steps, options.max_iterations,
                               options.tolerance);
        // Restart once from the optimum to undo any premature collapse
        auto again = nelder_mead(objective, run.x, steps,
                                 options.max_iterations, options.tolerance);
        again.iterations += run.iterations;
        if (again.f < best.f)
            best = again;
    }
    auto theta = natural(best.x);
    if (!best.converged)
    {
        std::ostringstream msg;
        msg << "noise fit did not converge after " << best.iterations
            << " iterations; last iterate mu_r=" << theta[0]
            << " sigma_r=" << theta[1] << " mu_dark=" << theta[2];
        throw FitError(msg.str());
    }

    NoiseFit fit;
    fit.params = {theta[0], theta[1], theta[2]};
    fit.gain_k = options.fit_gain ? theta[3] : chip.gain_k;
    fit.neg_log_likelihood = best.f;
    fit.iterations = best.iterations;

    // Observed information by central differences in natural parameters
    std::vector<double> hess(dim * dim, 0.0);
    Point h(dim);
    for (std::size_t i = 0; i < dim; ++i)
        h[i] = 1e-4 * std::max(1.0, std::fabs(theta[i]));
    // A dark mean on its zero bound is evaluated one step inside
    theta[2] = std::max(theta[2], h[2]);
    double const f0 = nll(theta);
    for (std::size_t i = 0; i < dim; ++i)
    {
        for (std::size_t j = i; j < dim; ++j)
        {
            double value;
            if (i == j)
            {
                Point plus = theta, minus = theta;
                plus[i] += h[i];
                minus[i] -= h[i];
                value = (nll(plus) - 2 * f0 + nll(minus)) / (h[i] * h[i]);
            }
            else
            {
                Point pp = theta, pm = theta, mp = theta, mm = theta;
                pp[i] += h[i], pp[j] += h[j];
                pm[i] += h[i], pm[j] -= h[j];
                mp[i] -= h[i], mp[j] += h[j];
                mm[i] -= h[i], mm[j] -= h[j];
                value = (nll(pp) - nll(pm) - nll(mp) + nll(mm))
                        / (4 * h[i] * h[j]);
            }
            hess[i * dim + j] = value;
            hess[j * dim + i] = value;
        }
    }
    fit.covariance = hess;
    fit.std_errors.assign(dim, std::numeric_limits<double>::quiet_NaN());
    if (invert(fit.covariance, dim))
    {
        for (std::size_t i = 0; i < dim; ++i)
        {
            double var = fit.covariance[i * dim + i];
            if (var > 0 && std::isfinite(var))
                fit.std_errors[i] = std::sqrt(var);
        }
    }
    else
    {
        fit.covariance.assign(dim * dim,
                              std::numeric_limits<double>::quiet_NaN());
    }

    // Pearson chi-square over bins with at least five expected counts
    ChipParams fitted_chip = chip;
    fitted_chip.gain_k = fit.gain_k;
    auto pmf = adc_output_pmf(SourceParams{0}, fit.params, fitted_chip);
    int bins = 0;
    for (std::size_t z = 0; z < counts.size(); ++z)
    {
        double expected = total * pmf(z);
        if (expected < 5)
            continue;
        double diff = counts[z] - expected;
        fit.chi2 += diff * diff / expected;
        ++bins;
    }
    fit.chi2_dof = std::max(0, bins - static_cast<int>(dim) - 1);
    return fit;
}

NoiseParams to_default_offset(NoiseParams const& fitted, double shift_steps)
{
    NoiseParams result = fitted;
    result.mu_r -= shift_steps;
    return result;
}

//---------------------------------------------------------------------------//
}  // namespace qrnglab
