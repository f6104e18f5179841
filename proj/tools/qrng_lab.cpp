//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tools/qrng_lab.cpp
//! Command-line driver: simulate, analyze, fit and sweep.
//---------------------------------------------------------------------------//
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "json.hpp"
#include "qrnglab/qrnglab.h"

namespace
{
using namespace qrnglab::cli;
using json = nlohmann::json;

enum ExitCode
{
    exit_ok = 0,
    exit_config = 2,
    exit_numeric = 3,
    exit_io = 4,
};

struct Failure
{
    int code;
    std::string message;
};

int exit_for(qrng_status s)
{
    switch (s)
    {
        case QRNG_OK:
            return exit_ok;
        case QRNG_ERR_INVALID_ARGUMENT:
        case QRNG_ERR_DOMAIN:
            return exit_config;
        case QRNG_ERR_IO:
        case QRNG_ERR_FORMAT:
            return exit_io;
        default:
            return exit_numeric;
    }
}

void call(qrng_status s, std::string const& context)
{
    if (s != QRNG_OK)
        throw Failure{exit_for(s), context + ": " + qrng_last_error()};
}

using ModelPtr = std::unique_ptr<qrng_model, decltype(&qrng_model_destroy)>;
using BatchPtr = std::unique_ptr<qrng_batch, decltype(&qrng_batch_destroy)>;

ModelPtr make_model(RunConfig const& cfg)
{
    auto pixels = cfg.pixels();
    std::vector<double> mu_e;
    std::vector<qrng_noise_params> noise;
    for (auto const& p : pixels)
    {
        mu_e.push_back(p.mu_e);
        noise.push_back(p.noise);
    }
    qrng_model* raw = nullptr;
    call(qrng_model_create(&cfg.chip, pixels.size(), mu_e.data(),
                           noise.data(), &raw),
         "pixel model");
    return {raw, &qrng_model_destroy};
}

BatchPtr read_batch(std::string const& path)
{
    qrng_batch* raw = nullptr;
    call(qrng_frames_read(path.c_str(), &raw), "reading " + path);
    return {raw, &qrng_batch_destroy};
}

//---------------------------------------------------------------------------//
std::string fmt(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

//! Write text to a file, or stdout for an empty path or "-"
void emit(std::string const& path, std::string const& text)
{
    if (path.empty() || path == "-")
    {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out)
        throw Failure{exit_io, "cannot write " + path};
}

std::string csv_preamble(std::string const& command, std::uint64_t digest,
                         std::vector<std::string> const& extra = {})
{
    std::ostringstream os;
    os << "# qrng-lab " << qrng_version() << ' ' << command << '\n';
    os << "# config_digest: " << hex_digest(digest) << '\n';
    for (auto const& line : extra)
        os << "# " << line << '\n';
    return os.str();
}

json report_header(std::string const& command, std::uint64_t digest)
{
    return {{"generator", std::string("qrng-lab ") + qrng_version()},
            {"command", command},
            {"config_digest", hex_digest(digest)}};
}

RunConfig config_or_default(std::string const& path,
                            bool* has_grid = nullptr)
{
    return path.empty() ? RunConfig{} : load_config(path, has_grid);
}

double per_bit_min_entropy(double const* p)
{
    double p_max = *std::max_element(p, p + 4);
    return p_max >= 1 ? 0.0 : -std::log2(p_max) / 2;
}

//---------------------------------------------------------------------------//
struct PmfArgs
{
    std::string config;
    std::optional<double> mu_e;
    bool no_noise{false};
    std::string out;
};

int cmd_pmf(PmfArgs const& a)
{
    auto cfg = config_or_default(a.config);
    if (a.mu_e)
        cfg.mu_e = *a.mu_e;
    if (cfg.mu_e < 0)
        throw ConfigError("--mu-e: must be non-negative");
    if (a.no_noise)
        cfg.noise = {0, 0, 0};

    std::size_t n = std::size_t(1) << cfg.chip.adc_bits;
    std::vector<double> pmf(n);
    call(qrng_adc_pmf(&cfg.chip, &cfg.noise, cfg.mu_e, cfg.tail_eps,
                      pmf.data(), n),
         "code distribution");
    double sym[4];
    call(qrng_symbol_pmf(&cfg.chip, pmf.data(), n, sym), "symbol distribution");

    std::ostringstream os;
    os << csv_preamble("pmf", cfg.digest(),
                       {"mu_e: " + fmt(cfg.mu_e),
                        "symbol_h_min_per_bit: "
                            + fmt(per_bit_min_entropy(sym))});
    os << "code,probability\n";
    for (std::size_t z = 0; z < n; ++z)
    {
        if (pmf[z] > 0)
            os << z << ',' << fmt(pmf[z]) << '\n';
    }
    emit(a.out.empty() ? cfg.out_csv : a.out, os.str());
    return exit_ok;
}

//---------------------------------------------------------------------------//
struct CurveArgs
{
    std::string config;
    std::optional<std::string> grid;
    std::string out;
    std::string summary;
};

std::vector<double> resolve_grid(RunConfig& cfg,
                                 std::optional<std::string> const& flag,
                                 char const* fallback, bool config_has_grid)
{
    try
    {
        if (flag)
            cfg.grid = parse_grid(*flag);
        else if (!config_has_grid)
            cfg.grid = parse_grid(fallback);
    }
    catch (ConfigError const& e)
    {
        throw ConfigError(std::string("--grid: ") + e.what());
    }
    for (std::size_t i = 1; i < cfg.grid.size(); ++i)
    {
        if (!(cfg.grid[i] > cfg.grid[i - 1]))
            throw ConfigError("/grid: values must be strictly ascending");
    }
    if (cfg.grid.empty())
        throw ConfigError("/grid: grid is empty");
    return cfg.grid;
}

int cmd_entropy_curve(CurveArgs const& a)
{
    bool has_grid = false;
    auto cfg = config_or_default(a.config, &has_grid);
    auto grid = resolve_grid(cfg, a.grid, "500:750:26", has_grid);

    std::vector<qrng_entropy_result> results(grid.size());
    size_t failed = grid.size();
    auto status = qrng_entropy_curve(&cfg.chip, &cfg.noise, grid.data(),
                                     grid.size(), &cfg.quad, results.data(),
                                     &failed);
    if (status != QRNG_OK && failed < grid.size())
    {
        call(status, "entropy curve at mu_e = " + fmt(grid[failed]));
    }
    call(status, "entropy curve");

    auto digest = cfg.digest();
    std::ostringstream os;
    os << csv_preamble("entropy-curve", digest);
    os << "mu_e,p_guess,h_min_per_bit,truncation_bound,quadrature_delta\n";
    std::size_t argmin = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        auto const& r = results[i];
        os << fmt(grid[i]) << ',' << fmt(r.p_guess) << ','
           << fmt(r.h_min_per_bit) << ',' << fmt(r.truncation_bound) << ','
           << fmt(r.quadrature_delta) << '\n';
        if (r.h_min_per_bit < results[argmin].h_min_per_bit)
            argmin = i;
    }
    emit(a.out.empty() ? cfg.out_csv : a.out, os.str());

    auto summary = report_header("entropy-curve", digest);
    summary["grid_points"] = grid.size();
    summary["operating_range"] = {grid.front(), grid.back()};
    summary["min_h_min_per_bit"] = results[argmin].h_min_per_bit;
    summary["argmin_mu_e"] = grid[argmin];
    emit(a.summary.empty() ? cfg.out_json : a.summary, summary.dump(2) + "\n");
    return exit_ok;
}

//---------------------------------------------------------------------------//
struct SimulateArgs
{
    std::string config;
    std::optional<std::uint32_t> frames;
    std::optional<std::uint64_t> seed;
    std::string out_frames;
    std::string out_bits;
};

int cmd_simulate(SimulateArgs const& a)
{
    auto cfg = config_or_default(a.config);
    if (a.frames)
        cfg.frames = *a.frames;
    if (a.seed)
        cfg.seed = *a.seed;
    auto frames_path = a.out_frames.empty() ? cfg.out_frames : a.out_frames;
    auto bits_path = a.out_bits.empty() ? cfg.out_bits : a.out_bits;
    if (frames_path.empty() && bits_path.empty())
        throw ConfigError("simulate: give --out-frames and/or --out-bits");
    if (cfg.frames == 0)
        throw ConfigError("/frames: must be positive");

    auto model = make_model(cfg);
    qrng_batch* raw = nullptr;
    call(qrng_sample_frames(model.get(), cfg.frames, cfg.seed, &raw),
         "sampling");
    BatchPtr batch(raw, &qrng_batch_destroy);

    std::uint64_t model_digest = 0;
    std::uint64_t batch_hash = 0;
    call(qrng_model_digest(model.get(), &model_digest), "model digest");
    call(qrng_batch_hash(batch.get(), &batch_hash), "batch hash");

    auto digest = cfg.digest();
    auto manifest = report_header("simulate", digest);
    manifest["seed"] = cfg.seed;
    manifest["t_frames"] = cfg.frames;
    manifest["num_pixels"] = qrng_model_num_pixels(model.get());
    manifest["adc_bits"] = cfg.chip.adc_bits;
    manifest["model_digest"] = hex_digest(model_digest);
    manifest["batch_hash"] = hex_digest(batch_hash);

    // The binary formats are fixed; provenance goes in a sidecar manifest
    if (!frames_path.empty())
    {
        call(qrng_frames_write(batch.get(), frames_path.c_str()),
             "writing frames");
        auto m = manifest;
        m["file"] = "frames";
        emit(frames_path + ".json", m.dump(2) + "\n");
        manifest["frames_file"] = frames_path;
    }
    if (!bits_path.empty())
    {
        size_t size = 0;
        call(qrng_export_bitstream(batch.get(), &cfg.chip, nullptr, 0, &size),
             "bitstream size");
        std::vector<uint8_t> bytes(size);
        call(qrng_export_bitstream(batch.get(), &cfg.chip, bytes.data(), size,
                                   &size),
             "bitstream export");
        call(qrng_bytes_write(bits_path.c_str(), bytes.data(), bytes.size()),
             "writing bitstream");
        auto m = manifest;
        m["file"] = "bitstream";
        m["num_bytes"] = bytes.size();
        emit(bits_path + ".json", m.dump(2) + "\n");
        manifest["bits_file"] = bits_path;
        manifest["num_bytes"] = bytes.size();
    }
    emit("", manifest.dump(2) + "\n");
    return exit_ok;
}

//---------------------------------------------------------------------------//
struct CorrelateArgs
{
    std::string frames_file;
    std::size_t max_lag{100};
    std::string out;
};

int cmd_correlate(CorrelateArgs const& a)
{
    auto batch = read_batch(a.frames_file);
    uint32_t t = 0, p = 0;
    int bits = 0;
    uint64_t seed = 0, model_digest = 0, hash = 0;
    call(qrng_batch_info(batch.get(), &t, &p, &bits, &seed, &model_digest),
         "batch");
    call(qrng_batch_hash(batch.get(), &hash), "batch hash");
    if (a.max_lag < 1 || a.max_lag >= t)
    {
        throw ConfigError("--max-lag: must lie in [1, T) with T = "
                          + std::to_string(t));
    }

    std::vector<double> matrix(std::size_t(p) * p);
    call(qrng_pearson_matrix(batch.get(), matrix.data(), matrix.size()),
         "pearson matrix");
    std::vector<double> off;
    std::size_t undefined = 0;
    for (std::size_t i = 0; i < p; ++i)
    {
        for (std::size_t j = i + 1; j < p; ++j)
        {
            double v = matrix[i * p + j];
            if (std::isnan(v))
                ++undefined;
            else
                off.push_back(v);
        }
    }
    double sigma = 1 / std::sqrt(static_cast<double>(t));

    json pairwise = {{"num_pairs", std::size_t(p) * (p - 1) / 2},
                     {"num_undefined", undefined},
                     {"sigma_expected", sigma}};
    if (!off.empty())
    {
        double mean = std::accumulate(off.begin(), off.end(), 0.0)
                      / off.size();
        double ss = 0;
        for (double v : off)
            ss += (v - mean) * (v - mean);
        pairwise["mean"] = mean;
        pairwise["std"] = std::sqrt(ss / off.size());
        pairwise["min"] = *std::min_element(off.begin(), off.end());
        pairwise["max"] = *std::max_element(off.begin(), off.end());

        // Fixed bins over +-6 sigma with under/overflow counts
        int const nbins = 48;
        double lo = -6 * sigma, hi = 6 * sigma;
        std::vector<std::size_t> counts(nbins, 0);
        std::size_t under = 0, over = 0;
        for (double v : off)
        {
            if (v < lo)
                ++under;
            else if (v >= hi)
                ++over;
            else
                ++counts[std::min<int>(nbins - 1,
                                       int((v - lo) / (hi - lo) * nbins))];
        }
        std::vector<double> edges;
        for (int b = 0; b <= nbins; ++b)
            edges.push_back(lo + (hi - lo) * b / nbins);
        pairwise["histogram"] = {{"edges", edges},
                                 {"counts", counts},
                                 {"underflow", under},
                                 {"overflow", over}};
    }
    else
    {
        pairwise["mean"] = nullptr;
        pairwise["std"] = nullptr;
    }

    json series = json::array();
    std::size_t total = 0, within = 0;
    std::vector<double> rho(a.max_lag);
    for (std::size_t i = 0; i < p; ++i)
    {
        call(qrng_autocorrelation(batch.get(), i, a.max_lag, rho.data(),
                                  rho.size()),
             "autocorrelation");
        if (std::isnan(rho[0]))
        {
            series.push_back({{"pixel", i}, {"rho", nullptr}});
            continue;
        }
        for (double v : rho)
        {
            ++total;
            within += std::abs(v) <= 3 * sigma;
        }
        series.push_back({{"pixel", i}, {"rho", rho}});
    }

    json doc_params = {{"command", "correlate"},
                       {"max_lag", a.max_lag},
                       {"batch_hash", hex_digest(hash)}};
    auto report = report_header("correlate", fnv1a(doc_params.dump()));
    report["frames"] = {{"t_frames", t},
                        {"num_pixels", p},
                        {"adc_bits", bits},
                        {"seed", seed},
                        {"model_digest", hex_digest(model_digest)},
                        {"batch_hash", hex_digest(hash)}};
    report["pairwise"] = pairwise;
    report["autocorrelation"] = {
        {"max_lag", a.max_lag},
        {"band_1sigma", sigma},
        {"band_3sigma", 3 * sigma},
        {"fraction_within_3sigma",
         total ? json(double(within) / total) : json(nullptr)},
        {"series", series}};
    emit(a.out, report.dump(2) + "\n");
    return exit_ok;
}

//---------------------------------------------------------------------------//
struct FitArgs
{
    std::string config;
    std::string histogram_file;
    std::string frames_file;
    std::size_t pixel{0};
    std::string init;
    std::optional<double> shift_steps;
    bool fit_gain{false};
    std::string out;
};

std::vector<double> read_histogram(std::string const& path, std::size_t n)
{
    std::ifstream in(path);
    if (!in)
        throw Failure{exit_io, "cannot open " + path};
    std::vector<double> counts(n, 0.0);
    std::size_t next = 0;
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);)
    {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        std::vector<double> fields;
        for (double v; ls >> v;)
            fields.push_back(v);
        if (!ls.eof())
        {
            // Column titles are allowed on the first data line only
            if (next == 0 && fields.empty())
                continue;
            throw Failure{exit_io, path + ":" + std::to_string(lineno)
                                       + ": expected numbers"};
        }
        std::size_t code = next;
        double count = 0;
        if (fields.size() == 1)
            count = fields[0];
        else if (fields.size() == 2)
            code = static_cast<std::size_t>(fields[0]), count = fields[1];
        else
            throw Failure{exit_io, path + ":" + std::to_string(lineno)
                                       + ": expected 'count' or 'code,count'"};
        if (code >= n || count < 0)
        {
            throw Failure{exit_io, path + ":" + std::to_string(lineno)
                                       + ": code or count out of range"};
        }
        counts[code] += count;
        next = code + 1;
    }
    return counts;
}

int cmd_fit_noise(FitArgs const& a)
{
    auto cfg = config_or_default(a.config);
    if (a.fit_gain)
        cfg.fit.fit_gain = 1;
    if (a.shift_steps)
        cfg.fit_shift_steps = *a.shift_steps;
    if (a.histogram_file.empty() == a.frames_file.empty())
        throw ConfigError("fit-noise: give exactly one of --histogram-file "
                          "and --frames-file");

    qrng_noise_params init = cfg.noise;
    if (!a.init.empty())
    {
        auto values = parse_grid(a.init);
        if (values.size() != 3)
            throw ConfigError("--init: expected mu_r,sigma_r,mu_dark");
        init = {values[0], values[1], values[2]};
    }

    std::vector<double> counts;
    json source;
    if (!a.frames_file.empty())
    {
        auto batch = read_batch(a.frames_file);
        uint32_t t = 0, p = 0;
        int bits = 0;
        uint64_t hash = 0;
        call(qrng_batch_info(batch.get(), &t, &p, &bits, nullptr, nullptr),
             "batch");
        call(qrng_batch_hash(batch.get(), &hash), "batch hash");
        if (a.pixel >= p)
            throw ConfigError("--pixel: index out of range");
        if (bits != cfg.chip.adc_bits)
        {
            throw ConfigError("/chip/adc_bits: frames file uses "
                              + std::to_string(bits) + " bits");
        }
        counts.resize(std::size_t(1) << bits);
        call(qrng_code_histogram(batch.get(), a.pixel, counts.data(),
                                 counts.size()),
             "histogram");
        source = {{"frames_file", a.frames_file},
                  {"pixel", a.pixel},
                  {"batch_hash", hex_digest(hash)}};
    }
    else
    {
        counts = read_histogram(a.histogram_file,
                                std::size_t(1) << cfg.chip.adc_bits);
        source = {{"histogram_file", a.histogram_file}};
    }

    qrng_noise_fit fit{};
    auto status = qrng_fit_noise(counts.data(), counts.size(), &cfg.chip,
                                 &init, &cfg.fit, &fit);
    if (status == QRNG_ERR_UNFITTABLE)
    {
        std::string msg = qrng_last_error();
        throw Failure{exit_numeric, msg};
    }
    call(status, "noise fit");

    auto params_doc = cfg.to_json();
    params_doc["init"] = {init.mu_r, init.sigma_r, init.mu_dark};
    params_doc["source"] = source;
    auto report = report_header("fit-noise", fnv1a(params_doc.dump()));
    report["source"] = source;
    report["params"] = {{"mu_r", fit.params.mu_r},
                        {"sigma_r", fit.params.sigma_r},
                        {"mu_dark", fit.params.mu_dark}};
    report["gain_k"] = fit.gain_k;
    std::vector<double> se(fit.std_errors, fit.std_errors + fit.num_params);
    std::vector<double> cov(fit.covariance,
                            fit.covariance + fit.num_params * fit.num_params);
    report["std_errors"] = se;
    report["covariance"] = cov;
    report["neg_log_likelihood"] = fit.neg_log_likelihood;
    report["chi2"] = fit.chi2;
    report["chi2_dof"] = fit.chi2_dof;
    report["iterations"] = fit.iterations;
    if (cfg.fit_shift_steps != 0)
    {
        report["at_default_offset"]
            = {{"shift_steps", cfg.fit_shift_steps},
               {"mu_r", fit.params.mu_r - cfg.fit_shift_steps},
               {"sigma_r", fit.params.sigma_r},
               {"mu_dark", fit.params.mu_dark}};
    }
    emit(a.out.empty() ? cfg.out_json : a.out, report.dump(2) + "\n");
    return exit_ok;
}

//---------------------------------------------------------------------------//
struct SweepArgs
{
    std::string config;
    std::optional<std::string> grid;
    std::string out;
    std::string verdict;
};

int cmd_health_sweep(SweepArgs const& a)
{
    bool has_grid = false;
    auto cfg = config_or_default(a.config, &has_grid);
    auto grid = resolve_grid(cfg, a.grid, "0:1200:121", has_grid);
    auto model = make_model(cfg);

    std::vector<qrng_sweep_point> sweep(grid.size());
    call(qrng_health_sweep(model.get(), grid.data(), grid.size(), &cfg.health,
                           &cfg.quad,
                           cfg.efficiency.empty() ? nullptr
                                                  : cfg.efficiency.data(),
                           sweep.data()),
         "health sweep");

    int holds = 0;
    std::size_t num_witnesses = 0;
    std::vector<std::size_t> witnesses(sweep.size());
    call(qrng_verify_guarantee(sweep.data(), sweep.size(), &cfg.health, &holds,
                               witnesses.data(), witnesses.size(),
                               &num_witnesses),
         "guarantee");
    witnesses.resize(num_witnesses);

    auto digest = cfg.digest();
    std::ostringstream os;
    os << csv_preamble("health-sweep", digest);
    os << "mu_e,p_fail,p_pass,avg_h_min_per_bit\n";
    for (auto const& pt : sweep)
    {
        os << fmt(pt.mu_e) << ',' << fmt(pt.p_fail) << ',' << fmt(pt.p_pass)
           << ',' << fmt(pt.avg_h_min_per_bit) << '\n';
    }
    emit(a.out.empty() ? cfg.out_csv : a.out, os.str());

    auto verdict = report_header("health-sweep", digest);
    verdict["guarantee_holds"] = holds != 0;
    verdict["epsilon"] = cfg.health.epsilon;
    verdict["h_min_floor_per_bit"] = cfg.health.h_min_floor / 2;
    json wit = json::array();
    for (auto i : witnesses)
    {
        wit.push_back({{"mu_e", sweep[i].mu_e},
                       {"p_fail", sweep[i].p_fail},
                       {"p_pass", sweep[i].p_pass},
                       {"avg_h_min_per_bit", sweep[i].avg_h_min_per_bit}});
    }
    verdict["witnesses"] = wit;
    emit(a.verdict.empty() ? cfg.out_json : a.verdict, verdict.dump(2) + "\n");
    return exit_ok;
}

//---------------------------------------------------------------------------//
struct EstimateArgs
{
    std::string bits_file;
    int symbol_bits{2};
    std::string out;
};

int cmd_estimate(EstimateArgs const& a)
{
    uint8_t* data = nullptr;
    size_t len = 0;
    call(qrng_bytes_read(a.bits_file.c_str(), &data, &len),
         "reading " + a.bits_file);
    std::unique_ptr<uint8_t, decltype(&qrng_bytes_free)> owner(
        data, &qrng_bytes_free);
    qrng_mcv_result r{};
    call(qrng_mcv_entropy(data, len, a.symbol_bits, &r), "estimator");

    json params = {{"command", "estimate"},
                   {"symbol_bits", a.symbol_bits},
                   {"num_bytes", len}};
    auto report = report_header("estimate", fnv1a(params.dump()));
    report["bits_file"] = a.bits_file;
    report["num_bytes"] = len;
    report["symbol_bits"] = a.symbol_bits;
    report["num_symbols"] = r.num_symbols;
    report["p_hat"] = r.p_hat;
    report["p_upper"] = r.p_upper;
    report["h_per_symbol"] = r.h_per_symbol;
    report["h_per_bit"] = r.h_per_bit;
    emit(a.out, report.dump(2) + "\n");
    return exit_ok;
}

}  // namespace

//---------------------------------------------------------------------------//
int main(int argc, char** argv)
{
    CLI::App app{"qrng-lab: entropy models and statistics for a CMOS-sensor "
                 "quantum random number generator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qrng_version()));

    PmfArgs pmf;
    auto* c_pmf = app.add_subcommand("pmf", "Exact ADC code distribution");
    c_pmf->add_option("-c,--config", pmf.config, "JSON configuration");
    c_pmf->add_option("--mu-e", pmf.mu_e, "Mean photo-electron number");
    c_pmf->add_flag("--no-noise", pmf.no_noise,
                    "Zero readout offset, readout spread and dark signal");
    c_pmf->add_option("-o,--out", pmf.out, "CSV output (default stdout)");

    CurveArgs curve;
    auto* c_curve = app.add_subcommand(
        "entropy-curve", "Conditional min-entropy versus photon number");
    c_curve->add_option("-c,--config", curve.config, "JSON configuration");
    c_curve->add_option("--grid", curve.grid,
                        "mu_e values: a,b,c or start:stop:count");
    c_curve->add_option("-o,--out", curve.out, "CSV output (default stdout)");
    c_curve->add_option("--summary", curve.summary,
                        "JSON summary output (default stdout)");

    SimulateArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "Generate synthetic frames");
    c_sim->add_option("-c,--config", sim.config, "JSON configuration");
    c_sim->add_option("--frames", sim.frames, "Number of frames");
    c_sim->add_option("--seed", sim.seed, "64-bit seed");
    c_sim->add_option("--out-frames", sim.out_frames, "Binary frame file");
    c_sim->add_option("--out-bits", sim.out_bits, "Packed bitstream file");

    CorrelateArgs corr;
    auto* c_corr = app.add_subcommand(
        "correlate", "Pearson and autocorrelation report for a frame file");
    c_corr->add_option("--frames-file", corr.frames_file, "Binary frame file")
        ->required();
    c_corr->add_option("--max-lag", corr.max_lag, "Largest lag");
    c_corr->add_option("-o,--out", corr.out, "JSON output (default stdout)");

    FitArgs fit;
    auto* c_fit = app.add_subcommand("fit-noise",
                                     "Fit readout and dark-signal parameters");
    c_fit->add_option("-c,--config", fit.config, "JSON configuration");
    c_fit->add_option("--histogram-file", fit.histogram_file,
                      "Code histogram: 'count' or 'code,count' per line");
    c_fit->add_option("--frames-file", fit.frames_file, "Binary frame file");
    c_fit->add_option("--pixel", fit.pixel, "Pixel index in the frame file");
    c_fit->add_option("--init", fit.init, "Start point mu_r,sigma_r,mu_dark");
    c_fit->add_option("--shift-steps", fit.shift_steps,
                      "Offset shift used during acquisition");
    c_fit->add_flag("--fit-gain", fit.fit_gain, "Co-fit the conversion gain");
    c_fit->add_option("-o,--out", fit.out, "JSON output (default stdout)");

    SweepArgs sweep;
    auto* c_sweep = app.add_subcommand(
        "health-sweep", "Failure probability and entropy versus photon number");
    c_sweep->add_option("-c,--config", sweep.config, "JSON configuration");
    c_sweep->add_option("--grid", sweep.grid,
                        "mu_e values: a,b,c or start:stop:count");
    c_sweep->add_option("-o,--out", sweep.out, "CSV output (default stdout)");
    c_sweep->add_option("--verdict", sweep.verdict,
                        "JSON verdict output (default stdout)");

    EstimateArgs est;
    auto* c_est = app.add_subcommand("estimate",
                                     "Most-common-value entropy estimate");
    c_est->add_option("--bits-file", est.bits_file, "Raw bitstream")
        ->required();
    c_est->add_option("--symbol-bits", est.symbol_bits, "1 or 2")
        ->check(CLI::IsMember({1, 2}));
    c_est->add_option("-o,--out", est.out, "JSON output (default stdout)");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try
    {
        if (*c_pmf)
            return cmd_pmf(pmf);
        if (*c_curve)
            return cmd_entropy_curve(curve);
        if (*c_sim)
            return cmd_simulate(sim);
        if (*c_corr)
            return cmd_correlate(corr);
        if (*c_fit)
            return cmd_fit_noise(fit);
        if (*c_sweep)
            return cmd_health_sweep(sweep);
        if (*c_est)
            return cmd_estimate(est);
    }
    catch (ConfigError const& e)
    {
        std::cerr << "qrng-lab: config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (Failure const& f)
    {
        std::cerr << "qrng-lab: " << f.message << '\n';
        return f.code;
    }
    catch (std::exception const& e)
    {
        std::cerr << "qrng-lab: " << e.what() << '\n';
        return exit_numeric;
    }
    return exit_config;
}
