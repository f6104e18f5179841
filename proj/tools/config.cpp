//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tools/config.cpp
//---------------------------------------------------------------------------//
#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace qrnglab::cli
{
namespace
{
using json = nlohmann::json;

std::string escape_token(std::string const& key)
{
    std::string out;
    for (char c : key)
    {
        if (c == '~')
            out += "~0";
        else if (c == '/')
            out += "~1";
        else
            out += c;
    }
    return out;
}

//---------------------------------------------------------------------------//
/*!
 * Typed access to one JSON object that remembers consumed keys.
 *
 * Call finish() after reading all known keys to reject the rest.
 */
class ObjectReader
{
  public:
    ObjectReader(json const& obj, std::string pointer)
        : obj_(obj), pointer_(std::move(pointer))
    {
        if (!obj_.is_object())
            fail(pointer_, "expected an object");
    }

    std::string at(char const* key) const
    {
        return pointer_ + "/" + escape_token(key);
    }

    json const* find(char const* key)
    {
        seen_.insert(key);
        auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    void get(char const* key, double& out)
    {
        if (auto const* v = this->find(key))
        {
            if (!v->is_number())
                fail(at(key), "expected a number");
            out = v->get<double>();
            if (!std::isfinite(out))
                fail(at(key), "expected a finite number");
        }
    }

    void get(char const* key, int& out)
    {
        if (auto const* v = this->find(key))
        {
            if (!v->is_number_integer())
                fail(at(key), "expected an integer");
            auto value = v->get<std::int64_t>();
            if (value < std::numeric_limits<int>::min()
                || value > std::numeric_limits<int>::max())
            {
                fail(at(key), "integer out of range");
            }
            out = static_cast<int>(value);
        }
    }

    template<class U>
    void get_unsigned(char const* key, U& out)
    {
        if (auto const* v = this->find(key))
        {
            if (!v->is_number_unsigned())
                fail(at(key), "expected a non-negative integer");
            auto value = v->get<std::uint64_t>();
            if (value > std::numeric_limits<U>::max())
                fail(at(key), "integer out of range");
            out = static_cast<U>(value);
        }
    }

    void get(char const* key, bool& out)
    {
        if (auto const* v = this->find(key))
        {
            if (!v->is_boolean())
                fail(at(key), "expected true or false");
            out = v->get<bool>();
        }
    }

    void get(char const* key, std::string& out)
    {
        if (auto const* v = this->find(key))
        {
            if (!v->is_string())
                fail(at(key), "expected a string");
            out = v->get<std::string>();
        }
    }

    void finish() const
    {
        for (auto const& [key, value] : obj_.items())
        {
            if (!seen_.count(key))
                fail(pointer_ + "/" + escape_token(key), "unknown key");
        }
    }

    [[noreturn]] static void fail(std::string const& where,
                                  std::string const& what)
    {
        throw ConfigError((where.empty() ? std::string("/") : where) + ": "
                          + what);
    }

  private:
    json const& obj_;
    std::string pointer_;
    std::set<std::string> seen_;
};

//---------------------------------------------------------------------------//
qrng_noise_params reference_noise(int label, std::string const& where)
{
    qrng_noise_params out{};
    if (qrng_noise_reference(label, &out) != QRNG_OK)
        ObjectReader::fail(where, "reference pixel must be 1, 2, 3 or 4");
    return out;
}

qrng_noise_params read_noise(json const& j, std::string const& pointer,
                             qrng_noise_params base)
{
    ObjectReader r(j, pointer);
    int label = 0;
    r.get("reference", label);
    if (r.find("reference"))
        base = reference_noise(label, r.at("reference"));
    r.get("mu_r", base.mu_r);
    r.get("sigma_r", base.sigma_r);
    r.get("mu_dark", base.mu_dark);
    r.finish();
    if (base.sigma_r < 0)
        ObjectReader::fail(pointer + "/sigma_r", "must be non-negative");
    if (base.mu_dark < 0)
        ObjectReader::fail(pointer + "/mu_dark", "must be non-negative");
    return base;
}

std::vector<double> read_number_list(json const& j, std::string const& pointer)
{
    if (!j.is_array())
        ObjectReader::fail(pointer, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i)
    {
        if (!j[i].is_number())
        {
            ObjectReader::fail(pointer + "/" + std::to_string(i),
                               "expected a number");
        }
        out.push_back(j[i].get<double>());
    }
    return out;
}

void read_chip(json const& j, qrng_chip_params& chip)
{
    ObjectReader r(j, "/chip");
    r.get("gain_k", chip.gain_k);
    r.get("adc_bits", chip.adc_bits);
    r.get("adc_offset", chip.adc_offset);
    if (auto const* v = r.find("retained_bits"))
    {
        auto where = r.at("retained_bits");
        if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number_integer()
            || !(*v)[1].is_number_integer())
        {
            ObjectReader::fail(where, "expected two bit indices");
        }
        chip.retained_bits[0] = (*v)[0].get<int>();
        chip.retained_bits[1] = (*v)[1].get<int>();
    }
    r.finish();
    if (!(chip.gain_k > 0))
        ObjectReader::fail("/chip/gain_k", "must be positive");
    if (chip.adc_bits < 2 || chip.adc_bits > 16)
        ObjectReader::fail("/chip/adc_bits", "must be between 2 and 16");
    for (int b : chip.retained_bits)
    {
        if (b < 0 || b >= chip.adc_bits)
        {
            ObjectReader::fail("/chip/retained_bits",
                               "bit index outside the converter width");
        }
    }
    if (chip.retained_bits[0] == chip.retained_bits[1])
        ObjectReader::fail("/chip/retained_bits", "bit indices must differ");
}

void read_pixels(json const& j, RunConfig& cfg)
{
    ObjectReader r(j, "/pixels");
    r.get_unsigned("count", cfg.num_pixels);
    if (auto const* v = r.find("efficiency"))
        cfg.efficiency = read_number_list(*v, r.at("efficiency"));
    if (auto const* v = r.find("per_pixel"))
    {
        auto where = r.at("per_pixel");
        if (!v->is_array() || v->empty())
            ObjectReader::fail(where, "expected a non-empty array");
        for (std::size_t i = 0; i < v->size(); ++i)
        {
            auto item_ptr = where + "/" + std::to_string(i);
            ObjectReader item((*v)[i], item_ptr);
            PixelSpec spec{cfg.mu_e, cfg.noise};
            item.get("mu_e", spec.mu_e);
            if (auto const* n = item.find("noise"))
                spec.noise = read_noise(*n, item.at("noise"), cfg.noise);
            item.finish();
            cfg.per_pixel.push_back(spec);
        }
        cfg.num_pixels = cfg.per_pixel.size();
    }
    r.finish();
    if (cfg.num_pixels < 1 || cfg.num_pixels > 65535)
        ObjectReader::fail("/pixels/count", "must be between 1 and 65535");
    if (!cfg.efficiency.empty() && cfg.efficiency.size() != cfg.num_pixels)
    {
        ObjectReader::fail("/pixels/efficiency",
                           "needs one entry per pixel");
    }
    for (std::size_t i = 0; i < cfg.efficiency.size(); ++i)
    {
        if (!(cfg.efficiency[i] >= 0))
        {
            ObjectReader::fail("/pixels/efficiency/" + std::to_string(i),
                               "must be non-negative");
        }
    }
}

void read_quadrature(json const& j, qrng_quadrature& q)
{
    ObjectReader r(j, "/quadrature");
    r.get("range_sigmas", q.range_sigmas);
    r.get("gl_order", q.gl_order);
    r.get("initial_panels", q.initial_panels);
    r.get("max_refinements", q.max_refinements);
    r.get("tolerance", q.tolerance);
    r.get("divergence_limit", q.divergence_limit);
    r.finish();
}

void read_health(json const& j, qrng_health_config& h, int symbol_bits)
{
    ObjectReader r(j, "/health");
    r.get("t_minus", h.t_minus);
    r.get("t_plus", h.t_plus);
    r.get("n_minus_max", h.n_minus_max);
    r.get("n_plus_max", h.n_plus_max);
    double floor_per_bit = h.h_min_floor / symbol_bits;
    r.get("h_min_floor_per_bit", floor_per_bit);
    h.h_min_floor = floor_per_bit * symbol_bits;
    r.get("epsilon", h.epsilon);
    bool conditioned = h.condition_on_acceptance != 0;
    r.get("condition_on_acceptance", conditioned);
    h.condition_on_acceptance = conditioned ? 1 : 0;
    r.finish();
    if (!(h.epsilon >= 0 && h.epsilon <= 1))
        ObjectReader::fail("/health/epsilon", "must lie in [0, 1]");
}

void read_fit(json const& j, RunConfig& cfg)
{
    ObjectReader r(j, "/fit");
    bool fit_gain = cfg.fit.fit_gain != 0;
    r.get("fit_gain", fit_gain);
    cfg.fit.fit_gain = fit_gain ? 1 : 0;
    r.get("max_iterations", cfg.fit.max_iterations);
    r.get("tolerance", cfg.fit.tolerance);
    r.get("clip_limit", cfg.fit.clip_limit);
    r.get("min_total_count", cfg.fit.min_total_count);
    r.get("shift_steps", cfg.fit_shift_steps);
    r.finish();
}

void read_outputs(json const& j, RunConfig& cfg)
{
    ObjectReader r(j, "/outputs");
    r.get("csv", cfg.out_csv);
    r.get("json", cfg.out_json);
    r.get("frames", cfg.out_frames);
    r.get("bits", cfg.out_bits);
    r.finish();
}

json noise_json(qrng_noise_params const& n)
{
    return {{"mu_r", n.mu_r}, {"sigma_r", n.sigma_r}, {"mu_dark", n.mu_dark}};
}

}  // namespace

//---------------------------------------------------------------------------//
RunConfig::RunConfig()
{
    qrng_chip_defaults(&chip);
    qrng_noise_reference(1, &noise);
    qrng_quadrature_defaults(&quad);
    qrng_health_defaults(&health);
    qrng_fit_defaults(&fit);
    tail_eps = quad.tail_eps;
}

std::vector<PixelSpec> RunConfig::pixels() const
{
    if (!per_pixel.empty())
        return per_pixel;
    return std::vector<PixelSpec>(num_pixels, PixelSpec{mu_e, noise});
}

nlohmann::json RunConfig::to_json() const
{
    json pix = json::array();
    for (auto const& p : this->pixels())
        pix.push_back({{"mu_e", p.mu_e}, {"noise", noise_json(p.noise)}});
    return {
        {"chip",
         {{"gain_k", chip.gain_k},
          {"adc_bits", chip.adc_bits},
          {"adc_offset", chip.adc_offset},
          {"retained_bits", {chip.retained_bits[0], chip.retained_bits[1]}}}},
        {"noise", noise_json(noise)},
        {"mu_e", mu_e},
        {"pixels", {{"per_pixel", pix}, {"efficiency", efficiency}}},
        {"grid", grid},
        {"seed", seed},
        {"frames", frames},
        {"max_lag", max_lag},
        {"symbol_bits", symbol_bits},
        {"tail_eps", tail_eps},
        {"quadrature",
         {{"range_sigmas", quad.range_sigmas},
          {"gl_order", quad.gl_order},
          {"initial_panels", quad.initial_panels},
          {"max_refinements", quad.max_refinements},
          {"tolerance", quad.tolerance},
          {"divergence_limit", quad.divergence_limit}}},
        {"health",
         {{"t_minus", health.t_minus},
          {"t_plus", health.t_plus},
          {"n_minus_max", health.n_minus_max},
          {"n_plus_max", health.n_plus_max},
          {"h_min_floor_per_bit", health.h_min_floor / symbol_bits},
          {"epsilon", health.epsilon},
          {"condition_on_acceptance", health.condition_on_acceptance != 0}}},
        {"fit",
         {{"fit_gain", fit.fit_gain != 0},
          {"max_iterations", fit.max_iterations},
          {"tolerance", fit.tolerance},
          {"clip_limit", fit.clip_limit},
          {"min_total_count", fit.min_total_count},
          {"shift_steps", fit_shift_steps}}},
    };
}

std::uint64_t RunConfig::digest() const
{
    return fnv1a(this->to_json().dump());
}

//---------------------------------------------------------------------------//
RunConfig parse_config(nlohmann::json const& doc, bool* has_grid)
{
    RunConfig cfg;
    ObjectReader r(doc, "");

    if (auto const* v = r.find("chip"))
        read_chip(*v, cfg.chip);
    if (auto const* v = r.find("noise"))
        cfg.noise = read_noise(*v, "/noise", cfg.noise);
    r.get("mu_e", cfg.mu_e);
    if (cfg.mu_e < 0)
        ObjectReader::fail("/mu_e", "must be non-negative");
    r.get("tail_eps", cfg.tail_eps);
    if (!(cfg.tail_eps > 0 && cfg.tail_eps < 1))
        ObjectReader::fail("/tail_eps", "must lie in (0, 1)");
    cfg.quad.tail_eps = cfg.tail_eps;
    r.get("symbol_bits", cfg.symbol_bits);
    if (cfg.symbol_bits != 1 && cfg.symbol_bits != 2)
        ObjectReader::fail("/symbol_bits", "must be 1 or 2");
    // Pixels after mu_e and noise so that they inherit them
    if (auto const* v = r.find("pixels"))
        read_pixels(*v, cfg);
    if (has_grid)
        *has_grid = doc.contains("grid");
    if (auto const* v = r.find("grid"))
    {
        if (v->is_string())
        {
            try
            {
                cfg.grid = parse_grid(v->get<std::string>());
            }
            catch (ConfigError const& e)
            {
                ObjectReader::fail("/grid", e.what());
            }
        }
        else
        {
            cfg.grid = read_number_list(*v, "/grid");
        }
    }
    r.get_unsigned("seed", cfg.seed);
    r.get_unsigned("frames", cfg.frames);
    r.get_unsigned("max_lag", cfg.max_lag);
    if (auto const* v = r.find("quadrature"))
        read_quadrature(*v, cfg.quad);
    if (auto const* v = r.find("health"))
        read_health(*v, cfg.health, 2);
    if (auto const* v = r.find("fit"))
        read_fit(*v, cfg);
    if (auto const* v = r.find("outputs"))
        read_outputs(*v, cfg);
    r.finish();
    return cfg;
}

RunConfig load_config(std::string const& path, bool* has_grid)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path + ": cannot open configuration file");
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(in, nullptr, true, /* comments = */ true);
    }
    catch (nlohmann::json::parse_error const& e)
    {
        throw ConfigError(path + ": " + e.what());
    }
    return parse_config(doc, has_grid);
}

//---------------------------------------------------------------------------//
/*!
 * Parse "a,b,c" or "start:stop:count" (inclusive, evenly spaced).
 */
std::vector<double> parse_grid(std::string const& text)
{
    auto to_number = [&](std::string const& s) {
        std::size_t used = 0;
        double value = 0;
        try
        {
            value = std::stod(s, &used);
        }
        catch (std::exception const&)
        {
            used = 0;
        }
        if (used == 0 || used != s.size() || !std::isfinite(value))
            throw ConfigError("bad grid value '" + s + "'");
        return value;
    };

    std::vector<double> out;
    if (text.find(':') != std::string::npos)
    {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string item; std::getline(ss, item, ':');)
            parts.push_back(item);
        if (parts.size() != 3)
            throw ConfigError("grid range must be start:stop:count");
        double start = to_number(parts[0]);
        double stop = to_number(parts[1]);
        double count = to_number(parts[2]);
        if (count < 1 || count != std::floor(count) || count > 1e7)
            throw ConfigError("grid count must be a positive integer");
        auto n = static_cast<std::size_t>(count);
        for (std::size_t i = 0; i < n; ++i)
        {
            out.push_back(i + 1 == n && n > 1
                              ? stop
                              : start + (stop - start) * i / (n - 1 ? n - 1 : 1));
        }
    }
    else
    {
        std::stringstream ss(text);
        for (std::string item; std::getline(ss, item, ',');)
            out.push_back(to_number(item));
    }
    if (out.empty())
        throw ConfigError("grid is empty");
    return out;
}

std::uint64_t fnv1a(std::string const& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes)
    {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex_digest(std::uint64_t value)
{
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(value));
    return buf;
}

//---------------------------------------------------------------------------//
}  // namespace qrnglab::cli
