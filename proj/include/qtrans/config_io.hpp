#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qtrans/detail/fmt.hpp"
#include "qtrans/errors.hpp"
#include "qtrans/montecarlo.hpp"

namespace qtrans {

// Flat key-value config with one [link N] section per client. Grammar:
//
//   # comment                      blank lines and '#' comments are ignored
//   strategy = vanilla-tmd         dmd | vanilla-tmd | ie-tmd | ies-tmd
//   n_clients = 2
//   max_attempts = 100000
//   seed = 42
//   detector = counter             counter | spd        (ies-tmd only)
//   det_eff = 1                    detector efficiency in [0,1]
//   ies_view = photon              photon | formula     (ies-tmd only)
//
//   [link 1]                       one section per client, 1-based
//   c_up = 1                       orchestrator-side cooperativity
//   zeta_o_up = 1
//   zeta_m_up = 1
//   c_down = 1                     client-side cooperativity
//   zeta_o_down = 1
//   zeta_m_down = 1
//   length_km = 0
//   att_length_km = 22

namespace detail_cfg {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline double parse_number(std::string_view v, int line) {
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        throw config_parse_error("expected a number, got '" + std::string(v) + "'", line);
    return out;
}

inline std::int64_t parse_integer(std::string_view v, int line) {
    std::int64_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        throw config_parse_error("expected an integer, got '" + std::string(v) + "'", line);
    return out;
}

}  // namespace detail_cfg

inline NetworkConfig parse_network_config(std::istream& in) {
    using detail_cfg::parse_integer;
    using detail_cfg::parse_number;
    using detail_cfg::trim;

    NetworkConfig cfg;
    cfg.links.clear();

    int current_link = -1;  // -1 = top-level section
    std::vector<bool> seen_link;
    std::string raw;
    int line_no = 0;
    bool saw_n_clients = false;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = trim(line.substr(0, hash));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw config_parse_error("unterminated section header", line_no);
            std::string_view body = trim(line.substr(1, line.size() - 2));
            if (!body.starts_with("link"))
                throw config_parse_error("unknown section '" + std::string(body) + "'", line_no);
            const std::int64_t idx = parse_integer(trim(body.substr(4)), line_no);
            if (!saw_n_clients)
                throw config_parse_error("n_clients must appear before link sections", line_no);
            if (idx < 1 || idx > cfg.n_clients)
                throw config_parse_error("link index outside 1..n_clients", line_no);
            if (seen_link[static_cast<std::size_t>(idx - 1)])
                throw config_parse_error("duplicate [link " + std::to_string(idx) + "]", line_no);
            seen_link[static_cast<std::size_t>(idx - 1)] = true;
            current_link = static_cast<int>(idx - 1);
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw config_parse_error("expected 'key = value'", line_no);
        const std::string key{trim(line.substr(0, eq))};
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_parse_error("expected 'key = value'", line_no);

        if (current_link < 0) {
            if (key == "strategy") {
                const auto k = parse_strategy(value);
                if (!k) throw config_parse_error("unknown strategy '" + std::string(value) + "'", line_no);
                cfg.strategy = *k;
            } else if (key == "n_clients") {
                const auto n = parse_integer(value, line_no);
                if (n < 1) throw config_parse_error("n_clients must be >= 1", line_no);
                cfg.n_clients = static_cast<int>(n);
                cfg.links.assign(static_cast<std::size_t>(n), LinkConfig{});
                seen_link.assign(static_cast<std::size_t>(n), false);
                saw_n_clients = true;
            } else if (key == "max_attempts") {
                const auto m = parse_integer(value, line_no);
                if (m < 1) throw config_parse_error("max_attempts must be >= 1", line_no);
                cfg.max_attempts_per_epr = static_cast<int>(m);
            } else if (key == "seed") {
                std::uint64_t s = 0;
                const auto res = std::from_chars(value.data(), value.data() + value.size(), s);
                if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
                    throw config_parse_error("expected an unsigned integer seed", line_no);
                cfg.rng_seed = s;
            } else if (key == "detector") {
                const auto d = parse_detector_kind(value);
                if (!d) throw config_parse_error("detector must be 'counter' or 'spd'", line_no);
                cfg.detector.kind = *d;
            } else if (key == "det_eff") {
                cfg.detector.efficiency = parse_number(value, line_no);
            } else if (key == "ies_view") {
                const auto v = parse_ies_view(value);
                if (!v) throw config_parse_error("ies_view must be 'photon' or 'formula'", line_no);
                cfg.ies_view = *v;
            } else if (key == "sequential") {
                if (value == "true") cfg.sequential = true;
                else if (value == "false") cfg.sequential = false;
                else throw config_parse_error("sequential must be true or false", line_no);
            } else {
                throw config_parse_error("unknown key '" + key + "'", line_no);
            }
            continue;
        }

        LinkConfig& link = cfg.links[static_cast<std::size_t>(current_link)];
        if (key == "c_up") link.orchestrator.cooperativity = parse_number(value, line_no);
        else if (key == "zeta_o_up") link.orchestrator.extraction_optical = parse_number(value, line_no);
        else if (key == "zeta_m_up") link.orchestrator.extraction_microwave = parse_number(value, line_no);
        else if (key == "c_down") link.client.cooperativity = parse_number(value, line_no);
        else if (key == "zeta_o_down") link.client.extraction_optical = parse_number(value, line_no);
        else if (key == "zeta_m_down") link.client.extraction_microwave = parse_number(value, line_no);
        else if (key == "length_km") link.link.length_km = parse_number(value, line_no);
        else if (key == "att_length_km") link.link.attenuation_length_km = parse_number(value, line_no);
        else throw config_parse_error("unknown link key '" + key + "'", line_no);
    }

    if (!saw_n_clients) throw config_parse_error("missing n_clients", line_no + 1);
    for (int i = 0; i < cfg.n_clients; ++i)
        if (!seen_link[static_cast<std::size_t>(i)])
            throw config_parse_error("missing [link " + std::to_string(i + 1) + "] section", line_no + 1);

    try {
        validate(cfg);
    } catch (const std::exception& e) {
        throw config_parse_error(e.what(), line_no + 1);
    }
    return cfg;
}

inline NetworkConfig load_network_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return parse_network_config(in);
}

// Writes a config that parses back to an identical NetworkConfig
// (shortest-round-trip number rendering).
inline void write_network_config(std::ostream& out, const NetworkConfig& cfg) {
    using detail::format_double;
    out << "strategy = " << to_string(cfg.strategy) << "\n";
    out << "n_clients = " << cfg.n_clients << "\n";
    out << "max_attempts = " << cfg.max_attempts_per_epr << "\n";
    out << "seed = " << cfg.rng_seed << "\n";
    out << "detector = " << to_string(cfg.detector.kind) << "\n";
    out << "det_eff = " << format_double(cfg.detector.efficiency) << "\n";
    out << "ies_view = " << to_string(cfg.ies_view) << "\n";
    out << "sequential = " << (cfg.sequential ? "true" : "false") << "\n";
    for (int i = 0; i < cfg.n_clients; ++i) {
        const LinkConfig& link = cfg.links[static_cast<std::size_t>(i)];
        out << "\n[link " << (i + 1) << "]\n";
        out << "c_up = " << format_double(link.orchestrator.cooperativity) << "\n";
        out << "zeta_o_up = " << format_double(link.orchestrator.extraction_optical) << "\n";
        out << "zeta_m_up = " << format_double(link.orchestrator.extraction_microwave) << "\n";
        out << "c_down = " << format_double(link.client.cooperativity) << "\n";
        out << "zeta_o_down = " << format_double(link.client.extraction_optical) << "\n";
        out << "zeta_m_down = " << format_double(link.client.extraction_microwave) << "\n";
        out << "length_km = " << format_double(link.link.length_km) << "\n";
        out << "att_length_km = " << format_double(link.link.attenuation_length_km) << "\n";
    }
}

inline std::string write_network_config_string(const NetworkConfig& cfg) {
    std::ostringstream os;
    write_network_config(os, cfg);
    return os.str();
}

// Two-client example used by the docs and the sample-config CLI flag.
inline NetworkConfig sample_network_config() {
    NetworkConfig cfg;
    cfg.strategy = StrategyKind::vanilla_tmd;
    cfg.n_clients = 2;
    cfg.rng_seed = 42;
    cfg.max_attempts_per_epr = 100000;
    cfg.links = {
        symmetric_link(1.0, 1.0, 1.0, FiberLink{0.0, 22.0}),
        symmetric_link(0.5, 1.0, 1.0, FiberLink{22.0, 22.0}),
    };
    return cfg;
}

}  // namespace qtrans
