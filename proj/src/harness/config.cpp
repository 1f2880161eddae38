#include "splink/harness/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace splink::harness {

namespace {

constexpr double kMinSweepFreqHz = 50e3;
constexpr double kMaxSweepFreqHz = 700e3;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Split on commas outside parentheses, so scheme names like "RS(31,21)"
// survive intact.
std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> items;
    std::string item;
    int depth = 0;
    for (const char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            item = trim(item);
            if (!item.empty()) items.push_back(item);
            item.clear();
        } else {
            item.push_back(c);
        }
    }
    item = trim(item);
    if (!item.empty()) items.push_back(item);
    return items;
}

double parse_double(const std::string& v) {
    if (v == "inf" || v == "+inf") return kNoNoiseSnrDb;
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("bad number: " + v);
    return d;
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("bad boolean: " + v);
}

}  // namespace

void ExperimentConfig::validate() const {
    if (l < 1) throw std::invalid_argument("l must be >= 1");
    if (interleavers.empty() || chains.empty() || gammas_db.empty() || freqs_hz.empty()) {
        throw std::invalid_argument("every sweep axis needs at least one value");
    }
    if (stop.min_error_packets < 1 || stop.max_packets < 1) {
        throw std::invalid_argument("stop rule counts must be positive");
    }
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must be in [0, 1]");
    if (!(a > 0.0)) throw std::invalid_argument("a must be positive");
    if (impulse_enabled && model == ImpulseModel::Ieee1613Train) {
        for (const double f : freqs_hz) {
            if (enforce_sweep_band && !(f >= kMinSweepFreqHz && f <= kMaxSweepFreqHz)) {
                throw std::invalid_argument(
                    "sweep impulse frequencies must lie in [50e3, 700e3] Hz");
            }
            if (!(f > 0.0)) throw std::invalid_argument("impulse frequency must be positive");
        }
    }
    for (const auto& chain : chains) chain.validate();
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::stringstream lines(text);
    std::string line;
    int line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "l") {
                cfg.l = std::stoi(value);
            } else if (key == "interleavers") {
                cfg.interleavers.clear();
                for (const auto& v : split_list(value))
                    cfg.interleavers.push_back(interleaver_from_string(v));
            } else if (key == "schemes") {
                cfg.chains.clear();
                for (const auto& v : split_list(value))
                    cfg.chains.push_back(fec::chain_from_string(v));
            } else if (key == "gammas_db") {
                cfg.gammas_db.clear();
                for (const auto& v : split_list(value)) cfg.gammas_db.push_back(parse_double(v));
            } else if (key == "freqs_hz") {
                cfg.freqs_hz.clear();
                for (const auto& v : split_list(value)) cfg.freqs_hz.push_back(parse_double(v));
            } else if (key == "awgn_snr_db") {
                cfg.awgn_snr_db = parse_double(value);
            } else if (key == "model") {
                if (value == "none") {
                    cfg.impulse_enabled = false;
                } else {
                    cfg.impulse_enabled = true;
                    cfg.model = impulse_model_from_string(value);
                }
            } else if (key == "impulse_duration_s") {
                cfg.impulse_duration_s = parse_double(value);
            } else if (key == "random_phase") {
                cfg.random_phase = parse_bool(value);
            } else if (key == "p") {
                cfg.p = parse_double(value);
            } else if (key == "a") {
                cfg.a = parse_double(value);
            } else if (key == "min_error_packets") {
                cfg.stop.min_error_packets = std::stol(value);
            } else if (key == "max_packets") {
                cfg.stop.max_packets = std::stol(value);
            } else if (key == "seed") {
                cfg.seed = std::stoull(value);
            } else if (key == "workers") {
                cfg.workers = std::stoi(value);
            } else {
                throw std::invalid_argument("unknown key: " + key);
            }
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception& e) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + " (" + key +
                                        "): " + e.what());
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace splink::harness
