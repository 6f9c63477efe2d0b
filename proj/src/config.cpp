#include "vekua/config.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "vekua/csv.hpp"
#include "vekua/fields.hpp"

namespace vekua {

Method method_from_string(const std::string& name) {
    if (name == "deepvekua") return Method::kDeepVekua;
    if (name == "siren") return Method::kSiren;
    if (name == "gridmlp") return Method::kGridMlp;
    if (name == "cascade") return Method::kCascade;
    throw std::runtime_error("unknown method '" + name +
                             "' (expected deepvekua|siren|gridmlp|cascade)");
}

std::string method_to_string(Method m) {
    switch (m) {
        case Method::kDeepVekua: return "deepvekua";
        case Method::kSiren: return "siren";
        case Method::kGridMlp: return "gridmlp";
        case Method::kCascade: return "cascade";
    }
    throw std::logic_error("bad method enum");
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw std::runtime_error("config: bad numeric value for " + key);
    return x;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw std::runtime_error("config: bad integer value for " + key);
    return x;
}

} // namespace

void TrainConfig::resolve_and_validate() {
    const Benchmark& info = benchmark_info(benchmark); // throws if unknown
    if (n_train == 0) n_train = info.default_n_train;
    if (noise_sigma < 0.0) noise_sigma = info.default_noise_sigma;
    if (blocks < 1 || freqs < 1 || hidden < 1)
        throw std::runtime_error("config: blocks/freqs/hidden must be >= 1");
    if (!(lambda > 0.0))
        throw std::runtime_error("config: lambda must be > 0");
    if (!(lr > 0.0) && iters != 0)
        throw std::runtime_error("config: lr must be > 0 unless iters = 0");
    if (out.empty()) throw std::runtime_error("config: out must be set");
}

TrainConfig parse_config_text(const std::string& text) {
    TrainConfig cfg;
    bool saw_benchmark = false;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: line " + std::to_string(lineno) +
                                     " is not key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "benchmark") {
            cfg.benchmark = value;
            saw_benchmark = true;
        } else if (key == "method") {
            cfg.method = method_from_string(value);
        } else if (key == "seed") {
            cfg.seed = to_u64(key, value);
        } else if (key == "iters") {
            cfg.iters = static_cast<std::size_t>(to_u64(key, value));
        } else if (key == "lr") {
            cfg.lr = to_double(key, value);
        } else if (key == "lambda") {
            cfg.lambda = to_double(key, value);
        } else if (key == "blocks") {
            cfg.blocks = static_cast<std::size_t>(to_u64(key, value));
        } else if (key == "freqs") {
            cfg.freqs = static_cast<std::size_t>(to_u64(key, value));
        } else if (key == "hidden") {
            cfg.hidden = static_cast<std::size_t>(to_u64(key, value));
        } else if (key == "n_train") {
            cfg.n_train = static_cast<std::size_t>(to_u64(key, value));
        } else if (key == "noise_sigma") {
            cfg.noise_sigma = to_double(key, value);
            if (cfg.noise_sigma < 0.0)
                throw std::runtime_error("config: noise_sigma must be >= 0");
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "freeze_freqs") {
            cfg.freeze_freqs = to_u64(key, value) != 0;
        } else {
            throw std::runtime_error("config: unknown key '" + key + "'");
        }
    }
    if (!saw_benchmark)
        throw std::runtime_error("config: benchmark is required");
    cfg.resolve_and_validate();
    return cfg;
}

TrainConfig load_config(const std::string& path) {
    return parse_config_text(read_text_file(path));
}

std::string config_to_text(const TrainConfig& cfg) {
    std::ostringstream out;
    out << "benchmark=" << cfg.benchmark << "\n";
    out << "method=" << method_to_string(cfg.method) << "\n";
    out << "seed=" << cfg.seed << "\n";
    out << "iters=" << cfg.iters << "\n";
    out << "lr=" << format_double(cfg.lr) << "\n";
    out << "lambda=" << format_double(cfg.lambda) << "\n";
    out << "blocks=" << cfg.blocks << "\n";
    out << "freqs=" << cfg.freqs << "\n";
    out << "hidden=" << cfg.hidden << "\n";
    out << "n_train=" << cfg.n_train << "\n";
    out << "noise_sigma=" << format_double(cfg.noise_sigma) << "\n";
    out << "out=" << cfg.out << "\n";
    out << "freeze_freqs=" << (cfg.freeze_freqs ? 1 : 0) << "\n";
    return out.str();
}

} // namespace vekua
