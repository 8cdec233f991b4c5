#include "leomec/params.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

namespace leomec::params {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

ConstellationGeometry make_geometry(double earth_radius_m, double altitude_m, int n_sats) {
    ConstellationGeometry g;
    g.r_e = earth_radius_m;
    g.a_s = altitude_m;
    g.r_s = earth_radius_m + altitude_m;
    g.n_sats = n_sats;
    validate(g);
    return g;
}

double derived_sat_density(const ConstellationGeometry& geom) {
    return geom.n_sats / (4.0 * std::numbers::pi * geom.r_s * geom.r_s);
}

double Scenario::lambda_s_type(int task) const {
    return sats_per_type.at(task) / (4.0 * std::numbers::pi * geom.r_s * geom.r_s);
}

double Scenario::lambda_u_type(int task) const {
    return sys.tasks.at(task).q * sys.lambda_u;
}

std::vector<int> split_satellites(const std::vector<TaskSpec>& tasks, int n_sats) {
    std::vector<int> counts(tasks.size());
    std::vector<std::pair<double, size_t>> remainders;
    int assigned = 0;
    for (size_t i = 0; i < tasks.size(); ++i) {
        const double exact = tasks[i].q * n_sats;
        counts[i] = static_cast<int>(std::floor(exact));
        assigned += counts[i];
        remainders.emplace_back(exact - counts[i], i);
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (int k = 0; k < n_sats - assigned; ++k) counts[remainders[k].second] += 1;
    return counts;
}

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

ConfigDoc ConfigDoc::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

ConfigDoc ConfigDoc::parse_text(const std::string& text) {
    ConfigDoc doc;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("malformed section header at line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError("empty section name at line " + std::to_string(lineno));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value at line " + std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("empty key or value at line " + std::to_string(lineno));
        const std::string full = section.empty() ? key : section + "." + key;
        if (doc.values.count(full)) throw ConfigError("duplicate key: " + full);
        doc.values[full] = value;
    }
    return doc;
}

void ConfigDoc::apply_override(const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must be section.key=value: " + kv);
    const std::string key = trim(kv.substr(0, eq));
    const std::string value = trim(kv.substr(eq + 1));
    if (key.empty() || value.empty())
        throw ConfigError("override must be section.key=value: " + kv);
    values[key] = value;
}

bool ConfigDoc::has(const std::string& key) const { return values.count(key) > 0; }

double ConfigDoc::number(const std::string& key) const {
    const auto it = values.find(key);
    if (it == values.end()) throw ConfigError("missing key: " + key);
    try {
        size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing text");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("not a number: " + key + " = " + it->second);
    }
}

long long ConfigDoc::integer(const std::string& key) const {
    const double v = number(key);
    const long long n = static_cast<long long>(std::llround(v));
    if (std::abs(v - n) > 1e-9) throw ConfigError("not an integer: " + key);
    return n;
}

namespace {

void require_positive(double v, const std::string& key) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ConfigError("value must be strictly positive: " + key);
}

}  // namespace

void validate(const SystemParams& sys) {
    require_positive(sys.p_u, "link.p_u_dbm");
    require_positive(sys.p_c, "link.p_c_dbm");
    require_positive(sys.p_s, "link.p_s_dbm");
    require_positive(sys.f_s, "link.f_s_hz");
    require_positive(sys.f_c, "link.f_c_hz");
    require_positive(sys.sigma2_u, "link.noise_u_dbm");
    require_positive(sys.sigma2_c, "link.noise_c_dbm");
    require_positive(sys.sigma2_s, "link.noise_s_dbm");
    require_positive(sys.lambda_c, "link.lambda_c_per_km2");
    require_positive(sys.lambda_u, "link.lambda_u_per_km2");
    require_positive(sys.bias_ratio, "link.bias_ratio");
    require_positive(sys.bandwidth, "link.bandwidth_hz");
    require_positive(sys.tau, "link.tau_db");
    require_positive(sys.cap_sat, "link.sat_capacity_cps");
    require_positive(sys.cap_cs, "link.cs_capacity_cps");
    require_positive(sys.sr.omega, "link.sr_omega");
    require_positive(sys.sr.b0, "link.sr_b0");
    require_positive(sys.sr.m, "link.sr_m");
    require_positive(sys.sat_ue_fraction, "link.sat_ue_fraction");
    if (!(sys.alpha > 2.0)) throw ConfigError("link.alpha must be > 2");
    if (sys.buffer_jobs < 1) throw ConfigError("link.buffer_jobs must be >= 1");
    if (sys.tasks.empty()) throw ConfigError("at least one [tasks.N] section required");
    double qsum = 0.0;
    for (const auto& t : sys.tasks) {
        const std::string sect = "tasks." + std::to_string(t.service_id);
        require_positive(t.cycles, sect + ".cycles");
        require_positive(t.uplink_bits, sect + ".uplink_bits");
        require_positive(t.downlink_bits, sect + ".downlink_bits");
        if (!(t.q > 0.0 && t.q <= 1.0))
            throw ConfigError(sect + ".q must lie in (0, 1]");
        qsum += t.q;
    }
    if (std::abs(qsum - 1.0) > 1e-12)
        throw ConfigError("q_i sum != 1 across [tasks.*] sections (got " +
                          std::to_string(qsum) + ")");
}

void validate(const ConstellationGeometry& geom) {
    if (!(geom.r_e > 0.0)) throw ConfigError("constellation.earth_radius_km must be > 0");
    if (!(geom.a_s > 0.0)) throw ConfigError("constellation.altitude_km must be > 0");
    if (geom.n_sats < 1) throw ConfigError("constellation.n_sats must be >= 1");
    if (std::abs(geom.r_s - (geom.r_e + geom.a_s)) > 1e-9 * geom.r_s)
        throw ConfigError("constellation shell radius must equal r_e + a_s");
}

Scenario from_config(const ConfigDoc& doc) {
    Scenario sc;
    SystemParams& sys = sc.sys;
    sys.p_u = dbm_to_watts(doc.number("link.p_u_dbm"));
    sys.p_c = dbm_to_watts(doc.number("link.p_c_dbm"));
    sys.p_s = dbm_to_watts(doc.number("link.p_s_dbm"));
    sys.f_s = doc.number("link.f_s_hz");
    sys.f_c = doc.number("link.f_c_hz");
    sys.sigma2_u = dbm_to_watts(doc.number("link.noise_u_dbm"));
    sys.sigma2_c = dbm_to_watts(doc.number("link.noise_c_dbm"));
    sys.sigma2_s = dbm_to_watts(doc.number("link.noise_s_dbm"));
    sys.alpha = doc.number("link.alpha");
    sys.lambda_c = doc.number("link.lambda_c_per_km2") * 1e-6;
    sys.lambda_u = doc.number("link.lambda_u_per_km2") * 1e-6;
    sys.bias_ratio = doc.number("link.bias_ratio");
    sys.bandwidth = doc.number("link.bandwidth_hz");
    sys.tau = db_to_linear(doc.number("link.tau_db"));
    sys.sr.omega = doc.number("link.sr_omega");
    sys.sr.b0 = doc.number("link.sr_b0");
    sys.sr.m = doc.number("link.sr_m");
    sys.cap_sat = doc.number("link.sat_capacity_cps");
    sys.cap_cs = doc.number("link.cs_capacity_cps");
    sys.buffer_jobs = static_cast<int>(doc.integer("link.buffer_jobs"));
    sys.sat_ue_fraction =
        doc.has("link.sat_ue_fraction") ? doc.number("link.sat_ue_fraction") : 1.0;

    for (int id = 1;; ++id) {
        const std::string sect = "tasks." + std::to_string(id);
        if (!doc.has(sect + ".q")) break;
        TaskSpec t;
        t.service_id = id;
        t.q = doc.number(sect + ".q");
        t.cycles = doc.number(sect + ".cycles");
        t.uplink_bits = doc.number(sect + ".uplink_bits");
        t.downlink_bits = doc.number(sect + ".downlink_bits");
        sys.tasks.push_back(t);
    }

    sc.geom = make_geometry(doc.number("constellation.earth_radius_km") * 1e3,
                            doc.number("constellation.altitude_km") * 1e3,
                            static_cast<int>(doc.integer("constellation.n_sats")));
    validate(sys);

    if (doc.has("sim.trials")) sc.sim.trials = doc.integer("sim.trials");
    if (doc.has("sim.seed")) sc.sim.seed = static_cast<unsigned long long>(doc.integer("sim.seed"));
    if (doc.has("sim.threads")) sc.sim.threads = static_cast<int>(doc.integer("sim.threads"));
    if (doc.has("sim.disk_radius_km")) sc.sim.disk_radius = doc.number("sim.disk_radius_km") * 1e3;
    if (doc.has("sim.report_ci")) sc.sim.report_ci = doc.integer("sim.report_ci") != 0;
    if (sc.sim.trials < 1) throw ConfigError("sim.trials must be >= 1");
    if (sc.sim.disk_radius > 0.0) {
        // truncating the cloud-server process must be statistically harmless
        const double mass = sys.lambda_c * std::numbers::pi * sc.sim.disk_radius *
                            sc.sim.disk_radius;
        if (std::exp(-mass) >= 1e-12)
            throw ConfigError("sim.disk_radius_km too small: empty-disk probability " +
                              std::to_string(std::exp(-mass)) + " >= 1e-12");
    }

    sc.sats_per_type = split_satellites(sys.tasks, sc.geom.n_sats);
    return sc;
}

}  // namespace leomec::params
