#include "tdicke/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace tdicke {

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& why) {
    throw Error(ErrorCode::usage, "config key '" + key + "': " + why);
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) parts.push_back(trim(item));
    return parts;
}

Real parse_real(const std::string& key, const std::string& text) {
    Real value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value))
        bad(key, "expected a real number, got '" + text + "'");
    return value;
}

long parse_int(const std::string& key, const std::string& text) {
    long value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) bad(key, "expected an integer, got '" + text + "'");
    return value;
}

Real positive(const std::string& key, const std::string& text) {
    const Real v = parse_real(key, text);
    if (!(v > 0.0)) bad(key, "must be positive");
    return v;
}

int parse_td_index(const std::string& key, const std::string& token) {
    if (token == "plus" || token == "+") return 1;
    if (token == "minus" || token == "-") return 2;
    const long v = parse_int(key, token);
    if (v < 1) bad(key, "TD indices start at 1 (plus)");
    return static_cast<int>(v);
}

InitSpec parse_init(const std::string& key, const std::string& token) {
    if (token == "plus") return {InitSpec::Kind::plus, 1};
    if (token == "minus") return {InitSpec::Kind::ladder, 2};
    const auto colon = token.find(':');
    if (colon == std::string::npos) bad(key, "unknown initial state '" + token + "'");
    const std::string kind = token.substr(0, colon);
    const long m = parse_int(key, token.substr(colon + 1));
    if (m < 2) bad(key, "initial state index must be >= 2 in '" + token + "'");
    if (kind == "ladder") return {InitSpec::Kind::ladder, static_cast<int>(m)};
    if (kind == "section") return {InitSpec::Kind::section, static_cast<int>(m)};
    bad(key, "unknown initial state '" + token + "'");
}

template <typename T, typename F>
std::vector<T> parse_list(const std::string& key, const std::string& value, F&& one) {
    std::vector<T> out;
    for (const auto& token : split(value, ',')) {
        if (token.empty()) bad(key, "empty list element");
        out.push_back(one(key, token));
    }
    if (out.empty()) bad(key, "empty list");
    return out;
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, F&& text) {
    std::string out;
    for (std::size_t k = 0; k < items.size(); ++k) {
        if (k) out += ",";
        out += text(items[k]);
    }
    return out;
}

RunConfig sphere_121(InitSpec init) {
    RunConfig c;
    c.geometry = Geometry::sphere;
    c.radius = 3.0;
    c.spacing = 1.0;
    c.target_count = 121;
    c.inits = {init};
    c.tracked = std::vector<int>{1, 2, 3, 121};
    return c;
}

RunConfig line_100(InitSpec init) {
    RunConfig c;
    c.geometry = Geometry::line;
    c.n = 100;
    c.spacing = 1.0;
    c.inits = {init};
    c.tracked = std::nullopt;
    return c;
}

} // namespace

std::string InitSpec::text() const {
    switch (kind) {
    case Kind::plus: return "plus";
    case Kind::ladder: return "ladder:" + std::to_string(index);
    case Kind::section: return "section:" + std::to_string(index);
    }
    return "?";
}

std::string InitSpec::file_tag() const {
    switch (kind) {
    case Kind::plus: return "plus";
    case Kind::ladder: return "ladder" + std::to_string(index);
    case Kind::section: return index == 2 ? "minus" : "section" + std::to_string(index);
    }
    return "?";
}

std::string format_real(Real x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "preset", "geometry", "n",      "radius", "spacing", "target_count",
        "k0",     "sections", "kernel", "init",   "solver",  "dt",
        "t_max",  "stride",   "tracked", "gamma", "output"};
    return keys;
}

const std::vector<PresetInfo>& presets() {
    static const std::vector<PresetInfo> list{
        {"fig1a", "100-atom line, spacing 1/k0, k0 along the line, sine kernel, start in |+>"},
        {"fig1b", "100-atom line, spacing 1/k0, k0 along the line, sine kernel, start in |->"},
        {"fig2", "121-atom sphere of radius 3/k0, spacing 1/k0, sine kernel, start in |+>"},
        {"fig3", "121-atom sphere of radius 3/k0, spacing 1/k0, sine kernel, start in |->"},
        {"fig4",
         "1000-atom sphere of diameter 5 lambda0, both kernels, start in |+>, two-section "
         "|-> and three-section |3>"},
    };
    return list;
}

RunConfig preset_config(const std::string& name) {
    RunConfig c;
    if (name == "fig1a") c = line_100({InitSpec::Kind::plus, 1});
    else if (name == "fig1b") c = line_100({InitSpec::Kind::ladder, 2});
    else if (name == "fig2") c = sphere_121({InitSpec::Kind::plus, 1});
    else if (name == "fig3") c = sphere_121({InitSpec::Kind::ladder, 2});
    else if (name == "fig4") {
        constexpr Real lambda0 = 2.0 * std::numbers::pi;
        c.geometry = Geometry::sphere;
        c.radius = 2.5 * lambda0;
        // 1021 lattice points inside the sphere, trimmed to 1000.
        c.spacing = lambda0 / 2.5;
        c.target_count = 1000;
        c.kernels = {KernelKind::sine, KernelKind::exp};
        c.inits = {{InitSpec::Kind::plus, 1},
                   {InitSpec::Kind::section, 2},
                   {InitSpec::Kind::section, 3}};
        c.tracked = std::vector<int>{1, 2, 3};
        c.stride = 10;
    } else {
        std::string names;
        for (const auto& p : presets()) names += " " + p.name;
        throw Error(ErrorCode::usage, "unknown preset '" + name + "'; available:" + names);
    }
    c.preset = name;
    c.output = name + ".csv";
    return c;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    if (key == "preset") {
        if (value == "none") cfg.preset.reset();
        else cfg = preset_config(value);
    } else if (key == "geometry") {
        if (value == "line") cfg.geometry = Geometry::line;
        else if (value == "sphere") cfg.geometry = Geometry::sphere;
        else bad(key, "expected line or sphere");
    } else if (key == "n") {
        const long n = parse_int(key, value);
        if (n < 1) bad(key, "must be >= 1");
        cfg.n = n;
    } else if (key == "radius") {
        cfg.radius = positive(key, value);
    } else if (key == "spacing") {
        cfg.spacing = positive(key, value);
    } else if (key == "target_count") {
        if (value == "none") cfg.target_count.reset();
        else {
            const long t = parse_int(key, value);
            if (t < 1) bad(key, "must be >= 1");
            cfg.target_count = t;
        }
    } else if (key == "k0") {
        const auto parts = split(value, ',');
        if (parts.size() != 3) bad(key, "expected three comma-separated components");
        Vec3 k(parse_real(key, parts[0]), parse_real(key, parts[1]), parse_real(key, parts[2]));
        if (!(k.norm() > 0.0)) bad(key, "must be non-zero");
        cfg.k0_vec = k;
    } else if (key == "sections") {
        if (value == "none") cfg.sections.reset();
        else {
            const long m = parse_int(key, value);
            if (m < 1) bad(key, "must be >= 1");
            cfg.sections = static_cast<int>(m);
        }
    } else if (key == "kernel") {
        cfg.kernels = parse_list<KernelKind>(key, value, [](const std::string& k, const std::string& t) {
            if (t == "sine") return KernelKind::sine;
            if (t == "exp") return KernelKind::exp;
            bad(k, "expected sine or exp, got '" + t + "'");
        });
    } else if (key == "init") {
        cfg.inits = parse_list<InitSpec>(key, value, parse_init);
    } else if (key == "solver") {
        if (value == "auto") cfg.solver = SolverChoice::automatic;
        else if (value == "rk4") cfg.solver = SolverChoice::rk4;
        else if (value == "eigen") cfg.solver = SolverChoice::eigen;
        else bad(key, "expected auto, rk4 or eigen");
    } else if (key == "dt") {
        cfg.dt = positive(key, value);
    } else if (key == "t_max") {
        const Real t = parse_real(key, value);
        if (t < 0.0) bad(key, "must be non-negative");
        cfg.t_max = t;
    } else if (key == "stride") {
        const long s = parse_int(key, value);
        if (s < 1) bad(key, "must be >= 1");
        cfg.stride = static_cast<int>(s);
    } else if (key == "tracked") {
        if (value == "all") cfg.tracked.reset();
        else cfg.tracked = parse_list<int>(key, value, parse_td_index);
    } else if (key == "gamma") {
        cfg.gamma = positive(key, value);
    } else if (key == "output") {
        if (value.empty()) bad(key, "must not be empty");
        cfg.output = value;
    } else {
        throw Error(ErrorCode::usage, "unknown config key '" + key + "'");
    }
}

KeyValues parse_config_text(const std::string& text) {
    KeyValues out;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::usage,
                        "config line " + std::to_string(number) + ": expected key = value");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const auto& keys = config_keys();
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw Error(ErrorCode::usage, "unknown config key '" + key + "' on line " +
                                              std::to_string(number));
        out.emplace_back(key, trim(std::string_view(body).substr(eq + 1)));
    }
    return out;
}

KeyValues read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io, "cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str());
}

KeyValues read_config_echo(const std::string& csv_path) {
    std::ifstream in(csv_path);
    if (!in) throw Error(ErrorCode::io, "cannot open '" + csv_path + "'");
    static const std::string prefix = "# config: ";
    std::string echoed;
    std::string line;
    while (std::getline(in, line) && !line.empty() && line[0] == '#')
        if (line.rfind(prefix, 0) == 0) echoed += line.substr(prefix.size()) + "\n";
    if (echoed.empty())
        throw Error(ErrorCode::usage, "'" + csv_path + "' carries no config echo");
    return parse_config_text(echoed);
}

RunConfig resolve_config(const KeyValues& file_values, const KeyValues& flag_values) {
    auto find_preset = [](const KeyValues& kv) -> std::optional<std::string> {
        std::optional<std::string> found;
        for (const auto& [k, v] : kv)
            if (k == "preset") found = trim(v) == "none" ? std::nullopt : std::optional(trim(v));
        return found;
    };
    RunConfig cfg;
    cfg.output = "run.csv";
    if (auto p = find_preset(flag_values)) cfg = preset_config(*p);
    else if (auto q = find_preset(file_values)) cfg = preset_config(*q);

    for (const auto& [k, v] : file_values)
        if (k != "preset") apply_setting(cfg, k, v);
    for (const auto& [k, v] : flag_values)
        if (k != "preset") apply_setting(cfg, k, v);
    validate(cfg);
    return cfg;
}

void validate(const RunConfig& cfg) {
    for (const auto& init : cfg.inits) {
        if (init.kind == InitSpec::Kind::section && cfg.sections && *cfg.sections < init.index)
            throw Error(ErrorCode::usage, "config key 'init': " + init.text() + " needs at least " +
                                              std::to_string(init.index) + " sections, got " +
                                              std::to_string(*cfg.sections));
    }
    if (cfg.geometry == Geometry::line && cfg.target_count)
        throw Error(ErrorCode::usage, "config key 'target_count': only meaningful for sphere");
}

KeyValues echo_config(const RunConfig& cfg) {
    KeyValues kv;
    kv.emplace_back("preset", cfg.preset.value_or("none"));
    kv.emplace_back("geometry", cfg.geometry == Geometry::line ? "line" : "sphere");
    kv.emplace_back("n", std::to_string(cfg.n));
    kv.emplace_back("radius", format_real(cfg.radius));
    kv.emplace_back("spacing", format_real(cfg.spacing));
    kv.emplace_back("target_count", cfg.target_count ? std::to_string(*cfg.target_count) : "none");
    kv.emplace_back("k0", format_real(cfg.k0_vec.x()) + "," + format_real(cfg.k0_vec.y()) + "," +
                              format_real(cfg.k0_vec.z()));
    kv.emplace_back("sections", cfg.sections ? std::to_string(*cfg.sections) : "none");
    kv.emplace_back("kernel", join(cfg.kernels, [](KernelKind k) { return std::string(to_string(k)); }));
    kv.emplace_back("init", join(cfg.inits, [](const InitSpec& s) { return s.text(); }));
    const char* solver = cfg.solver == SolverChoice::rk4     ? "rk4"
                         : cfg.solver == SolverChoice::eigen ? "eigen"
                                                             : "auto";
    kv.emplace_back("solver", solver);
    kv.emplace_back("dt", format_real(cfg.dt));
    kv.emplace_back("t_max", format_real(cfg.t_max));
    kv.emplace_back("stride", std::to_string(cfg.stride));
    kv.emplace_back("tracked", cfg.tracked ? join(*cfg.tracked, [](int i) { return std::to_string(i); })
                                           : std::string("all"));
    kv.emplace_back("gamma", format_real(cfg.gamma));
    kv.emplace_back("output", cfg.output);
    return kv;
}

} // namespace tdicke
