#ifndef TDICKE_CONFIG_HPP
#define TDICKE_CONFIG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tdicke/types.hpp"

namespace tdicke {

enum class Geometry { line, sphere };
enum class SolverChoice { automatic, rk4, eigen };

struct InitSpec {
    enum class Kind { plus, ladder, section } kind = Kind::plus;
    int index = 1;

    std::string text() const;  // "plus", "ladder:3", "section:2"
    std::string file_tag() const;  // "plus", "minus", "ladder3", "section3"
};

struct RunConfig {
    std::optional<std::string> preset;
    Geometry geometry = Geometry::line;
    long n = 2;
    Real radius = 3.0;
    Real spacing = 1.0;
    std::optional<long> target_count;
    Vec3 k0_vec{1.0, 0.0, 0.0};
    std::optional<int> sections;
    std::vector<KernelKind> kernels{KernelKind::sine};
    std::vector<InitSpec> inits{InitSpec{}};
    SolverChoice solver = SolverChoice::automatic;
    Real dt = 0.01;
    Real t_max = 10.0;
    int stride = 1;
    std::optional<std::vector<int>> tracked = std::vector<int>{1, 2};  // nullopt: all
    Real gamma = 1.0;
    std::string output;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Keys accepted in config files and as --key flags, in echo order.
const std::vector<std::string>& config_keys();

struct PresetInfo {
    std::string name;
    std::string description;
};
const std::vector<PresetInfo>& presets();
RunConfig preset_config(const std::string& name);

/// Sets one key; throws ErrorCode::usage naming the key on bad input.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Flat "key = value" text with '#' comments.
KeyValues parse_config_text(const std::string& text);
KeyValues read_config_file(const std::string& path);

/// Lines "# config: key = value" from a CSV preamble.
KeyValues read_config_echo(const std::string& csv_path);

/// Preset (from flags, else file) first, then file values, then flags.
RunConfig resolve_config(const KeyValues& file_values, const KeyValues& flag_values);

void validate(const RunConfig& cfg);

/// Complete key = value listing of a resolved single-run configuration.
KeyValues echo_config(const RunConfig& cfg);

std::string format_real(Real x);

} // namespace tdicke

#endif // TDICKE_CONFIG_HPP
